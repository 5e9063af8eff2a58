#ifndef FRACSTEP_FRAC_OPS_HPP
#define FRACSTEP_FRAC_OPS_HPP

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <deque>
#include <memory>
#include <vector>

#include "fracstep/jacobi.hpp"
#include "fracstep/quadrature.hpp"

namespace fracstep {

/// k x s table of Riemann-Liouville integrals I^alpha P_j(c_i) at the nodes
/// of a Gauss-Jacobi rule.
struct LocalFracTable {
  double alpha = 1.0;
  std::size_t s = 0;
  std::size_t k = 0;
  Eigen::MatrixXd values;
};

/// I^alpha P_j(c) = c^alpha / Gamma(alpha+1) * sum_l b_l P_j(c c_l), which is
/// exact for j <= 2k-1 under the k-node Gauss-Jacobi rule (c_l, b_l).
void local_frac_at(const JacobiBasis& basis, const QuadratureRule& rule, double c,
                   std::span<double> out);
std::vector<double> local_frac_at(const JacobiBasis& basis, const QuadratureRule& rule,
                                  double c);

LocalFracTable local_frac_table(const JacobiBasis& basis, const QuadratureRule& rule);

/// Evaluates J_j^alpha(x) = int_0^1 (x - tau)^(alpha-1) P_j(tau) dtau, x > 1.
///
/// For x >= threshold (1.5 by default) the integrand is smooth enough for the
/// p-node Gauss-Legendre rule. Closer to the singularity the integrals are
/// generated by the three-term recurrence
///
///   J_{j+1}^{a}(x) = (a_j x - b_j) J_j^{a}(x) - a_j J_j^{a+1}(x) - d_j J_{j-1}^{a}(x),
///   J_0^{a}(x)     = (x^a - (x-1)^a) / a,
///
/// run over the triangle of shifted exponents a = alpha, alpha+1, ... in
/// 128-bit floating point: for s = 20 it cancels about 17 digits.
class JIntegrator {
 public:
  static constexpr double kDefaultThreshold = 1.5;

  JIntegrator(const JacobiBasis& basis, const QuadratureRule& legendre,
              double threshold = kDefaultThreshold);

  std::size_t size() const { return s_; }
  double alpha() const { return alpha_; }
  double threshold() const { return threshold_; }

  void evaluate(double x, std::span<double> out) const;
  void evaluate_quadrature(double x, std::span<double> out) const;
  void evaluate_recurrence(double x, std::span<double> out) const;

 private:
  double alpha_;
  std::size_t s_;
  double threshold_;
  struct WideCoefficients;
  std::shared_ptr<const WideCoefficients> wide_;  // recurrence coefficients, 128-bit mantissa
  std::vector<double> gl_nodes_, gl_weights_;
  Eigen::MatrixXd gl_basis_;  // p x s, P_j(xi_i)
};

std::vector<double> j_integrals(const JacobiBasis& basis, const QuadratureRule& legendre,
                                double x);

/// (r^m - 1)/(r - 1), i.e. the distance in units of h_nu from t_{nu-1} to
/// t_{nu-1+m}; equals m when r == 1.
double geometric_offset(double r, std::size_t m);

/// Append-only cache of the history integrals: block m (k x s) holds
/// J_j^alpha(geometric_offset(r, m) + c_i r^m). Block m is shared by every
/// step n whose history term reaches back m intervals.
class JTable {
 public:
  JTable(double alpha, double r, std::vector<double> nodes, std::size_t s);

  double alpha() const { return alpha_; }
  double ratio() const { return r_; }
  std::size_t size() const { return s_; }
  std::size_t offsets() const { return blocks_.size(); }

  /// Block for offset m >= 1.
  const Eigen::MatrixXd& block(std::size_t m) const;

  /// Argument of J in block m at node c.
  double argument(std::size_t m, double c) const;

  /// Appends block m; m must equal offsets() + 1.
  void extend(std::size_t m, const JIntegrator& integrator);

 private:
  double alpha_;
  double r_;
  std::vector<double> nodes_;
  std::size_t s_;
  std::deque<Eigen::MatrixXd> blocks_;  // stable references across extend()
};

void extend_j_table(JTable& table, std::size_t m, const JIntegrator& integrator);

}  // namespace fracstep

#endif  // FRACSTEP_FRAC_OPS_HPP
