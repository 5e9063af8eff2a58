#ifndef FRACSTEP_REFERENCE_HPP
#define FRACSTEP_REFERENCE_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracstep/extended_real.hpp"

namespace fracstep {

/// Right-hand side f(t, y) of the Caputo problem D^alpha y = f(t, y). The time
/// argument is explicit so that forced problems need no state augmentation.
using VectorField = std::function<void(double t, std::span<const double> y, std::span<double> dy)>;
using ExactSolution = std::function<void(double t, std::span<double> y)>;

/// Mesh a problem is usually run on: graded (h1, r) or uniform with N steps.
struct MeshHint {
  double h1 = 0.0;
  double r = 1.0;
  std::size_t uniform_steps = 0;  // nonzero selects the uniform mesh
};

struct Problem {
  std::string name;
  std::string description;
  double alpha = 1.0;
  std::vector<double> y0;
  VectorField f;
  double T = 1.0;
  ExactSolution exact;  // may be empty
  MeshHint mesh;

  std::size_t dimension() const { return y0.size(); }
  bool has_exact() const { return static_cast<bool>(exact); }
};

/// One-parameter Mittag-Leffler function E_alpha(z) = sum_j z^j / Gamma(alpha j + 1)
/// on the non-positive real axis.
///
/// Near the origin the series is summed in double-double with coefficients
/// rounded from 50-digit Gamma values. Further out it switches to
///
///   E_alpha(-x) = sin(alpha pi)/(alpha pi) * int_0^inf exp(-x^(1/alpha) u^(1/alpha))
///                 / (u^2 + 2 u cos(alpha pi) + 1) du,
///
/// evaluated by adaptive Gauss-Kronrod quadrature.
class MittagLeffler {
 public:
  static constexpr double kSeriesRadius = 5.0;

  explicit MittagLeffler(double alpha);

  double alpha() const { return alpha_; }
  double operator()(double z) const;

  /// Power series branch; z <= 0.
  double series(double z) const;
  /// Integral branch; z < 0 and alpha < 1.
  double integral(double z) const;

 private:
  double alpha_;
  std::vector<ExtendedReal> inv_gamma_;  // 1/Gamma(alpha j + 1)
};

double mittag_leffler(double alpha, double z);

class ProblemRegistry {
 public:
  void add(Problem problem);
  bool contains(const std::string& name) const;
  /// Throws std::invalid_argument for unknown names.
  const Problem& get(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Problem> problems_;
};

/// prob1 (linear, Mittag-Leffler solution), prob2 (alpha = 1/2, forced),
/// prob3 and prob4 (alpha = 1/3) and prob34 (their coupled 2-d form).
ProblemRegistry builtin_problems();

/// D^alpha y = lambda y, y(0) = y0, with exact solution y0 E_alpha(lambda t^alpha).
Problem linear_problem(double alpha, double lambda, double y0, double T);

}  // namespace fracstep

#endif  // FRACSTEP_REFERENCE_HPP
