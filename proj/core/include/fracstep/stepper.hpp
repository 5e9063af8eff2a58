#ifndef FRACSTEP_STEPPER_HPP
#define FRACSTEP_STEPPER_HPP

#include <Eigen/Core>

#include <cstddef>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracstep/frac_ops.hpp"
#include "fracstep/jacobi.hpp"
#include "fracstep/mesh.hpp"
#include "fracstep/quadrature.hpp"
#include "fracstep/reference.hpp"

namespace fracstep {

/// Row-major so that row i of a k x m block is the state at node c_i and row j
/// of an s x m block is the coefficient gamma_j (component inner).
using Block = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct SolverConfig {
  std::size_t s = 4;   // truncation: number of Jacobi coefficients per step
  std::size_t k = 30;  // Gauss-Jacobi nodes, k >= s
  std::size_t p = 30;  // Gauss-Legendre nodes for the history integrals
  double fp_tol = 4.0 * (std::numeric_limits<double>::epsilon() / 2.0);  // 4 unit roundoffs
  std::size_t fp_max_iters = 100;
  double j_threshold = JIntegrator::kDefaultThreshold;

  void validate() const;
};

/// Matrices of the per-step discrete problem
///
///   gamma = (Ps^T Omega (x) I_m) f(phi + h^alpha (Ialpha (x) I_m) gamma).
struct StepOperator {
  double alpha = 1.0;
  std::vector<double> nodes;
  Eigen::MatrixXd Ps;        // k x s, P_j(c_i)
  Eigen::VectorXd omega;     // k quadrature weights
  Eigen::MatrixXd Ialpha;    // k x s, I^alpha P_j(c_i)
  Eigen::MatrixXd transfer;  // s x k, Ps^T Omega

  static StepOperator build(const JacobiBasis& basis, const QuadratureRule& rule);

  std::size_t s() const { return static_cast<std::size_t>(Ps.cols()); }
  std::size_t k() const { return static_cast<std::size_t>(Ps.rows()); }

  /// h^alpha L ||Ps^T Omega||_inf ||Ialpha||_inf; below one the fixed-point
  /// iteration contracts for a field with Lipschitz constant L.
  double contraction_bound(double h, double lipschitz) const;
};

class FixedPointFailure : public std::runtime_error {
 public:
  FixedPointFailure(std::size_t step, std::size_t iterations, double last_increment);
  std::size_t step() const { return step_; }
  std::size_t iterations() const { return iterations_; }
  double last_increment() const { return last_increment_; }

 private:
  std::size_t step_;
  std::size_t iterations_;
  double last_increment_;
};

struct FixedPointResult {
  Block gamma;  // s x m
  std::size_t iterations = 0;
  std::vector<double> increments;  // ||gamma^l - gamma^(l-1)||_inf per sweep
};

/// Solves the step problem by the fixed-point iteration started at gamma = 0.
/// phi is the k x m history at the nodes, t_start the left end of the step.
/// Stops once the increment drops to fp_tol * max(1, ||gamma||), or when it
/// stalls at roundoff level. Throws FixedPointFailure after fp_max_iters
/// sweeps or on a non-finite iterate.
FixedPointResult fixed_point_step(const StepOperator& op, const Block& phi, double t_start,
                                  double h, const VectorField& f, const SolverConfig& cfg,
                                  std::size_t step_index = 0);

/// Coefficient blocks of completed steps plus the cached history integrals.
class HistoryStore {
 public:
  HistoryStore(std::vector<double> y0, JTable table);

  std::size_t steps() const { return gamma_.size(); }
  const std::vector<double>& y0() const { return y0_; }
  const Block& gamma(std::size_t nu) const;
  const std::vector<double>& grid_value(std::size_t n) const;
  const JTable& j_table() const { return table_; }

  void push(Block gamma, std::vector<double> y_bar);
  void ensure_offsets(std::size_t m, const JIntegrator& integrator);

 private:
  std::vector<double> y0_;
  std::vector<Block> gamma_;
  std::vector<std::vector<double>> y_bar_;  // y_bar_[0] = y0
  JTable table_;
};

/// Marches the method over a mesh. Owns the basis, rules, operator and the
/// history; dense output is available for every completed step.
class Stepper {
 public:
  Stepper(const Problem& problem, const GradedMesh& mesh, const SolverConfig& cfg);

  const GradedMesh& mesh() const { return mesh_; }
  const SolverConfig& config() const { return cfg_; }
  const JacobiBasis& basis() const { return basis_; }
  const QuadratureRule& jacobi_rule() const { return jacobi_rule_; }
  const QuadratureRule& legendre_rule() const { return legendre_rule_; }
  const StepOperator& op() const { return op_; }
  const HistoryStore& history() const { return history_; }
  const JIntegrator& integrator() const { return integrator_; }

  std::size_t steps_done() const { return history_.steps(); }
  bool finished() const { return steps_done() == mesh_.steps(); }

  /// History term phi_n(c) at the Gauss-Jacobi nodes (k x m).
  Block history_at_nodes(std::size_t n);
  /// History term phi_n(c) at an arbitrary c in [0, 1]; n <= steps_done().
  std::vector<double> history_term(std::size_t n, double c) const;

  /// Performs step n+1; returns the fixed-point iteration count.
  std::size_t advance();

  /// sigma_n(c h_n) for a completed step n >= 1, c in [0, 1].
  std::vector<double> dense_output(std::size_t n, double c) const;

  /// y_bar_n, n = 0..steps_done().
  const std::vector<double>& grid_value(std::size_t n) const { return history_.grid_value(n); }

 private:
  double alpha_;
  std::size_t m_;
  VectorField f_;
  GradedMesh mesh_;
  SolverConfig cfg_;
  JacobiBasis basis_;
  QuadratureRule jacobi_rule_;
  QuadratureRule legendre_rule_;
  StepOperator op_;
  JIntegrator integrator_;
  HistoryStore history_;
  double inv_gamma_alpha_;
  std::vector<double> h_alpha_;  // h_n^alpha, n = 1..N
  // J_j(geometric_offset(r, m) + r^m) for m = 1, 2, ...; the c = 1 history
  // integrals reused by every grid value.
  std::vector<std::vector<double>> endpoint_j_;

  std::vector<double> history_at_end(std::size_t n);
};

enum class RunStatus { ok, fixed_point_failure };

struct SolverRun {
  RunStatus status = RunStatus::ok;
  std::size_t failed_step = 0;  // 1-based step index when status != ok
  std::string message;
  std::vector<double> times;                // t_0..t_n of the completed steps
  std::vector<std::vector<double>> values;  // y_bar_0..y_bar_n
  std::vector<std::size_t> iterations;      // per completed step
  std::shared_ptr<const Stepper> stepper;   // dense output handle

  bool ok() const { return status == RunStatus::ok; }
  std::size_t steps() const { return iterations.size(); }
  std::vector<double> dense_output(std::size_t n, double c) const {
    return stepper->dense_output(n, c);
  }
};

/// Integrates the problem over the mesh. A fixed-point failure stops the run
/// and is reported in the result together with the completed prefix.
SolverRun solve(const Problem& problem, const GradedMesh& mesh, const SolverConfig& cfg);

/// Max over grid points and components of |y_bar_n - y(t_n)|.
double max_grid_error(const Problem& problem, const SolverRun& run);

}  // namespace fracstep

#endif  // FRACSTEP_STEPPER_HPP
