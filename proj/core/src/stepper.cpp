#include "fracstep/stepper.hpp"

#include <cmath>
#include <string>

namespace fracstep {

namespace {

// An increment that stops shrinking within this many tolerances of the target
// is taken as converged: the iteration has hit its roundoff floor.
constexpr double kStallFactor = 1024.0;

double max_abs(const Block& b) { return b.size() == 0 ? 0.0 : b.cwiseAbs().maxCoeff(); }

}  // namespace

void SolverConfig::validate() const {
  if (s == 0) throw std::invalid_argument("s must be positive");
  if (k < s) throw std::invalid_argument("k must satisfy k >= s");
  if (p == 0) throw std::invalid_argument("p must be positive");
  if (!(fp_tol > 0.0)) throw std::invalid_argument("fp_tol must be positive");
  if (fp_max_iters == 0) throw std::invalid_argument("fp_max_iters must be positive");
  if (!(j_threshold > 1.0)) throw std::invalid_argument("j_threshold must exceed 1");
}

StepOperator StepOperator::build(const JacobiBasis& basis, const QuadratureRule& rule) {
  const auto k = static_cast<Eigen::Index>(rule.size());
  const auto s = static_cast<Eigen::Index>(basis.size());
  StepOperator op;
  op.alpha = basis.alpha();
  op.nodes = rule.nodes;
  op.Ps.resize(k, s);
  op.omega.resize(k);
  std::vector<double> row(basis.size());
  for (Eigen::Index i = 0; i < k; ++i) {
    basis.evaluate(rule.nodes[static_cast<std::size_t>(i)], row);
    for (Eigen::Index j = 0; j < s; ++j) op.Ps(i, j) = row[static_cast<std::size_t>(j)];
    op.omega[i] = rule.weights[static_cast<std::size_t>(i)];
  }
  op.Ialpha = local_frac_table(basis, rule).values;
  op.transfer = op.Ps.transpose() * op.omega.asDiagonal();
  return op;
}

double StepOperator::contraction_bound(double h, double lipschitz) const {
  const double transfer_norm = transfer.cwiseAbs().rowwise().sum().maxCoeff();
  const double ialpha_norm = Ialpha.cwiseAbs().rowwise().sum().maxCoeff();
  return std::pow(h, alpha) * lipschitz * transfer_norm * ialpha_norm;
}

FixedPointFailure::FixedPointFailure(std::size_t step, std::size_t iterations,
                                     double last_increment)
    : std::runtime_error("fixed-point iteration failed at step " + std::to_string(step) +
                         " after " + std::to_string(iterations) + " iterations"),
      step_(step),
      iterations_(iterations),
      last_increment_(last_increment) {}

FixedPointResult fixed_point_step(const StepOperator& op, const Block& phi, double t_start,
                                  double h, const VectorField& f, const SolverConfig& cfg,
                                  std::size_t step_index) {
  const Eigen::Index k = static_cast<Eigen::Index>(op.k());
  const Eigen::Index s = static_cast<Eigen::Index>(op.s());
  const Eigen::Index m = phi.cols();
  const double h_alpha = std::pow(h, op.alpha);

  FixedPointResult result;
  result.gamma = Block::Zero(s, m);
  Block stages(k, m);
  Block field(k, m);
  double previous = std::numeric_limits<double>::infinity();

  for (std::size_t iter = 1; iter <= cfg.fp_max_iters; ++iter) {
    stages.noalias() = phi;
    stages.noalias() += h_alpha * (op.Ialpha * result.gamma);
    for (Eigen::Index i = 0; i < k; ++i) {
      const double t = t_start + op.nodes[static_cast<std::size_t>(i)] * h;
      f(t, std::span<const double>(stages.row(i).data(), static_cast<std::size_t>(m)),
        std::span<double>(field.row(i).data(), static_cast<std::size_t>(m)));
    }
    Block next = op.transfer * field;
    const double increment = max_abs(next - result.gamma);
    result.gamma = std::move(next);
    result.iterations = iter;
    result.increments.push_back(increment);

    if (!std::isfinite(increment)) break;
    const double target = cfg.fp_tol * std::max(1.0, max_abs(result.gamma));
    if (increment <= target) return result;
    if (increment >= previous && increment <= kStallFactor * target) return result;
    previous = increment;
  }
  const double last = result.increments.empty() ? 0.0 : result.increments.back();
  throw FixedPointFailure(step_index, result.iterations, last);
}

HistoryStore::HistoryStore(std::vector<double> y0, JTable table)
    : y0_(std::move(y0)), table_(std::move(table)) {
  y_bar_.push_back(y0_);
}

const Block& HistoryStore::gamma(std::size_t nu) const {
  if (nu == 0 || nu > gamma_.size()) {
    throw std::out_of_range("no coefficient block for step " + std::to_string(nu));
  }
  return gamma_[nu - 1];
}

const std::vector<double>& HistoryStore::grid_value(std::size_t n) const {
  if (n >= y_bar_.size()) {
    throw std::out_of_range("no grid value for step " + std::to_string(n));
  }
  return y_bar_[n];
}

void HistoryStore::push(Block gamma, std::vector<double> y_bar) {
  gamma_.push_back(std::move(gamma));
  y_bar_.push_back(std::move(y_bar));
}

void HistoryStore::ensure_offsets(std::size_t m, const JIntegrator& integrator) {
  while (table_.offsets() < m) table_.extend(table_.offsets() + 1, integrator);
}

Stepper::Stepper(const Problem& problem, const GradedMesh& mesh, const SolverConfig& cfg)
    : alpha_(problem.alpha),
      m_(problem.dimension()),
      f_(problem.f),
      mesh_(mesh),
      cfg_(cfg),
      basis_((cfg.validate(), problem.alpha), cfg.s),
      jacobi_rule_(gauss_jacobi(problem.alpha, cfg.k)),
      legendre_rule_(gauss_legendre(cfg.p)),
      op_(StepOperator::build(basis_, jacobi_rule_)),
      integrator_(basis_, legendre_rule_, cfg.j_threshold),
      history_(problem.y0, JTable(problem.alpha, mesh.ratio(), jacobi_rule_.nodes, cfg.s)),
      inv_gamma_alpha_(1.0 / std::tgamma(problem.alpha)) {
  if (m_ == 0) throw std::invalid_argument("problem dimension must be positive");
  h_alpha_.reserve(mesh_.steps());
  for (std::size_t n = 1; n <= mesh_.steps(); ++n) h_alpha_.push_back(std::pow(mesh_.step(n), alpha_));
}

Block Stepper::history_at_nodes(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(op_.k());
  const auto m = static_cast<Eigen::Index>(m_);
  Block phi(k, m);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index c = 0; c < m; ++c) phi(i, c) = history_.y0()[static_cast<std::size_t>(c)];
  }
  if (n == 0) return phi;
  history_.ensure_offsets(n, integrator_);
  Block sum = Block::Zero(k, m);
  for (std::size_t nu = 1; nu <= n; ++nu) {
    const double weight = h_alpha_[nu - 1];
    sum.noalias() += weight * (history_.j_table().block(n - nu + 1) * history_.gamma(nu));
  }
  phi += inv_gamma_alpha_ * sum;
  return phi;
}

std::vector<double> Stepper::history_term(std::size_t n, double c) const {
  if (c < 0.0 || c > 1.0) throw std::domain_error("history term needs c in [0, 1]");
  if (n > steps_done()) {
    throw std::out_of_range("history term needs completed steps 1.." + std::to_string(n));
  }
  std::vector<double> phi = history_.y0();
  if (n == 0) return phi;
  const std::size_t s = basis_.size();
  std::vector<double> jvals(s);
  std::vector<double> acc(m_, 0.0);
  const double r = mesh_.ratio();
  for (std::size_t nu = 1; nu <= n; ++nu) {
    const std::size_t offset = n - nu + 1;
    const double x = geometric_offset(r, offset) + c * std::pow(r, static_cast<double>(offset));
    if (x <= 1.0) {
      // J_j(1) = (P_j, P_0)/alpha.
      std::fill(jvals.begin(), jvals.end(), 0.0);
      jvals[0] = 1.0 / alpha_;
    } else {
      integrator_.evaluate(x, jvals);
    }
    const double weight = h_alpha_[nu - 1];
    const Block& gamma = history_.gamma(nu);
    for (std::size_t j = 0; j < s; ++j) {
      for (std::size_t comp = 0; comp < m_; ++comp) {
        acc[comp] += weight * jvals[j] *
                     gamma(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(comp));
      }
    }
  }
  for (std::size_t comp = 0; comp < m_; ++comp) phi[comp] += inv_gamma_alpha_ * acc[comp];
  return phi;
}

std::vector<double> Stepper::history_at_end(std::size_t n) {
  const double r = mesh_.ratio();
  while (endpoint_j_.size() < n) {
    const std::size_t offset = endpoint_j_.size() + 1;
    std::vector<double> jvals(basis_.size());
    integrator_.evaluate(geometric_offset(r, offset) + std::pow(r, static_cast<double>(offset)),
                         jvals);
    endpoint_j_.push_back(std::move(jvals));
  }
  std::vector<double> acc(m_, 0.0);
  for (std::size_t nu = 1; nu <= n; ++nu) {
    const std::vector<double>& jvals = endpoint_j_[n - nu];
    const double weight = h_alpha_[nu - 1];
    const Block& gamma = history_.gamma(nu);
    for (std::size_t j = 0; j < jvals.size(); ++j) {
      for (std::size_t comp = 0; comp < m_; ++comp) {
        acc[comp] += weight * jvals[j] *
                     gamma(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(comp));
      }
    }
  }
  std::vector<double> phi = history_.y0();
  for (std::size_t comp = 0; comp < m_; ++comp) phi[comp] += inv_gamma_alpha_ * acc[comp];
  return phi;
}

std::size_t Stepper::advance() {
  if (finished()) throw std::logic_error("all mesh steps are already completed");
  const std::size_t n = steps_done();
  const double h = mesh_.step(n + 1);
  const Block phi = history_at_nodes(n);
  FixedPointResult fp = fixed_point_step(op_, phi, mesh_.point(n), h, f_, cfg_, n + 1);

  std::vector<double> y_bar = history_at_end(n);
  const double lead = std::pow(h, alpha_) / std::tgamma(alpha_ + 1.0);
  for (std::size_t comp = 0; comp < m_; ++comp) {
    y_bar[comp] += lead * fp.gamma(0, static_cast<Eigen::Index>(comp));
  }
  history_.push(std::move(fp.gamma), std::move(y_bar));
  history_.ensure_offsets(n + 1, integrator_);
  return fp.iterations;
}

std::vector<double> Stepper::dense_output(std::size_t n, double c) const {
  if (c < 0.0 || c > 1.0) throw std::domain_error("dense output needs c in [0, 1]");
  if (n == 0 || n > steps_done()) {
    throw std::out_of_range("dense output needs a completed step, got " + std::to_string(n));
  }
  if (c == 1.0) return history_.grid_value(n);
  std::vector<double> value = history_term(n - 1, c);
  const std::vector<double> local = local_frac_at(basis_, jacobi_rule_, c);
  const double h_alpha = std::pow(mesh_.step(n), alpha_);
  const Block& gamma = history_.gamma(n);
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    for (std::size_t comp = 0; comp < m_; ++comp) {
      value[comp] +=
          h_alpha * local[j] * gamma(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(comp));
    }
  }
  return value;
}

SolverRun solve(const Problem& problem, const GradedMesh& mesh, const SolverConfig& cfg) {
  auto stepper = std::make_shared<Stepper>(problem, mesh, cfg);
  SolverRun run;
  run.times.push_back(mesh.point(0));
  run.values.push_back(problem.y0);
  try {
    while (!stepper->finished()) {
      run.iterations.push_back(stepper->advance());
      const std::size_t n = stepper->steps_done();
      run.times.push_back(mesh.point(n));
      run.values.push_back(stepper->grid_value(n));
    }
  } catch (const FixedPointFailure& failure) {
    run.status = RunStatus::fixed_point_failure;
    run.failed_step = failure.step();
    run.message = failure.what();
  }
  run.stepper = std::move(stepper);
  return run;
}

double max_grid_error(const Problem& problem, const SolverRun& run) {
  if (!problem.has_exact()) throw std::invalid_argument("problem has no exact solution");
  std::vector<double> exact(problem.dimension());
  double worst = 0.0;
  for (std::size_t n = 0; n < run.times.size(); ++n) {
    problem.exact(run.times[n], exact);
    for (std::size_t c = 0; c < exact.size(); ++c) {
      worst = std::max(worst, std::abs(run.values[n][c] - exact[c]));
    }
  }
  return worst;
}

}  // namespace fracstep
