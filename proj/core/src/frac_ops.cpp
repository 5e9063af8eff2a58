#include "fracstep/frac_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace fracstep {

namespace {

using Wide = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

}  // namespace

struct JIntegrator::WideCoefficients {
  std::vector<Wide> a, b, d;
};

void local_frac_at(const JacobiBasis& basis, const QuadratureRule& rule, double c,
                   std::span<double> out) {
  if (rule.kind != RuleKind::gauss_jacobi || rule.alpha != basis.alpha()) {
    throw std::domain_error("local fractional integrals need the Gauss-Jacobi rule of the basis");
  }
  if (c < 0.0 || c > 1.0) {
    throw std::domain_error("local fractional integrals are defined for c in [0, 1]");
  }
  const std::size_t s = basis.size();
  std::fill(out.begin(), out.end(), 0.0);
  if (c == 0.0) return;

  std::vector<double> p(s);
  for (std::size_t l = 0; l < rule.size(); ++l) {
    basis.evaluate(c * rule.nodes[l], p);
    for (std::size_t j = 0; j < s; ++j) out[j] += rule.weights[l] * p[j];
  }
  const double scale = std::pow(c, basis.alpha()) / std::tgamma(basis.alpha() + 1.0);
  for (std::size_t j = 0; j < s; ++j) out[j] *= scale;
}

std::vector<double> local_frac_at(const JacobiBasis& basis, const QuadratureRule& rule,
                                  double c) {
  std::vector<double> out(basis.size());
  local_frac_at(basis, rule, c, out);
  return out;
}

LocalFracTable local_frac_table(const JacobiBasis& basis, const QuadratureRule& rule) {
  if (rule.size() < basis.size()) {
    throw std::domain_error("Gauss-Jacobi rule must have k >= s nodes");
  }
  LocalFracTable table;
  table.alpha = basis.alpha();
  table.s = basis.size();
  table.k = rule.size();
  table.values.resize(static_cast<Eigen::Index>(table.k), static_cast<Eigen::Index>(table.s));
  std::vector<double> row(table.s);
  for (std::size_t i = 0; i < table.k; ++i) {
    local_frac_at(basis, rule, rule.nodes[i], row);
    for (std::size_t j = 0; j < table.s; ++j) {
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
  }
  return table;
}

JIntegrator::JIntegrator(const JacobiBasis& basis, const QuadratureRule& legendre,
                         double threshold)
    : alpha_(basis.alpha()),
      s_(basis.size()),
      threshold_(threshold),
      gl_nodes_(legendre.nodes),
      gl_weights_(legendre.weights) {
  if (legendre.kind != RuleKind::gauss_legendre) {
    throw std::domain_error("history integrals need a Gauss-Legendre rule");
  }
  if (!(threshold > 1.0)) {
    throw std::domain_error("branch threshold must exceed 1");
  }
  auto rec = jacobi_recurrence<Wide>(alpha_, s_);
  wide_ = std::make_shared<const WideCoefficients>(
      WideCoefficients{std::move(rec.a), std::move(rec.b), std::move(rec.d)});
  const auto p = static_cast<Eigen::Index>(gl_nodes_.size());
  gl_basis_.resize(p, static_cast<Eigen::Index>(s_));
  std::vector<double> row(s_);
  for (Eigen::Index i = 0; i < p; ++i) {
    basis.evaluate(gl_nodes_[static_cast<std::size_t>(i)], row);
    for (std::size_t j = 0; j < s_; ++j) gl_basis_(i, static_cast<Eigen::Index>(j)) = row[j];
  }
}

void JIntegrator::evaluate(double x, std::span<double> out) const {
  if (!(x > 1.0)) {
    throw std::domain_error("J integrals require x > 1, got " + std::to_string(x));
  }
  if (x >= threshold_) {
    evaluate_quadrature(x, out);
  } else {
    evaluate_recurrence(x, out);
  }
}

void JIntegrator::evaluate_quadrature(double x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < gl_nodes_.size(); ++i) {
    const double kernel = gl_weights_[i] * std::pow(x - gl_nodes_[i], alpha_ - 1.0);
    const auto row = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < s_; ++j) out[j] += kernel * gl_basis_(row, static_cast<Eigen::Index>(j));
  }
}

void JIntegrator::evaluate_recurrence(double x, std::span<double> out) const {
  const Wide xe(x);
  const Wide xm1 = xe - 1;
  const Wide alpha(alpha_);

  // Seeds J_0^{alpha+l}(x), l = 0..s-1.
  std::vector<Wide> current(s_);
  Wide upper = pow(xe, alpha);
  Wide lower = xm1 == 0 ? Wide(0) : Wide(pow(xm1, alpha));
  for (std::size_t l = 0; l < s_; ++l) {
    current[l] = (upper - lower) / (alpha + static_cast<unsigned>(l));
    upper *= xe;
    lower *= xm1;
  }
  out[0] = static_cast<double>(current[0]);
  if (s_ == 1) return;

  // Row j of the triangle holds J_j^{alpha+l} for l = 0..s-1-j.
  const WideCoefficients& c = *wide_;
  std::vector<Wide> previous(s_, Wide(0));
  std::vector<Wide> next(s_);
  for (std::size_t j = 0; j + 1 < s_; ++j) {
    const Wide lin = c.a[j] * xe - c.b[j];
    const std::size_t width = s_ - 1 - j;
    for (std::size_t l = 0; l < width; ++l) {
      next[l] = lin * current[l] - c.a[j] * current[l + 1] - c.d[j] * previous[l];
    }
    out[j + 1] = static_cast<double>(next[0]);
    std::swap(previous, current);
    std::swap(current, next);
  }
}

std::vector<double> j_integrals(const JacobiBasis& basis, const QuadratureRule& legendre,
                                double x) {
  std::vector<double> out(basis.size());
  JIntegrator(basis, legendre).evaluate(x, out);
  return out;
}

double geometric_offset(double r, std::size_t m) {
  if (r == 1.0) return static_cast<double>(m);
  const double md = static_cast<double>(m);
  return std::expm1(md * std::log1p(r - 1.0)) / (r - 1.0);
}

JTable::JTable(double alpha, double r, std::vector<double> nodes, std::size_t s)
    : alpha_(alpha), r_(r), nodes_(std::move(nodes)), s_(s) {
  if (r < 1.0) throw std::domain_error("mesh ratio must be >= 1");
}

const Eigen::MatrixXd& JTable::block(std::size_t m) const {
  if (m == 0 || m > blocks_.size()) {
    throw std::out_of_range("J table has no block for offset " + std::to_string(m));
  }
  return blocks_[m - 1];
}

double JTable::argument(std::size_t m, double c) const {
  return geometric_offset(r_, m) + c * std::pow(r_, static_cast<double>(m));
}

void JTable::extend(std::size_t m, const JIntegrator& integrator) {
  if (m != blocks_.size() + 1) {
    throw std::logic_error("J table offsets must be appended in order: expected " +
                           std::to_string(blocks_.size() + 1) + ", got " + std::to_string(m));
  }
  if (integrator.size() != s_ || integrator.alpha() != alpha_) {
    throw std::invalid_argument("integrator does not match the J table basis");
  }
  Eigen::MatrixXd block(static_cast<Eigen::Index>(nodes_.size()), static_cast<Eigen::Index>(s_));
  std::vector<double> row(s_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    integrator.evaluate(argument(m, nodes_[i]), row);
    for (std::size_t j = 0; j < s_; ++j) {
      block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
  }
  blocks_.push_back(std::move(block));
}

void extend_j_table(JTable& table, std::size_t m, const JIntegrator& integrator) {
  table.extend(m, integrator);
}

}  // namespace fracstep
