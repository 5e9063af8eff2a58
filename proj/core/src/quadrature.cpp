#include "fracstep/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fracstep/jacobi.hpp"

namespace fracstep {

namespace {

// Golub-Welsch: eigenvalues of the symmetric Jacobi matrix are the nodes,
// weights are mass * (first eigenvector component)^2.
QuadratureRule golub_welsch(double alpha, std::size_t n, RuleKind kind) {
  if (n == 0) {
    throw std::domain_error("quadrature rule needs at least one node");
  }
  const MonicRecurrence rec = jacobi_monic_recurrence(alpha, n);
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (std::size_t j = 0; j < n; ++j) diag[j] = rec.center[j];
  for (std::size_t j = 1; j < n; ++j) sub[j - 1] = std::sqrt(rec.norm[j]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("tridiagonal eigensolver failed to converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const Eigen::VectorXd& values = solver.eigenvalues();
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });

  QuadratureRule rule;
  rule.kind = kind;
  rule.alpha = alpha;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mass = rec.norm[0];
  for (std::size_t i = 0; i < n; ++i) {
    const auto col = static_cast<Eigen::Index>(order[i]);
    const double v0 = solver.eigenvectors()(0, col);
    rule.nodes[i] = values[col];
    rule.weights[i] = mass * v0 * v0;
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_jacobi(double alpha, std::size_t k) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::domain_error("alpha must lie in (0, 1]");
  }
  return golub_welsch(alpha, k, RuleKind::gauss_jacobi);
}

QuadratureRule gauss_legendre(std::size_t p) {
  QuadratureRule rule = golub_welsch(1.0, p, RuleKind::gauss_legendre);
  // Symmetrize about 1/2; the eigensolver leaves last-bit asymmetries.
  for (std::size_t i = 0, j = p - 1; i < j; ++i, --j) {
    const double half_gap = 0.5 * ((0.5 - rule.nodes[i]) + (rule.nodes[j] - 0.5));
    rule.nodes[i] = 0.5 - half_gap;
    rule.nodes[j] = 0.5 + half_gap;
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = w;
    rule.weights[j] = w;
  }
  if (p % 2 == 1) rule.nodes[p / 2] = 0.5;
  return rule;
}

}  // namespace fracstep
