#ifndef FRACSTEP_QUADRATURE_HPP
#define FRACSTEP_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace fracstep {

enum class RuleKind { gauss_jacobi, gauss_legendre };

/// Gaussian rule on [0,1]. Nodes are strictly increasing in (0,1), weights are
/// positive and sum to one (the Jacobi weight alpha (1-c)^(alpha-1) has unit
/// mass; Legendre integrates against dc).
struct QuadratureRule {
  RuleKind kind = RuleKind::gauss_legendre;
  double alpha = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <typename F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// k-node Gauss-Jacobi rule for the weight alpha (1-c)^(alpha-1); exact on
/// polynomials of degree <= 2k-1. Nodes are the zeros of P_k.
QuadratureRule gauss_jacobi(double alpha, std::size_t k);

/// p-node Gauss-Legendre rule on [0,1], exact to degree 2p-1.
QuadratureRule gauss_legendre(std::size_t p);

}  // namespace fracstep

#endif  // FRACSTEP_QUADRATURE_HPP
