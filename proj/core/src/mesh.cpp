#include "fracstep/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace fracstep {

GradedMesh::GradedMesh(double h1, double r, std::size_t steps) : h1_(h1), r_(r) {
  if (!(h1 > 0.0)) throw std::domain_error("first step must be positive");
  if (!(r >= 1.0)) throw std::domain_error("mesh ratio must be >= 1");
  if (steps == 0) throw std::domain_error("mesh needs at least one step");
  steps_.resize(steps);
  points_.resize(steps + 1);
  points_[0] = 0.0;
  double h = h1;
  for (std::size_t n = 0; n < steps; ++n) {
    steps_[n] = h;
    points_[n + 1] = points_[n] + h;
    h *= r;
  }
}

GradedMesh build_mesh(double h1, double r, double T) {
  if (!(T > 0.0)) throw std::domain_error("final time must be positive");
  if (!(h1 > 0.0)) throw std::domain_error("first step must be positive");
  if (h1 > T) throw std::domain_error("first step exceeds the integration interval");
  if (!(r >= 1.0)) throw std::domain_error("mesh ratio must be >= 1");

  if (r == 1.0) {
    const auto n = static_cast<std::size_t>(std::llround(T / h1));
    return GradedMesh(h1, 1.0, n == 0 ? 1 : n);
  }
  // h1 (r^x - 1)/(r - 1) = T
  const double x = std::log1p(T * (r - 1.0) / h1) / std::log(r);
  const auto lo = static_cast<std::size_t>(std::floor(x));
  const std::size_t hi = lo + 1;
  auto final_point = [&](std::size_t n) {
    return h1 * std::expm1(static_cast<double>(n) * std::log(r)) / (r - 1.0);
  };
  std::size_t n = hi;
  if (lo >= 1 && std::abs(final_point(lo) - T) <= std::abs(final_point(hi) - T)) n = lo;
  return GradedMesh(h1, r, n);
}

GradedMesh uniform_mesh(std::size_t N, double T) {
  if (N == 0) throw std::domain_error("mesh needs at least one step");
  if (!(T > 0.0)) throw std::domain_error("final time must be positive");
  return GradedMesh(T / static_cast<double>(N), 1.0, N);
}

}  // namespace fracstep
