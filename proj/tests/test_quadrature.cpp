#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fracstep/quadrature.hpp"
#include "oracles/oracles.hpp"

using fracstep::gauss_jacobi;
using fracstep::gauss_legendre;

class MonomialExactness : public ::testing::TestWithParam<std::tuple<double, std::size_t>> {};

TEST_P(MonomialExactness, UpToDegree2kMinus1) {
  const auto [alpha, k] = GetParam();
  const auto rule = gauss_jacobi(alpha, k);
  const auto moments = oracle::jacobi_moments(alpha, 2 * k);
  for (std::size_t l = 0; l < 2 * k; ++l) {
    const double q = rule.integrate([&](double c) { return std::pow(c, static_cast<double>(l)); });
    EXPECT_NEAR(q, static_cast<double>(moments[l]), 1e-13) << "degree " << l;
  }
}

INSTANTIATE_TEST_SUITE_P(Rules, MonomialExactness,
                         ::testing::Combine(::testing::Values(0.3, 0.5, 0.6, 1.0),
                                            ::testing::Values(std::size_t{2}, std::size_t{5},
                                                              std::size_t{30})));

TEST(GaussJacobi, TwoNodeRuleFromMoments) {
  // Monic P_2 = c^2 + a1 c + a0 from orthogonality to 1 and c, then a 2x2
  // Vandermonde solve for the weights.
  const double alpha = 0.5;
  const auto m = oracle::jacobi_moments(alpha, 4);
  using R = oracle::Real50;
  const R det = m[1] * m[1] - m[0] * m[2];
  const R a1 = (m[3] * m[0] - m[2] * m[1]) / det;
  const R a0 = (m[2] * m[2] - m[3] * m[1]) / det;
  const R disc = sqrt(a1 * a1 - 4 * a0);
  const R c1 = (-a1 - disc) / 2;
  const R c2 = (-a1 + disc) / 2;
  const R w2 = (m[1] - c1 * m[0]) / (c2 - c1);
  const R w1 = m[0] - w2;
  const auto rule = gauss_jacobi(alpha, 2);
  ASSERT_EQ(rule.size(), 2u);
  EXPECT_NEAR(rule.nodes[0], static_cast<double>(c1), 1e-15);
  EXPECT_NEAR(rule.nodes[1], static_cast<double>(c2), 1e-15);
  EXPECT_NEAR(rule.weights[0], static_cast<double>(w1), 1e-15);
  EXPECT_NEAR(rule.weights[1], static_cast<double>(w2), 1e-15);
}

TEST(GaussJacobi, NodesAreZerosOfTheNextPolynomial) {
  const auto rule = gauss_jacobi(0.6, 7);
  for (double c : rule.nodes) EXPECT_NEAR(oracle::jacobi_value(0.6, 7, c), 0.0, 1e-12);
}

TEST(GaussJacobi, NodesInterlace) {
  for (double alpha : {0.3, 0.6}) {
    const auto lo = gauss_jacobi(alpha, 9);
    const auto hi = gauss_jacobi(alpha, 10);
    EXPECT_GT(lo.nodes.front(), 0.0);
    EXPECT_LT(lo.nodes.back(), 1.0);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      EXPECT_LT(hi.nodes[i], lo.nodes[i]);
      EXPECT_LT(lo.nodes[i], hi.nodes[i + 1]);
    }
    EXPECT_TRUE(std::all_of(hi.weights.begin(), hi.weights.end(), [](double w) { return w > 0; }));
    EXPECT_NEAR(std::accumulate(hi.weights.begin(), hi.weights.end(), 0.0), 1.0, 1e-14);
  }
}

TEST(GaussLegendre, TwoPointRule) {
  const auto rule = gauss_legendre(2);
  const double off = 0.5 / std::sqrt(3.0);
  EXPECT_NEAR(rule.nodes[0], 0.5 - off, 4e-16);
  EXPECT_NEAR(rule.nodes[1], 0.5 + off, 4e-16);
  EXPECT_NEAR(rule.weights[0], 0.5, 4e-16);
  EXPECT_NEAR(rule.weights[1], 0.5, 4e-16);
}

TEST(GaussLegendre, SymmetricAndExact) {
  const auto rule = gauss_legendre(30);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    EXPECT_NEAR(rule.nodes[i], 1.0 - rule.nodes[rule.size() - 1 - i], 2e-16);
    EXPECT_EQ(rule.weights[i], rule.weights[rule.size() - 1 - i]);
  }
  EXPECT_NEAR(rule.integrate([](double c) { return std::pow(c, 59.0); }), 1.0 / 60.0, 1e-15);
  EXPECT_NEAR(rule.integrate([](double c) { return std::exp(c); }), std::exp(1.0) - 1.0, 1e-15);
}

TEST(Quadrature, RejectsInvalidArguments) {
  EXPECT_THROW(gauss_jacobi(0.0, 3), std::domain_error);
  EXPECT_THROW(gauss_jacobi(1.5, 3), std::domain_error);
  EXPECT_THROW(gauss_jacobi(0.5, 0), std::domain_error);
  EXPECT_THROW(gauss_legendre(0), std::domain_error);
}
