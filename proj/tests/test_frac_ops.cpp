#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "fracstep/frac_ops.hpp"
#include "oracles/oracles.hpp"

using namespace fracstep;

TEST(LocalFrac, MonomialIdentity) {
  const double alpha = 0.6;
  const std::size_t s = 10;
  JacobiBasis basis(alpha, s);
  const auto rule = gauss_jacobi(alpha, 30);
  for (double c : {0.05, 0.3, 0.7, 1.0}) {
    const auto v = local_frac_at(basis, rule, c);
    for (std::size_t j = 0; j < s; ++j) {
      EXPECT_NEAR(v[j], oracle::frac_integral_monomial(alpha, j, c), 1e-12) << j << " " << c;
    }
  }
}

TEST(LocalFrac, AdaptiveQuadratureOracle) {
  const double alpha = 0.5;
  struct Case {
    std::size_t s;
    double c;
  };
  for (const Case& cs : {Case{4, 0.7}, Case{3, 0.25}}) {
    JacobiBasis basis(alpha, cs.s);
    const auto rule = gauss_jacobi(alpha, 30);
    const auto v = local_frac_at(basis, rule, cs.c);
    for (std::size_t j = 0; j < cs.s; ++j) {
      const oracle::JacobiPolynomial pj(alpha, j);
      const double ref = oracle::weakly_singular(alpha, cs.c, 0.0, cs.c, pj) / std::tgamma(alpha);
      EXPECT_NEAR(v[j], ref, 1e-12) << j;
    }
  }
}

TEST(LocalFrac, AlphaOneIsAntiderivative) {
  JacobiBasis basis(1.0, 3);
  const auto rule = gauss_jacobi(1.0, 5);
  const double c = 0.4;
  const auto v = local_frac_at(basis, rule, c);
  EXPECT_NEAR(v[0], c, 1e-15);
  EXPECT_NEAR(v[1], std::sqrt(3.0) * (c * c - c), 1e-15);
  EXPECT_NEAR(v[2], std::sqrt(5.0) * (2 * c * c * c - 3 * c * c + c), 1e-15);
}

TEST(LocalFrac, TableAndErrors) {
  JacobiBasis basis(0.5, 4);
  const auto rule = gauss_jacobi(0.5, 6);
  const auto table = local_frac_table(basis, rule);
  ASSERT_EQ(table.values.rows(), 6);
  ASSERT_EQ(table.values.cols(), 4);
  const auto row = local_frac_at(basis, rule, rule.nodes[2]);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(table.values(2, static_cast<Eigen::Index>(j)), row[j]);
  for (double v : local_frac_at(basis, rule, 0.0)) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(local_frac_at(basis, rule, 1.5), std::domain_error);
  EXPECT_THROW(local_frac_at(basis, gauss_jacobi(0.6, 6), 0.5), std::domain_error);
  EXPECT_THROW(local_frac_at(basis, gauss_legendre(6), 0.5), std::domain_error);
  EXPECT_THROW(local_frac_table(basis, gauss_jacobi(0.5, 3)), std::domain_error);
}

TEST(JIntegrals, RecurrenceAgainstExpansionOracle) {
  const std::size_t s = 20;
  for (double alpha : {1.0 / 3.0, 0.5, 0.6, 0.9}) {
    JacobiBasis basis(alpha, s);
    JIntegrator integrator(basis, gauss_legendre(30));
    for (double x : {1.01, 1.05, 1.2, 1.49}) {
      std::vector<double> v(s);
      integrator.evaluate(x, v);
      for (std::size_t j = 0; j < s; ++j) {
        const double ref = oracle::j_integral_expansion(alpha, j, x);
        EXPECT_LE(std::abs(v[j] - ref), 1e-12 * std::abs(ref)) << alpha << " x=" << x << " j=" << j;
      }
    }
  }
}

TEST(JIntegrals, SpotCheckNearSingularity) {
  JacobiBasis basis(0.5, 10);
  JIntegrator integrator(basis, gauss_legendre(30));
  std::vector<double> v(10);
  integrator.evaluate(1.05, v);
  for (std::size_t j = 0; j < 10; ++j) {
    const double ref = oracle::j_integral_expansion(0.5, j, 1.05);
    EXPECT_LE(std::abs(v[j] - ref), 1e-12 * std::abs(ref)) << j;
  }
}

// The double-precision Gauss-Legendre branch carries a few 1e-12 relative
// error on the highest modes (rounded nodes), hence 1e-11 here.
TEST(JIntegrals, BranchesAgree) {
  const std::size_t s = 20;
  for (double alpha : {1.0 / 3.0, 0.5, 0.6}) {
    JacobiBasis basis(alpha, s);
    JIntegrator integrator(basis, gauss_legendre(30));
    for (double x = 1.5; x <= 3.0; x += 0.125) {
      std::vector<double> q(s), r(s);
      integrator.evaluate_quadrature(x, q);
      integrator.evaluate_recurrence(x, r);
      for (std::size_t j = 0; j < s; ++j) {
        EXPECT_LE(std::abs(q[j] - r[j]), 1e-11 * std::abs(r[j])) << alpha << " " << x << " " << j;
      }
    }
  }
}

TEST(JIntegrals, ClosedFormsAndDecay) {
  const double alpha = 0.6;
  JacobiBasis basis(alpha, 6);
  const auto gl = gauss_legendre(30);
  for (double x : {1.001, 1.3, 2.0, 10.0}) {
    const auto v = j_integrals(basis, gl, x);
    EXPECT_NEAR(v[0], (std::pow(x, alpha) - std::pow(x - 1.0, alpha)) / alpha, 1e-14) << x;
  }
  // alpha = 1: J_j(x) = int P_j = delta_j0, independent of x.
  JacobiBasis legendre(1.0, 5);
  for (double x : {1.2, 2.5}) {
    const auto v = j_integrals(legendre, gl, x);
    EXPECT_NEAR(v[0], 1.0, 1e-14);
    for (std::size_t j = 1; j < 5; ++j) EXPECT_NEAR(v[j], 0.0, 1e-14);
  }
  // Far from the interval the kernel is nearly polynomial, so high modes vanish.
  const auto far = j_integrals(basis, gl, 50.0);
  for (std::size_t j = 1; j < 6; ++j) EXPECT_LT(std::abs(far[j]), std::abs(far[j - 1]));
  JIntegrator integrator(basis, gl);
  std::vector<double> out(6);
  EXPECT_THROW(integrator.evaluate(1.0, out), std::domain_error);
}

TEST(JTable, GeometricOffset) {
  EXPECT_EQ(geometric_offset(1.0, 7), 7.0);
  EXPECT_NEAR(geometric_offset(1.2, 3), 1.0 + 1.2 + 1.44, 1e-14);
  EXPECT_NEAR(geometric_offset(1.01, 2), 2.01, 1e-14);
}

TEST(JTable, ExtendAndLookup) {
  const double alpha = 0.5;
  const std::size_t s = 5;
  JacobiBasis basis(alpha, s);
  const auto rule = gauss_jacobi(alpha, 8);
  JIntegrator integrator(basis, gauss_legendre(30));
  JTable table(alpha, 1.2, rule.nodes, s);
  EXPECT_THROW(table.block(1), std::out_of_range);
  EXPECT_THROW(table.extend(2, integrator), std::logic_error);
  extend_j_table(table, 1, integrator);
  const Eigen::MatrixXd* first = &table.block(1);
  for (std::size_t m = 2; m <= 6; ++m) extend_j_table(table, m, integrator);
  EXPECT_EQ(first, &table.block(1));
  EXPECT_EQ(table.offsets(), 6u);
  for (std::size_t m : {1u, 4u}) {
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double x = table.argument(m, rule.nodes[i]);
      EXPECT_NEAR(x, geometric_offset(1.2, m) + rule.nodes[i] * std::pow(1.2, m), 1e-14);
      for (std::size_t j = 0; j < s; ++j) {
        const double ref = oracle::j_integral_expansion(alpha, j, x);
        EXPECT_NEAR(table.block(m)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), ref,
                    1e-12 * std::max(1.0, std::abs(ref)));
      }
    }
  }
  EXPECT_THROW(table.block(7), std::out_of_range);
}
