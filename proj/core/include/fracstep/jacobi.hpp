#ifndef FRACSTEP_JACOBI_HPP
#define FRACSTEP_JACOBI_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "fracstep/extended_real.hpp"

namespace fracstep {

/// Monic three-term recurrence p_{j+1}(c) = (c - center_j) p_j(c) - norm_j p_{j-1}(c)
/// for the Jacobi-(alpha-1, 0) family mapped to [0,1] with weight
/// alpha (1-c)^(alpha-1). norm_0 is the total mass of the weight (= 1).
struct MonicRecurrence {
  std::vector<double> center;
  std::vector<double> norm;
};

/// First n monic recurrence coefficients in closed form.
MonicRecurrence jacobi_monic_recurrence(double alpha, std::size_t n);

/// Closed-form recurrence coefficients evaluated in the arithmetic Real
/// (double-double or wider), for computations that cancel heavily. center and
/// norm hold n = s monic coefficients; a, b, d the s-1 orthonormal ones.
template <typename Real>
struct RecurrenceCoefficients {
  std::vector<Real> center;
  std::vector<Real> norm;
  std::vector<Real> a;
  std::vector<Real> b;
  std::vector<Real> d;
};

template <typename Real>
RecurrenceCoefficients<Real> jacobi_recurrence(double alpha, std::size_t s) {
  using std::sqrt;
  // Classical Jacobi parameters on [-1,1]: a = alpha - 1, b = 0.
  const Real a = Real(alpha) - Real(1.0);
  const Real one(1.0), two(2.0), three(3.0), four(4.0), half(0.5), quarter(0.25);
  RecurrenceCoefficients<Real> rec;
  rec.center.resize(s);
  rec.norm.resize(s);
  for (std::size_t j = 0; j < s; ++j) {
    const Real jj(static_cast<double>(j));
    const Real two_j_ab = two * jj + a;  // 2j + a + b
    Real center_pm1;
    Real norm_pm1 = one;
    if (j == 0) {
      center_pm1 = -a / (a + two);
    } else {
      center_pm1 = -(a * a) / (two_j_ab * (two_j_ab + two));
      if (j == 1) {
        // 4 (1+a)(1+b) / ((2+a+b)^2 (3+a+b)) with the (1+a+b) factor cancelled.
        norm_pm1 = four * (one + a) / ((two + a) * (two + a) * (three + a));
      } else {
        norm_pm1 = four * jj * (jj + a) * jj * (jj + a) /
                   (two_j_ab * two_j_ab * (two_j_ab + one) * (two_j_ab - one));
      }
    }
    // c = (x + 1) / 2 halves every factor; the weight is rescaled to unit mass.
    rec.center[j] = half * (center_pm1 + one);
    rec.norm[j] = (j == 0) ? one : Real(quarter * norm_pm1);
  }
  const std::size_t n = s == 0 ? 0 : s - 1;
  rec.a.resize(n);
  rec.b.resize(n);
  rec.d.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Real root_next = sqrt(rec.norm[j + 1]);
    rec.a[j] = one / root_next;
    rec.b[j] = rec.center[j] / root_next;
    rec.d[j] = (j == 0) ? Real(0.0) : Real(sqrt(rec.norm[j]) / root_next);
  }
  return rec;
}

/// Orthonormal shifted Jacobi polynomials P_0..P_{s-1} on [0,1],
///
///   alpha * int_0^1 (1-c)^(alpha-1) P_i(c) P_j(c) dc = delta_ij,
///
/// generated by P_{j+1}(c) = (a_j c - b_j) P_j(c) - d_j P_{j-1}(c).
/// alpha = 1 gives the shifted orthonormal Legendre polynomials.
class JacobiBasis {
 public:
  JacobiBasis(double alpha, std::size_t s);

  double alpha() const { return alpha_; }
  std::size_t size() const { return s_; }

  std::span<const double> monic_center() const { return monic_.center; }
  std::span<const double> monic_norm() const { return monic_.norm; }
  std::span<const double> a() const { return a_; }
  std::span<const double> b() const { return b_; }
  std::span<const double> d() const { return d_; }

  /// Writes P_0(c)..P_{s-1}(c) into out (size s).
  void evaluate(double c, std::span<double> out) const;
  std::vector<double> evaluate(double c) const;

 private:
  double alpha_;
  std::size_t s_;
  MonicRecurrence monic_;
  std::vector<double> a_, b_, d_;
};

}  // namespace fracstep

#endif  // FRACSTEP_JACOBI_HPP
