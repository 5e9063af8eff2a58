#ifndef FRACSTEP_EXTENDED_REAL_HPP
#define FRACSTEP_EXTENDED_REAL_HPP

#include <cmath>

namespace fracstep {

/// Double-double number: the unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
/// Roughly 31 significant decimal digits; every operation renormalizes.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double x) : hi_(x), lo_(0.0) {}  // NOLINT: implicit by intent
  static ExtendedReal from_parts(double hi, double lo) { return quick_two_sum(hi, lo); }

  double hi() const { return hi_; }
  double lo() const { return lo_; }
  explicit operator double() const { return hi_ + lo_; }

  friend ExtendedReal operator-(const ExtendedReal& x) { return raw(-x.hi_, -x.lo_); }

  friend ExtendedReal operator+(const ExtendedReal& x, const ExtendedReal& y) {
    double s_err;
    double t_err;
    const double s = two_sum(x.hi_, y.hi_, s_err);
    const double t = two_sum(x.lo_, y.lo_, t_err);
    s_err += t;
    double hi = quick_two_sum(s, s_err, s_err);
    s_err += t_err;
    return quick_two_sum(hi, s_err);
  }
  friend ExtendedReal operator-(const ExtendedReal& x, const ExtendedReal& y) { return x + (-y); }

  friend ExtendedReal operator*(const ExtendedReal& x, const ExtendedReal& y) {
    const double p = x.hi_ * y.hi_;
    double e = std::fma(x.hi_, y.hi_, -p);
    e += x.hi_ * y.lo_ + x.lo_ * y.hi_;
    return quick_two_sum(p, e);
  }

  friend ExtendedReal operator/(const ExtendedReal& x, const ExtendedReal& y) {
    // Long division: three correction terms.
    const double q1 = x.hi_ / y.hi_;
    ExtendedReal r = x - y * ExtendedReal(q1);
    const double q2 = r.hi_ / y.hi_;
    r = r - y * ExtendedReal(q2);
    const double q3 = r.hi_ / y.hi_;
    return quick_two_sum(q1, q2) + ExtendedReal(q3);
  }

  ExtendedReal& operator+=(const ExtendedReal& y) { return *this = *this + y; }
  ExtendedReal& operator-=(const ExtendedReal& y) { return *this = *this - y; }
  ExtendedReal& operator*=(const ExtendedReal& y) { return *this = *this * y; }
  ExtendedReal& operator/=(const ExtendedReal& y) { return *this = *this / y; }

  friend bool operator==(const ExtendedReal& x, const ExtendedReal& y) {
    return x.hi_ == y.hi_ && x.lo_ == y.lo_;
  }
  friend bool operator<(const ExtendedReal& x, const ExtendedReal& y) {
    return x.hi_ < y.hi_ || (x.hi_ == y.hi_ && x.lo_ < y.lo_);
  }

  /// Error-free transformation a + b = s + err.
  static double two_sum(double a, double b, double& err) {
    const double s = a + b;
    const double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
    return s;
  }

 private:
  static ExtendedReal raw(double hi, double lo) {
    ExtendedReal r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r;
  }
  // Requires |a| >= |b| (or a == 0).
  static double quick_two_sum(double a, double b, double& err) {
    const double s = a + b;
    err = b - (s - a);
    return s;
  }
  static ExtendedReal quick_two_sum(double a, double b) {
    double err;
    const double s = quick_two_sum(a, b, err);
    return raw(s, err);
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

ExtendedReal abs(const ExtendedReal& x);
ExtendedReal sqrt(const ExtendedReal& x);
ExtendedReal exp(const ExtendedReal& x);
/// Natural logarithm; x must be positive.
ExtendedReal log(const ExtendedReal& x);
/// x^y for x > 0 (x == 0 returns 0 for y > 0).
ExtendedReal pow(const ExtendedReal& x, const ExtendedReal& y);

}  // namespace fracstep

#endif  // FRACSTEP_EXTENDED_REAL_HPP
