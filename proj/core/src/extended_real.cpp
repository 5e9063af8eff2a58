#include "fracstep/extended_real.hpp"

#include <limits>
#include <stdexcept>

namespace fracstep {

namespace {

const ExtendedReal kLn2 = ExtendedReal::from_parts(6.931471805599452862e-01, 2.319046813846299558e-17);

}  // namespace

ExtendedReal abs(const ExtendedReal& x) { return x.hi() < 0.0 ? -x : x; }

ExtendedReal sqrt(const ExtendedReal& x) {
  if (x.hi() == 0.0) return ExtendedReal(0.0);
  if (x.hi() < 0.0) throw std::domain_error("sqrt of negative ExtendedReal");
  // One Newton step on the double approximation (Karp's trick).
  const double root = std::sqrt(x.hi());
  const ExtendedReal r(root);
  return r + (x - r * r) / ExtendedReal(2.0 * root);
}

ExtendedReal exp(const ExtendedReal& x) {
  if (x.hi() > 709.0) return ExtendedReal(std::numeric_limits<double>::infinity());
  if (x.hi() < -745.0) return ExtendedReal(0.0);
  if (x.hi() == 0.0 && x.lo() == 0.0) return ExtendedReal(1.0);

  // x = m ln2 + r, |r| <= ln2/2, then r is scaled by 2^-10 and the Taylor
  // series result squared ten times.
  const double m = std::nearbyint(x.hi() / kLn2.hi());
  ExtendedReal r = x - kLn2 * ExtendedReal(m);
  constexpr int kSquarings = 10;
  r = r * ExtendedReal(std::ldexp(1.0, -kSquarings));

  ExtendedReal term = r;
  ExtendedReal sum = r;
  for (int n = 2; n < 30; ++n) {
    term = term * r / ExtendedReal(static_cast<double>(n));
    sum += term;
    if (std::abs(term.hi()) < 1e-34 * std::abs(sum.hi()) + 1e-300) break;
  }
  // (1 + sum)^(2^10) computed as repeated expm1 doubling: e' = 2e + e^2.
  for (int i = 0; i < kSquarings; ++i) sum = ExtendedReal(2.0) * sum + sum * sum;
  sum += ExtendedReal(1.0);
  const int exponent = static_cast<int>(m);
  return ExtendedReal::from_parts(std::ldexp(sum.hi(), exponent), std::ldexp(sum.lo(), exponent));
}

ExtendedReal log(const ExtendedReal& x) {
  if (!(x.hi() > 0.0)) throw std::domain_error("log of non-positive ExtendedReal");
  if (x.hi() == 1.0 && x.lo() == 0.0) return ExtendedReal(0.0);
  // Newton on exp(y) = x; each step doubles the correct digits.
  ExtendedReal y(std::log(x.hi()));
  for (int i = 0; i < 2; ++i) y = y + x * exp(-y) - ExtendedReal(1.0);
  return y;
}

ExtendedReal pow(const ExtendedReal& x, const ExtendedReal& y) {
  if (x.hi() == 0.0 && x.lo() == 0.0) {
    if (y.hi() > 0.0) return ExtendedReal(0.0);
    throw std::domain_error("pow(0, y) with y <= 0");
  }
  return exp(y * log(x));
}

}  // namespace fracstep
