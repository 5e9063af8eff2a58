#include "fracstep/jacobi.hpp"

#include <cmath>
#include <stdexcept>

namespace fracstep {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::domain_error("alpha must lie in (0, 1]");
  }
}

std::vector<double> rounded(const std::vector<ExtendedReal>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(static_cast<double>(x));
  return out;
}

}  // namespace

MonicRecurrence jacobi_monic_recurrence(double alpha, std::size_t n) {
  check_alpha(alpha);
  const auto rec = jacobi_recurrence<ExtendedReal>(alpha, n);
  return MonicRecurrence{rounded(rec.center), rounded(rec.norm)};
}

JacobiBasis::JacobiBasis(double alpha, std::size_t s) : alpha_(alpha), s_(s) {
  check_alpha(alpha);
  if (s == 0) throw std::domain_error("basis size s must be positive");
  const auto rec = jacobi_recurrence<ExtendedReal>(alpha, s);
  monic_ = MonicRecurrence{rounded(rec.center), rounded(rec.norm)};
  a_ = rounded(rec.a);
  b_ = rounded(rec.b);
  d_ = rounded(rec.d);
}

void JacobiBasis::evaluate(double c, std::span<double> out) const {
  out[0] = 1.0;
  if (s_ == 1) return;
  out[1] = a_[0] * c - b_[0];
  for (std::size_t j = 1; j + 1 < s_; ++j) {
    out[j + 1] = (a_[j] * c - b_[j]) * out[j] - d_[j] * out[j - 1];
  }
}

std::vector<double> JacobiBasis::evaluate(double c) const {
  std::vector<double> out(s_);
  evaluate(c, out);
  return out;
}

}  // namespace fracstep
