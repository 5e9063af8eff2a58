#include "fracstep/reference.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace fracstep {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

// Largest z^(1/alpha) for which the series peak term e^(|z|^(1/alpha)) still
// leaves double accuracy after double-double cancellation.
constexpr double kSeriesPeakLimit = 30.0;
constexpr std::size_t kMaxSeriesTerms = 4000;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::domain_error("alpha must lie in (0, 1]");
  }
}

}  // namespace

MittagLeffler::MittagLeffler(double alpha) : alpha_(alpha) {
  check_alpha(alpha);
  const Wide walpha(alpha);
  for (std::size_t j = 0; j < kMaxSeriesTerms; ++j) {
    const Wide g = boost::math::tgamma(walpha * static_cast<unsigned>(j) + 1);
    const Wide inv = 1 / g;
    const double hi = static_cast<double>(inv);
    if (hi < 1e-300) break;
    const double lo = static_cast<double>(inv - hi);
    inv_gamma_.push_back(ExtendedReal::from_parts(hi, lo));
  }
}

double MittagLeffler::operator()(double z) const {
  if (z > 0.0) throw std::domain_error("Mittag-Leffler evaluation supports z <= 0 only");
  if (alpha_ == 1.0) return std::exp(z);
  const double peak = std::pow(-z, 1.0 / alpha_);
  if (-z <= kSeriesRadius && peak <= kSeriesPeakLimit) return series(z);
  return integral(z);
}

double MittagLeffler::series(double z) const {
  if (z > 0.0) throw std::domain_error("Mittag-Leffler evaluation supports z <= 0 only");
  if (z == 0.0) return 1.0;
  const ExtendedReal ze(z);
  ExtendedReal power(1.0);
  ExtendedReal sum(0.0);
  double previous = std::numeric_limits<double>::infinity();
  for (const ExtendedReal& coeff : inv_gamma_) {
    const ExtendedReal term = power * coeff;
    sum += term;
    const double magnitude = std::abs(term.hi());
    if (magnitude < previous && magnitude <= 1e-34 * std::max(std::abs(sum.hi()), 1e-300)) break;
    previous = magnitude;
    power *= ze;
    if (!std::isfinite(power.hi())) {
      throw std::overflow_error("Mittag-Leffler series overflowed");
    }
  }
  return static_cast<double>(sum);
}

double MittagLeffler::integral(double z) const {
  if (!(z < 0.0)) throw std::domain_error("integral branch needs z < 0");
  if (alpha_ >= 1.0) throw std::domain_error("integral branch needs alpha < 1");
  const double pi = boost::math::constants::pi<double>();
  const double t = std::pow(-z, 1.0 / alpha_);
  const double cos_ap = std::cos(alpha_ * pi);
  const double inv_alpha = 1.0 / alpha_;
  auto integrand = [&](double u) {
    if (u == 0.0) return 1.0;
    const double decay = std::exp(-t * std::pow(u, inv_alpha));
    return decay / (u * u + 2.0 * u * cos_ap + 1.0);
  };
  using boost::math::quadrature::gauss_kronrod;
  // Split at the decay scale so the adaptive rule sees the peak.
  const double knee = std::pow(1.0 / t, alpha_);
  double error = 0.0;
  const double head = gauss_kronrod<double, 61>::integrate(integrand, 0.0, knee, 10, 1e-14, &error);
  const double tail = gauss_kronrod<double, 61>::integrate(
      integrand, knee, std::numeric_limits<double>::infinity(), 10, 1e-14, &error);
  return std::sin(alpha_ * pi) / (alpha_ * pi) * (head + tail);
}

double mittag_leffler(double alpha, double z) {
  check_alpha(alpha);
  if (alpha == 1.0) {
    if (z > 0.0) throw std::domain_error("Mittag-Leffler evaluation supports z <= 0 only");
    return std::exp(z);
  }
  thread_local std::map<double, std::shared_ptr<const MittagLeffler>> cache;
  auto& slot = cache[alpha];
  if (!slot) slot = std::make_shared<const MittagLeffler>(alpha);
  return (*slot)(z);
}

void ProblemRegistry::add(Problem problem) {
  check_alpha(problem.alpha);
  if (problem.y0.empty()) throw std::invalid_argument("problem needs a non-empty initial value");
  if (!problem.f) throw std::invalid_argument("problem needs a vector field");
  std::string key = problem.name;
  problems_.insert_or_assign(std::move(key), std::move(problem));
}

bool ProblemRegistry::contains(const std::string& name) const {
  return problems_.count(name) != 0;
}

const Problem& ProblemRegistry::get(const std::string& name) const {
  auto it = problems_.find(name);
  if (it == problems_.end()) throw std::invalid_argument("unknown problem '" + name + "'");
  return it->second;
}

std::vector<std::string> ProblemRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& entry : problems_) out.push_back(entry.first);
  return out;
}

Problem linear_problem(double alpha, double lambda, double y0, double T) {
  check_alpha(alpha);
  Problem p;
  p.name = "linear";
  p.description = "D^alpha y = lambda y";
  p.alpha = alpha;
  p.y0 = {y0};
  p.T = T;
  p.f = [lambda](double, std::span<const double> y, std::span<double> dy) { dy[0] = lambda * y[0]; };
  if (lambda <= 0.0) {
    auto ml = std::make_shared<const MittagLeffler>(alpha);
    p.exact = [ml, alpha, lambda, y0](double t, std::span<double> y) {
      y[0] = y0 * (*ml)(lambda * std::pow(t, alpha));
    };
  }
  p.mesh = MeshHint{1e-6, 1.01, 0};
  return p;
}

ProblemRegistry builtin_problems() {
  ProblemRegistry registry;

  Problem prob1 = linear_problem(0.6, -10.0, 1.0, 5.0);
  prob1.name = "prob1";
  prob1.description = "D^0.6 y = -10 y, y(0) = 1, t in [0, 5]";
  registry.add(std::move(prob1));

  {
    const double c_t75 = 40320.0 / std::tgamma(8.5);
    const double c_t375 = 3.0 * std::tgamma(5.25) / std::tgamma(4.75);
    const double c_0 = 2.25 * std::tgamma(1.5);
    Problem p;
    p.name = "prob2";
    p.description = "D^0.5 y = -y^1.5 + forcing, y(0) = 0, t in [0, 1]";
    p.alpha = 0.5;
    p.y0 = {0.0};
    p.T = 1.0;
    p.f = [=](double t, std::span<const double> y, std::span<double> dy) {
      const double cube_base = 1.5 * std::pow(t, 0.25) - std::pow(t, 4.0);
      // Odd extension of y^1.5 keeps the field real for y < 0.
      dy[0] = -y[0] * std::sqrt(std::abs(y[0])) + c_t75 * std::pow(t, 7.5) -
              c_t375 * std::pow(t, 3.75) + cube_base * cube_base * cube_base + c_0;
    };
    p.exact = [](double t, std::span<double> y) {
      y[0] = std::pow(t, 8.0) - 3.0 * std::pow(t, 4.25) + 2.25 * std::sqrt(t);
    };
    p.mesh = MeshHint{0.0, 1.0, 32};
    registry.add(std::move(p));
  }

  const double g53_over_g43 = std::tgamma(5.0 / 3.0) / std::tgamma(4.0 / 3.0);
  const double g73 = std::tgamma(7.0 / 3.0);
  {
    Problem p;
    p.name = "prob3";
    p.description = "D^(1/3) y = t/10 (y^3 - (t^(2/3)+1)^3) + Gamma(5/3)/Gamma(4/3) t^(1/3), y(0) = 1";
    p.alpha = 1.0 / 3.0;
    p.y0 = {1.0};
    p.T = 1.0;
    p.f = [=](double t, std::span<const double> y, std::span<double> dy) {
      const double base = std::pow(t, 2.0 / 3.0) + 1.0;
      dy[0] = t / 10.0 * (y[0] * y[0] * y[0] - base * base * base) + g53_over_g43 * std::cbrt(t);
    };
    p.exact = [](double t, std::span<double> y) { y[0] = std::pow(t, 2.0 / 3.0) + 1.0; };
    p.mesh = MeshHint{1e-11, 1.2, 0};
    registry.add(std::move(p));
  }
  {
    Problem p;
    p.name = "prob4";
    p.description = "D^(1/3) y = (y^3 - t^4)/3 + Gamma(7/3) t, y(0) = 0";
    p.alpha = 1.0 / 3.0;
    p.y0 = {0.0};
    p.T = 1.0;
    p.f = [=](double t, std::span<const double> y, std::span<double> dy) {
      dy[0] = (y[0] * y[0] * y[0] - std::pow(t, 4.0)) / 3.0 + g73 * t;
    };
    p.exact = [](double t, std::span<double> y) { y[0] = std::pow(t, 4.0 / 3.0); };
    p.mesh = MeshHint{0.0, 1.0, 8};
    registry.add(std::move(p));
  }
  {
    Problem p;
    p.name = "prob34";
    p.description = "prob3 and prob4 coupled as a 2-d system";
    p.alpha = 1.0 / 3.0;
    p.y0 = {1.0, 0.0};
    p.T = 1.0;
    p.f = [=](double t, std::span<const double> y, std::span<double> dy) {
      // sqrt(|y2|) and (y1-1)^6 reproduce t^(2/3) and t^4 along the solution.
      const double base = std::sqrt(std::abs(y[1])) + 1.0;
      const double shifted = y[0] - 1.0;
      const double shifted3 = shifted * shifted * shifted;
      dy[0] = t / 10.0 * (y[0] * y[0] * y[0] - base * base * base) + g53_over_g43 * std::cbrt(t);
      dy[1] = (y[1] * y[1] * y[1] - shifted3 * shifted3) / 3.0 + g73 * t;
    };
    p.exact = [](double t, std::span<double> y) {
      y[0] = std::pow(t, 2.0 / 3.0) + 1.0;
      y[1] = std::pow(t, 4.0 / 3.0);
    };
    p.mesh = MeshHint{1e-11, 1.2, 0};
    registry.add(std::move(p));
  }
  return registry;
}

}  // namespace fracstep
