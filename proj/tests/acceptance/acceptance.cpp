// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fracstep/cli/commands.hpp"
#include "fracstep/frac_ops.hpp"
#include "fracstep/stepper.hpp"
#include "oracles/oracles.hpp"

using namespace fracstep;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = check();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.pass) ++failures;
  std::printf("[%s] %d. %s: %s (%.2fs)\n", out.pass ? "PASS" : "FAIL", id, title,
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const ProblemRegistry& registry() {
  static const ProblemRegistry r = builtin_problems();
  return r;
}

struct Timed {
  SolverRun run;
  double error = NAN;
  double seconds = 0.0;
};

Timed timed_solve(const std::string& name, const GradedMesh& mesh, std::size_t s, std::size_t k) {
  const Problem& p = registry().get(name);
  SolverConfig cfg;
  cfg.s = s;
  cfg.k = k;
  const auto start = std::chrono::steady_clock::now();
  Timed t;
  t.run = solve(p, mesh, cfg);
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (t.run.ok()) t.error = max_grid_error(p, t.run);
  return t;
}

double order(double e0, double e1, double h0, double h1) { return std::log(e0 / e1) / std::log(h0 / h1); }

}  // namespace

int main() {
  report(1, "prob2 s=8 N=32 spot check", [] {
    const Timed t = timed_solve("prob2", uniform_mesh(32, 1.0), 8, 30);
    const bool ok = t.run.ok() && t.error <= 1e-12 && t.seconds < 5.0;
    return Outcome{ok, fmt("max error %.3e", t.error) + fmt(", %.3fs", t.seconds)};
  });

  report(2, "prob2 N=32 spectral trend over s=2,4,6,8", [] {
    std::vector<double> errors;
    for (std::size_t s : {2u, 4u, 6u, 8u}) errors.push_back(timed_solve("prob2", uniform_mesh(32, 1.0), s, 30).error);
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < errors.size(); ++i) {
      detail += fmt(i == 0 ? "%.2e" : " > %.2e", errors[i]);
      if (i > 0 && !(errors[i] < errors[i - 1])) ok = false;
    }
    const double span = std::log10(errors.front() / errors.back());
    ok = ok && span >= 9.0;
    return Outcome{ok, detail + fmt(", span %.1f decades", span)};
  });

  report(3, "prob2 s=2 uniform-mesh order over N=4,8,16", [] {
    std::vector<double> e;
    for (std::size_t N : {4u, 8u, 16u}) e.push_back(timed_solve("prob2", uniform_mesh(N, 1.0), 2, 30).error);
    const double o1 = order(e[0], e[1], 0.25, 0.125);
    const double o2 = order(e[1], e[2], 0.125, 0.0625);
    const bool ok = o1 >= 2.0 && o1 <= 3.0 && o2 >= 2.0 && o2 <= 3.0;
    return Outcome{ok, fmt("orders %.3f", o1) + fmt(", %.3f", o2)};
  });

  report(4, "prob4 s=1 first order, s=2 machine accuracy", [] {
    const std::vector<std::size_t> Ns = {8, 16, 32, 64};
    std::vector<double> e1;
    double worst2 = 0.0;
    for (std::size_t N : Ns) {
      e1.push_back(timed_solve("prob4", uniform_mesh(N, 1.0), 1, 30).error);
    }
    for (std::size_t N : {2u, 4u, 8u, 16u, 32u, 64u}) {
      const Timed t = timed_solve("prob4", uniform_mesh(N, 1.0), 2, 30);
      worst2 = t.run.ok() ? std::max(worst2, t.error) : INFINITY;
    }
    bool ok = worst2 <= 1e-12;
    std::string detail = "s=1 orders";
    for (std::size_t i = 1; i < Ns.size(); ++i) {
      const double o = order(e1[i - 1], e1[i], 1.0 / Ns[i - 1], 1.0 / Ns[i]);
      ok = ok && std::abs(o - 1.0) <= 0.3;
      detail += fmt(" %.3f", o);
    }
    return Outcome{ok, detail + fmt("; s=2 worst error %.2e", worst2)};
  });

  report(5, "prob3 and prob34 s=8 h1=1e-11 r=1.2", [] {
    const GradedMesh mesh = build_mesh(1e-11, 1.2, 1.0);
    const Timed a = timed_solve("prob3", mesh, 8, 30);
    const Timed b = timed_solve("prob34", mesh, 8, 30);
    const bool ok = a.run.ok() && b.run.ok() && a.error <= 1e-11 && b.error <= 1e-11 &&
                    a.seconds < 10.0 && b.seconds < 10.0;
    return Outcome{ok, fmt("N=%.0f", static_cast<double>(mesh.steps())) + fmt(", prob3 %.3e", a.error) +
                           fmt(" (%.2fs)", a.seconds) + fmt(", prob34 %.3e", b.error) +
                           fmt(" (%.2fs)", b.seconds)};
  });

  report(6, "prob1 Mittag-Leffler reference", [] {
    const Timed good = timed_solve("prob1", build_mesh(1e-6, 1.01, 5.0), 4, 30);
    const Timed bad = timed_solve("prob1", build_mesh(1e-4, 1.01, 5.0), 1, 30);
    const bool ok = good.run.ok() && good.error <= 1e-8 && !bad.run.ok();
    return Outcome{ok, fmt("s=4 h1=1e-6 error %.3e", good.error) +
                           (bad.run.ok() ? std::string("; s=1 h1=1e-4 unexpectedly converged")
                                         : fmt("; s=1 h1=1e-4 fixed-point failure at step %.0f",
                                               static_cast<double>(bad.run.failed_step)))};
  });

  report(7, "prob1 s=5 h1=1e-6: k=s worse than k=30", [] {
    const GradedMesh mesh = build_mesh(1e-6, 1.01, 5.0);
    const Timed k30 = timed_solve("prob1", mesh, 5, 30);
    const Timed ks = timed_solve("prob1", mesh, 5, 5);
    const bool ok = k30.run.ok() && ks.run.ok() && ks.error > k30.error;
    return Outcome{ok, fmt("k=5 %.3e", ks.error) + fmt(" vs k=30 %.3e", k30.error)};
  });

  report(8, "property suite", [] {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;

    // (a) Gauss-Jacobi monomial exactness
    double worst_a = 0.0;
    for (double alpha : {0.3, 0.5, 0.6, 1.0}) {
      for (std::size_t k : {2u, 5u, 30u}) {
        const auto rule = gauss_jacobi(alpha, k);
        const auto m = oracle::jacobi_moments(alpha, 2 * k);
        for (std::size_t l = 0; l < 2 * k; ++l) {
          const double q = rule.integrate([&](double c) { return std::pow(c, static_cast<double>(l)); });
          worst_a = std::max(worst_a, std::abs(q - static_cast<double>(m[l])));
        }
      }
    }
    ok = ok && worst_a <= 1e-13;
    detail += fmt("(a) %.1e", worst_a);

    // (b) J recurrence vs high-precision expansion
    double worst_b = 0.0;
    for (double alpha : {1.0 / 3.0, 0.5, 0.6, 0.9}) {
      JacobiBasis basis(alpha, 20);
      JIntegrator integrator(basis, gauss_legendre(30));
      for (double x : {1.01, 1.05, 1.2, 1.49}) {
        std::vector<double> v(20);
        integrator.evaluate(x, v);
        for (std::size_t j = 0; j < 20; ++j) {
          const double ref = oracle::j_integral_expansion(alpha, j, x);
          worst_b = std::max(worst_b, std::abs(v[j] - ref) / std::abs(ref));
        }
      }
    }
    ok = ok && worst_b <= 1e-12;
    detail += fmt(" (b) %.1e", worst_b);

    // (c) I^alpha monomial identity, j <= 9
    double worst_c = 0.0;
    for (double alpha : {0.5, 0.6}) {
      JacobiBasis basis(alpha, 10);
      const auto rule = gauss_jacobi(alpha, 30);
      for (double c : {0.1, 0.5, 0.9, 1.0}) {
        const auto v = local_frac_at(basis, rule, c);
        for (std::size_t j = 0; j < 10; ++j) {
          worst_c = std::max(worst_c, std::abs(v[j] - oracle::frac_integral_monomial(alpha, j, c)));
        }
      }
    }
    ok = ok && worst_c <= 1e-12;
    detail += fmt(" (c) %.1e", worst_c);

    // (d) s-block fixed point vs k-block stage system, f = lambda y
    double worst_d = 0.0;
    const double lambda = -2.0, h = 0.1;
    for (double alpha : {0.5, 0.8}) {
      for (std::size_t s = 1; s <= 3; ++s) {
        for (std::size_t k = s; k <= 5; ++k) {
          const StepOperator op = StepOperator::build(JacobiBasis(alpha, s), gauss_jacobi(alpha, k));
          Block phi(static_cast<Eigen::Index>(k), 1);
          for (Eigen::Index i = 0; i < phi.rows(); ++i) phi(i, 0) = 1.0 + 0.1 * static_cast<double>(i);
          const double ha = std::pow(h, alpha);
          const Eigen::MatrixXd K =
              Eigen::MatrixXd::Identity(phi.rows(), phi.rows()) - ha * lambda * op.Ialpha * op.transfer;
          const Eigen::VectorXd Y = K.partialPivLu().solve(Eigen::VectorXd(phi.col(0)));
          const Eigen::VectorXd gamma = op.transfer * (lambda * Y);
          const VectorField f = [lambda](double, std::span<const double> y, std::span<double> dy) {
            dy[0] = lambda * y[0];
          };
          const auto res = fixed_point_step(op, phi, 0.0, h, f, SolverConfig{});
          worst_d = std::max(worst_d, (Eigen::VectorXd(res.gamma.col(0)) - gamma).cwiseAbs().maxCoeff());
        }
      }
    }
    ok = ok && worst_d <= 1e-12;
    detail += fmt(" (d) %.1e", worst_d);

    // (e) Mittag-Leffler branch consistency on [-6, -4]
    double worst_e = 0.0;
    for (double alpha : {0.5, 0.6, 0.8}) {
      const MittagLeffler ml(alpha);
      for (double z = -6.0; z <= -4.0; z += 0.0625) {
        worst_e = std::max(worst_e, std::abs(ml.series(z) - ml.integral(z)));
      }
    }
    ok = ok && worst_e <= 1e-12;
    detail += fmt(" (e) %.1e", worst_e);

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok = ok && secs < 60.0;
    return Outcome{ok, detail};
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
