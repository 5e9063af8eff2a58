#include <benchmark/benchmark.h>

#include <vector>

#include "fracstep/frac_ops.hpp"
#include "fracstep/mesh.hpp"
#include "fracstep/quadrature.hpp"
#include "fracstep/reference.hpp"
#include "fracstep/stepper.hpp"

using namespace fracstep;

static void BM_JRecurrence(benchmark::State& state) {
  const auto s = static_cast<std::size_t>(state.range(0));
  JacobiBasis basis(0.6, s);
  JIntegrator j(basis, gauss_legendre(30));
  std::vector<double> out(s);
  for (auto _ : state) {
    j.evaluate(1.3, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_JRecurrence)->Arg(4)->Arg(10)->Arg(20);

static void BM_JQuadrature(benchmark::State& state) {
  const auto s = static_cast<std::size_t>(state.range(0));
  JacobiBasis basis(0.6, s);
  JIntegrator j(basis, gauss_legendre(30));
  std::vector<double> out(s);
  for (auto _ : state) {
    j.evaluate(4.0, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_JQuadrature)->Arg(4)->Arg(10)->Arg(20);

// One block of the history table: k arguments, s integrals each.
static void BM_JTableExtend(benchmark::State& state) {
  const auto s = static_cast<std::size_t>(state.range(0));
  JacobiBasis basis(0.6, s);
  const QuadratureRule rule = gauss_jacobi(0.6, 30);
  JIntegrator j(basis, gauss_legendre(30));
  for (auto _ : state) {
    JTable table(0.6, 1.01, rule.nodes, s);
    table.extend(1, j);
    benchmark::DoNotOptimize(table.block(1).data());
  }
}
BENCHMARK(BM_JTableExtend)->Arg(4)->Arg(20);

static void BM_FixedPointStep(benchmark::State& state) {
  const auto s = static_cast<std::size_t>(state.range(0));
  const Problem p = builtin_problems().get("prob1");
  SolverConfig cfg;
  cfg.s = s;
  const StepOperator op = StepOperator::build(JacobiBasis(p.alpha, s), gauss_jacobi(p.alpha, cfg.k));
  Block phi = Block::Ones(static_cast<Eigen::Index>(cfg.k), 1);
  for (auto _ : state) {
    auto res = fixed_point_step(op, phi, 0.0, 1e-3, p.f, cfg);
    benchmark::DoNotOptimize(res.gamma.data());
  }
}
BENCHMARK(BM_FixedPointStep)->Arg(4)->Arg(10)->Arg(20);

static void BM_SolveProb2(benchmark::State& state) {
  const Problem p = builtin_problems().get("prob2");
  SolverConfig cfg;
  cfg.s = static_cast<std::size_t>(state.range(0));
  const GradedMesh mesh = uniform_mesh(32, p.T);
  for (auto _ : state) {
    auto run = solve(p, mesh, cfg);
    benchmark::DoNotOptimize(run);
  }
}
BENCHMARK(BM_SolveProb2)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_SolveProb1(benchmark::State& state) {
  const Problem p = builtin_problems().get("prob1");
  SolverConfig cfg;
  cfg.s = 4;
  const GradedMesh mesh = build_mesh(1e-6, 1.01, p.T);
  for (auto _ : state) {
    auto run = solve(p, mesh, cfg);
    benchmark::DoNotOptimize(run);
  }
}
BENCHMARK(BM_SolveProb1)->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK_MAIN();
