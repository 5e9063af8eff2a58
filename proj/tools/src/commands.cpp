#include "fracstep/cli/commands.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

namespace fracstep::cli {

namespace {

std::string label_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0e", value);
  return buf;
}

std::size_t k_for(KPolicy policy, std::size_t s, std::size_t k_fixed) {
  switch (policy) {
    case KPolicy::equal_to_s:
      return s;
    case KPolicy::s_plus_5:
      return s + 5;
    case KPolicy::fixed:
      break;
  }
  return std::max(k_fixed, s);
}

ConfigEcho echo(const SolverConfig& cfg, const GradedMesh& mesh, double T) {
  ConfigEcho c;
  c.s = cfg.s;
  c.k = cfg.k;
  c.p = cfg.p;
  if (mesh.uniform()) {
    c.uniform_N = mesh.steps();
  } else {
    c.h1 = mesh.first_step();
    c.r = mesh.ratio();
  }
  c.T = T;
  c.fp_tol = cfg.fp_tol;
  c.fp_max_iters = cfg.fp_max_iters;
  c.steps = mesh.steps();
  return c;
}

double dense_error(const Problem& problem, const SolverRun& run, const GradedMesh& mesh) {
  constexpr int kSamples = 8;
  std::vector<double> exact(problem.dimension());
  double worst = 0.0;
  for (std::size_t n = 1; n <= run.steps(); ++n) {
    for (int i = 1; i < kSamples; ++i) {
      const double c = static_cast<double>(i) / kSamples;
      const std::vector<double> value = run.dense_output(n, c);
      problem.exact(mesh.point(n - 1) + c * mesh.step(n), exact);
      for (std::size_t comp = 0; comp < exact.size(); ++comp) {
        worst = std::max(worst, std::abs(value[comp] - exact[comp]));
      }
    }
  }
  return std::max(worst, max_grid_error(problem, run));
}

}  // namespace

GradedMesh resolve_mesh(const Problem& problem, const MeshOptions& options) {
  const double T = options.T.value_or(problem.T);
  if (options.uniform_N && (options.h1 || options.r)) {
    throw std::invalid_argument("choose either a uniform mesh (--uniform-N) or a graded one (--h1/--r)");
  }
  if (options.uniform_N) return uniform_mesh(*options.uniform_N, T);
  if (options.h1 || options.r) {
    const double h1 = options.h1 ? *options.h1 : problem.mesh.h1;
    if (!(h1 > 0.0)) throw std::invalid_argument("--r needs --h1 for this problem");
    return build_mesh(h1, options.r.value_or(problem.mesh.uniform_steps ? 1.0 : problem.mesh.r), T);
  }
  if (problem.mesh.uniform_steps != 0) return uniform_mesh(problem.mesh.uniform_steps, T);
  return build_mesh(problem.mesh.h1, problem.mesh.r, T);
}

RunReport cmd_solve(const Problem& problem, const SolveOptions& options) {
  const GradedMesh mesh = resolve_mesh(problem, options.mesh);
  const auto start = std::chrono::steady_clock::now();
  const SolverRun run = solve(problem, mesh, options.solver);
  const auto stop = std::chrono::steady_clock::now();

  RunReport report;
  report.problem = problem.name;
  report.config = echo(options.solver, mesh, options.mesh.T.value_or(problem.T));
  report.status = run.ok() ? "ok" : "fixed_point_failure";
  if (!run.ok()) report.failed_step = run.failed_step;
  for (std::size_t n = 1; n <= run.steps(); ++n) {
    report.steps.push_back(StepRecord{n, mesh.point(n), mesh.step(n), run.iterations[n - 1]});
  }
  report.values = run.values;
  if (problem.has_exact()) {
    report.max_error = max_grid_error(problem, run);
    if (options.dense_error) report.dense_max_error = dense_error(problem, run, mesh);
  }
  report.wall_time_s = std::chrono::duration<double>(stop - start).count();
  return report;
}

TableSpec table_spec(int id) {
  TableSpec spec;
  spec.id = id;
  spec.s_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20};
  auto prob1_columns = [&] {
    for (double h1 : {1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9}) {
      spec.columns.push_back({"h1=" + label_number(h1), "prob1", MeshOptions{h1, 1.01, {}, {}}});
    }
  };
  auto uniform_columns = [&](const char* problem, std::initializer_list<std::size_t> Ns) {
    for (std::size_t N : Ns) {
      spec.columns.push_back({"N=" + std::to_string(N), problem, MeshOptions{{}, {}, N, {}}});
    }
  };
  switch (id) {
    case 1:
      spec.caption = "Maximum error for prob1, r=1.01 and k=30";
      prob1_columns();
      break;
    case 2:
      spec.caption = "Maximum error for prob1, r=1.01 and k=s";
      spec.k_policy = KPolicy::equal_to_s;
      prob1_columns();
      break;
    case 3:
      spec.caption = "Maximum error for prob1, r=1.01 and k=s+5";
      spec.k_policy = KPolicy::s_plus_5;
      prob1_columns();
      break;
    case 4:
      spec.caption = "Maximum error for prob2, constant timestep h=1/N";
      uniform_columns("prob2", {2, 4, 8, 16, 32});
      break;
    case 5:
      spec.caption = "Maximum error for prob3 and prob34, r=1.2 and h1=1e-11";
      spec.columns.push_back({"prob3", "prob3", MeshOptions{1e-11, 1.2, {}, {}}});
      spec.columns.push_back({"prob34", "prob34", MeshOptions{1e-11, 1.2, {}, {}}});
      break;
    case 6:
      spec.caption = "Maximum error for prob4, constant timestep h=1/N";
      uniform_columns("prob4", {2, 4, 8, 16, 32, 64});
      break;
    default:
      throw std::invalid_argument("table id must be in 1..6, got " + std::to_string(id));
  }
  return spec;
}

TableResult cmd_table(const ProblemRegistry& registry, int id, const TableOptions& options) {
  TableResult result;
  result.spec = table_spec(id);
  if (options.s_values) result.spec.s_values = *options.s_values;
  const std::size_t rows = result.spec.s_values.size();
  const std::size_t cols = result.spec.columns.size();
  result.cells.assign(rows, std::vector<std::optional<double>>(cols));
  result.steps.assign(rows, std::vector<std::size_t>(cols, 0));

  auto compute = [&](std::size_t cell) {
    const std::size_t row = cell / cols;
    const std::size_t col = cell % cols;
    const TableColumn& column = result.spec.columns[col];
    const Problem& problem = registry.get(column.problem);
    SolveOptions solve_options;
    solve_options.mesh = column.mesh;
    solve_options.solver.s = result.spec.s_values[row];
    solve_options.solver.k = k_for(result.spec.k_policy, solve_options.solver.s, options.k);
    solve_options.solver.p = options.p;
    const RunReport report = cmd_solve(problem, solve_options);
    result.steps[row][col] = report.config.steps;
    if (report.ok()) result.cells[row][col] = report.max_error;
  };

  const std::size_t total = rows * cols;
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, total));
  if (jobs == 1) {
    for (std::size_t cell = 0; cell < total; ++cell) compute(cell);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t cell = next++; cell < total && !failed; cell = next++) {
        try {
          compute(cell);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& worker : workers) worker.join();
  if (error) std::rethrow_exception(error);
  return result;
}

std::string table_csv(const TableResult& table) {
  std::ostringstream out;
  out << "s";
  for (std::size_t col = 0; col < table.spec.columns.size(); ++col) {
    out << ',' << table.spec.columns[col].label;
    const std::size_t steps = table.steps.empty() ? 0 : table.steps.front()[col];
    if (steps != 0 && table.spec.columns[col].label.rfind("N=", 0) != 0) out << " (N=" << steps << ')';
  }
  out << '\n';
  for (std::size_t row = 0; row < table.spec.s_values.size(); ++row) {
    out << table.spec.s_values[row];
    for (const auto& cell : table.cells[row]) {
      out << ',' << (cell ? format_error(*cell) : std::string(kFailureMarker));
    }
    out << '\n';
  }
  return out.str();
}

std::vector<ConvergenceRow> cmd_convergence(const Problem& problem,
                                            const ConvergenceOptions& options) {
  if (!problem.has_exact()) {
    throw std::invalid_argument("convergence study needs a problem with an exact solution");
  }
  if (!options.uniform_N.empty() && !options.h1.empty()) {
    throw std::invalid_argument("give either N values or h1 values, not both");
  }
  const std::size_t count = options.uniform_N.empty() ? options.h1.size() : options.uniform_N.size();
  if (count < 3) throw std::invalid_argument("convergence study needs at least three resolutions");

  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < count; ++i) {
    ConvergenceRow row;
    SolveOptions solve_options;
    solve_options.solver = options.solver;
    if (!options.uniform_N.empty()) {
      const std::size_t N = options.uniform_N[i];
      row.resolution = "N=" + std::to_string(N);
      row.h = problem.T / static_cast<double>(N);
      solve_options.mesh.uniform_N = N;
    } else {
      row.resolution = "h1=" + label_number(options.h1[i]);
      row.h = options.h1[i];
      solve_options.mesh.h1 = options.h1[i];
      solve_options.mesh.r = options.r;
    }
    const RunReport report = cmd_solve(problem, solve_options);
    row.steps = report.config.steps;
    if (report.ok()) {
      row.error = report.max_error;
      row.at_roundoff = *row.error < kRoundoffLevel;
    }
    rows.push_back(std::move(row));
  }
  const ConvergenceRow* previous = nullptr;
  for (ConvergenceRow& row : rows) {
    if (!row.error || row.at_roundoff) {
      previous = nullptr;
      continue;
    }
    if (previous != nullptr) {
      row.order = std::log(*previous->error / *row.error) / std::log(previous->h / row.h);
    }
    previous = &row;
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "resolution,h,steps,max_error,order,note\n";
  for (const ConvergenceRow& row : rows) {
    char h[32];
    std::snprintf(h, sizeof h, "%.6e", row.h);
    out << row.resolution << ',' << h << ',' << row.steps << ',';
    out << (row.error ? format_error(*row.error) : std::string(kFailureMarker)) << ',';
    if (row.order) {
      char order[32];
      std::snprintf(order, sizeof order, "%.3f", *row.order);
      out << order;
    }
    out << ',';
    if (!row.error) {
      out << "fixed-point failure";
    } else if (row.at_roundoff) {
      out << "at roundoff";
    }
    out << '\n';
  }
  return out.str();
}

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Spectral time stepper for nonlinear fractional ODEs (Caputo derivative)"};
  app.require_subcommand(1);

  const ProblemRegistry registry = builtin_problems();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one problem and report grid values");
  std::string problem_name;
  SolveOptions solve_options;
  std::optional<double> linear_alpha;
  double linear_lambda = -1.0;
  double linear_y0 = 1.0;
  std::string out_path;
  std::string format = "csv";
  solve_cmd->add_option("--problem", problem_name, "prob1, prob2, prob3, prob4, prob34 or linear")
      ->required();
  solve_cmd->add_option("--s", solve_options.solver.s, "Basis size");
  solve_cmd->add_option("--k", solve_options.solver.k, "Gauss-Jacobi nodes");
  solve_cmd->add_option("--p", solve_options.solver.p, "Gauss-Legendre nodes for history integrals");
  solve_cmd->add_option("--h1", solve_options.mesh.h1, "First step of the graded mesh");
  solve_cmd->add_option("--r", solve_options.mesh.r, "Growth ratio of the graded mesh");
  solve_cmd->add_option("--uniform-N", solve_options.mesh.uniform_N, "Number of uniform steps");
  solve_cmd->add_option("--T", solve_options.mesh.T, "Final time");
  solve_cmd->add_option("--fp-tol", solve_options.solver.fp_tol, "Fixed-point tolerance");
  solve_cmd->add_option("--fp-max-iters", solve_options.solver.fp_max_iters, "Fixed-point iteration cap");
  solve_cmd->add_option("--alpha", linear_alpha, "Order for --problem linear");
  solve_cmd->add_option("--lambda", linear_lambda, "Rate for --problem linear");
  solve_cmd->add_option("--y0", linear_y0, "Initial value for --problem linear");
  solve_cmd->add_option("--out", out_path, "Output file (default stdout)");
  solve_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  solve_cmd->add_flag("--dense-error", solve_options.dense_error,
                      "Also measure the error of the dense output inside each step");

  // table
  auto* table_cmd = app.add_subcommand("table", "Reproduce one of the error tables 1..6");
  int table_id = 0;
  std::vector<std::size_t> s_list;
  TableOptions table_options;
  std::string table_out;
  table_cmd->add_option("--id", table_id, "Table number")->required()->check(CLI::Range(1, 6));
  table_cmd->add_option("--s-list", s_list, "Comma separated basis sizes")->delimiter(',');
  table_cmd->add_option("--jobs", table_options.jobs, "Worker threads")->check(CLI::PositiveNumber);
  table_cmd->add_option("--out", table_out, "Output file (default stdout)");

  // convergence
  auto* conv_cmd = app.add_subcommand("convergence", "Empirical convergence orders");
  std::string conv_problem;
  ConvergenceOptions conv_options;
  std::string conv_out;
  conv_cmd->add_option("--problem", conv_problem, "Problem name")->required();
  conv_cmd->add_option("--s", conv_options.solver.s, "Basis size");
  conv_cmd->add_option("--k", conv_options.solver.k, "Gauss-Jacobi nodes");
  conv_cmd->add_option("--p", conv_options.solver.p, "Gauss-Legendre nodes");
  auto* n_opt = conv_cmd->add_option("--uniform-N", conv_options.uniform_N, "Comma separated N values")
                    ->delimiter(',');
  auto* h_opt = conv_cmd->add_option("--h1", conv_options.h1, "Comma separated h1 values")->delimiter(',');
  n_opt->excludes(h_opt);
  conv_cmd->add_option("--r", conv_options.r, "Growth ratio for graded meshes");
  conv_cmd->add_option("--out", conv_out, "Output file (default stdout)");

  app.add_subcommand("list", "List built-in problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) {
      Problem problem;
      if (problem_name == "linear") {
        if (!linear_alpha) throw std::invalid_argument("--problem linear needs --alpha");
        problem = linear_problem(*linear_alpha, linear_lambda, linear_y0,
                                 solve_options.mesh.T.value_or(1.0));
      } else {
        problem = registry.get(problem_name);
      }
      solve_options.solver.validate();
      const RunReport report = cmd_solve(problem, solve_options);
      if (format == "json") {
        emit(nlohmann::json(report).dump(2) + "\n", out_path);
      } else {
        emit(report_csv(report, problem), out_path);
      }
      if (!report.ok()) {
        std::cerr << "fixed-point iteration failed at step " << report.failed_step.value_or(0) << "\n";
        return 2;
      }
      if (report.max_error) std::cerr << "max error " << format_error(*report.max_error) << "\n";
      return 0;
    }
    if (table_cmd->parsed()) {
      if (!s_list.empty()) table_options.s_values = s_list;
      const TableResult result = cmd_table(registry, table_id, table_options);
      emit(table_csv(result), table_out);
      return 0;
    }
    if (conv_cmd->parsed()) {
      conv_options.solver.validate();
      emit(convergence_csv(cmd_convergence(registry.get(conv_problem), conv_options)), conv_out);
      return 0;
    }
    for (const std::string& name : registry.names()) {
      const Problem& p = registry.get(name);
      std::cout << name << "  alpha=" << p.alpha << "  T=" << p.T << "  " << p.description << "\n";
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fracstep::cli
