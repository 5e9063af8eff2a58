#ifndef FRACSTEP_CLI_COMMANDS_HPP
#define FRACSTEP_CLI_COMMANDS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fracstep/cli/report.hpp"
#include "fracstep/mesh.hpp"
#include "fracstep/reference.hpp"
#include "fracstep/stepper.hpp"

namespace fracstep::cli {

inline constexpr const char* kFailureMarker = "***";

/// Mesh selection: graded (h1, r) or uniform with N steps. Unset fields fall
/// back to the problem's mesh hint.
struct MeshOptions {
  std::optional<double> h1;
  std::optional<double> r;
  std::optional<std::size_t> uniform_N;
  std::optional<double> T;
};

struct SolveOptions {
  SolverConfig solver;
  MeshOptions mesh;
  bool dense_error = false;
};

/// Resolves the mesh; throws std::invalid_argument when both a graded and a
/// uniform mesh are requested.
GradedMesh resolve_mesh(const Problem& problem, const MeshOptions& options);

RunReport cmd_solve(const Problem& problem, const SolveOptions& options);

enum class KPolicy { fixed, equal_to_s, s_plus_5 };

struct TableColumn {
  std::string label;
  std::string problem;
  MeshOptions mesh;
};

struct TableSpec {
  int id = 0;
  std::string caption;
  KPolicy k_policy = KPolicy::fixed;
  std::vector<std::size_t> s_values;
  std::vector<TableColumn> columns;
};

/// Layout of error table 1..6; throws std::invalid_argument otherwise.
TableSpec table_spec(int id);

struct TableResult {
  TableSpec spec;
  std::vector<std::vector<std::optional<double>>> cells;  // empty optional = failure
  std::vector<std::vector<std::size_t>> steps;
};

struct TableOptions {
  std::optional<std::vector<std::size_t>> s_values;  // restrict rows
  std::size_t k = 30;
  std::size_t p = 30;
  std::size_t jobs = 1;
};

TableResult cmd_table(const ProblemRegistry& registry, int id, const TableOptions& options);
std::string table_csv(const TableResult& table);

inline constexpr double kRoundoffLevel = 1e-14;

struct ConvergenceRow {
  std::string resolution;  // e.g. "N=8" or "h1=1e-06"
  double h = 0.0;          // step for uniform meshes, h1 for graded ones
  std::size_t steps = 0;
  std::optional<double> error;  // empty on solver failure
  bool at_roundoff = false;
  std::optional<double> order;
};

struct ConvergenceOptions {
  SolverConfig solver;
  std::vector<std::size_t> uniform_N;
  std::vector<double> h1;
  double r = 1.01;
};

/// Successive-ratio orders log(e_{i-1}/e_i)/log(h_{i-1}/h_i); entries at
/// roundoff are excluded. Needs at least three resolutions.
std::vector<ConvergenceRow> cmd_convergence(const Problem& problem,
                                            const ConvergenceOptions& options);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

/// Entry point of the `fracstep` executable.
int run_cli(int argc, char** argv);

}  // namespace fracstep::cli

#endif  // FRACSTEP_CLI_COMMANDS_HPP
