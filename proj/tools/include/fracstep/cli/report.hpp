#ifndef FRACSTEP_CLI_REPORT_HPP
#define FRACSTEP_CLI_REPORT_HPP

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fracstep/reference.hpp"
#include "fracstep/stepper.hpp"

namespace fracstep::cli {

inline constexpr int kReportSchemaVersion = 1;

struct ConfigEcho {
  std::size_t s = 0;
  std::size_t k = 0;
  std::size_t p = 0;
  std::optional<double> h1;
  std::optional<double> r;
  std::optional<std::size_t> uniform_N;
  double T = 0.0;
  double fp_tol = 0.0;
  std::size_t fp_max_iters = 0;
  std::size_t steps = 0;

  friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct StepRecord {
  std::size_t n = 0;
  double t = 0.0;
  double h = 0.0;
  std::size_t iterations = 0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// Outcome of one solver run as written by `fracstep solve`.
struct RunReport {
  int schema_version = kReportSchemaVersion;
  std::string problem;
  ConfigEcho config;
  std::string status;  // "ok" or "fixed_point_failure"
  std::optional<std::size_t> failed_step;
  std::vector<StepRecord> steps;
  std::vector<std::vector<double>> values;  // y_bar_n, n = 0..steps
  std::optional<double> max_error;
  std::optional<double> dense_max_error;
  double wall_time_s = 0.0;

  bool ok() const { return status == "ok"; }
};

void to_json(nlohmann::json& j, const ConfigEcho& c);
void from_json(const nlohmann::json& j, ConfigEcho& c);
void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

/// Per-step CSV: n,t,h,iterations,y_1..y_m[,error]. Deterministic (no timing).
std::string report_csv(const RunReport& report, const Problem& problem);

/// Scientific notation with three significant digits, as in the error tables.
std::string format_error(double value);

}  // namespace fracstep::cli

#endif  // FRACSTEP_CLI_REPORT_HPP
