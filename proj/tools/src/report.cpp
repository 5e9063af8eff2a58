#include "fracstep/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fracstep::cli {

namespace {

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& value) {
  if (value) {
    j[key] = *value;
  } else {
    j[key] = nullptr;
  }
}

template <typename T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& value) {
  if (j.contains(key) && !j.at(key).is_null()) {
    value = j.at(key).get<T>();
  } else {
    value.reset();
  }
}

std::string format_value(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

}  // namespace

std::string format_error(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", value);
  return buf;
}

void to_json(nlohmann::json& j, const ConfigEcho& c) {
  j = nlohmann::json{{"s", c.s},
                     {"k", c.k},
                     {"p", c.p},
                     {"T", c.T},
                     {"fp_tol", c.fp_tol},
                     {"fp_max_iters", c.fp_max_iters},
                     {"steps", c.steps}};
  put_optional(j, "h1", c.h1);
  put_optional(j, "r", c.r);
  put_optional(j, "uniform_N", c.uniform_N);
}

void from_json(const nlohmann::json& j, ConfigEcho& c) {
  j.at("s").get_to(c.s);
  j.at("k").get_to(c.k);
  j.at("p").get_to(c.p);
  j.at("T").get_to(c.T);
  j.at("fp_tol").get_to(c.fp_tol);
  j.at("fp_max_iters").get_to(c.fp_max_iters);
  j.at("steps").get_to(c.steps);
  get_optional(j, "h1", c.h1);
  get_optional(j, "r", c.r);
  get_optional(j, "uniform_N", c.uniform_N);
}

void to_json(nlohmann::json& j, const RunReport& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const StepRecord& rec : r.steps) {
    steps.push_back({{"n", rec.n}, {"t", rec.t}, {"h", rec.h}, {"iterations", rec.iterations}});
  }
  j = nlohmann::json{{"schema_version", r.schema_version},
                     {"problem", r.problem},
                     {"config", r.config},
                     {"status", r.status},
                     {"steps", std::move(steps)},
                     {"values", r.values},
                     {"wall_time_s", r.wall_time_s}};
  put_optional(j, "failed_step", r.failed_step);
  put_optional(j, "max_error", r.max_error);
  put_optional(j, "dense_max_error", r.dense_max_error);
}

void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("schema_version").get_to(r.schema_version);
  j.at("problem").get_to(r.problem);
  j.at("config").get_to(r.config);
  j.at("status").get_to(r.status);
  r.steps.clear();
  for (const auto& rec : j.at("steps")) {
    r.steps.push_back(StepRecord{rec.at("n").get<std::size_t>(), rec.at("t").get<double>(),
                                 rec.at("h").get<double>(),
                                 rec.at("iterations").get<std::size_t>()});
  }
  j.at("values").get_to(r.values);
  j.at("wall_time_s").get_to(r.wall_time_s);
  get_optional(j, "failed_step", r.failed_step);
  get_optional(j, "max_error", r.max_error);
  get_optional(j, "dense_max_error", r.dense_max_error);
}

std::string report_csv(const RunReport& report, const Problem& problem) {
  std::ostringstream out;
  const std::size_t m = problem.dimension();
  out << "n,t,h,iterations";
  for (std::size_t c = 1; c <= m; ++c) out << ",y" << c;
  if (problem.has_exact()) out << ",error";
  out << '\n';

  std::vector<double> exact(m);
  for (std::size_t n = 0; n < report.values.size(); ++n) {
    const double t = n == 0 ? 0.0 : report.steps[n - 1].t;
    const double h = n == 0 ? 0.0 : report.steps[n - 1].h;
    const std::size_t iters = n == 0 ? 0 : report.steps[n - 1].iterations;
    out << n << ',' << format_value(t) << ',' << format_value(h) << ',' << iters;
    for (double y : report.values[n]) out << ',' << format_value(y);
    if (problem.has_exact()) {
      problem.exact(t, exact);
      double err = 0.0;
      for (std::size_t c = 0; c < m; ++c) err = std::max(err, std::abs(report.values[n][c] - exact[c]));
      out << ',' << format_value(err);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace fracstep::cli
