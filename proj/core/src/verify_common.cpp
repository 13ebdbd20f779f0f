#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "fraclab/parallel.hpp"
#include "verify_internal.hpp"

namespace fraclab {

Check make_check(std::string id, std::string statement, double value, Relation relation, double threshold,
                 std::vector<std::pair<std::string, double>> measured) {
  Check c;
  c.id = std::move(id);
  c.statement = std::move(statement);
  c.value = value;
  c.relation = relation;
  c.threshold = threshold;
  c.measured = std::move(measured);
  c.pass = relation == Relation::at_most ? value <= threshold : value >= threshold;
  return c;
}

bool SuiteReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace detail {

std::vector<Check> run_tasks(const std::vector<CheckTask>& tasks) {
  std::vector<std::vector<Check>> parts(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { parts[i] = tasks[i](); });
  std::vector<Check> out;
  for (auto& p : parts)
    for (auto& c : p) out.push_back(std::move(c));
  return out;
}

std::vector<std::pair<std::string, std::string>> grid_environment(const std::string& prefix, const Grid& grid) {
  return {{prefix + "n", std::to_string(grid.dim())},
          {prefix + "N", std::to_string(grid.per_axis())},
          {prefix + "L", format_double(grid.half_extent())},
          {prefix + "h", format_double(grid.spacing())},
          {prefix + "periodic", grid.periodic() ? "1" : "0"}};
}

std::string order_label(double s) { return "s" + format_double(s); }

double relative_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace detail

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

ordered_json report_json(const SuiteReport& report) {
  ordered_json env = ordered_json::object();
  for (const auto& [k, v] : report.environment) env[k] = v;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json measured = ordered_json::object();
    for (const auto& [k, v] : c.measured) measured[k] = number(v);
    checks.push_back({{"id", c.id},
                      {"paper_ref", c.statement},
                      {"measured", measured},
                      {"value", number(c.value)},
                      {"relation", c.relation == Relation::at_most ? "<=" : ">="},
                      {"threshold", number(c.threshold)},
                      {"verdict", c.pass ? "pass" : "fail"}});
  }
  return {{"suite", report.suite}, {"environment", env}, {"checks", checks}};
}

}  // namespace

std::string to_json(const SuiteReport& report) { return report_json(report).dump(2) + "\n"; }

std::string to_json(const std::vector<SuiteReport>& reports) {
  if (reports.size() == 1) return to_json(reports.front());
  ordered_json all = ordered_json::array();
  for (const auto& r : reports) all.push_back(report_json(r));
  return ordered_json{{"suites", all}}.dump(2) + "\n";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identity", "stein-weiss", "weak-type", "capacitary",
                                              "trace",    "fs",          "divergence"};
  return names;
}

std::vector<SuiteReport> run_suite(const std::string& name, const Config& config) {
  using Runner = SuiteReport (*)(const Config&);
  static const std::vector<Runner> runners{run_identity_suite, run_stein_weiss_suite, run_weak_type_suite,
                                           run_capacitary_suite, run_trace_suite, run_fs_decomposition_suite,
                                           run_divergence_suite};
  const auto& names = suite_names();
  std::vector<SuiteReport> out;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (name == "all" || name == names[i]) out.push_back(runners[i](config));
  if (out.empty()) throw std::invalid_argument("unknown suite: " + name);
  return out;
}

}  // namespace fraclab
