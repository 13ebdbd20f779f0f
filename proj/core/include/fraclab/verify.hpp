#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fraclab/config.hpp"

namespace fraclab {

enum class Relation { at_most, at_least };

struct Check {
  std::string id;         // unique within the suite
  std::string statement;  // neutral statement id shared by related checks
  std::vector<std::pair<std::string, double>> measured;
  double value = 0.0;  // the quantity compared with the threshold
  Relation relation = Relation::at_most;
  double threshold = 0.0;
  bool pass = false;
};

Check make_check(std::string id, std::string statement, double value, Relation relation, double threshold,
                 std::vector<std::pair<std::string, double>> measured = {});

struct SuiteReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> environment;
  std::vector<Check> checks;

  bool all_pass() const;
};

SuiteReport run_identity_suite(const Config& config);
SuiteReport run_stein_weiss_suite(const Config& config);
SuiteReport run_weak_type_suite(const Config& config);
SuiteReport run_capacitary_suite(const Config& config);
SuiteReport run_trace_suite(const Config& config);
SuiteReport run_fs_decomposition_suite(const Config& config);
SuiteReport run_divergence_suite(const Config& config);

// Names accepted by run_suite, in canonical order; "all" runs every suite.
const std::vector<std::string>& suite_names();
std::vector<SuiteReport> run_suite(const std::string& name, const Config& config);

// {suite, environment, checks: [{id, paper_ref, measured, threshold, verdict}]}.
// Non-finite numbers are written as the strings "inf", "-inf" or "nan".
std::string to_json(const SuiteReport& report);
std::string to_json(const std::vector<SuiteReport>& reports);

}  // namespace fraclab
