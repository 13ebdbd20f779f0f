#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fraclab/capacity.hpp"

namespace fraclab {

struct SuiteGrid {
  std::size_t N = 256;
  double L = 16.0;
};

// Pass/fail limits used by the verify suites.
struct Thresholds {
  double inversion = 1e-6;
  double inversion_relaxed = 1e-5;  // for s >= 0.9
  double gradient_identity = 1e-8;
  double commutation = 1e-10;
  double realness = 1e-12;
  double cross_method = 1e-2;
  double hilbert = 1e-2;
  double liouville_residual = 1e-3;
  double homogeneity = 1e-12;
  double dilation = 0.03;
  double refinement_drift = 0.10;
  double weak_drift = 0.15;
  double strong_growth = 1.2;
  double integral_drift = 0.20;
  double capacitary_growth = 1.15;
  double weak_capacitary = 1e-3;
  double trace_drift = 0.10;
  double trace_growth = 1.2;
  double fs = 5e-2;
  double divergence = 1e-10;
  double bmo_drift = 0.10;
};

struct Config {
  int n = 1;
  SuiteGrid grid;  // identity, stein-weiss and weak-type suites
  std::vector<double> s_list{0.3, 0.5, 0.7};
  double s = 0.5;  // suites that take a single order
  SolverParams solver;
  double level_fraction = 0.25;
  int level_depth = 12;  // dyadic levels below max|u| in the weak capacitary check
  SuiteGrid liouville{4096, 16.0};     // n = 1
  SuiteGrid concentration{2048, 16.0};  // n = 1, truncated
  SuiteGrid capacitary{128, 8.0};  // n = 1
  SuiteGrid two_order{32, 4.0};  // n = 2
  SuiteGrid trace{256, 4.0};       // n = 2
  SuiteGrid fs{512, 16.0};         // n = 2
  SuiteGrid hilbert{1024, 1024.0 / 63.0};  // n = 1; puts x = +-1 on cell faces
  SuiteGrid divergence{128, 8.0};  // n = 2
  Thresholds thresholds;
  std::string report_path = "report.json";
};

struct ConfigKey {
  std::string name;
  std::string default_value;
  std::string doc;
};

// Every accepted key with its default and a one-line description.
const std::vector<ConfigKey>& config_keys();

// Applies key = value lines on top of the defaults. Blank lines and lines
// starting with '#' are skipped. Unknown keys, duplicate keys and bad values
// throw std::invalid_argument naming the line.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);

// Sets one key; throws std::invalid_argument on unknown keys or bad values.
void set_config_value(Config& config, std::string_view key, std::string_view value);

}  // namespace fraclab
