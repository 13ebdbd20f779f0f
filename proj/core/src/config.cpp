#include "fraclab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fraclab/field_io.hpp"

namespace fraclab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view v) {
  v = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    throw std::invalid_argument("not a finite number: '" + std::string(v) + "'");
  return out;
}

long parse_int(std::string_view v) {
  v = trim(v);
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw std::invalid_argument("not an integer: '" + std::string(v) + "'");
  return out;
}

double positive(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("value must be positive");
  return x;
}

double order(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s outside (0,1)");
  return s;
}

std::vector<double> parse_list(std::string_view v) {
  std::vector<double> out;
  while (true) {
    const auto comma = v.find(',');
    out.push_back(order(parse_real(v.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::string list_text(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format_double(xs[i]);
  return out;
}

std::size_t grid_count(std::string_view v) {
  const long N = parse_int(v);
  if (N < 8 || (N & (N - 1)) != 0) throw std::invalid_argument("N must be a power of two >= 8");
  return static_cast<std::size_t>(N);
}

struct Entry {
  std::string name;
  std::string doc;
  std::function<void(Config&, std::string_view)> set;
  std::function<std::string(const Config&)> get;
};

Entry real_entry(std::string name, std::string doc, double Config::*field, double (*check)(double) = nullptr) {
  return {std::move(name), std::move(doc),
          [field, check](Config& c, std::string_view v) {
            const double x = parse_real(v);
            c.*field = check ? check(x) : x;
          },
          [field](const Config& c) { return format_double(c.*field); }};
}

Entry threshold_entry(std::string name, std::string doc, double Thresholds::*field) {
  return {"threshold." + name, std::move(doc),
          [field](Config& c, std::string_view v) { c.thresholds.*field = positive(parse_real(v)); },
          [field](const Config& c) { return format_double(c.thresholds.*field); }};
}

void grid_entries(std::vector<Entry>& out, const std::string& prefix, SuiteGrid Config::*grid, const std::string& what) {
  out.push_back({prefix + ".N", "points per axis for " + what,
                 [grid](Config& c, std::string_view v) { (c.*grid).N = grid_count(v); },
                 [grid](const Config& c) { return std::to_string((c.*grid).N); }});
  out.push_back({prefix + ".L", "box half-extent for " + what,
                 [grid](Config& c, std::string_view v) { (c.*grid).L = positive(parse_real(v)); },
                 [grid](const Config& c) { return format_double((c.*grid).L); }});
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    t.push_back({"grid.n", "dimension for the identity, stein-weiss and weak-type suites",
                 [](Config& c, std::string_view v) {
                   const long n = parse_int(v);
                   if (n < 1 || n > 3) throw std::invalid_argument("n must be 1, 2 or 3");
                   c.n = static_cast<int>(n);
                 },
                 [](const Config& c) { return std::to_string(c.n); }});
    grid_entries(t, "grid", &Config::grid, "the identity, stein-weiss and weak-type suites");
    t.push_back({"s_list", "comma-separated orders for suites that sweep s",
                 [](Config& c, std::string_view v) { c.s_list = parse_list(v); },
                 [](const Config& c) { return list_text(c.s_list); }});
    t.push_back(real_entry("s", "order for suites that take a single s", &Config::s, order));
    t.push_back({"solver.max_iter", "primal-dual iteration cap per capacity solve",
                 [](Config& c, std::string_view v) {
                   const long k = parse_int(v);
                   if (k < 1) throw std::invalid_argument("max_iter must be >= 1");
                   c.solver.max_iter = static_cast<int>(k);
                 },
                 [](const Config& c) { return std::to_string(c.solver.max_iter); }});
    t.push_back({"solver.tol_gap", "relative primal-dual gap that stops a capacity solve",
                 [](Config& c, std::string_view v) { c.solver.tol_gap = positive(parse_real(v)); },
                 [](const Config& c) { return format_double(c.solver.tol_gap); }});
    t.push_back({"solver.box_bound", "bound M on |u| used by the dual certificate (>= 1)",
                 [](Config& c, std::string_view v) {
                   const double m = parse_real(v);
                   if (!(m >= 1.0)) throw std::invalid_argument("box_bound must be >= 1");
                   c.solver.box_bound = m;
                 },
                 [](const Config& c) { return format_double(c.solver.box_bound); }});
    t.push_back({"solver.check_every", "iterations between gap evaluations",
                 [](Config& c, std::string_view v) {
                   const long k = parse_int(v);
                   if (k < 1) throw std::invalid_argument("check_every must be >= 1");
                   c.solver.check_every = static_cast<int>(k);
                 },
                 [](const Config& c) { return std::to_string(c.solver.check_every); }});
    t.push_back({"solver.primal_weight", "dual/primal step ratio; 0 selects the per-kind default",
                 [](Config& c, std::string_view v) {
                   const double w = parse_real(v);
                   if (w < 0.0) throw std::invalid_argument("primal_weight must be >= 0");
                   c.solver.primal_weight = w;
                 },
                 [](const Config& c) { return format_double(c.solver.primal_weight); }});
    t.push_back({"capacity.level_fraction", "largest level set, as a fraction of the grid, in level-set integrals",
                 [](Config& c, std::string_view v) {
                   const double f = parse_real(v);
                   if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("level_fraction must lie in (0,1]");
                   c.level_fraction = f;
                 },
                 [](const Config& c) { return format_double(c.level_fraction); }});
    t.push_back({"capacity.level_depth", "dyadic levels below max|u| checked by the weak capacitary bound",
                 [](Config& c, std::string_view v) {
                   const long k = parse_int(v);
                   if (k < 1 || k > 60) throw std::invalid_argument("level_depth must lie in [1,60]");
                   c.level_depth = static_cast<int>(k);
                 },
                 [](const Config& c) { return std::to_string(c.level_depth); }});
    grid_entries(t, "liouville", &Config::liouville, "the Liouville constant fit (n = 1)");
    grid_entries(t, "concentration", &Config::concentration, "the gaussian concentration family (n = 1, truncated)");
    grid_entries(t, "capacitary", &Config::capacitary, "the capacitary suite (n = 1)");
    grid_entries(t, "two_order", &Config::two_order, "the two-order capacitary check (n = 2)");
    grid_entries(t, "trace", &Config::trace, "the trace suite (n = 2)");
    grid_entries(t, "fs", &Config::fs, "the ln|x| decomposition (n = 2)");
    grid_entries(t, "hilbert", &Config::hilbert, "the Hilbert transform of 1_[-1,1] (n = 1)");
    grid_entries(t, "divergence", &Config::divergence, "the divergence suite (n = 2)");
    t.push_back(threshold_entry("inversion", "sup-norm residual of I_s (-Delta)^(s/2) phi - phi", &Thresholds::inversion));
    t.push_back(threshold_entry("inversion_relaxed", "inversion residual for s >= 0.9", &Thresholds::inversion_relaxed));
    t.push_back(threshold_entry("gradient_identity", "residual of the fractional gradient identities", &Thresholds::gradient_identity));
    t.push_back(threshold_entry("commutation", "residual of multiplier compositions", &Thresholds::commutation));
    t.push_back(threshold_entry("realness", "imaginary residue of spectral outputs relative to max amplitude", &Thresholds::realness));
    t.push_back(threshold_entry("cross_method", "relative L2 gap between spectral and singular paths", &Thresholds::cross_method));
    t.push_back(threshold_entry("hilbert", "max error of the Hilbert/log identity", &Thresholds::hilbert));
    t.push_back(threshold_entry("liouville_residual", "relative residual of the fitted Liouville constant c_+", &Thresholds::liouville_residual));
    t.push_back(threshold_entry("homogeneity", "relative change of ratios under u -> lambda u", &Thresholds::homogeneity));
    t.push_back(threshold_entry("dilation", "relative change of ratios under dilation", &Thresholds::dilation));
    t.push_back(threshold_entry("refinement_drift", "relative drift of finite ratios under N -> 2N", &Thresholds::refinement_drift));
    t.push_back(threshold_entry("weak_drift", "relative drift of weak-norm ratios along the concentration family", &Thresholds::weak_drift));
    t.push_back(threshold_entry("strong_growth", "minimum growth per halving of the strong-norm ratio", &Thresholds::strong_growth));
    t.push_back(threshold_entry("integral_drift", "relative drift of capacitary integral ratios under N -> 2N", &Thresholds::integral_drift));
    t.push_back(threshold_entry("capacitary_growth", "minimum growth per halving of the Hs1+ integral ratio", &Thresholds::capacitary_growth));
    t.push_back(threshold_entry("weak_capacitary", "slack in t Cap({u > t}) <= (1 + slack) [u]", &Thresholds::weak_capacitary));
    t.push_back(threshold_entry("trace_drift", "relative drift of area-measure trace ratios", &Thresholds::trace_drift));
    t.push_back(threshold_entry("trace_growth", "minimum growth per halving of segment-measure trace ratios", &Thresholds::trace_growth));
    t.push_back(threshold_entry("fs", "relative L2 error of the ln|x| decomposition on the annulus", &Thresholds::fs));
    t.push_back(threshold_entry("divergence", "residual of sum_j R_j g_j = -div((-Delta)^(-1/2) g)", &Thresholds::divergence));
    t.push_back(threshold_entry("bmo_drift", "relative drift of BMO norms under N -> 2N", &Thresholds::bmo_drift));
    t.push_back({"output.report", "default path of the JSON report written by verify",
                 [](Config& c, std::string_view v) {
                   v = trim(v);
                   if (v.empty()) throw std::invalid_argument("empty path");
                   c.report_path = std::string(v);
                 },
                 [](const Config& c) { return c.report_path; }});
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> out;
    const Config defaults;
    for (const auto& e : entries()) out.push_back({e.name, e.get(defaults), e.doc});
    return out;
  }();
  return keys;
}

void set_config_value(Config& config, std::string_view key, std::string_view value) {
  key = trim(key);
  for (const auto& e : entries())
    if (e.name == key) {
      e.set(config, value);
      return;
    }
  throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

Config parse_config(std::string_view text) {
  Config config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw std::invalid_argument(where + "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    if (!seen.insert(std::string(key)).second) throw std::invalid_argument(where + "duplicate key '" + std::string(key) + "'");
    try {
      set_config_value(config, key, line.substr(eq + 1));
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument(where + err.what());
    }
  }
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace fraclab
