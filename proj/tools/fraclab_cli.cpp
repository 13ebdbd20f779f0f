#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraclab/capacity.hpp"
#include "fraclab/config.hpp"
#include "fraclab/field_io.hpp"
#include "fraclab/fracops.hpp"
#include "fraclab/norms.hpp"
#include "fraclab/verify.hpp"

namespace {

using fraclab::Config;
using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json grid_json(const fraclab::Grid& g) {
  return {{"n", g.dim()}, {"N", g.per_axis()}, {"L", g.half_extent()}, {"periodic", g.periodic()}};
}

// Applies "n=2,N=128,L=4" style overrides to a suite grid.
void apply_grid_spec(const std::string& spec, int& n, fraclab::SuiteGrid& grid) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bad --grid entry '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    try {
      if (key == "n") n = std::stoi(val);
      else if (key == "N") grid.N = std::stoul(val);
      else if (key == "L") grid.L = std::stod(val);
      else throw UsageError("unknown --grid key '" + key + "'");
    } catch (const std::logic_error&) {
      throw UsageError("bad --grid value '" + item + "'");
    }
  }
}

std::vector<std::string> output_paths(const std::vector<std::string>& given, std::size_t count) {
  if (given.size() == count) return given;
  if (given.size() != 1) throw UsageError("expected 1 or " + std::to_string(count) + " --output paths");
  std::vector<std::string> out;
  for (std::size_t j = 0; j < count; ++j) out.push_back(count == 1 ? given[0] : given[0] + "." + std::to_string(j));
  return out;
}

struct OpArgs {
  std::string op, method = "spectral", side = "plus", input;
  double s = 0.5;
  int axis = -1;
  std::vector<std::string> outputs;
};

int run_op(const OpArgs& a) {
  const fraclab::ScalarField f = fraclab::load_field(a.input);
  const fraclab::OperatorMethod method = fraclab::method_from_string(a.method);
  const int n = f.grid().dim();
  std::vector<fraclab::ScalarField> result;
  if (a.op == "riesz-transform") {
    if (a.axis >= n) throw UsageError("axis outside the grid dimension");
    if (a.axis >= 0) result.push_back(fraclab::riesz_transform(f, a.axis, method));
    else result = fraclab::riesz_transform_all(f, method).components();
  } else {
    const fraclab::FracOrder ord = fraclab::make_frac_order(n, a.s);
    if (a.op == "frac-laplacian") {
      result.push_back(fraclab::frac_laplacian(f, ord, method));
    } else if (a.op == "riesz-potential") {
      result.push_back(fraclab::riesz_potential(f, ord, method));
    } else if (a.op == "frac-gradient") {
      if (a.axis >= n) throw UsageError("axis outside the grid dimension");
      const fraclab::VectorField g = fraclab::frac_gradient(f, ord, method);
      if (a.axis >= 0) result.push_back(g[a.axis]);
      else result = g.components();
    } else {
      if (a.side != "plus" && a.side != "minus") throw UsageError("side must be plus or minus");
      result.push_back(
          fraclab::liouville_one_sided(f, a.s, a.side == "plus" ? fraclab::Side::plus : fraclab::Side::minus));
    }
  }
  const auto paths = output_paths(a.outputs, result.size());
  for (std::size_t j = 0; j < result.size(); ++j) fraclab::save_field(paths[j], result[j]);
  return 0;
}

struct NormArgs {
  std::string kind, input;
  double p = 1.0;
  double s = 0.5;
};

int run_norm(const NormArgs& a) {
  const fraclab::ScalarField f = fraclab::load_field(a.input);
  const fraclab::Grid& g = f.grid();
  json trunc = {{"periodic", g.periodic()}};
  double v = 0.0;
  if (a.kind == "lp") {
    v = fraclab::lp_norm(f, a.p);
  } else if (a.kind == "weak-lp") {
    v = fraclab::weak_lp_norm(f, a.p);
  } else if (a.kind == "lorentz") {
    v = fraclab::lorentz_norm(f, fraclab::make_frac_order(g.dim(), a.s));
  } else if (a.kind == "gagliardo") {
    const fraclab::GagliardoResult r = fraclab::gagliardo_detail(f, a.s);
    v = r.value;
    trunc["diagonal_estimate"] = number(r.diagonal_estimate);
  } else if (a.kind == "h1-riesz") {
    v = fraclab::hardy_h1_norm(f, fraclab::HardyVariant::riesz);
  } else if (a.kind == "h1-maximal") {
    v = fraclab::hardy_h1_norm(f, fraclab::HardyVariant::maximal);
    trunc["scales"] = static_cast<int>(std::log2(static_cast<double>(g.per_axis()))) + 1;
  } else if (a.kind == "bmo") {
    v = fraclab::bmo_norm(f);
    trunc["cubes"] = "dyadic";
  } else if (a.kind == "hs1" || a.kind == "hs1p" || a.kind == "hs1m") {
    const auto sk = a.kind == "hs1"    ? fraclab::SeminormKind::hs1
                    : a.kind == "hs1p" ? fraclab::SeminormKind::hs1_plus
                                       : fraclab::SeminormKind::hs1_minus;
    v = fraclab::seminorm(f, sk, fraclab::make_frac_order(g.dim(), a.s));
  } else {
    throw UsageError("unknown norm kind '" + a.kind + "'");
  }
  std::cout << fraclab::format_double(v) << "\n";
  const json detail = {{"kind", a.kind}, {"value", number(v)}, {"grid", grid_json(g)}, {"truncation_report", trunc}};
  std::cout << detail.dump() << "\n";
  return 0;
}

struct CapacityArgs {
  std::string kind, set, grid;
  double s = 0.5;
};

// Cell files hold one point per line (n coordinates); each point marks the
// grid cell of its nearest node.
fraclab::DyadicSet read_cells(const std::string& path, const fraclab::Grid& g) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::size_t> cells;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    fraclab::Index k{};
    for (int d = 0; d < g.dim(); ++d) {
      double x = 0.0;
      if (!(ls >> x)) throw std::runtime_error("malformed cell file line " + std::to_string(lineno));
      const long idx = std::lround((x + g.half_extent()) / g.spacing());
      if (idx < 0 || idx >= static_cast<long>(g.per_axis()))
        throw std::runtime_error("cell file line " + std::to_string(lineno) + " lies outside the grid");
      k[d] = static_cast<std::size_t>(idx);
    }
    cells.push_back(g.flatten(k));
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return fraclab::DyadicSet(g, std::move(cells));
}

fraclab::DyadicSet parse_set(const std::string& spec, const fraclab::Grid& g) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("bad --set '" + spec + "'");
  const std::string head = spec.substr(0, colon), rest = spec.substr(colon + 1);
  if (head == "cells") return read_cells(rest, g);
  auto value = [&](const std::string& key) {
    if (rest.rfind(key + "=", 0) != 0) throw UsageError("bad --set '" + spec + "'");
    try {
      return std::stod(rest.substr(key.size() + 1));
    } catch (const std::logic_error&) {
      throw UsageError("bad --set '" + spec + "'");
    }
  };
  if (head == "ball") return fraclab::ball_set(g, value("r"));
  if (head == "cube") return fraclab::cube_set(g, value("l"));
  throw UsageError("unknown set kind '" + head + "'");
}

int run_capacity(const CapacityArgs& a, const Config& cfg) {
  int n = cfg.n;
  fraclab::SuiteGrid sg = cfg.grid;
  if (!a.grid.empty()) apply_grid_spec(a.grid, n, sg);
  const fraclab::FracOrder ord = fraclab::make_frac_order(n, a.s);
  const fraclab::Grid g(n, sg.N, sg.L, true);
  const fraclab::DyadicSet set = parse_set(a.set, g);
  if (set.empty()) throw UsageError("the set contains no grid cells");
  json out;
  if (a.kind == "content") {
    const double alpha = n - a.s;
    out = {{"kind", "content"}, {"alpha", alpha}, {"cells", set.size()},
           {"value", number(fraclab::hausdorff_content(set, alpha))}, {"grid", grid_json(g)}};
  } else {
    const fraclab::CapacityKind kind = fraclab::capacity_kind_from_string(a.kind);
    const fraclab::SolveReport r = fraclab::variational_capacity({set, kind, ord, cfg.solver});
    out = {{"kind", a.kind},       {"s", a.s},
           {"cells", set.size()},  {"value", number(r.value)},
           {"dual_value", number(r.dual_value)}, {"gap", number(r.gap)},
           {"iters", r.iters},     {"converged", r.converged},
           {"box_active", r.box_active}, {"op_norm", number(r.op_norm)},
           {"grid", grid_json(g)}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct VerifyArgs {
  std::string suite, grid, report;
  double s = 0.0;
};

int run_verify(const VerifyArgs& a, Config cfg) {
  if (a.s != 0.0) {
    fraclab::make_frac_order(1, a.s);
    cfg.s = a.s;
    cfg.s_list = {a.s};
  }
  if (!a.grid.empty()) apply_grid_spec(a.grid, cfg.n, cfg.grid);
  const auto& names = fraclab::suite_names();
  if (a.suite != "all" && std::find(names.begin(), names.end(), a.suite) == names.end())
    throw UsageError("unknown suite '" + a.suite + "'");
  const auto reports = fraclab::run_suite(a.suite, cfg);
  const std::string path = a.report.empty() ? cfg.report_path : a.report;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << (reports.size() == 1 ? fraclab::to_json(reports[0]) : fraclab::to_json(reports));
  if (!out) throw std::runtime_error("failed writing " + path);
  bool pass = true;
  for (const auto& r : reports) {
    int failed = 0;
    for (const auto& c : r.checks) failed += c.pass ? 0 : 1;
    std::cout << r.suite << ": " << r.checks.size() - failed << "/" << r.checks.size() << " checks pass\n";
    pass = pass && failed == 0;
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional operators, norms and capacities on uniform grids"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);

  OpArgs op;
  auto* op_cmd = app.add_subcommand("op", "Apply an operator to a field file");
  auto* apply = op_cmd->add_subcommand("apply", "Apply one operator");
  op_cmd->require_subcommand(1);
  apply->add_option("--op", op.op, "Operator")
      ->required()
      ->check(CLI::IsMember({"frac-laplacian", "riesz-potential", "riesz-transform", "frac-gradient", "liouville"}));
  apply->add_option("--method", op.method, "spectral or singular")->check(CLI::IsMember({"spectral", "singular"}));
  apply->add_option("--s", op.s, "Order in (0,1)");
  apply->add_option("--axis", op.axis, "Single component for riesz-transform and frac-gradient");
  apply->add_option("--side", op.side, "Liouville side, plus or minus");
  apply->add_option("--input", op.input, "Input field file")->required();
  apply->add_option("--output", op.outputs, "Output field file(s); one path gets .j suffixes for vectors")->required();

  NormArgs norm;
  auto* norm_cmd = app.add_subcommand("norm", "Evaluate a norm of a field file");
  norm_cmd->add_option("--kind", norm.kind, "lp, weak-lp, lorentz, gagliardo, h1-riesz, h1-maximal, bmo, hs1, hs1p, hs1m")
      ->required();
  norm_cmd->add_option("--p", norm.p, "Exponent for lp and weak-lp");
  norm_cmd->add_option("--s", norm.s, "Order for lorentz, gagliardo and the hs1 kinds");
  norm_cmd->add_option("--input", norm.input, "Input field file")->required();

  CapacityArgs cap;
  auto* cap_cmd = app.add_subcommand("capacity", "Capacity or Hausdorff content of a set");
  cap_cmd->add_option("--kind", cap.kind, "Capacity kind")
      ->required()
      ->check(CLI::IsMember({"ws1", "hs1", "hs1p", "hs1m", "content"}));
  cap_cmd->add_option("--s", cap.s, "Order in (0,1)");
  cap_cmd->add_option("--set", cap.set, "ball:r=<r>, cube:l=<l> or cells:<file>")->required();
  cap_cmd->add_option("--grid", cap.grid, "Grid overrides, e.g. n=2,N=64,L=4");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run a verification suite");
  ver_cmd->add_option("--suite", ver.suite, "Suite name or all")->required();
  ver_cmd->add_option("--s", ver.s, "Single order replacing the configured ones");
  ver_cmd->add_option("--grid", ver.grid, "Grid overrides, e.g. n=2,N=128,L=8");
  ver_cmd->add_option("--report", ver.report, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "fraclab: " << e.what() << "\n";
    return 2;
  }

  try {
    const Config cfg = config_path.empty() ? Config{} : fraclab::load_config(config_path);
    if (apply->parsed()) return run_op(op);
    if (norm_cmd->parsed()) return run_norm(norm);
    if (cap_cmd->parsed()) return run_capacity(cap, cfg);
    return run_verify(ver, cfg);
  } catch (const std::exception& e) {
    std::cerr << "fraclab: " << e.what() << "\n";
    return 2;
  }
}
