// Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fraclab/capacity.hpp"
#include "fraclab/config.hpp"
#include "fraclab/fracops.hpp"
#include "fraclab/norms.hpp"
#include "fraclab/verify.hpp"

using namespace fraclab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_sup(const ScalarField& a, const ScalarField& b) {
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
  return diff / b.max_abs();
}

double min_growth(const std::vector<double>& xs) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < xs.size(); ++i) g = std::min(g, xs[i] / xs[i - 1]);
  return g;
}

double spread(const std::vector<double>& xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *hi / *lo - 1.0;
}

Outcome inversion() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int n : {1, 2}) {
    const Grid g(n, 256, 8.0, true);
    for (const TestFamily& fam : {gaussian(1.0), bump(2.0)}) {
      const ScalarField phi = subtract_mean(sample(fam, g));
      for (double s : {0.3, 0.5, 0.7}) {
        const FracOrder ord = make_frac_order(n, s);
        worst = std::max(worst, rel_sup(riesz_potential(frac_laplacian(phi, ord), ord), phi));
      }
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-6 && t < 5.0, "max_rel_err=" + fmt("%.3e", worst) + " time=" + fmt("%.2fs", t)};
}

Outcome cross_method() {
  const FracOrder ord = make_frac_order(1, 0.5);
  std::vector<double> errs;
  for (std::size_t N : {1024, 2048}) {
    const Grid g(1, N, 16.0, true);
    const ScalarField u = sample(gaussian(1.0), g);
    const ScalarField a = frac_laplacian(u, ord), b = frac_laplacian(u, ord, OperatorMethod::singular);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      if (std::abs(g.coord(i)) > 8.0) continue;
      num += (a[i] - b[i]) * (a[i] - b[i]);
      den += a[i] * a[i];
    }
    errs.push_back(std::sqrt(num / den));
  }
  return {errs[0] <= 1e-2 && errs[1] < errs[0],
          "err_N1024=" + fmt("%.3e", errs[0]) + " err_N2048=" + fmt("%.3e", errs[1])};
}

Outcome hilbert() {
  const Grid g(1, 1024, 1024.0 / 63.0, false);
  const ScalarField h = riesz_transform(sample(indicator_ball(1.0), g), 0, OperatorMethod::singular);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coord(i);
    if (std::abs(x - 1.0) < 0.25 || std::abs(x + 1.0) < 0.25) continue;
    err = std::max(err, std::abs(h[i] - std::log(std::abs((x + 1.0) / (x - 1.0))) / kPi));
  }
  return {err <= 1e-2, "max_err=" + fmt("%.3e", err)};
}

// Relative L2 error of sum_j R_j(c x_j/|x|) against ln|x| on 0.5 <= |x| <= L/2
// after matching means.
double fs_error(const Grid& g, double c) {
  ScalarField acc = ScalarField::zeros(g);
  for (int j = 0; j < 2; ++j) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Point x = g.point(i);
      const double r = std::hypot(x[0], x[1]);
      v[i] = r > 0.0 ? c * x[j] / r : 0.0;
    }
    acc = combine(1.0, acc, 1.0, riesz_transform(subtract_mean(ScalarField(g, std::move(v))), j));
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.point(i);
    const double r = std::hypot(x[0], x[1]);
    if (r >= 0.5 && r <= 0.5 * g.half_extent()) idx.push_back(i);
  }
  double ma = 0.0, ml = 0.0;
  for (std::size_t i : idx) {
    const Point x = g.point(i);
    ma += acc[i];
    ml += std::log(std::hypot(x[0], x[1]));
  }
  ma /= static_cast<double>(idx.size());
  ml /= static_cast<double>(idx.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i : idx) {
    const Point x = g.point(i);
    const double l = std::log(std::hypot(x[0], x[1])) - ml;
    num += (acc[i] - ma - l) * (acc[i] - ma - l);
    den += l * l;
  }
  return std::sqrt(num / den);
}

Outcome fs_decomposition() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g(2, 512, 16.0, true);
  const double c = 1.0 / (2.0 * std::sqrt(kPi));
  const double err = fs_error(g, c);
  const double t = seconds_since(t0);
  const double err_unit = fs_error(g, 1.0);
  return {err <= 5e-2 && t < 30.0, "c=" + fmt("%.5f", c) + " rel_err=" + fmt("%.3e", err) +
                                        " time=" + fmt("%.2fs", t) + " (rel_err with c=1: " +
                                        fmt("%.3e", err_unit) + ")"};
}

Outcome ball_scaling() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g(2, 128, 4.0, true);
  const FracOrder ord = make_frac_order(2, 0.5);
  std::vector<double> scaled_caps;
  bool converged = true;
  std::string detail;
  for (double r : {0.25, 0.5, 1.0}) {
    const SolveReport rep = variational_capacity({ball_set(g, r), CapacityKind::hs1, ord, {}});
    converged = converged && rep.converged && rep.gap <= 1e-4 * rep.value;
    scaled_caps.push_back(rep.value / std::pow(r, 1.5));
    detail += "r=" + fmt("%g", r) + ":" + fmt("%.4f", scaled_caps.back()) + " ";
  }
  const double t = seconds_since(t0);
  const double sp = spread(scaled_caps);
  return {sp <= 0.10 && converged && t < 300.0,
          detail + "spread=" + fmt("%.3f", sp) + (converged ? " converged" : " NOT converged") + " time=" +
              fmt("%.0fs", t)};
}

// Exhaustive minimum over every family of tree nodes covering each subset of
// the leaves, by enumerating all node subsets and a superset-minimum pass.
struct TreeNode {
  unsigned mask;  // leaves below the node
  double cost;    // side^alpha
};

std::vector<double> brute_force_content(const std::vector<TreeNode>& nodes, int leaves) {
  const std::size_t masks = std::size_t{1} << leaves;
  std::vector<double> best(masks, std::numeric_limits<double>::infinity());
  const std::size_t count = std::size_t{1} << nodes.size();
  for (std::size_t pick = 0; pick < count; ++pick) {
    unsigned m = 0;
    double c = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (pick >> k & 1) {
        m |= nodes[k].mask;
        c += nodes[k].cost;
      }
    best[m] = std::min(best[m], c);
  }
  for (int b = 0; b < leaves; ++b)
    for (std::size_t m = 0; m < masks; ++m)
      if (!(m >> b & 1)) best[m] = std::min(best[m], best[m | (std::size_t{1} << b)]);
  return best;
}

Outcome content_brute_force() {
  double worst = 0.0;
  long compared = 0;
  bool integer_exact = true;

  // n = 1: the full binary tree over N = 8 cells of side 1.
  {
    const Grid g(1, 8, 4.0, true);
    for (double alpha : {0.3, 0.5, 0.8}) {
      std::vector<TreeNode> nodes;
      for (int level = 0; level <= 3; ++level) {
        const int width = 8 >> level;
        for (int start = 0; start < 8; start += width)
          nodes.push_back({((1u << width) - 1u) << start, std::pow(static_cast<double>(width), alpha)});
      }
      const auto best = brute_force_content(nodes, 8);
      for (unsigned m = 1; m < 256; ++m) {
        std::vector<std::size_t> cells;
        for (std::size_t c = 0; c < 8; ++c)
          if (m >> c & 1) cells.push_back(c);
        const double dp = hausdorff_content(DyadicSet(g, cells), alpha);
        worst = std::max(worst, std::abs(dp - best[m]) / best[m]);
        ++compared;
      }
    }
  }

  // n = 2: the three-level quadtree under the lower-left quadrant of an
  // N = 8 grid (16 leaves), plus the enclosing box as a candidate cover.
  {
    const Grid g(2, 8, 4.0, true);
    auto leaf = [](int i, int j) { return static_cast<unsigned>(i * 4 + j); };
    for (double alpha : {0.5, 1.0, 1.5}) {
      std::vector<TreeNode> nodes;
      nodes.push_back({0xFFFFu, std::pow(8.0, alpha)});
      nodes.push_back({0xFFFFu, std::pow(4.0, alpha)});
      for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) {
          unsigned m = 0;
          for (int di = 0; di < 2; ++di)
            for (int dj = 0; dj < 2; ++dj) m |= 1u << leaf(2 * bi + di, 2 * bj + dj);
          nodes.push_back({m, std::pow(2.0, alpha)});
        }
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) nodes.push_back({1u << leaf(i, j), 1.0});
      const auto best = brute_force_content(nodes, 16);
      for (unsigned m = 1; m < (1u << 16); ++m) {
        std::vector<std::size_t> cells;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            if (m >> leaf(i, j) & 1)
              cells.push_back(g.flatten({static_cast<std::size_t>(i), static_cast<std::size_t>(j), 0}));
        const double dp = hausdorff_content(DyadicSet(g, cells), alpha);
        worst = std::max(worst, std::abs(dp - best[m]) / best[m]);
        if (alpha == 1.0) integer_exact = integer_exact && dp == best[m];
        ++compared;
      }
    }
  }
  return {worst <= 1e-14 && integer_exact,
          std::to_string(compared) + " sets, max_rel_diff=" + fmt("%.2e", worst) +
              (integer_exact ? ", bit-exact for integer costs" : ", integer costs differ")};
}

Outcome capacity_ordering() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g(2, 32, 2.0, true);
  const double s = 0.5, alpha = 2.0 - s;
  const FracOrder ord = make_frac_order(2, s);

  // C from aligned dyadic cubes of every side a cover of a small set can use.
  double c_measured = 0.0;
  for (std::size_t side = 1; side <= 16; side *= 2) {
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < side; ++i)
      for (std::size_t j = 0; j < side; ++j) cells.push_back(g.flatten({i, j, 0}));
    const DyadicSet q(g, cells);
    const SolveReport rep = variational_capacity({q, CapacityKind::hs1, ord, {}});
    c_measured = std::max(c_measured, rep.value / hausdorff_content(q, alpha));
  }

  std::mt19937 rng(20240521u);
  std::uniform_int_distribution<std::size_t> count(1, 12), coord(8, 23);
  int ok = 0;
  double worst_order = -1.0, worst_content = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::size_t> cells;
    const std::size_t k = count(rng);
    for (std::size_t c = 0; c < k; ++c) cells.push_back(g.flatten({coord(rng), coord(rng), 0}));
    const DyadicSet set(g, cells);
    const SolveReport full = variational_capacity({set, CapacityKind::hs1, ord, {}});
    const SolveReport plus = variational_capacity({set, CapacityKind::hs1_plus, ord, {}});
    const SolveReport minus = variational_capacity({set, CapacityKind::hs1_minus, ord, {}});
    const double content = hausdorff_content(set, alpha);
    // Lower bounds of the smaller side against upper bounds of the larger.
    const double order = std::max(plus.dual_value, minus.dual_value) / full.value;
    const double vs_content = full.dual_value / (c_measured * content);
    worst_order = std::max(worst_order, order);
    worst_content = std::max(worst_content, vs_content);
    if (order <= 1.0 && vs_content <= 1.0) ++ok;
  }
  return {ok == 10, std::to_string(ok) + "/10 sets, C=" + fmt("%.4f", c_measured) +
                        " max(dual_pm/primal_hs1)=" + fmt("%.4f", worst_order) +
                        " max(dual_hs1/(C content))=" + fmt("%.4f", worst_content) + " time=" +
                        fmt("%.0fs", seconds_since(t0))};
}

Outcome weak_capacitary() {
  const Grid g(1, 128, 8.0, true);
  const double s = 0.5;
  const FracOrder ord = make_frac_order(1, s);
  const std::vector<TestFamily> members{gaussian(1.0),
                                        bump(1.0),
                                        bump_pair(1.0, {-2.0, 0.0, 0.0}, {2.0, 0.0, 0.0}),
                                        log_abs(),
                                        indicator_ball(1.0),
                                        riesz_kernel_mollified(1.0 - s, 0.25)};
  double worst = 0.0;
  int levels = 0;
  for (const TestFamily& fam : members) {
    const ScalarField u = subtract_mean(sample(fam, g));
    for (CapacityKind kind : {CapacityKind::hs1_plus, CapacityKind::hs1_minus}) {
      const SeminormKind sk = kind == CapacityKind::hs1_plus ? SeminormKind::hs1_plus : SeminormKind::hs1_minus;
      const double sem = seminorm(u, sk, ord);
      for (double sign : {1.0, -1.0}) {
        const ScalarField v = scaled(u, sign);
        double top = 0.0;
        for (double x : v.values()) top = std::max(top, x);
        if (top <= 0.0) continue;
        for (int k = static_cast<int>(std::floor(std::log2(top))); k > -12; --k) {
          const double t = std::ldexp(1.0, k);
          const DyadicSet set = superlevel_set(v, t);
          if (set.empty() || set.size() > g.size() / 4) continue;
          const SolveReport rep = variational_capacity({set, kind, ord, {}});
          worst = std::max(worst, t * rep.value / sem);
          ++levels;
        }
      }
    }
  }
  return {worst <= 1.0 + 1e-3,
          std::to_string(levels) + " levels, max t*Cap/[u]=" + fmt("%.4f", worst)};
}

Outcome strong_failure() {
  const FracOrder ord = make_frac_order(1, 0.5);
  const Grid g(1, 2048, 16.0, false);
  std::vector<double> strong, weak;
  std::string detail;
  for (double eps : {1.0, 0.5, 0.25, 0.125}) {
    const ScalarField f = sample(unit_mass_gaussian(1, eps), g);
    const ScalarField u = riesz_potential(f, ord, OperatorMethod::singular);
    const double mass = lp_norm(f, 1.0);
    strong.push_back(lp_norm(u, 2.0) / mass);
    weak.push_back(weak_lp_norm(u, 2.0) / mass);
  }
  const double growth = min_growth(strong), drift = spread(weak);
  return {growth >= 1.2 && drift <= 0.15,
          "strong ratios " + fmt("%.4f", strong[0]) + "," + fmt("%.4f", strong[1]) + "," + fmt("%.4f", strong[2]) +
              "," + fmt("%.4f", strong[3]) + " min_growth=" + fmt("%.3f", growth) +
              " weak_drift=" + fmt("%.3f", drift)};
}

Outcome trace_dichotomy() {
  const Grid g(2, 256, 4.0, true);
  const FracOrder ord = make_frac_order(2, 0.5);
  const double delta = g.spacing();
  std::vector<Point> sq, seg;
  std::vector<double> wsq, wseg;
  const int k = static_cast<int>(std::lround(2.0 / delta));
  for (int i = 0; i < k; ++i) {
    seg.push_back({-1.0 + i * delta, 0.0, 0.0});
    wseg.push_back(delta);
    for (int j = 0; j < k; ++j) {
      sq.push_back({-1.0 + i * delta, -1.0 + j * delta, 0.0});
      wsq.push_back(delta * delta);
    }
  }
  const DiscreteMeasure area = make_measure(2, sq, wsq), segment = make_measure(2, seg, wseg);
  std::vector<double> ra, rs;
  for (double r : {1.0, 0.5, 0.25}) {
    const ScalarField u = sample(bump(r), g);
    ra.push_back(trace_ratio(area, u, ord, TraceMode::strong));
    rs.push_back(trace_ratio(segment, u, ord, TraceMode::strong));
  }
  const double drift = spread(ra), growth = min_growth(rs);
  return {drift <= 0.10 && growth >= 1.2,
          "area_drift=" + fmt("%.3f", drift) + " segment_min_growth=" + fmt("%.3f", growth)};
}

Outcome determinism() {
  const Config cfg;
  std::vector<std::string> runs[2];
  const char* threads[2] = {"1", "4"};
  for (int k = 0; k < 2; ++k) {
    setenv("FRACLAB_THREADS", threads[k], 1);
    for (const std::string& name : suite_names()) runs[k].push_back(to_json(run_suite(name, cfg)));
  }
  unsetenv("FRACLAB_THREADS");
  std::string differing;
  for (std::size_t i = 0; i < runs[0].size(); ++i)
    if (runs[0][i] != runs[1][i]) differing += " " + suite_names()[i];
  return {differing.empty(), differing.empty() ? std::to_string(runs[0].size()) + " suites byte-identical"
                                               : "differs:" + differing};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"inversion", inversion},
      {"cross-method", cross_method},
      {"hilbert-log", hilbert},
      {"log-decomposition", fs_decomposition},
      {"ball-capacity-scaling", ball_scaling},
      {"dyadic-content-brute-force", content_brute_force},
      {"capacity-ordering", capacity_ordering},
      {"weak-capacitary", weak_capacitary},
      {"strong-bound-failure", strong_failure},
      {"trace-dichotomy", trace_dichotomy},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2zu %-28s %s  %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
