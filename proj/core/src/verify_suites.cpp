#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fraclab/capacity.hpp"
#include "fraclab/fracops.hpp"
#include "fraclab/norms.hpp"
#include "verify_internal.hpp"

namespace fraclab {

namespace {

using detail::CheckTask;
using detail::order_label;
using detail::relative_change;
using Measured = std::vector<std::pair<std::string, double>>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double sup_diff(const ScalarField& a, const ScalarField& b, double sign = -1.0) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] + sign * b[i]));
  return m;
}

double rel_sup(const ScalarField& a, const ScalarField& b, double sign = -1.0) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  return scale == 0.0 ? 0.0 : sup_diff(a, b, sign) / scale;
}

Point on_axis(double x) { return {x, 0.0, 0.0}; }

ScalarField mean_zero_sample(const TestFamily& family, const Grid& grid) {
  return subtract_mean(sample(family, grid));
}

// Mean-zero H^1 members shared by the inequality suites.
std::vector<std::pair<std::string, ScalarField>> h1_members(const Grid& grid, const FracOrder& ord) {
  return {{"bump_pair", mean_zero_sample(bump_pair(1.0, on_axis(-1.5), on_axis(1.5)), grid)},
          {"gaussian", mean_zero_sample(gaussian(1.0), grid)},
          {"laplacian_of_gaussian", frac_laplacian(sample(gaussian(1.0), grid), ord)}};
}

double riesz_l1(const ScalarField& f) {
  const VectorField r = riesz_transform_all(f);
  double acc = 0.0;
  for (const auto& c : r.components()) acc += lp_norm(c, 1.0);
  return acc;
}

double spread(const std::vector<double>& xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *lo > 0.0 ? *hi / *lo - 1.0 : kInf;
}

double min_growth(const std::vector<double>& xs) {
  double g = kInf;
  for (std::size_t i = 1; i < xs.size(); ++i) g = std::min(g, xs[i] / xs[i - 1]);
  return g;
}

// ---------------------------------------------------------------- identity

std::vector<Check> order_identity_checks(const Grid& grid, double s, const Thresholds& thr) {
  const FracOrder ord = make_frac_order(grid.dim(), s);
  const std::string tag = order_label(s);
  std::vector<Check> out;
  const std::vector<std::pair<std::string, ScalarField>> members{
      {"gaussian", mean_zero_sample(gaussian(1.0), grid)}, {"bump", mean_zero_sample(bump(2.0), grid)}};
  const double inv_tol = s >= 0.9 ? thr.inversion_relaxed : thr.inversion;
  for (const auto& [name, phi] : members) {
    const double a = rel_sup(riesz_potential(frac_laplacian(phi, ord), ord), phi);
    const double b = rel_sup(frac_laplacian(riesz_potential(phi, ord), ord), phi);
    out.push_back(make_check("inversion." + name + "." + tag, "potential-inverts-laplacian", std::max(a, b),
                             Relation::at_most, inv_tol,
                             {{"potential_after_laplacian", a}, {"laplacian_after_potential", b}}));
  }

  const ScalarField& phi = members[1].second;
  const FracOrder co = make_frac_order(grid.dim(), 1.0 - s);
  const VectorField grad = frac_gradient(phi, ord);
  double corrected = 0.0, literal = 0.0, via_riesz_after = 0.0, via_riesz_before = 0.0;
  const ScalarField lap = frac_laplacian(phi, ord);
  for (int j = 0; j < grid.dim(); ++j) {
    const ScalarField rhs = riesz_potential(spectral_derivative(phi, j), co);
    corrected = std::max(corrected, rel_sup(grad[j], rhs, +1.0));
    literal = std::max(literal, rel_sup(grad[j], rhs));
    via_riesz_after = std::max(via_riesz_after, rel_sup(grad[j], riesz_transform(lap, j)));
    via_riesz_before = std::max(via_riesz_before, rel_sup(grad[j], frac_laplacian(riesz_transform(phi, j), ord)));
  }
  out.push_back(make_check("gradient-identity.bump." + tag, "gradient-equals-minus-potential-of-gradient", corrected,
                           Relation::at_most, thr.gradient_identity,
                           {{"sign_corrected_residual", corrected}, {"literal_residual", literal}}));
  out.push_back(make_check("commutation.bump." + tag, "gradient-equals-riesz-of-laplacian",
                           std::max(via_riesz_after, via_riesz_before), Relation::at_most, thr.commutation,
                           {{"riesz_after_laplacian", via_riesz_after}, {"riesz_before_laplacian", via_riesz_before}}));

  // Discrete R_j vanish on Nyquist modes, so sum_j R_j R_j = -id holds up to
  // the Nyquist content of the field; the gaussian has none to roundoff.
  double square[2];
  for (std::size_t m = 0; m < members.size(); ++m) {
    const ScalarField& f = members[m].second;
    ScalarField acc = ScalarField::zeros(grid);
    for (int j = 0; j < grid.dim(); ++j) acc = combine(1.0, acc, 1.0, riesz_transform(riesz_transform(f, j), j));
    square[m] = rel_sup(acc, f, +1.0);
  }
  out.push_back(make_check("riesz-square.gaussian." + tag, "riesz-squares-sum-to-minus-identity", square[0],
                           Relation::at_most, thr.commutation,
                           {{"residual_gaussian", square[0]}, {"residual_bump", square[1]}}));

  double residue = 0.0;
  const std::vector<Symbol> symbols{{SymbolKind::laplacian, s, 0}, {SymbolKind::potential, s, 0},
                                    {SymbolKind::gradient, s, grid.dim() - 1}, {SymbolKind::riesz, s, 0}};
  for (const auto& sym : symbols) {
    double r = 0.0;
    const ScalarField out_field = apply_symbol(phi, sym, &r);
    residue = std::max(residue, r / std::max(out_field.max_abs(), 1e-300));
  }
  out.push_back(make_check("realness.bump." + tag, "real-input-real-output", residue, Relation::at_most, thr.realness,
                           {{"imaginary_residue", residue}}));

  const auto half = symbol_table({SymbolKind::laplacian, 0.5 * s, 0}, grid);
  const auto full = symbol_table({SymbolKind::laplacian, s, 0}, grid);
  double semigroup = 0.0;
  for (std::size_t i = 0; i < full.size(); ++i)
    if (std::abs(full[i]) > 0.0) semigroup = std::max(semigroup, std::abs(half[i] * half[i] - full[i]) / std::abs(full[i]));
  out.push_back(make_check("semigroup." + tag, "multiplier-semigroup", semigroup, Relation::at_most, thr.homogeneity,
                           {{"max_relative_error", semigroup}}));
  return out;
}

std::vector<Check> zero_field_checks(const Grid& grid, double s) {
  const FracOrder ord = make_frac_order(grid.dim(), s);
  const ScalarField z = ScalarField::zeros(grid);
  double m = 0.0;
  m = std::max(m, frac_laplacian(z, ord).max_abs());
  m = std::max(m, riesz_potential(z, ord).max_abs());
  const VectorField r = riesz_transform_all(z), g = frac_gradient(z, ord);
  for (const auto& c : r.components()) m = std::max(m, c.max_abs());
  for (const auto& c : g.components()) m = std::max(m, c.max_abs());
  m = std::max(m, frac_laplacian(z, ord, OperatorMethod::singular).max_abs());
  m = std::max(m, riesz_potential(z, ord, OperatorMethod::singular).max_abs());
  return {make_check("zero-field", "zero-maps-to-zero", m, Relation::at_most, 0.0, {{"max_abs_output", m}})};
}

double interior_l2_error(const ScalarField& a, const ScalarField& b) {
  const Grid& g = a.grid();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point x = g.point(i);
    bool inside = true;
    for (int d = 0; d < g.dim(); ++d) inside = inside && std::abs(x[d]) <= 0.5 * g.half_extent();
    if (!inside) continue;
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

std::vector<Check> cross_method_checks(const Config& cfg) {
  const FracOrder ord = make_frac_order(1, cfg.s);
  std::vector<double> errs;
  for (std::size_t N : {cfg.grid.N, 2 * cfg.grid.N}) {
    const Grid g(1, N, cfg.grid.L, true);
    const ScalarField u = sample(gaussian(1.0), g);
    errs.push_back(interior_l2_error(frac_laplacian(u, ord, OperatorMethod::singular), frac_laplacian(u, ord)));
  }
  return {make_check("cross-method.gaussian", "spectral-matches-singular", errs[0], Relation::at_most,
                     cfg.thresholds.cross_method, {{"error_N", errs[0]}, {"error_2N", errs[1]}}),
          make_check("cross-method.refinement", "spectral-matches-singular", errs[1] / errs[0], Relation::at_most, 1.0,
                     {{"error_N", errs[0]}, {"error_2N", errs[1]}})};
}

Check hilbert_check(const Config& cfg) {
  const Grid g(1, cfg.hilbert.N, cfg.hilbert.L, false);
  const ScalarField h = riesz_transform(sample(indicator_ball(1.0), g), 0, OperatorMethod::singular);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coord(i);
    if (std::abs(x - 1.0) < 0.25 || std::abs(x + 1.0) < 0.25) continue;
    err = std::max(err, std::abs(h[i] - std::log(std::abs((x + 1.0) / (x - 1.0))) / std::numbers::pi));
  }
  return make_check("hilbert-log", "hilbert-of-interval-indicator", err, Relation::at_most, cfg.thresholds.hilbert,
                    {{"max_error", err},
                     {"value_at_2", interpolate(h, on_axis(2.0))},
                     {"exact_at_2", std::log(3.0) / std::numbers::pi},
                     {"value_at_0", interpolate(h, on_axis(0.0))}});
}

std::vector<Check> liouville_checks(const Config& cfg) {
  const Grid g(1, cfg.liouville.N, cfg.liouville.L, true);
  std::vector<ScalarField> fields;
  for (double w : {0.5, 1.0, 2.0}) fields.push_back(sample(gaussian(w), g));
  const LiouvilleFit fit = fit_liouville_constants(fields, cfg.s);
  const double half_angle = 0.5 * std::numbers::pi * cfg.s;
  return {make_check("liouville-fit", "liouville-constants-fit", fit.residual_plus, Relation::at_most,
                     cfg.thresholds.liouville_residual,
                     {{"c_plus", fit.c_plus},
                      {"c_minus", fit.c_minus},
                      {"residual_plus", fit.residual_plus},
                      {"residual_minus", fit.residual_minus},
                      {"closed_form_c_plus", 0.5 / std::cos(half_angle)},
                      {"closed_form_c_minus", 0.5 / std::sin(half_angle)}})};
}

// ------------------------------------------------------------- stein-weiss

double stein_weiss_ratio(const ScalarField& f, const FracOrder& ord) {
  const double q = ord.n / (ord.n - ord.s);
  return lp_norm(riesz_potential(f, ord), q) / hardy_h1_norm(f, HardyVariant::riesz);
}

std::vector<Check> stein_weiss_checks(const Config& cfg, double s) {
  const std::string tag = order_label(s);
  const FracOrder ord = make_frac_order(cfg.n, s);
  const Grid g1(cfg.n, cfg.grid.N, cfg.grid.L, true), g2(cfg.n, 2 * cfg.grid.N, cfg.grid.L, true);
  const auto m1 = h1_members(g1, ord), m2 = h1_members(g2, ord);
  const double thr = cfg.thresholds.refinement_drift;
  std::vector<Check> out;
  double sup1 = 0.0, sup2 = 0.0;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    const double r1 = stein_weiss_ratio(m1[i].second, ord), r2 = stein_weiss_ratio(m2[i].second, ord);
    sup1 = std::max(sup1, r1);
    sup2 = std::max(sup2, r2);
    out.push_back(make_check("refinement." + m1[i].first + "." + tag, "stein-weiss-h1-bound", relative_change(r1, r2),
                             Relation::at_most, thr, {{"ratio_N", r1}, {"ratio_2N", r2}}));
  }
  out.push_back(make_check("sup-ratio." + tag, "stein-weiss-h1-bound", relative_change(sup1, sup2), Relation::at_most,
                           thr, {{"sup_ratio_N", sup1}, {"sup_ratio_2N", sup2}}));

  const ScalarField& pair = m1[0].second;
  const double base = stein_weiss_ratio(pair, ord), lam = stein_weiss_ratio(scaled(pair, 4.0), ord);
  out.push_back(make_check("homogeneity." + tag, "ratio-scale-invariance", relative_change(base, lam),
                           Relation::at_most, cfg.thresholds.homogeneity, {{"ratio", base}, {"ratio_scaled", lam}}));

  Measured dil;
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    const double v = stein_weiss_ratio(mean_zero_sample(bump_pair(r, on_axis(-1.5 * r), on_axis(1.5 * r)), g1), ord);
    dil.push_back({"ratio_r" + format_double(r), v});
  }
  for (const auto& [k, v] : dil) worst = std::max(worst, relative_change(v, dil[1].second));
  out.push_back(make_check("dilation." + tag, "ratio-dilation-invariance", worst, Relation::at_most,
                           cfg.thresholds.dilation, dil));
  return out;
}

// --------------------------------------------------------------- weak-type

struct WeakRatios {
  double by_l1 = 0.0;
  double by_riesz = 0.0;
};

WeakRatios weak_ratios(const ScalarField& f, const FracOrder& ord) {
  const double q = ord.n / (ord.n - ord.s);
  const double w = weak_lp_norm(riesz_potential(f, ord), q);
  return {w / lp_norm(f, 1.0), w / riesz_l1(f)};
}

std::vector<Check> weak_member_checks(const Config& cfg) {
  const FracOrder ord = make_frac_order(cfg.n, cfg.s);
  const Grid g1(cfg.n, cfg.grid.N, cfg.grid.L, true), g2(cfg.n, 2 * cfg.grid.N, cfg.grid.L, true);
  const auto m1 = h1_members(g1, ord), m2 = h1_members(g2, ord);
  std::vector<Check> out;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    const WeakRatios a = weak_ratios(m1[i].second, ord), b = weak_ratios(m2[i].second, ord);
    const double drift = std::max(relative_change(a.by_l1, b.by_l1), relative_change(a.by_riesz, b.by_riesz));
    out.push_back(make_check("refinement." + m1[i].first, "weak-type-potential-bound", drift, Relation::at_most,
                             cfg.thresholds.refinement_drift,
                             {{"weak_over_l1_N", a.by_l1},
                              {"weak_over_l1_2N", b.by_l1},
                              {"weak_over_riesz_l1_N", a.by_riesz},
                              {"weak_over_riesz_l1_2N", b.by_riesz}}));
  }
  const WeakRatios a = weak_ratios(m1[0].second, ord), b = weak_ratios(scaled(m1[0].second, 4.0), ord);
  const double h = std::max(relative_change(a.by_l1, b.by_l1), relative_change(a.by_riesz, b.by_riesz));
  out.push_back(make_check("homogeneity", "ratio-scale-invariance", h, Relation::at_most, cfg.thresholds.homogeneity,
                           {{"weak_over_l1", a.by_l1}, {"weak_over_l1_scaled", b.by_l1}}));
  return out;
}

std::vector<Check> concentration_checks(const Config& cfg) {
  const FracOrder ord = make_frac_order(1, cfg.s);
  const Grid g(1, cfg.concentration.N, cfg.concentration.L, false);
  const double q = 1.0 / (1.0 - cfg.s);
  std::vector<double> strong, weak;
  Measured m;
  for (double eps : {1.0, 0.5, 0.25, 0.125}) {
    const ScalarField f = sample(unit_mass_gaussian(1, eps), g);
    const ScalarField u = riesz_potential(f, ord, OperatorMethod::singular);
    const double mass = lp_norm(f, 1.0);
    strong.push_back(lp_norm(u, q) / mass);
    weak.push_back(weak_lp_norm(u, q) / mass);
    m.push_back({"strong_eps" + format_double(eps), strong.back()});
    m.push_back({"weak_eps" + format_double(eps), weak.back()});
  }
  return {make_check("concentration.weak-drift", "weak-type-l1-bound", spread(weak), Relation::at_most,
                     cfg.thresholds.weak_drift, m),
          make_check("concentration.strong-growth", "strong-type-l1-bound-fails", min_growth(strong),
                     Relation::at_least, cfg.thresholds.strong_growth, m)};
}

// -------------------------------------------------------------- capacitary

// Dyadic bracket of int_0^inf Cap({|u| > t}) d(t^e) from the solved levels.
double power_integral(const LevelSetIntegral& li, double e) {
  if (li.levels == 0) return 0.0;
  double lower = 0.0, upper = 0.0;
  for (std::size_t j = 0; j < li.capacities.size(); ++j) {
    const double t = li.thresholds[j];
    const double w = std::pow(2.0 * t, e) - std::pow(t, e);
    upper += w * li.capacities[j];
    if (j > 0) lower += w * li.capacities[j - 1];
  }
  const double tail = std::pow(li.thresholds.back(), e) * (li.tail_exact ? li.support_capacity : li.capacities.back());
  return 0.5 * (lower + upper) + tail;
}

std::vector<Check> strong_integral_checks(const Config& cfg) {
  const FracOrder ord = make_frac_order(1, cfg.s);
  std::vector<double> ratios;
  Measured m;
  for (std::size_t N : {cfg.capacitary.N, 2 * cfg.capacitary.N}) {
    const Grid g(1, N, cfg.capacitary.L, true);
    const ScalarField u = sample(gaussian(1.0), g);
    const LevelSetIntegral li = level_set_capacity_integral(u, CapacityKind::hs1, ord, cfg.solver, cfg.level_fraction);
    const double sem = seminorm(u, SeminormKind::hs1, ord);
    ratios.push_back(li.value / sem);
    const std::string tag = "_N" + std::to_string(N);
    m.push_back({"ratio" + tag, ratios.back()});
    m.push_back({"bracket_width" + tag, li.upper - li.lower});
    m.push_back({"all_converged" + tag, li.all_converged ? 1.0 : 0.0});
  }
  return {make_check("strong-integral.gaussian", "strong-capacitary-bound", relative_change(ratios[0], ratios[1]),
                     Relation::at_most, cfg.thresholds.integral_drift, m)};
}

std::vector<Check> two_order_checks(const Config& cfg) {
  const int n = 2;
  const FracOrder ord = make_frac_order(n, cfg.s);
  const Grid g(n, cfg.two_order.N, cfg.two_order.L, true);
  const ScalarField u = sample(bump(1.5), g);
  const double sem = seminorm(u, SeminormKind::hs1_minus, ord);
  std::vector<Check> out;
  for (double factor : {0.5, 0.9}) {
    const double shat = factor * cfg.s;
    const FracOrder lo = make_frac_order(n, shat);
    const double a = (n - cfg.s) / (n - shat);
    const LevelSetIntegral li =
        level_set_capacity_integral(u, CapacityKind::hs1_minus, lo, cfg.solver, cfg.level_fraction);
    const double lhs = std::pow(power_integral(li, 1.0 / a), a);
    const double ratio = lhs / sem;
    out.push_back(make_check("two-order.shat" + format_double(shat), "two-order-capacitary-bound", ratio,
                             Relation::at_most, kInf,
                             {{"lhs", lhs}, {"seminorm", sem}, {"ratio", ratio},
                              {"levels", static_cast<double>(li.levels)},
                              {"all_converged", li.all_converged ? 1.0 : 0.0}}));
  }
  return out;
}

std::vector<std::pair<std::string, TestFamily>> capacitary_members(double s) {
  return {{"gaussian", gaussian(1.0)},
          {"bump", bump(1.0)},
          {"shifted_bump_pair", bump_pair(1.0, on_axis(-2.0), on_axis(2.0))},
          {"log_abs", log_abs()},
          {"indicator_ball", indicator_ball(1.0)},
          {"riesz_kernel_mollified", riesz_kernel_mollified(1.0 - s, 0.25)}};
}

// Members are taken mean-zero, the torus counterpart of decay at infinity
// that the capacity constraint also uses.
Check weak_capacitary_check(const Config& cfg, const std::string& name, const ScalarField& u, CapacityKind kind) {
  const FracOrder ord = make_frac_order(1, cfg.s);
  const SeminormKind sk = kind == CapacityKind::hs1_plus ? SeminormKind::hs1_plus : SeminormKind::hs1_minus;
  const double sem = seminorm(u, sk, ord);
  const double limit = cfg.level_fraction * static_cast<double>(u.size());
  struct Level {
    double t;
    std::size_t set;
  };
  std::vector<DyadicSet> sets;
  std::vector<Level> levels;
  int skipped = 0;
  for (double sign : {1.0, -1.0}) {
    const ScalarField v = scaled(u, sign);
    double top = 0.0;
    for (double x : v.values()) top = std::max(top, x);
    if (top <= 0.0) continue;
    const int kmax = static_cast<int>(std::floor(std::log2(top)));
    for (int k = kmax; k > kmax - cfg.level_depth; --k) {
      const double t = std::ldexp(1.0, k);
      DyadicSet set = superlevel_set(v, t);
      if (set.empty()) continue;
      if (static_cast<double>(set.size()) > limit) {
        ++skipped;
        continue;
      }
      if (sets.empty() || sets.back().cells() != set.cells()) sets.push_back(std::move(set));
      levels.push_back({t, sets.size() - 1});
    }
  }
  std::vector<SolveReport> reps;
  for (const auto& set : sets) reps.push_back(variational_capacity({set, kind, ord, cfg.solver}));
  double worst = 0.0, worst_t = 0.0, worst_cap = 0.0, max_gap = 0.0;
  bool converged = true;
  for (const auto& r : reps) {
    converged = converged && r.converged;
    max_gap = std::max(max_gap, r.value > 0.0 ? r.gap / r.value : 0.0);
  }
  for (const auto& lv : levels) {
    const double ratio = lv.t * reps[lv.set].value / sem;
    if (ratio > worst) {
      worst = ratio;
      worst_t = lv.t;
      worst_cap = reps[lv.set].value;
    }
  }
  return make_check("weak-capacitary." + name + "." + std::string(to_string(kind)), "weak-capacitary-bound",
                    worst - 1.0, Relation::at_most, cfg.thresholds.weak_capacitary,
                    {{"seminorm", sem},
                     {"worst_ratio", worst},
                     {"worst_level", worst_t},
                     {"worst_capacity", worst_cap},
                     {"levels_checked", static_cast<double>(levels.size())},
                     {"levels_skipped", static_cast<double>(skipped)},
                     {"max_relative_gap", max_gap},
                     {"all_converged", converged ? 1.0 : 0.0}});
}

std::vector<Check> plus_growth_checks(const Config& cfg) {
  const FracOrder ord = make_frac_order(1, cfg.s);
  const Grid g(1, cfg.capacitary.N, cfg.capacitary.L, true);
  std::vector<double> ratios;
  Measured m;
  for (double eps : {1.0, 0.5, 0.25}) {
    const ScalarField u = riesz_potential(mean_zero_sample(unit_mass_gaussian(1, eps), g), ord);
    const LevelSetIntegral li =
        level_set_capacity_integral(u, CapacityKind::hs1_plus, ord, cfg.solver, cfg.level_fraction);
    ratios.push_back(li.value / seminorm(u, SeminormKind::hs1_plus, ord));
    m.push_back({"ratio_eps" + format_double(eps), ratios.back()});
  }
  return {make_check("plus-integral-growth", "strong-capacitary-bound-fails-for-plus", min_growth(ratios),
                     Relation::at_least, cfg.thresholds.capacitary_growth, m)};
}

// ------------------------------------------------------------------- trace

DiscreteMeasure square_measure(double half, double delta) {
  std::vector<Point> pts;
  std::vector<double> w;
  const int k = static_cast<int>(std::lround(2.0 * half / delta));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      pts.push_back({-half + i * delta, -half + j * delta, 0.0});
      w.push_back(delta * delta);
    }
  return make_measure(2, std::move(pts), std::move(w));
}

DiscreteMeasure segment_measure(double half, double delta) {
  std::vector<Point> pts;
  std::vector<double> w;
  const int k = static_cast<int>(std::lround(2.0 * half / delta));
  for (int i = 0; i < k; ++i) {
    pts.push_back({-half + i * delta, 0.0, 0.0});
    w.push_back(delta);
  }
  return make_measure(2, std::move(pts), std::move(w));
}

std::vector<Check> trace_checks(const Config& cfg) {
  const FracOrder ord = make_frac_order(2, cfg.s);
  const Grid g(2, cfg.trace.N, cfg.trace.L, true);
  const double delta = g.spacing();
  const DiscreteMeasure area = square_measure(1.0, delta), segment = segment_measure(1.0, delta);
  std::vector<double> ra, rs;
  Measured ma, ms;
  for (double r : {1.0, 0.5, 0.25}) {
    const ScalarField u = sample(bump(r), g);
    ra.push_back(trace_ratio(area, u, ord, TraceMode::strong));
    rs.push_back(trace_ratio(segment, u, ord, TraceMode::strong));
    ma.push_back({"strong_r" + format_double(r), ra.back()});
    ma.push_back({"weak_r" + format_double(r), trace_ratio(area, u, ord, TraceMode::weak)});
    ms.push_back({"strong_r" + format_double(r), rs.back()});
    ms.push_back({"weak_r" + format_double(r), trace_ratio(segment, u, ord, TraceMode::weak)});
  }
  ma.push_back({"growth_norm_beta0", measure_growth_norm(area, 0.0, delta)});
  ms.push_back({"growth_norm_beta1", measure_growth_norm(segment, 1.0, delta)});
  ms.push_back({"growth_norm_beta_s", measure_growth_norm(segment, cfg.s, delta)});

  const DiscreteMeasure empty = make_measure(2, area.points, std::vector<double>(area.points.size(), 0.0));
  const double zero = trace_ratio(empty, sample(bump(0.5), g), ord, TraceMode::strong);
  return {make_check("area-measure.bounded", "trace-holds-under-growth-condition", spread(ra), Relation::at_most,
                     cfg.thresholds.trace_drift, ma),
          make_check("segment-measure.growth", "trace-fails-without-growth-condition", min_growth(rs),
                     Relation::at_least, cfg.thresholds.trace_growth, ms),
          make_check("zero-measure", "trace-of-zero-measure", zero, Relation::at_most, 0.0, {{"ratio", zero}})};
}

// ---------------------------------------------------------------------- fs

double fs_constant(int n) {
  const double nn = n;
  return gamma_eval(0.5) * std::pow(std::numbers::pi, (1.0 - nn) / 2.0) * std::pow(2.0, 1.0 - nn) /
         ((nn - 1.0) * gamma_eval((nn - 1.0) / 2.0));
}

// sum_j R_j(c x_j/|x|) with the origin set to 0.
ScalarField log_reconstruction(const Grid& g, double c) {
  ScalarField acc = ScalarField::zeros(g);
  for (int j = 0; j < g.dim(); ++j) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Point x = g.point(i);
      double r = 0.0;
      for (int d = 0; d < g.dim(); ++d) r += x[d] * x[d];
      v[i] = r > 0.0 ? c * x[j] / std::sqrt(r) : 0.0;
    }
    acc = combine(1.0, acc, 1.0, riesz_transform(subtract_mean(ScalarField(g, std::move(v))), j));
  }
  return acc;
}

// Relative L2 error on 0.5 <= |x| <= L/2 after matching means there.
double annulus_error(const ScalarField& y, const Grid& g) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.point(i);
    double r = 0.0;
    for (int d = 0; d < g.dim(); ++d) r += x[d] * x[d];
    r = std::sqrt(r);
    if (r >= 0.5 && r <= 0.5 * g.half_extent()) idx.push_back(i);
  }
  double my = 0.0, ml = 0.0;
  for (std::size_t i : idx) {
    const Point x = g.point(i);
    my += y[i];
    ml += 0.5 * std::log(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  }
  my /= static_cast<double>(idx.size());
  ml /= static_cast<double>(idx.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i : idx) {
    const Point x = g.point(i);
    const double l = 0.5 * std::log(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) - ml;
    num += (y[i] - my - l) * (y[i] - my - l);
    den += l * l;
  }
  return std::sqrt(num / den);
}

std::vector<Check> fs_checks(const Config& cfg) {
  const Grid g(2, cfg.fs.N, cfg.fs.L, true);
  const double c = fs_constant(2);
  const ScalarField unit = log_reconstruction(g, 1.0);
  const double err = annulus_error(scaled(unit, c), g);
  const double err_unit = annulus_error(unit, g);
  return {make_check("log-decomposition.n2", "log-abs-riesz-decomposition", err, Relation::at_most,
                     cfg.thresholds.fs, {{"constant", c}, {"relative_error", err}, {"relative_error_unit_constant", err_unit}})};
}

// -------------------------------------------------------------- divergence

std::vector<Check> divergence_checks(const Config& cfg) {
  const Grid g(2, cfg.divergence.N, cfg.divergence.L, true);
  const Symbol blur{SymbolKind::gaussian, 0.5, 0};
  const std::vector<ScalarField> comps{
      subtract_mean(apply_symbol(sample(indicator_ball(2.0, {-1.0, 0.0, 0.0}), g), blur)),
      subtract_mean(apply_symbol(sample(indicator_ball(1.5, {1.0, 0.5, 0.0}), g), blur))};
  ScalarField lhs = ScalarField::zeros(g), rhs = ScalarField::zeros(g);
  for (int j = 0; j < 2; ++j) {
    lhs = combine(1.0, lhs, 1.0, riesz_transform(comps[j], j));
    const std::vector<Symbol> div{{SymbolKind::derivative, 0.0, j}, {SymbolKind::potential, 1.0, 0}};
    rhs = combine(1.0, rhs, 1.0, apply_symbols(comps[j], div));
  }
  const double corrected = rel_sup(lhs, rhs, +1.0), literal = rel_sup(lhs, rhs);

  double zero = 0.0;
  for (int j = 0; j < 2; ++j) zero = std::max(zero, riesz_transform(ScalarField::zeros(g), j).max_abs());

  const double c = fs_constant(2);
  const Grid g2(2, 2 * cfg.divergence.N, cfg.divergence.L, true);
  const double b1 = bmo_norm(scaled(log_reconstruction(g, 1.0), c));
  const double b2 = bmo_norm(scaled(log_reconstruction(g2, 1.0), c));
  return {make_check("riesz-divergence", "riesz-sum-equals-minus-divergence", corrected, Relation::at_most,
                     cfg.thresholds.divergence, {{"sign_corrected_residual", corrected}, {"literal_residual", literal}}),
          make_check("zero-field", "zero-maps-to-zero", zero, Relation::at_most, 0.0, {{"max_abs_output", zero}}),
          make_check("log-reconstruction-bmo", "log-reconstruction-in-bmo", relative_change(b1, b2), Relation::at_most,
                     cfg.thresholds.bmo_drift, {{"bmo_N", b1}, {"bmo_2N", b2}})};
}

std::vector<std::pair<std::string, std::string>> order_environment(const Config& cfg, bool sweep) {
  if (!sweep) return {{"s", format_double(cfg.s)}};
  std::string list;
  for (std::size_t i = 0; i < cfg.s_list.size(); ++i) list += (i ? "," : "") + format_double(cfg.s_list[i]);
  return {{"s_list", list}, {"s", format_double(cfg.s)}};
}

void append(std::vector<std::pair<std::string, std::string>>& env, std::vector<std::pair<std::string, std::string>> more) {
  for (auto& kv : more) env.push_back(std::move(kv));
}

}  // namespace

SuiteReport run_identity_suite(const Config& cfg) {
  const Grid grid(cfg.n, cfg.grid.N, cfg.grid.L, true);
  std::vector<CheckTask> tasks;
  for (double s : cfg.s_list) tasks.push_back([&cfg, grid, s] { return order_identity_checks(grid, s, cfg.thresholds); });
  tasks.push_back([&cfg] { return cross_method_checks(cfg); });
  tasks.push_back([&cfg] { return std::vector<Check>{hilbert_check(cfg)}; });
  tasks.push_back([&cfg] { return liouville_checks(cfg); });
  tasks.push_back([&cfg, grid] { return zero_field_checks(grid, cfg.s); });
  SuiteReport rep{"identity", detail::grid_environment("grid.", grid), detail::run_tasks(tasks)};
  append(rep.environment, order_environment(cfg, true));
  append(rep.environment, detail::grid_environment("cross_method.", Grid(1, cfg.grid.N, cfg.grid.L, true)));
  append(rep.environment, detail::grid_environment("hilbert.", Grid(1, cfg.hilbert.N, cfg.hilbert.L, false)));
  append(rep.environment, detail::grid_environment("liouville.", Grid(1, cfg.liouville.N, cfg.liouville.L, true)));
  return rep;
}

SuiteReport run_stein_weiss_suite(const Config& cfg) {
  std::vector<CheckTask> tasks;
  for (double s : cfg.s_list) tasks.push_back([&cfg, s] { return stein_weiss_checks(cfg, s); });
  SuiteReport rep{"stein-weiss", detail::grid_environment("grid.", Grid(cfg.n, cfg.grid.N, cfg.grid.L, true)),
                  detail::run_tasks(tasks)};
  append(rep.environment, order_environment(cfg, true));
  return rep;
}

SuiteReport run_weak_type_suite(const Config& cfg) {
  std::vector<CheckTask> tasks{[&cfg] { return weak_member_checks(cfg); },
                               [&cfg] { return concentration_checks(cfg); }};
  SuiteReport rep{"weak-type", detail::grid_environment("grid.", Grid(cfg.n, cfg.grid.N, cfg.grid.L, true)),
                  detail::run_tasks(tasks)};
  append(rep.environment, order_environment(cfg, false));
  append(rep.environment,
         detail::grid_environment("concentration.", Grid(1, cfg.concentration.N, cfg.concentration.L, false)));
  return rep;
}

SuiteReport run_capacitary_suite(const Config& cfg) {
  const Grid g(1, cfg.capacitary.N, cfg.capacitary.L, true);
  std::vector<CheckTask> tasks{[&cfg] { return strong_integral_checks(cfg); },
                               [&cfg] { return two_order_checks(cfg); }};
  for (const auto& [name, family] : capacitary_members(cfg.s))
    for (CapacityKind kind : {CapacityKind::hs1_plus, CapacityKind::hs1_minus})
      tasks.push_back([&cfg, g, name, family, kind] {
        return std::vector<Check>{weak_capacitary_check(cfg, name, mean_zero_sample(family, g), kind)};
      });
  tasks.push_back([&cfg] { return plus_growth_checks(cfg); });
  SuiteReport rep{"capacitary", detail::grid_environment("grid.", g), detail::run_tasks(tasks)};
  append(rep.environment, order_environment(cfg, false));
  append(rep.environment, detail::grid_environment("two_order.", Grid(2, cfg.two_order.N, cfg.two_order.L, true)));
  append(rep.environment, {{"solver.max_iter", std::to_string(cfg.solver.max_iter)},
                           {"solver.tol_gap", format_double(cfg.solver.tol_gap)},
                           {"capacity.level_fraction", format_double(cfg.level_fraction)},
                           {"capacity.level_depth", std::to_string(cfg.level_depth)}});
  return rep;
}

SuiteReport run_trace_suite(const Config& cfg) {
  SuiteReport rep{"trace", detail::grid_environment("grid.", Grid(2, cfg.trace.N, cfg.trace.L, true)),
                  trace_checks(cfg)};
  append(rep.environment, order_environment(cfg, false));
  return rep;
}

SuiteReport run_fs_decomposition_suite(const Config& cfg) {
  std::vector<CheckTask> tasks{[&cfg] { return fs_checks(cfg); },
                               [&cfg] { return std::vector<Check>{hilbert_check(cfg)}; }};
  SuiteReport rep{"fs", detail::grid_environment("grid.", Grid(2, cfg.fs.N, cfg.fs.L, true)),
                  detail::run_tasks(tasks)};
  append(rep.environment, detail::grid_environment("hilbert.", Grid(1, cfg.hilbert.N, cfg.hilbert.L, false)));
  return rep;
}

SuiteReport run_divergence_suite(const Config& cfg) {
  SuiteReport rep{"divergence", detail::grid_environment("grid.", Grid(2, cfg.divergence.N, cfg.divergence.L, true)),
                  divergence_checks(cfg)};
  return rep;
}

}  // namespace fraclab
