#include "fraclab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fraclab/fracops.hpp"
#include "fraclab/parallel.hpp"
#include "fracops_internal.hpp"
#include "quadrature.hpp"

namespace fraclab {

namespace {

void require_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
}

// |u| sorted descending.
std::vector<double> sorted_magnitudes(const ScalarField& field) {
  std::vector<double> a(field.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(field[i]);
  std::sort(a.begin(), a.end(), std::greater<>());
  return a;
}

double l1(std::span<const double> v, double hn) {
  std::vector<double> a(v.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(v[i]);
  return pairwise_sum(a) * hn;
}

void require_mean_zero(const ScalarField& field, const char* what) {
  if (!detail::has_zero_mean(field))
    throw std::invalid_argument(std::string(what) + " needs a mean-zero field");
}

}  // namespace

double lp_norm(const ScalarField& field, double p) {
  require_p(p);
  if (std::isinf(p)) return field.max_abs();
  std::vector<double> a(field.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::pow(std::abs(field[i]), p);
  return std::pow(pairwise_sum(a) * field.grid().cell_volume(), 1.0 / p);
}

double weak_lp_norm(const ScalarField& field, double p) {
  require_p(p);
  const std::vector<double> a = sorted_magnitudes(field);
  const double hn = field.grid().cell_volume();
  if (std::isinf(p)) return a.empty() ? 0.0 : a.front();
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) break;
    if (i + 1 < a.size() && a[i + 1] == a[i]) continue;
    best = std::max(best, a[i] * std::pow(static_cast<double>(i + 1) * hn, 1.0 / p));
  }
  return best;
}

double lorentz_norm(const ScalarField& field, const FracOrder& ord) {
  const std::vector<double> a = sorted_magnitudes(field);
  const double hn = field.grid().cell_volume();
  const double q = (ord.n - ord.s) / ord.n;
  std::vector<double> terms;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) break;
    if (i + 1 < a.size() && a[i + 1] == a[i]) continue;
    const double next = i + 1 < a.size() ? a[i + 1] : 0.0;
    terms.push_back((a[i] - next) * std::pow(static_cast<double>(i + 1) * hn, q));
  }
  return pairwise_sum(terms);
}

GagliardoResult gagliardo_detail(const ScalarField& field, double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s outside (0,1)");
  const Grid& g = field.grid();
  const int n = g.dim();
  const double hn = g.cell_volume();
  const detail::OffsetTable table = detail::hypersingular_table(g, s);
  std::vector<double> rows = detail::offset_sum(field, table, detail::Pairing::abs_difference);
  if (!g.periodic()) {
    // Pairs with one point outside the box, counted in both orders.
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (field[i] != 0.0) rows[i] += 2.0 * std::abs(field[i]) * detail::exterior_weight(g, s, i);
  }
  GagliardoResult r;
  r.value = pairwise_sum(rows) * hn;
  std::vector<double> grad2(g.size(), 0.0);
  for (int j = 0; j < n; ++j) {
    const auto dj = detail::central_difference(field, j);
    for (std::size_t i = 0; i < grad2.size(); ++i) grad2[i] += dj[i] * dj[i];
  }
  for (double& v : grad2) v = std::sqrt(v);
  r.diagonal_estimate = pairwise_sum(grad2) * hn * std::pow(g.spacing(), 1.0 - s) *
                        detail::cell_moment(n, 1.0 - n - s);
  return r;
}

double gagliardo_seminorm(const ScalarField& field, double s) { return gagliardo_detail(field, s).value; }

double hardy_h1_norm(const ScalarField& field, HardyVariant variant) {
  require_mean_zero(field, "hardy_h1_norm");
  const Grid& g = field.grid();
  detail::require_periodic(g, "hardy_h1_norm");
  const double hn = g.cell_volume();
  if (variant == HardyVariant::riesz) {
    double total = l1(field.values(), hn);
    for (int j = 0; j < g.dim(); ++j) total += l1(riesz_transform(field, j).values(), hn);
    return total;
  }
  std::vector<double> sup(g.size(), 0.0);
  for (double t = g.spacing(); t <= 2.0 * g.half_extent() * (1.0 + 1e-12); t *= 2.0) {
    const ScalarField avg = apply_symbol(field, {SymbolKind::gaussian, t, 0});
    for (std::size_t i = 0; i < sup.size(); ++i) sup[i] = std::max(sup[i], std::abs(avg[i]));
  }
  return pairwise_sum(sup) * hn;
}

double bmo_norm(const ScalarField& field) {
  const Grid& g = field.grid();
  const int n = g.dim();
  const std::size_t N = g.per_axis();
  const auto f = field.values();
  double best = 0.0;
  for (std::size_t side = 2; side <= N; side *= 2) {
    const std::size_t per = N / side;
    std::size_t cubes = 1;
    for (int d = 0; d < n; ++d) cubes *= per;
    std::vector<double> osc(cubes);
    parallel_for(cubes, [&](std::size_t c) {
      Index origin{};
      std::size_t rest = c;
      for (int d = n - 1; d >= 0; --d) {
        origin[d] = (rest % per) * side;
        rest /= per;
      }
      std::size_t count = 1;
      for (int d = 0; d < n; ++d) count *= side;
      std::vector<double> vals(count);
      for (std::size_t q = 0; q < count; ++q) {
        Index k = origin;
        std::size_t r2 = q;
        for (int d = n - 1; d >= 0; --d) {
          k[d] += r2 % side;
          r2 /= side;
        }
        vals[q] = f[g.flatten(k)];
      }
      const double mean = pairwise_sum(vals) / static_cast<double>(count);
      for (double& v : vals) v = std::abs(v - mean);
      osc[c] = pairwise_sum(vals) / static_cast<double>(count);
    });
    for (double o : osc) best = std::max(best, o);
  }
  return best;
}

std::string_view to_string(SeminormKind kind) {
  switch (kind) {
    case SeminormKind::hs1: return "hs1";
    case SeminormKind::hs1_plus: return "hs1p";
    case SeminormKind::hs1_minus: return "hs1m";
  }
  return "unknown";
}

double seminorm(const ScalarField& field, SeminormKind kind, const FracOrder& ord) {
  const Grid& g = field.grid();
  const double hn = g.cell_volume();
  double plus = 0.0, minus = 0.0;
  if (kind != SeminormKind::hs1_minus) plus = l1(frac_laplacian(field, ord).values(), hn);
  if (kind != SeminormKind::hs1_plus) {
    const VectorField grad = frac_gradient(field, ord);
    for (int j = 0; j < g.dim(); ++j) minus += l1(grad[j].values(), hn);
  }
  return plus + minus;
}

}  // namespace fraclab
