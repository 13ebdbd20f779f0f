#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "fraclab/capacity.hpp"
#include "fraclab/parallel.hpp"

namespace fraclab {

DiscreteMeasure make_measure(int n, std::vector<Point> points, std::vector<double> weights) {
  if (n < 1 || n > 3) throw std::invalid_argument("measure dimension must be 1, 2 or 3");
  if (points.size() != weights.size()) throw std::invalid_argument("points and weights differ in length");
  for (double w : weights)
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("measure weights must be finite and >= 0");
  for (const Point& p : points)
    for (int d = 0; d < n; ++d)
      if (!std::isfinite(p[d])) throw std::invalid_argument("measure atoms must be finite");
  for (Point& p : points)
    for (int d = n; d < 3; ++d) p[d] = 0.0;
  return {n, std::move(points), std::move(weights)};
}

double total_mass(const DiscreteMeasure& mu) { return pairwise_sum(mu.weights); }

namespace {

double dist2(const Point& a, const Point& b, int n) {
  double acc = 0.0;
  for (int d = 0; d < n; ++d) acc += (a[d] - b[d]) * (a[d] - b[d]);
  return acc;
}

using Key = std::array<long long, 3>;

// Atoms bucketed on a lattice of the given cell size.
class Buckets {
 public:
  Buckets(const DiscreteMeasure& mu, const std::vector<std::size_t>& atoms, double cell) : mu_(mu), cell_(cell) {
    for (std::size_t a : atoms) cells_[key(mu.points[a])].push_back(a);
  }

  // mu(B(x, r)) for an open ball with r <= cell.
  double mass(const Point& x, double r) const {
    const int n = mu_.n;
    const Key c = key(x);
    const double r2 = r * r;
    double acc = 0.0;
    Key k{};
    const long long span[3] = {1, n > 1 ? 1 : 0, n > 2 ? 1 : 0};
    for (long long a = -span[0]; a <= span[0]; ++a)
      for (long long b = -span[1]; b <= span[1]; ++b)
        for (long long e = -span[2]; e <= span[2]; ++e) {
          k = {c[0] + a, c[1] + b, c[2] + e};
          const auto it = cells_.find(k);
          if (it == cells_.end()) continue;
          for (std::size_t i : it->second)
            if (dist2(mu_.points[i], x, n) < r2) acc += mu_.weights[i];
        }
    return acc;
  }

 private:
  Key key(const Point& p) const {
    Key k{0, 0, 0};
    for (int d = 0; d < mu_.n; ++d) k[d] = static_cast<long long>(std::floor(p[d] / cell_));
    return k;
  }

  const DiscreteMeasure& mu_;
  double cell_;
  std::map<Key, std::vector<std::size_t>> cells_;
};

}  // namespace

GrowthResult measure_growth_detail(const DiscreteMeasure& mu, double beta, double base_radius) {
  const int n = mu.n;
  if (!(beta >= 0.0 && beta < n)) throw std::invalid_argument("beta must lie in [0, n)");
  if (!(base_radius > 0.0)) throw std::invalid_argument("base_radius must be positive");
  GrowthResult out;
  out.radius_factor = std::pow(2.0, n - beta);
  std::vector<std::size_t> atoms;
  for (std::size_t i = 0; i < mu.weights.size(); ++i)
    if (mu.weights[i] > 0.0) atoms.push_back(i);
  if (atoms.empty()) return out;

  double dmin2 = std::numeric_limits<double>::infinity(), diam2 = 0.0;
  for (std::size_t a = 0; a < atoms.size(); ++a)
    for (std::size_t b = a + 1; b < atoms.size(); ++b) {
      const double d2 = dist2(mu.points[atoms[a]], mu.points[atoms[b]], n);
      if (d2 > 0.0) dmin2 = std::min(dmin2, d2);
      diam2 = std::max(diam2, d2);
    }
  if (!std::isfinite(dmin2)) {
    // All mass sits at one point: r^(beta-n) mu(B) grows without bound.
    double w = 0.0;
    for (std::size_t a : atoms) w += mu.weights[a];
    for (double r = base_radius;; r *= 0.5) {
      if (w * std::pow(r, beta - n) > 1e12) {
        out.value = std::numeric_limits<double>::infinity();
        out.best_radius = r;
        out.best_center = mu.points[atoms.front()];
        return out;
      }
    }
  }
  const double dmin = std::sqrt(dmin2), diam = std::sqrt(diam2);
  int k = static_cast<int>(std::ceil(std::log2(dmin / base_radius)));
  Point lo{}, hi{};
  for (int d = 0; d < n; ++d) {
    lo[d] = std::numeric_limits<double>::infinity();
    hi[d] = -lo[d];
    for (std::size_t a : atoms) {
      lo[d] = std::min(lo[d], mu.points[a][d]);
      hi[d] = std::max(hi[d], mu.points[a][d]);
    }
  }
  for (;; ++k) {
    const double r = std::ldexp(base_radius, k);
    const Buckets buckets(mu, atoms, r);
    std::vector<Point> centers;
    for (std::size_t a : atoms) centers.push_back(mu.points[a]);
    const double step = 0.5 * r;
    long long first[3] = {0, 0, 0}, last[3] = {0, 0, 0};
    for (int d = 0; d < n; ++d) {
      first[d] = static_cast<long long>(std::floor((lo[d] - r) / step));
      last[d] = static_cast<long long>(std::ceil((hi[d] + r) / step));
    }
    for (long long a = first[0]; a <= last[0]; ++a)
      for (long long b = first[1]; b <= last[1]; ++b)
        for (long long e = first[2]; e <= last[2]; ++e)
          centers.push_back({a * step, n > 1 ? b * step : 0.0, n > 2 ? e * step : 0.0});
    std::vector<double> mass(centers.size());
    parallel_for(centers.size(), [&](std::size_t c) { mass[c] = buckets.mass(centers[c], r); });
    const double scale = std::pow(r, beta - n);
    for (std::size_t c = 0; c < centers.size(); ++c)
      if (mass[c] * scale > out.value) {
        out.value = mass[c] * scale;
        out.best_radius = r;
        out.best_center = centers[c];
      }
    if (r >= diam) break;
  }
  return out;
}

double measure_growth_norm(const DiscreteMeasure& mu, double beta, double base_radius) {
  return measure_growth_detail(mu, beta, base_radius).value;
}

double interpolate(const ScalarField& field, const Point& x) {
  const Grid& g = field.grid();
  const int n = g.dim();
  const std::size_t N = g.per_axis();
  const double h = g.spacing();
  long long base[3] = {0, 0, 0};
  double frac[3] = {0.0, 0.0, 0.0};
  for (int d = 0; d < n; ++d) {
    const double t = (x[d] + g.half_extent()) / h;
    const double f = std::floor(t);
    base[d] = static_cast<long long>(f);
    frac[d] = t - f;
  }
  double acc = 0.0;
  for (int corner = 0; corner < (1 << n); ++corner) {
    double w = 1.0;
    Index idx{};
    bool inside = true;
    for (int d = 0; d < n; ++d) {
      const int bit = (corner >> d) & 1;
      w *= bit ? frac[d] : 1.0 - frac[d];
      long long c = base[d] + bit;
      if (g.periodic()) {
        const long long m = static_cast<long long>(N);
        c = ((c % m) + m) % m;
      } else if (c < 0 || c >= static_cast<long long>(N)) {
        inside = false;
      }
      idx[d] = static_cast<std::size_t>(c);
    }
    if (inside && w != 0.0) acc += w * field[g.flatten(idx)];
  }
  return acc;
}

double measure_norm(const DiscreteMeasure& mu, const ScalarField& field, double q, TraceMode mode) {
  if (mu.n != field.grid().dim()) throw std::invalid_argument("measure and field dimensions differ");
  if (!(q > 0.0)) throw std::invalid_argument("exponent must be positive");
  std::vector<double> vals(mu.points.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::abs(interpolate(field, mu.points[i]));
  if (mode == TraceMode::strong) {
    std::vector<double> terms(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) terms[i] = mu.weights[i] * std::pow(vals[i], q);
    return std::pow(pairwise_sum(terms), 1.0 / q);
  }
  // sup_t t mu({|u| > t})^(1/q), attained at t -> v from below.
  std::vector<std::size_t> order(vals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  double best = 0.0, mass = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    mass += mu.weights[order[j]];
    if (j + 1 < order.size() && vals[order[j + 1]] == vals[order[j]]) continue;
    best = std::max(best, vals[order[j]] * std::pow(mass, 1.0 / q));
  }
  return best;
}

double trace_ratio(const DiscreteMeasure& mu, const ScalarField& field, const FracOrder& ord, TraceMode mode,
                   SeminormKind kind) {
  if (ord.n != field.grid().dim()) throw std::invalid_argument("order dimension mismatch");
  const double q = static_cast<double>(ord.n) / (ord.n - ord.s);
  const double num = measure_norm(mu, field, q, mode);
  if (num == 0.0) return 0.0;
  const double den = seminorm(subtract_mean(field), kind, ord);
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace fraclab
