#include "fraclab/grid.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fraclab/parallel.hpp"

namespace fraclab {

Grid::Grid(int n, std::size_t N, double L, bool periodic)
    : n_(n), N_(N), L_(L), periodic_(periodic) {
  if (n < 1 || n > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
  if (N < 8 || !std::has_single_bit(N))
    throw std::invalid_argument("points per axis must be a power of two >= 8");
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("half-extent must be positive");
  h_ = 2.0 * L / static_cast<double>(N);
  size_ = 1;
  for (int d = 0; d < n; ++d) size_ *= N;
  cell_volume_ = std::pow(h_, n);
}

std::size_t Grid::flatten(const Index& k) const {
  std::size_t flat = 0;
  for (int d = 0; d < n_; ++d) {
    if (k[d] >= N_) throw std::out_of_range("multi-index outside grid");
    flat = flat * N_ + k[d];
  }
  return flat;
}

Index Grid::unflatten(std::size_t flat) const {
  if (flat >= size_) throw std::out_of_range("flat index outside grid");
  Index k{};
  for (int d = n_ - 1; d >= 0; --d) {
    k[d] = flat % N_;
    flat /= N_;
  }
  return k;
}

Point Grid::point(std::size_t flat) const {
  const Index k = unflatten(flat);
  Point x{};
  for (int d = 0; d < n_; ++d) x[d] = coord(k[d]);
  return x;
}

bool Grid::operator==(const Grid& other) const {
  return n_ == other.n_ && N_ == other.N_ && L_ == other.L_ && periodic_ == other.periodic_;
}

Grid make_grid(int n, std::size_t N, double L, bool periodic) { return Grid(n, N, L, periodic); }

std::string describe(const Grid& grid) {
  std::ostringstream os;
  os << "n=" << grid.dim() << " N=" << grid.per_axis() << " L=" << grid.half_extent()
     << (grid.periodic() ? " periodic" : " truncated");
  return os.str();
}

namespace {

double max_abs_of(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

ScalarField::ScalarField(Grid grid, std::vector<double> values, bool mean_zero)
    : grid_(grid), values_(std::move(values)), mean_zero_(mean_zero) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("field length does not match grid size");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("field contains non-finite values");
  if (mean_zero_) {
    const double mean = pairwise_sum(values_) / static_cast<double>(values_.size());
    if (std::abs(mean) > 1e-12 * max_abs_of(values_))
      throw std::invalid_argument("field flagged mean-zero has nonzero mean");
  }
}

ScalarField ScalarField::zeros(const Grid& grid) {
  return ScalarField(grid, std::vector<double>(grid.size(), 0.0), true);
}

ScalarField ScalarField::constant(const Grid& grid, double value) {
  return ScalarField(grid, std::vector<double>(grid.size(), value), value == 0.0);
}

double ScalarField::max_abs() const { return max_abs_of(values_); }

VectorField::VectorField(std::vector<ScalarField> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("vector field needs components");
  for (const auto& c : components_)
    if (!(c.grid() == components_.front().grid()))
      throw std::invalid_argument("vector field components must share one grid");
  if (components_.size() != static_cast<std::size_t>(components_.front().grid().dim()))
    throw std::invalid_argument("vector field needs one component per dimension");
}

double field_mean(const ScalarField& field) {
  return pairwise_sum(field.values()) / static_cast<double>(field.size());
}

ScalarField subtract_mean(const ScalarField& field) {
  if (field.mean_zero()) return field;
  const double mean = field_mean(field);
  std::vector<double> v(field.values().begin(), field.values().end());
  for (double& x : v) x -= mean;
  // A second pass removes the rounding residue of the first one.
  const double residue = pairwise_sum(v) / static_cast<double>(v.size());
  for (double& x : v) x -= residue;
  return ScalarField(field.grid(), std::move(v), true);
}

ScalarField scaled(const ScalarField& field, double factor) {
  std::vector<double> v(field.values().begin(), field.values().end());
  for (double& x : v) x *= factor;
  return ScalarField(field.grid(), std::move(v), field.mean_zero());
}

ScalarField combine(double a, const ScalarField& f, double b, const ScalarField& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("fields live on different grids");
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * f[i] + b * g[i];
  return ScalarField(f.grid(), std::move(v));
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::gaussian: return "gaussian";
    case FamilyKind::bump: return "bump";
    case FamilyKind::shifted_bump_pair: return "shifted_bump_pair";
    case FamilyKind::log_abs: return "log_abs";
    case FamilyKind::indicator_ball: return "indicator_ball";
    case FamilyKind::riesz_kernel_mollified: return "riesz_kernel_mollified";
  }
  return "unknown";
}

FamilyKind family_from_string(std::string_view name) {
  for (auto k : {FamilyKind::gaussian, FamilyKind::bump, FamilyKind::shifted_bump_pair,
                 FamilyKind::log_abs, FamilyKind::indicator_ball,
                 FamilyKind::riesz_kernel_mollified})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown test family: " + std::string(name));
}

TestFamily gaussian(double width, Point center, double amplitude) {
  TestFamily f;
  f.kind = FamilyKind::gaussian;
  f.width = width;
  f.center = center;
  f.amplitude = amplitude;
  return f;
}

TestFamily unit_mass_gaussian(int n, double width) {
  return gaussian(width, {}, std::pow(width, -n));
}

TestFamily bump(double width, Point center, double amplitude) {
  TestFamily f;
  f.kind = FamilyKind::bump;
  f.width = width;
  f.center = center;
  f.amplitude = amplitude;
  return f;
}

TestFamily bump_pair(double width, Point c1, Point c2, double a1, double a2) {
  TestFamily f;
  f.kind = FamilyKind::shifted_bump_pair;
  f.width = width;
  f.center = c1;
  f.center2 = c2;
  f.amplitude = a1;
  f.amplitude2 = a2;
  return f;
}

TestFamily log_abs(Point center) {
  TestFamily f;
  f.kind = FamilyKind::log_abs;
  f.center = center;
  return f;
}

TestFamily indicator_ball(double radius, Point center, double amplitude) {
  TestFamily f;
  f.kind = FamilyKind::indicator_ball;
  f.radius = radius;
  f.center = center;
  f.amplitude = amplitude;
  return f;
}

TestFamily riesz_kernel_mollified(double exponent, double width, double amplitude) {
  TestFamily f;
  f.kind = FamilyKind::riesz_kernel_mollified;
  f.exponent = exponent;
  f.width = width;
  f.amplitude = amplitude;
  return f;
}

namespace {

double dist2(int n, const Point& x, const Point& c) {
  double r2 = 0.0;
  for (int d = 0; d < n; ++d) r2 += (x[d] - c[d]) * (x[d] - c[d]);
  return r2;
}

double bump_value(int n, const Point& x, const Point& c, double w, double a) {
  const double q = dist2(n, x, c) / (w * w);
  if (q >= 1.0) return 0.0;
  return a * std::exp(1.0 - 1.0 / (1.0 - q));
}

double distance_to_boundary(int n, const Point& c, double L) {
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) d = std::min({d, c[i] + L, L - c[i]});
  return d;
}

void validate(const TestFamily& f, const Grid& grid) {
  const int n = grid.dim();
  const double L = grid.half_extent();
  if (!(f.width > 0.0)) throw std::invalid_argument("family width must be positive");
  switch (f.kind) {
    case FamilyKind::gaussian: {
      const double d = distance_to_boundary(n, f.center, L);
      if (!(d > 0.0) || std::numbers::pi * d * d / (f.width * f.width) < -std::log(1e-12))
        throw std::invalid_argument("gaussian does not decay below 1e-12 inside the box");
      break;
    }
    case FamilyKind::bump:
      if (distance_to_boundary(n, f.center, L) <= f.width)
        throw std::invalid_argument("bump support leaves the box");
      break;
    case FamilyKind::shifted_bump_pair:
      if (distance_to_boundary(n, f.center, L) <= f.width ||
          distance_to_boundary(n, f.center2, L) <= f.width)
        throw std::invalid_argument("bump support leaves the box");
      break;
    case FamilyKind::indicator_ball:
      if (!(f.radius > 0.0) || f.radius >= L / 2.0)
        throw std::invalid_argument("indicator radius must lie in (0, L/2)");
      break;
    case FamilyKind::log_abs:
    case FamilyKind::riesz_kernel_mollified:
      break;
  }
}

}  // namespace

double evaluate(const TestFamily& f, int n, const Point& x) {
  switch (f.kind) {
    case FamilyKind::gaussian:
      return f.amplitude * std::exp(-std::numbers::pi * dist2(n, x, f.center) / (f.width * f.width));
    case FamilyKind::bump:
      return bump_value(n, x, f.center, f.width, f.amplitude);
    case FamilyKind::shifted_bump_pair:
      return bump_value(n, x, f.center, f.width, f.amplitude) +
             bump_value(n, x, f.center2, f.width, f.amplitude2);
    case FamilyKind::log_abs:
      return f.amplitude * 0.5 * std::log(dist2(n, x, f.center));
    case FamilyKind::indicator_ball:
      return dist2(n, x, f.center) <= f.radius * f.radius ? f.amplitude : 0.0;
    case FamilyKind::riesz_kernel_mollified:
      return f.amplitude * std::pow(dist2(n, x, f.center) + f.width * f.width, -0.5 * f.exponent);
  }
  return 0.0;
}

ScalarField sample(const TestFamily& family, const Grid& grid) {
  validate(family, grid);
  const int n = grid.dim();
  const double h = grid.spacing();
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point x = grid.point(i);
    if (family.kind == FamilyKind::log_abs && dist2(n, x, family.center) < 1e-24 * h * h) {
      double acc = 0.0;
      for (int d = 0; d < n; ++d) {
        for (double sgn : {-1.0, 1.0}) {
          Point y = x;
          y[d] += sgn * h;
          acc += evaluate(family, n, y);
        }
      }
      v[i] = acc / (2.0 * n);
    } else {
      v[i] = evaluate(family, n, x);
    }
  }
  return ScalarField(grid, std::move(v));
}

}  // namespace fraclab
