#include <cmath>
#include <stdexcept>

#include "fraclab/parallel.hpp"
#include "fracops_internal.hpp"
#include "offset_sum.hpp"
#include "quadrature.hpp"

namespace fraclab::detail {

// out(x) = sum_{y != x} T(y - x) * (f(x) - f(y))   [difference]
//        = sum_{y != x} T(y - x) * f(y)            [value]
// Rows along the last axis are contiguous dot products; row partial sums are
// combined pairwise so the result does not depend on the worker count.
std::vector<double> offset_sum(const ScalarField& field, const OffsetTable& t, Pairing pairing) {
  const Grid& grid = field.grid();
  const int n = grid.dim();
  const std::size_t N = grid.per_axis();
  const auto f = field.values();
  std::vector<double> out(grid.size());
  const std::size_t rows = grid.size() / N;
  parallel_for(grid.size(), [&](std::size_t xi) {
    const Index x = grid.unflatten(xi);
    const double fx = f[xi];
    std::vector<double> partial(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      // Leading coordinates of the row.
      Index y{};
      std::size_t rest = r;
      for (int d = n - 2; d >= 0; --d) {
        y[d] = rest % N;
        rest /= N;
      }
      std::size_t base = 0;
      for (int d = 0; d < n - 1; ++d) {
        const std::size_t off = t.periodic ? (y[d] + N - x[d]) % N : y[d] + (N - 1) - x[d];
        base = base * t.width + off;
      }
      base *= t.width;
      const double* fr = f.data() + r * N;
      const std::size_t xl = x[n - 1];
      double acc = 0.0;
      auto run = [&](std::size_t y0, std::size_t y1, std::size_t k0) {
        const double* tr = t.values.data() + base + k0;
        if (pairing == Pairing::difference) {
          for (std::size_t yl = y0; yl < y1; ++yl) acc += tr[yl - y0] * (fx - fr[yl]);
        } else if (pairing == Pairing::abs_difference) {
          for (std::size_t yl = y0; yl < y1; ++yl) acc += tr[yl - y0] * std::abs(fx - fr[yl]);
        } else {
          for (std::size_t yl = y0; yl < y1; ++yl) acc += tr[yl - y0] * fr[yl];
        }
      };
      if (t.periodic) {
        run(xl, N, 0);
        run(0, xl, N - xl);
      } else {
        run(0, N, (N - 1) - xl);
      }
      partial[r] = acc;
    }
    out[xi] = pairwise_sum(partial);
  });
  return out;
}


namespace {

std::array<double, 3> box_lo(const Grid& g) {
  const double v = -g.half_extent() - 0.5 * g.spacing();
  return {v, v, v};
}

std::array<double, 3> box_hi(const Grid& g) {
  const double v = g.half_extent() - 0.5 * g.spacing();
  return {v, v, v};
}

double norm_of(const std::array<long long, 3>& z, int n, double h) {
  double r2 = 0.0;
  for (int d = 0; d < n; ++d) r2 += static_cast<double>(z[d] * z[d]);
  return std::sqrt(r2) * h;
}

// Minimal-image displacement of a residue offset on the torus.
std::array<double, 3> torus_offset(const std::array<long long, 3>& z, const Grid& g) {
  std::array<double, 3> w{};
  const long long N = static_cast<long long>(g.per_axis());
  for (int d = 0; d < g.dim(); ++d) {
    const long long c = z[d] >= N / 2 ? z[d] - N : z[d];
    w[d] = static_cast<double>(c) * g.spacing();
  }
  return w;
}

int image_count(int n) { return n == 2 ? 6 : 3; }

// sum over lattice images of |w + 2Lm|^(-n-s), plus the far-field tail.
double periodized_even(const std::array<double, 3>& w, const Grid& g, double s, double tail) {
  const int n = g.dim();
  const double P = 2.0 * g.half_extent();
  if (n == 1) {
    const double a = std::abs(w[0]);
    return detail::shifted_power_sum(a, P, 1.0 + s) + detail::shifted_power_sum(P - a, P, 1.0 + s);
  }
  const int M = image_count(n);
  double acc = 0.0;
  std::array<int, 3> m{};
  for (m[0] = -M; m[0] <= M; ++m[0])
    for (m[1] = -M; m[1] <= M; ++m[1])
      for (m[2] = (n == 3 ? -M : 0); m[2] <= (n == 3 ? M : 0); ++m[2]) {
        double r2 = 0.0;
        for (int d = 0; d < n; ++d) {
          const double v = w[d] + P * m[d];
          r2 += v * v;
        }
        acc += std::pow(r2, -0.5 * (n + s));
      }
  return acc + tail;
}

// sum over lattice images of (w + 2Lm)_j |w + 2Lm|^(-n-s-1); the odd tail cancels.
double periodized_odd(const std::array<double, 3>& w, const Grid& g, double s, int j) {
  const int n = g.dim();
  const double P = 2.0 * g.half_extent();
  if (n == 1) {
    double a = w[0];
    if (a == 0.0 || std::abs(a) == 0.5 * P) return 0.0;
    const double sign = a > 0 ? 1.0 : -1.0;
    a = std::abs(a);
    return sign * (detail::shifted_power_sum(a, P, 1.0 + s) -
                   detail::shifted_power_sum(P - a, P, 1.0 + s));
  }
  const int M = image_count(n);
  double acc = 0.0;
  std::array<int, 3> m{};
  for (m[0] = -M; m[0] <= M; ++m[0])
    for (m[1] = -M; m[1] <= M; ++m[1])
      for (m[2] = (n == 3 ? -M : 0); m[2] <= (n == 3 ? M : 0); ++m[2]) {
        std::array<double, 3> v{};
        double r2 = 0.0;
        for (int d = 0; d < n; ++d) {
          v[d] = w[d] + P * m[d];
          r2 += v[d] * v[d];
        }
        acc += v[j] * std::pow(r2, -0.5 * (n + s + 1.0));
      }
  return acc;
}

double torus_tail(const Grid& g, double s) {
  const int n = g.dim();
  if (n == 1) return 0.0;
  const std::array<double, 3> zero{}, lo{-1.0, -1.0, -1.0}, hi{1.0, 1.0, 1.0};
  const double Q = detail::exterior_integrals(n, s, zero, lo, hi).scalar;
  const double L = g.half_extent();
  return std::pow(2.0 * L, -n) * std::pow((2.0 * image_count(n) + 1.0) * L, -s) * Q;
}

}  // namespace

std::vector<double> central_difference(const ScalarField& field, int axis) {
  const Grid& g = field.grid();
  const std::size_t N = g.per_axis();
  const auto f = field.values();
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    Index k = g.unflatten(i);
    const std::size_t c = k[axis];
    double fp = 0.0, fm = 0.0;
    if (c + 1 < N || g.periodic()) {
      k[axis] = (c + 1) % N;
      fp = f[g.flatten(k)];
    }
    if (c > 0 || g.periodic()) {
      k[axis] = (c + N - 1) % N;
      fm = f[g.flatten(k)];
    }
    out[i] = (fp - fm) / (2.0 * g.spacing());
  }
  return out;
}

std::vector<double> discrete_laplacian(const ScalarField& field) {
  const Grid& g = field.grid();
  const std::size_t N = g.per_axis();
  const auto f = field.values();
  const double h2 = g.spacing() * g.spacing();
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Index k0 = g.unflatten(i);
    double acc = 0.0;
    for (int d = 0; d < g.dim(); ++d) {
      Index k = k0;
      const std::size_t c = k0[d];
      double fp = 0.0, fm = 0.0;
      if (c + 1 < N || g.periodic()) {
        k[d] = (c + 1) % N;
        fp = f[g.flatten(k)];
      }
      if (c > 0 || g.periodic()) {
        k[d] = (c + N - 1) % N;
        fm = f[g.flatten(k)];
      }
      acc += fp - 2.0 * f[i] + fm;
    }
    out[i] = acc / h2;
  }
  return out;
}

OffsetTable hypersingular_table(const Grid& g, double s) {
  const int n = g.dim();
  const double h = g.spacing(), hn = g.cell_volume();
  if (g.periodic()) {
    const double tail = torus_tail(g, s);
    return make_table(g, true, [&](const std::array<long long, 3>& z) {
      return hn * periodized_even(torus_offset(z, g), g, s, tail);
    });
  }
  return make_table(g, false, [&](const std::array<long long, 3>& z) {
    return hn * std::pow(norm_of(z, n, h), -n - s);
  });
}

double exterior_weight(const Grid& g, double s, std::size_t i) {
  return exterior_integrals(g.dim(), s, g.point(i), box_lo(g), box_hi(g)).scalar;
}

ScalarField frac_laplacian_direct(const ScalarField& field, const FracOrder& ord) {
  const Grid& g = field.grid();
  const int n = g.dim();
  const double s = ord.s, h = g.spacing();
  const OffsetTable table = hypersingular_table(g, s);
  std::vector<double> out = offset_sum(field, table, Pairing::difference);
  const std::vector<double> lap = discrete_laplacian(field);
  const double cell = std::pow(h, 2.0 - s) * cell_moment(n, 2.0 - n - s) / (2.0 * n);
  const auto f = field.values();
  const auto lo = box_lo(g), hi = box_hi(g);
  parallel_for(out.size(), [&](std::size_t i) {
    double v = out[i] - lap[i] * cell;
    if (!g.periodic() && f[i] != 0.0) v += f[i] * exterior_integrals(n, s, g.point(i), lo, hi).scalar;
    out[i] = ord.c_nsp * v;
  });
  return ScalarField(g, std::move(out));
}

VectorField frac_gradient_direct(const ScalarField& field, const FracOrder& ord) {
  const Grid& g = field.grid();
  const int n = g.dim();
  const double s = ord.s, h = g.spacing(), hn = g.cell_volume();
  const auto f = field.values();
  const auto lo = box_lo(g), hi = box_hi(g);
  std::vector<ExteriorIntegrals> ext;
  if (!g.periodic()) {
    ext.resize(g.size());
    parallel_for(g.size(), [&](std::size_t i) {
      if (f[i] != 0.0) ext[i] = exterior_integrals(n, s, g.point(i), lo, hi);
    });
  }
  const double cell = std::pow(h, 1.0 - s) * cell_moment(n, 1.0 - n - s) / n;
  std::vector<ScalarField> comps;
  for (int j = 0; j < n; ++j) {
    OffsetTable table;
    if (g.periodic()) {
      table = make_table(g, true, [&](const std::array<long long, 3>& z) {
        return hn * periodized_odd(torus_offset(z, g), g, s, j);
      });
    } else {
      table = make_table(g, false, [&](const std::array<long long, 3>& z) {
        const double r = norm_of(z, n, h);
        return hn * static_cast<double>(z[j]) * h * std::pow(r, -n - s - 1.0);
      });
    }
    std::vector<double> out = offset_sum(field, table, Pairing::difference);
    const std::vector<double> dj = central_difference(field, j);
    for (std::size_t i = 0; i < out.size(); ++i) {
      double v = out[i] - dj[i] * cell;
      if (!g.periodic()) v += f[i] * ext[i].vec[j];
      out[i] = ord.c_nsm * v;
    }
    comps.emplace_back(g, std::move(out));
  }
  return VectorField(std::move(comps));
}

ScalarField riesz_potential_direct(const ScalarField& field, const FracOrder& ord) {
  const Grid& g = field.grid();
  const int n = g.dim();
  const double s = ord.s, h = g.spacing(), hn = g.cell_volume();
  const OffsetTable table = make_table(g, false, [&](const std::array<long long, 3>& z) {
    return hn * std::pow(norm_of(z, n, h), s - n);
  });
  std::vector<double> out = offset_sum(field, table, Pairing::value);
  const double cell = std::pow(h, s) * cell_moment(n, s - n);
  const auto f = field.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ord.c_ns * (out[i] + f[i] * cell);
  return ScalarField(g, std::move(out));
}

ScalarField riesz_transform_direct(const ScalarField& field, int axis) {
  const Grid& g = field.grid();
  const int n = g.dim();
  const double h = g.spacing(), hn = g.cell_volume();
  const OffsetTable table = make_table(g, false, [&](const std::array<long long, 3>& z) {
    const double r = norm_of(z, n, h);
    return -hn * static_cast<double>(z[axis]) * h * std::pow(r, -n - 1.0);
  });
  std::vector<double> out = offset_sum(field, table, Pairing::value);
  // Zero extension outside the box, so differences see the jump to zero.
  const ScalarField truncated(g.with_periodic(false), {field.values().begin(), field.values().end()});
  const std::vector<double> dj = central_difference(truncated, axis);
  const double cell = h * cell_moment(n, 1.0 - n) / n;
  const double c = riesz_transform_constant(n);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * (out[i] - dj[i] * cell);
  return ScalarField(g, std::move(out));
}

}  // namespace fraclab::detail
