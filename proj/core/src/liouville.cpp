#include <cmath>
#include <stdexcept>

#include "fraclab/fracops.hpp"
#include "fraclab/parallel.hpp"
#include "fracops_internal.hpp"
#include "quadrature.hpp"

namespace fraclab {

ScalarField liouville_one_sided(const ScalarField& field, double s, Side side) {
  const Grid& g = field.grid();
  if (g.dim() != 1) throw std::invalid_argument("liouville_one_sided needs n = 1");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s outside (0,1)");
  const std::size_t N = g.per_axis();
  const double h = g.spacing(), P = 2.0 * g.half_extent();
  const auto f = field.values();
  // Cell weights for offsets t = k h, k >= 1.
  std::vector<double> w(N, 0.0);
  for (std::size_t k = 1; k < N; ++k) {
    const double t = static_cast<double>(k) * h;
    w[k] = h * (g.periodic() ? detail::shifted_power_sum(t, P, 1.0 + s) : std::pow(t, -1.0 - s));
  }
  const std::vector<double> d1 = detail::central_difference(field, 0);
  const std::vector<double> d2 = detail::discrete_laplacian(field);
  const double sign = side == Side::plus ? 1.0 : -1.0;
  const double half = 0.5 * h;
  // int_0^{h/2} (u(x) - u(x +- t)) t^(-1-s) dt for the quadratic Taylor model.
  const double c1 = std::pow(half, 1.0 - s) / (1.0 - s);
  const double c2 = 0.5 * std::pow(half, 2.0 - s) / (2.0 - s);
  const double scale = s / gamma_eval(1.0 - s);
  std::vector<double> out(N);
  for (std::size_t i = 0; i < N; ++i) {
    double acc = 0.0;
    for (std::size_t k = 1; k < N; ++k) {
      const long long j = static_cast<long long>(i) + (side == Side::plus ? 1 : -1) * static_cast<long long>(k);
      double fy = 0.0;
      if (g.periodic()) {
        fy = f[static_cast<std::size_t>(((j % static_cast<long long>(N)) + static_cast<long long>(N)) %
                                        static_cast<long long>(N))];
      } else if (j < 0 || j >= static_cast<long long>(N)) {
        break;
      } else {
        fy = f[static_cast<std::size_t>(j)];
      }
      acc += w[k] * (f[i] - fy);
    }
    acc += -sign * d1[i] * c1 - d2[i] * c2;
    if (!g.periodic()) {
      // Zero extension beyond the cell faces at -L - h/2 and L - h/2.
      const double x = g.coord(i);
      const double edge = side == Side::plus ? (g.half_extent() - half) - x : x + g.half_extent() + half;
      acc += f[i] * std::pow(edge, -s) / s;
    }
    out[i] = scale * acc;
  }
  return ScalarField(g, std::move(out));
}

LiouvilleFit fit_liouville_constants(std::span<const ScalarField> fields, double s) {
  if (fields.empty()) throw std::invalid_argument("liouville fit needs at least one field");
  const FracOrder ord = make_frac_order(1, s);
  double aa = 0.0, at = 0.0, tt = 0.0, bb = 0.0, bt = 0.0, uu = 0.0;
  std::vector<std::pair<std::vector<double>, std::vector<double>>> plus_rows, minus_rows;
  for (const auto& u : fields) {
    if (u.grid().dim() != 1 || !u.grid().periodic())
      throw std::invalid_argument("liouville fit needs periodic n = 1 fields");
    const ScalarField dp = liouville_one_sided(u, s, Side::plus);
    const ScalarField dm = liouville_one_sided(u, s, Side::minus);
    const ScalarField lap = frac_laplacian(u, ord);
    const ScalarField grad = frac_gradient(u, ord)[0];
    std::vector<double> a(u.size()), b(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      a[i] = dp[i] + dm[i];
      b[i] = dp[i] - dm[i];
      aa += a[i] * a[i];
      at += a[i] * lap[i];
      tt += lap[i] * lap[i];
      bb += b[i] * b[i];
      bt += b[i] * grad[i];
      uu += grad[i] * grad[i];
    }
    plus_rows.emplace_back(std::move(a), std::vector<double>(lap.values().begin(), lap.values().end()));
    minus_rows.emplace_back(std::move(b), std::vector<double>(grad.values().begin(), grad.values().end()));
  }
  LiouvilleFit fit;
  fit.c_plus = aa > 0.0 ? at / aa : 0.0;
  fit.c_minus = bb > 0.0 ? bt / bb : 0.0;
  auto residual = [](const auto& rows, double c, double norm2) {
    double r = 0.0;
    for (const auto& [x, y] : rows)
      for (std::size_t i = 0; i < x.size(); ++i) r += (c * x[i] - y[i]) * (c * x[i] - y[i]);
    return norm2 > 0.0 ? std::sqrt(r / norm2) : 0.0;
  };
  fit.residual_plus = residual(plus_rows, fit.c_plus, tt);
  fit.residual_minus = residual(minus_rows, fit.c_minus, uu);
  return fit;
}

}  // namespace fraclab
