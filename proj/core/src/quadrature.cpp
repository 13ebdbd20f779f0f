#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace fraclab::detail {

const GaussRule& gauss_legendre(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(m) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= m; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(m, std::move(rule)).first->second;
}

double cell_moment(int n, double a) {
  if (!(a > -n)) throw std::invalid_argument("cell moment diverges");
  // Pyramid decomposition over the 2n faces at distance 1/2.
  switch (n) {
    case 1:
      return std::pow(0.5, a) / (a + 1.0);
    case 2:
      return 2.0 / (a + 2.0) *
             integrate([a](double u) { return std::pow(0.25 + u * u, 0.5 * a); }, -0.5, 0.5, 48);
    case 3:
      return 3.0 / (a + 3.0) * integrate(
                                   [a](double u) {
                                     return integrate(
                                         [a, u](double v) {
                                           return std::pow(0.25 + u * u + v * v, 0.5 * a);
                                         },
                                         -0.5, 0.5, 32);
                                   },
                                   -0.5, 0.5, 32);
    default:
      throw std::invalid_argument("dimension must be 1, 2 or 3");
  }
}

namespace {

// Angular integral of g over the segment of tangent offsets [alpha, beta]
// seen at normal distance d, after u = d tan(phi). Split at the foot point.
template <class F>
double angular(F&& g, double alpha, double beta, double d, std::size_t m) {
  const double pa = std::atan2(alpha, d), pb = std::atan2(beta, d);
  if (pa < 0.0 && pb > 0.0) return integrate(g, pa, 0.0, m) + integrate(g, 0.0, pb, m);
  return integrate(g, pa, pb, m);
}

}  // namespace

ExteriorIntegrals exterior_integrals(int n, double s, const std::array<double, 3>& x,
                                     const std::array<double, 3>& lo,
                                     const std::array<double, 3>& hi) {
  ExteriorIntegrals out;
  for (int a = 0; a < n; ++a) {
    for (int side = 0; side < 2; ++side) {
      const double d = side == 0 ? x[a] - lo[a] : hi[a] - x[a];
      const double sign = side == 0 ? -1.0 : 1.0;
      if (!(d > 0.0)) throw std::invalid_argument("point outside the box");
      const double ds = std::pow(d, -s) / s;
      if (n == 1) {
        out.scalar += ds;
        out.vec[0] += sign * ds;
      } else if (n == 2) {
        const int t = 1 - a;
        const double alpha = lo[t] - x[t], beta = hi[t] - x[t];
        out.scalar += ds * angular([s](double p) { return std::pow(std::cos(p), s); }, alpha, beta, d, 24);
        out.vec[a] += sign * ds *
                      angular([s](double p) { return std::pow(std::cos(p), s + 1.0); }, alpha, beta, d, 24);
        out.vec[t] += ds * angular([s](double p) { return std::pow(std::cos(p), s) * std::sin(p); },
                                   alpha, beta, d, 24);
      } else {
        const int t1 = (a + 1) % 3, t2 = (a + 2) % 3;
        const double a1 = lo[t1] - x[t1], b1 = hi[t1] - x[t1];
        const double a2 = lo[t2] - x[t2], b2 = hi[t2] - x[t2];
        double acc_s = 0.0, acc_n = 0.0, acc_1 = 0.0, acc_2 = 0.0;
        // u = d tan(p), v = d tan(q) maps the face to a bounded angular rectangle.
        const GaussRule& g = gauss_legendre(8);
        auto panels = [&](double alpha, double beta) {
          std::vector<std::pair<double, double>> out_panels;
          const double pa = std::atan2(alpha, d), pb = std::atan2(beta, d);
          if (pa < 0.0 && pb > 0.0) {
            out_panels.emplace_back(pa, 0.0);
            out_panels.emplace_back(0.0, pb);
          } else {
            out_panels.emplace_back(pa, pb);
          }
          return out_panels;
        };
        for (auto [p0, p1] : panels(a1, b1)) {
          for (auto [q0, q1] : panels(a2, b2)) {
            const double hp = 0.5 * (p1 - p0), hq = 0.5 * (q1 - q0);
            for (std::size_t i = 0; i < g.nodes.size(); ++i) {
              const double p = 0.5 * (p0 + p1) + hp * g.nodes[i];
              const double tp = std::tan(p);
              for (std::size_t k = 0; k < g.nodes.size(); ++k) {
                const double q = 0.5 * (q0 + q1) + hq * g.nodes[k];
                const double tq = std::tan(q);
                const double r2 = 1.0 + tp * tp + tq * tq;
                const double w = g.weights[i] * g.weights[k] * hp * hq *
                                 std::pow(r2, -0.5 * (3.0 + s)) * (1.0 + tp * tp) * (1.0 + tq * tq);
                const double inv_r = 1.0 / std::sqrt(r2);
                acc_s += w;
                acc_n += w * inv_r;
                acc_1 += w * tp * inv_r;
                acc_2 += w * tq * inv_r;
              }
            }
          }
        }
        out.scalar += ds * acc_s;
        out.vec[a] += sign * ds * acc_n;
        out.vec[t1] += ds * acc_1;
        out.vec[t2] += ds * acc_2;
      }
    }
  }
  return out;
}

double shifted_power_sum(double t, double period, double q) {
  if (!(t > 0.0) || !(q > 1.0)) throw std::invalid_argument("shifted power sum diverges");
  constexpr int M = 16;
  double acc = 0.0;
  for (int m = 0; m < M; ++m) acc += std::pow(t + period * m, -q);
  // Euler-Maclaurin tail from m = M.
  const double tm = t + period * M;
  acc += std::pow(tm, 1.0 - q) / (period * (q - 1.0)) + 0.5 * std::pow(tm, -q) +
         q * period * std::pow(tm, -q - 1.0) / 12.0;
  return acc;
}

}  // namespace fraclab::detail
