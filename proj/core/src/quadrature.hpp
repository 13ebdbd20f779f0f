#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace fraclab::detail {

struct GaussRule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(std::size_t m);

// Integral of f over [a, b] with an m-point Gauss-Legendre rule.
template <class F>
double integrate(F&& f, double a, double b, std::size_t m = 32) {
  const GaussRule& g = gauss_legendre(m);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) acc += g.weights[i] * f(mid + half * g.nodes[i]);
  return acc * half;
}

// Integral of |z|^a over the unit cell [-1/2, 1/2]^n, a > -n.
double cell_moment(int n, double a);

// Integrals over the complement of the box prod [lo_i, hi_i] seen from an
// interior point x: scalar = int |y-x|^(-n-s) dy, vec_j = int (y-x)_j |y-x|^(-n-s-1) dy.
struct ExteriorIntegrals {
  double scalar = 0.0;
  std::array<double, 3> vec{};
};

ExteriorIntegrals exterior_integrals(int n, double s, const std::array<double, 3>& x,
                                     const std::array<double, 3>& lo,
                                     const std::array<double, 3>& hi);

// sum_{m >= 0} (t + period m)^(-q) for t > 0, q > 1.
double shifted_power_sum(double t, double period, double q);

}  // namespace fraclab::detail
