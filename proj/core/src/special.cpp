#include "fraclab/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fraclab {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

double lanczos(double x) {
  using std::numbers::pi;
  if (x < 0.5) return pi / (std::sin(pi * x) * lanczos(1.0 - x));
  x -= 1.0;
  double a = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (x + static_cast<double>(k));
  const double t = x + kLanczosG + 0.5;
  return std::sqrt(2.0 * pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_eval(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("gamma_eval needs x > 0");
  if (x == 1.0 || x == 2.0) return 1.0;
  return lanczos(x);
}

double riesz_potential_constant(int n, double a) {
  if (!(a > 0.0 && a < n)) throw std::invalid_argument("potential order outside (0, n)");
  return gamma_eval(0.5 * (n - a)) /
         (std::pow(std::numbers::pi, 0.5 * n) * std::pow(2.0, a) * gamma_eval(0.5 * a));
}

double riesz_transform_constant(int n) {
  return gamma_eval(0.5 * (n + 1)) / std::pow(std::numbers::pi, 0.5 * (n + 1));
}

FracOrder make_frac_order(int n, double s) {
  if (n < 1 || n > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s outside (0,1)");
  using std::numbers::pi;
  FracOrder o;
  o.n = n;
  o.s = s;
  o.c_ns = riesz_potential_constant(n, s);
  o.c_n1ms = riesz_potential_constant(n, 1.0 - s);
  o.c_nsp = s * std::pow(2.0, s - 1.0) * gamma_eval(0.5 * (n + s)) /
            (std::pow(pi, 0.5 * n) * gamma_eval(1.0 - 0.5 * s));
  o.c_nsm = std::pow(2.0, s) * gamma_eval(0.5 * (n + s + 1.0)) /
            (std::pow(pi, 0.5 * n) * gamma_eval(0.5 * (1.0 - s)));
  return o;
}

}  // namespace fraclab
