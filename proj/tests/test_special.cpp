#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fraclab/special.hpp"

using namespace fraclab;

namespace {

// Stirling series for ln Gamma after shifting the argument past 20.
double gamma_oracle(double x) {
  double shift = 1.0;
  while (x < 20.0) {
    shift *= x;
    x += 1.0;
  }
  const double x2 = x * x;
  const double series = 1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2) + 1.0 / (1260.0 * x2 * x2 * x) -
                        1.0 / (1680.0 * x2 * x2 * x2 * x);
  const double lg = (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
  return std::exp(lg) / shift;
}

}  // namespace

TEST_CASE("gamma at forced values") {
  CHECK(gamma_eval(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(gamma_eval(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_eval(0.25) == doctest::Approx(3.6256099082219083).epsilon(1e-13));
}

TEST_CASE("gamma matches the Stirling oracle") {
  for (double x : {0.05, 0.3, 0.75, 1.5, 2.5, 3.7, 7.25, 12.0}) {
    CAPTURE(x);
    CHECK(gamma_eval(x) == doctest::Approx(gamma_oracle(x)).epsilon(1e-12));
  }
}

TEST_CASE("gamma rejects non-positive arguments") {
  CHECK_THROWS_AS(gamma_eval(0.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_eval(-1.5), std::invalid_argument);
}

TEST_CASE("fractional order constants") {
  const double pi = std::numbers::pi;
  const FracOrder o1 = make_frac_order(1, 0.5);
  CHECK(o1.c_ns == doctest::Approx(1.0 / std::sqrt(2.0 * pi)).epsilon(1e-13));
  CHECK(o1.c_nsp == doctest::Approx(std::pow(2.0, -1.5) / std::sqrt(pi)).epsilon(1e-13));
  const FracOrder o2 = make_frac_order(2, 0.5);
  CHECK(o2.c_nsm == doctest::Approx(std::sqrt(2.0) * std::tgamma(1.75) / (pi * std::tgamma(0.25))).epsilon(1e-13));
  CHECK(o2.c_n1ms == doctest::Approx(riesz_potential_constant(2, 0.5)).epsilon(1e-15));
  const FracOrder o3 = make_frac_order(3, 0.3);
  const double c = std::tgamma(1.35) / (std::pow(pi, 1.5) * std::pow(2.0, 0.3) * std::tgamma(0.15));
  CHECK(o3.c_ns == doctest::Approx(c).epsilon(1e-13));
  CHECK(riesz_transform_constant(1) == doctest::Approx(1.0 / pi).epsilon(1e-14));
}

TEST_CASE("order validation") {
  CHECK_THROWS_AS(make_frac_order(1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(make_frac_order(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_frac_order(4, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(riesz_potential_constant(1, 1.0), std::invalid_argument);
}
