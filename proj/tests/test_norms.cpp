#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fraclab/fracops.hpp"
#include "fraclab/norms.hpp"

using namespace fraclab;

TEST_CASE("Lebesgue norms") {
  const Grid g(1, 256, 16.0, true);
  CHECK(lp_norm(ScalarField::zeros(g), 1.0) == 0.0);
  CHECK(lp_norm(sample(indicator_ball(1.0), g), 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(2.0 * g.spacing()));
  CHECK(lp_norm(sample(gaussian(1.0), g), 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(lp_norm(sample(gaussian(1.0), g), std::numeric_limits<double>::infinity()) == 1.0);
}

TEST_CASE("weak Lebesgue norms") {
  const Grid g(1, 256, 16.0, true);
  CHECK(weak_lp_norm(ScalarField::zeros(g), 2.0) == 0.0);
  CHECK(weak_lp_norm(sample(indicator_ball(1.0), g), 2.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(2.0 * g.spacing()));

  // |x|^{-1/2} is in weak L^2 but not in L^2.
  std::vector<double> weak, strong;
  for (std::size_t N : {512, 4096, 32768}) {
    const Grid h(1, N, 8.0, false);
    const ScalarField k = sample(riesz_kernel_mollified(0.5, 4.0 * h.spacing()), h);
    weak.push_back(weak_lp_norm(k, 2.0));
    strong.push_back(lp_norm(k, 2.0));
  }
  CHECK(weak[2] == doctest::Approx(weak[0]).epsilon(0.05));
  CHECK(strong[1] > strong[0]);
  CHECK(strong[2] > strong[1]);
}

TEST_CASE("Lorentz norm") {
  const FracOrder ord = make_frac_order(1, 0.5);
  const Grid g(1, 64, 8.0, false);
  CHECK(lorentz_norm(ScalarField::zeros(g), ord) == 0.0);
  const ScalarField ind = sample(indicator_ball(1.0), g);
  double vol = 0.0;
  for (double v : ind.values()) vol += v * g.spacing();
  CHECK(lorentz_norm(ind, ord) == doctest::Approx(std::sqrt(vol)).epsilon(1e-14));

  const ScalarField two = combine(1.0, ind, 2.0, sample(indicator_ball(0.5, {4.0, 0.0, 0.0}), g));
  const int steps = 10000;
  double riemann = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double t = 2.0 * (k + 0.5) / steps;
    double measure = 0.0;
    for (double v : two.values()) measure += std::abs(v) > t ? g.spacing() : 0.0;
    riemann += std::sqrt(measure) * 2.0 / steps;
  }
  CHECK(lorentz_norm(two, ord) == doctest::Approx(riemann).epsilon(1e-3));
}

TEST_CASE("Gagliardo seminorm") {
  const Grid g(1, 64, 4.0, true);
  CHECK(gagliardo_seminorm(ScalarField::constant(g, 2.0), 0.5) == 0.0);
  // Interval indicator: the exact value is 4 l^(1-s) / (s (1-s)) and the grid
  // misses the near-diagonal mass, an error of order h^(1-s).
  const double s = 0.5;
  const double exact = 4.0 * std::pow(2.0, 1.0 - s) / (s * (1.0 - s));
  std::vector<double> err;
  for (std::size_t N : {128, 256, 512, 1024}) {
    const Grid h(1, N, 4.0, false);
    err.push_back(std::abs(gagliardo_seminorm(sample(indicator_ball(1.0, {-1.0, 0.0, 0.0}), h), s) / exact - 1.0));
  }
  for (std::size_t i = 1; i < err.size(); ++i) {
    CAPTURE(i);
    CHECK(err[i] / err[i - 1] == doctest::Approx(std::pow(2.0, s - 1.0)).epsilon(0.1));
  }
  CHECK(err.back() < 0.03);
  const Grid b(1, 256, 8.0, true);
  const ScalarField u = sample(bump(2.0), b);
  const double ratio = seminorm(u, SeminormKind::hs1, make_frac_order(1, 0.5)) / gagliardo_seminorm(u, 0.5);
  CHECK(std::isfinite(ratio));
  CHECK(ratio > 0.0);
}

TEST_CASE("Hardy norms") {
  const Grid g(1, 512, 16.0, true);
  CHECK(hardy_h1_norm(ScalarField::zeros(g), HardyVariant::riesz) == 0.0);
  CHECK_THROWS_AS(hardy_h1_norm(sample(gaussian(1.0), g), HardyVariant::riesz), std::invalid_argument);
  CHECK_THROWS_AS(hardy_h1_norm(sample(gaussian(1.0), g), HardyVariant::maximal), std::invalid_argument);

  const ScalarField pair = sample(bump_pair(1.0, {-1.5, 0.0, 0.0}, {1.5, 0.0, 0.0}), g);
  const double a = hardy_h1_norm(pair, HardyVariant::riesz), b = hardy_h1_norm(pair, HardyVariant::maximal);
  CHECK(std::isfinite(a));
  CHECK(std::max(a, b) / std::min(a, b) < 4.0);

  const FracOrder ord = make_frac_order(1, 0.5);
  const double small = hardy_h1_norm(frac_laplacian(sample(gaussian(1.0), g), ord), HardyVariant::riesz);
  const double large = hardy_h1_norm(frac_laplacian(sample(gaussian(1.0), Grid(1, 1024, 32.0, true)), ord),
                                     HardyVariant::riesz);
  CHECK(large == doctest::Approx(small).epsilon(0.05));
}

TEST_CASE("BMO norm") {
  const Grid g(2, 64, 4.0, true);
  CHECK(bmo_norm(ScalarField::constant(g, 7.0)) == 0.0);
  CHECK(bmo_norm(sample(indicator_ball(1.0), g)) <= 1.0);

  const double b1 = bmo_norm(sample(log_abs(), g));
  const Grid g2(2, 128, 4.0, true);
  const double b2 = bmo_norm(sample(log_abs(), g2));
  CHECK(b2 == doctest::Approx(b1).epsilon(0.10));
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(lp_norm(sample(log_abs(), g2), inf) > lp_norm(sample(log_abs(), g), inf));
}

TEST_CASE("Hs1 seminorms") {
  const FracOrder ord = make_frac_order(1, 0.5);
  const Grid g(1, 512, 16.0, true);
  for (SeminormKind k : {SeminormKind::hs1, SeminormKind::hs1_plus, SeminormKind::hs1_minus})
    CHECK(seminorm(ScalarField::constant(g, 4.0), k, ord) < 1e-13);

  const ScalarField u = sample(bump(2.0), g);
  CHECK(seminorm(u, SeminormKind::hs1, ord) ==
        doctest::Approx(seminorm(u, SeminormKind::hs1_plus, ord) + seminorm(u, SeminormKind::hs1_minus, ord))
            .epsilon(1e-14));

  const double base = seminorm(sample(gaussian(1.0), g), SeminormKind::hs1, ord);
  for (double r : {0.5, 2.0}) {
    CAPTURE(r);
    const double v = seminorm(sample(gaussian(r), g), SeminormKind::hs1, ord);
    CHECK(v / base == doctest::Approx(std::pow(r, 1.0 - 0.5)).epsilon(0.02));
  }
}
