#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fraclab/field_io.hpp"
#include "fraclab/grid.hpp"

using namespace fraclab;

TEST_CASE("grid geometry") {
  const Grid g(1, 8, 4.0, true);
  CHECK(g.spacing() == 1.0);
  for (std::size_t k = 0; k < 8; ++k) CHECK(g.coord(k) == -4.0 + static_cast<double>(k));
  CHECK(Grid(2, 8, 4.0, true).size() == 64);
  CHECK_THROWS_AS(Grid(1, 7, 4.0, true), std::invalid_argument);
  CHECK_THROWS_AS(Grid(4, 8, 4.0, true), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 8, -1.0, true), std::invalid_argument);
}

TEST_CASE("flat index round trip") {
  const Grid g(3, 8, 2.0, false);
  for (std::size_t i = 0; i < g.size(); i += 37) CHECK(g.flatten(g.unflatten(i)) == i);
  const Point p = g.point(g.flatten({1, 2, 3}));
  CHECK(p[0] == doctest::Approx(g.coord(1)));
  CHECK(p[2] == doctest::Approx(g.coord(3)));
}

TEST_CASE("test families") {
  const Grid g(1, 256, 16.0, true);
  const ScalarField u = sample(gaussian(1.0), g);
  CHECK(u.max_abs() == 1.0);
  CHECK(u[128] == 1.0);

  const ScalarField ind = sample(indicator_ball(1.0), g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(ind[i] == (std::abs(g.coord(i)) <= 1.0 ? 1.0 : 0.0));

  const Grid g2(2, 32, 4.0, true);
  const ScalarField l = sample(log_abs(), g2);
  for (double v : l.values()) CHECK(std::isfinite(v));
  const std::size_t corner = g2.flatten({0, 0, 0});
  CHECK(l[corner] == doctest::Approx(std::log(4.0 * std::sqrt(2.0))));

  CHECK_THROWS_AS(sample(gaussian(8.0), g), std::invalid_argument);
  CHECK_THROWS_AS(sample(bump(20.0), g), std::invalid_argument);
}

TEST_CASE("mean subtraction") {
  const Grid g(1, 256, 16.0, true);
  CHECK(subtract_mean(ScalarField::constant(g, 5.0)).max_abs() == 0.0);
  CHECK(subtract_mean(ScalarField::zeros(g)).max_abs() == 0.0);

  const ScalarField u = sample(gaussian(1.0), g);
  double trapezoid = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coord(i);
    trapezoid += std::exp(-std::numbers::pi * x * x) * g.spacing();
  }
  CHECK(field_mean(u) == doctest::Approx(trapezoid / 32.0).epsilon(1e-14));
  CHECK(field_mean(u) == doctest::Approx(1.0 / 32.0).epsilon(1e-12));
  CHECK(std::abs(field_mean(subtract_mean(u))) < 1e-17);
}

TEST_CASE("mean-zero flag is validated") {
  const Grid g(1, 8, 1.0, true);
  CHECK_THROWS_AS(ScalarField(g, std::vector<double>(8, 1.0), true), std::invalid_argument);
  CHECK_THROWS_AS(ScalarField(g, std::vector<double>(7, 0.0)), std::invalid_argument);
  std::vector<double> bad(8, 0.0);
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ScalarField(g, bad), std::invalid_argument);
}

TEST_CASE("field text round trip is bit-exact") {
  const Grid g(2, 16, 3.0, false);
  const ScalarField u = combine(1.0, sample(gaussian(0.7, {0.1, -0.2, 0.0}), g), 1e-9, sample(log_abs(), g));
  std::stringstream ss;
  write_field(ss, u);
  const ScalarField v = read_field(ss);
  CHECK(v.grid() == u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(v[i] == u[i]);
}

TEST_CASE("malformed field files") {
  std::stringstream a("not a header\n1\n");
  CHECK_THROWS_AS(read_field(a), std::runtime_error);
  std::stringstream b("# fraclab-field v1 n=1 N=8 L=1 periodic=1\n1\n2\n");
  CHECK_THROWS_AS(read_field(b), std::runtime_error);
  std::stringstream c("# fraclab-field v1 n=1 N=8 L=1 periodic=1\n1\n2\n3\nx\n5\n6\n7\n8\n");
  CHECK_THROWS_AS(read_field(c), std::runtime_error);
}
