#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fraclab/capacity.hpp"

using namespace fraclab;

namespace {

ScalarField indicator_of(const DyadicSet& set) {
  std::vector<double> v(set.grid().size(), 0.0);
  for (std::size_t c : set.cells()) v[c] = 1.0;
  return ScalarField(set.grid(), std::move(v));
}

}  // namespace

TEST_CASE("dyadic content examples") {
  const Grid g(1, 32, 16.0, true);
  CHECK(hausdorff_content(DyadicSet(g), 0.5) == 0.0);
  // Cells 0..3 form one aligned dyadic cube of side 4.
  CHECK(hausdorff_content(DyadicSet(g, {0, 1, 2, 3}), 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hausdorff_content(DyadicSet(g, {8, 16}), 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hausdorff_content(DyadicSet(g, {8}), 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(hausdorff_content(DyadicSet(g, {1}), 1.0), std::invalid_argument);

  const Grid g2(2, 8, 4.0, true);
  const double full = hausdorff_content(DyadicSet(g2, ball_set(g2, 100.0).cells()), 1.5);
  CHECK(full == doctest::Approx(std::pow(8.0, 1.5)).epsilon(1e-14));
}

TEST_CASE("set constructors") {
  const Grid g(2, 16, 4.0, true);
  CHECK(cube_set(g, 2.0).size() == 16);
  CHECK(is_subset(cube_set(g, 1.0), cube_set(g, 2.0)));
  CHECK(set_union(cube_set(g, 1.0), cube_set(g, 2.0)).size() == 16);
  CHECK_THROWS_AS(DyadicSet(g, {g.size()}), std::invalid_argument);

  const Grid h(1, 8, 4.0, true);
  const ScalarField u(h, {0, 1, 2, 3, -4, -1, 0, 5});
  CHECK(superlevel_set(u, 1.0).cells() == std::vector<std::size_t>{2, 3, 7});
  CHECK(level_set(u, 3.0, true).cells() == std::vector<std::size_t>{4, 7});
  CHECK(level_set(u, 3.0, false).cells() == std::vector<std::size_t>{3, 4, 7});
}

TEST_CASE("capacity kinds parse") {
  for (CapacityKind k : {CapacityKind::ws1, CapacityKind::hs1, CapacityKind::hs1_plus, CapacityKind::hs1_minus})
    CHECK(capacity_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(capacity_kind_from_string("content"), std::invalid_argument);
}

TEST_CASE("capacity of the empty set") {
  const Grid g(1, 32, 4.0, true);
  const SolveReport r = variational_capacity({DyadicSet(g), CapacityKind::hs1, make_frac_order(1, 0.5), {}});
  CHECK(r.value == 0.0);
  CHECK(r.converged);
}

TEST_CASE("capacity ordering and monotonicity") {
  const Grid g(1, 64, 4.0, true);
  const FracOrder ord = make_frac_order(1, 0.5);
  const DyadicSet small = cube_set(g, 0.5), large = cube_set(g, 1.0);
  const SolveReport hs1 = variational_capacity({small, CapacityKind::hs1, ord, {}});
  const SolveReport plus = variational_capacity({small, CapacityKind::hs1_plus, ord, {}});
  const SolveReport minus = variational_capacity({small, CapacityKind::hs1_minus, ord, {}});
  const SolveReport big = variational_capacity({large, CapacityKind::hs1, ord, {}});
  CHECK(hs1.converged);
  CHECK(hs1.dual_value <= hs1.value);
  CHECK(hs1.gap <= 1e-4 * hs1.value);
  CHECK(plus.dual_value <= hs1.value);
  CHECK(minus.dual_value <= hs1.value);
  CHECK(hs1.dual_value <= big.value);
  for (std::size_t c : small.cells()) CHECK(hs1.minimizer[c] >= 1.0 - 1e-9);
}

TEST_CASE("level-set integral") {
  const Grid g(1, 64, 4.0, true);
  const FracOrder ord = make_frac_order(1, 0.5);
  const LevelSetIntegral zero = level_set_capacity_integral(ScalarField::zeros(g), CapacityKind::hs1, ord, {});
  CHECK(zero.value == 0.0);
  CHECK(zero.levels == 0);

  const DyadicSet q = cube_set(g, 1.0);
  const LevelSetIntegral li = level_set_capacity_integral(indicator_of(q), CapacityKind::hs1, ord, {});
  const SolveReport cap = variational_capacity({q, CapacityKind::hs1, ord, {}});
  CHECK(li.tail_exact);
  CHECK(li.value == doctest::Approx(cap.value).epsilon(1e-12));
  CHECK(li.lower == doctest::Approx(li.upper).epsilon(1e-12));

  const LevelSetIntegral two = level_set_capacity_integral(scaled(indicator_of(q), 2.0), CapacityKind::hs1, ord, {});
  CHECK(two.value == doctest::Approx(2.0 * cap.value).epsilon(1e-12));
}
