#pragma once

#include <array>
#include <vector>

#include "fraclab/grid.hpp"
#include "fraclab/parallel.hpp"

namespace fraclab::detail {

// Kernel samples indexed by integer offsets. Truncated grids store offsets
// -(N-1)..(N-1) per axis; periodic grids store residues 0..N-1.
struct OffsetTable {
  int n = 1;
  std::size_t N = 0;
  bool periodic = false;
  std::size_t width = 0;
  std::vector<double> values;
};

template <class K>
OffsetTable make_table(const Grid& grid, bool periodic, K&& kernel) {
  OffsetTable t;
  t.n = grid.dim();
  t.N = grid.per_axis();
  t.periodic = periodic;
  t.width = periodic ? t.N : 2 * t.N - 1;
  std::size_t total = 1;
  for (int d = 0; d < t.n; ++d) total *= t.width;
  t.values.assign(total, 0.0);
  const long long N = static_cast<long long>(t.N);
  parallel_for(total, [&](std::size_t flat) {
    std::array<long long, 3> z{};
    std::size_t rest = flat;
    bool origin = true;
    for (int d = t.n - 1; d >= 0; --d) {
      const auto c = static_cast<long long>(rest % t.width);
      rest /= t.width;
      z[d] = periodic ? c : c - (N - 1);
      origin &= z[d] == 0;
    }
    if (!origin) t.values[flat] = kernel(z);
  });
  return t;
}

enum class Pairing { difference, abs_difference, value };

std::vector<double> offset_sum(const ScalarField& field, const OffsetTable& t, Pairing pairing);

}  // namespace fraclab::detail
