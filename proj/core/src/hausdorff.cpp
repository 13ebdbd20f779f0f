#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fraclab/capacity.hpp"

namespace fraclab {

DyadicSet::DyadicSet(Grid grid, std::vector<std::size_t> cells) : grid_(grid), cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  if (!cells_.empty() && cells_.back() >= grid_.size())
    throw std::invalid_argument("cell index outside the grid");
}

bool DyadicSet::contains(std::size_t cell) const {
  return std::binary_search(cells_.begin(), cells_.end(), cell);
}

DyadicSet ball_set(const Grid& grid, double radius, Point center) {
  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.point(i);
    double r2 = 0.0;
    for (int d = 0; d < grid.dim(); ++d) r2 += (x[d] - center[d]) * (x[d] - center[d]);
    if (r2 <= radius * radius) cells.push_back(i);
  }
  return DyadicSet(grid, std::move(cells));
}

DyadicSet cube_set(const Grid& grid, double side, Point center) {
  std::vector<std::size_t> cells;
  // Half-open so a cube of side k h aligned with the grid holds k^n cells.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.point(i);
    bool in = true;
    for (int d = 0; d < grid.dim(); ++d)
      in &= x[d] >= center[d] - 0.5 * side && x[d] < center[d] + 0.5 * side;
    if (in) cells.push_back(i);
  }
  return DyadicSet(grid, std::move(cells));
}

DyadicSet level_set(const ScalarField& field, double t, bool strict) {
  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double a = std::abs(field[i]);
    if (strict ? a > t : a >= t) cells.push_back(i);
  }
  return DyadicSet(field.grid(), std::move(cells));
}

DyadicSet superlevel_set(const ScalarField& field, double t) {
  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < field.size(); ++i)
    if (field[i] > t) cells.push_back(i);
  return DyadicSet(field.grid(), std::move(cells));
}

DyadicSet set_union(const DyadicSet& a, const DyadicSet& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("sets live on different grids");
  std::vector<std::size_t> cells;
  std::set_union(a.cells().begin(), a.cells().end(), b.cells().begin(), b.cells().end(),
                 std::back_inserter(cells));
  return DyadicSet(a.grid(), std::move(cells));
}

bool is_subset(const DyadicSet& a, const DyadicSet& b) {
  return std::includes(b.cells().begin(), b.cells().end(), a.cells().begin(), a.cells().end());
}

double hausdorff_content(const DyadicSet& set, double alpha) {
  const Grid& g = set.grid();
  const int n = g.dim();
  if (!(alpha > 0.0 && alpha < n)) throw std::invalid_argument("alpha outside (0, n)");
  if (set.empty()) return 0.0;
  std::size_t per = g.per_axis();
  double side = g.spacing();
  std::vector<double> level(g.size(), 0.0);
  const double leaf = std::pow(side, alpha);
  for (std::size_t c : set.cells()) level[c] = leaf;
  while (per > 1) {
    const std::size_t next_per = per / 2;
    side *= 2.0;
    const double cover = std::pow(side, alpha);
    std::size_t count = 1;
    for (int d = 0; d < n; ++d) count *= next_per;
    std::vector<double> next(count, 0.0);
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (level[i] == 0.0) continue;
      std::size_t rest = i, parent = 0, stride = 1;
      for (int d = n - 1; d >= 0; --d) {
        parent += ((rest % per) / 2) * stride;
        rest /= per;
        stride *= next_per;
      }
      next[parent] += level[i];
    }
    for (double& v : next)
      if (v > 0.0) v = std::min(v, cover);
    level.swap(next);
    per = next_per;
  }
  return level.front();
}

}  // namespace fraclab
