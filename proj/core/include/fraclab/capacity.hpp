#pragma once

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "fraclab/grid.hpp"
#include "fraclab/norms.hpp"
#include "fraclab/special.hpp"

namespace fraclab {

// Finest-level cells of a grid marking a compact set; cell k is identified
// with grid node k.
class DyadicSet {
 public:
  explicit DyadicSet(Grid grid, std::vector<std::size_t> cells = {});

  const Grid& grid() const { return grid_; }
  const std::vector<std::size_t>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  bool contains(std::size_t cell) const;

 private:
  Grid grid_;
  std::vector<std::size_t> cells_;  // sorted, unique
};

DyadicSet ball_set(const Grid& grid, double radius, Point center = {});
// Cube of the given side centered at center, cells whose node lies inside.
DyadicSet cube_set(const Grid& grid, double side, Point center = {});
// {|u| > t} when strict, {|u| >= t} otherwise.
DyadicSet level_set(const ScalarField& field, double t, bool strict);
// {u > t}, signed.
DyadicSet superlevel_set(const ScalarField& field, double t);
DyadicSet set_union(const DyadicSet& a, const DyadicSet& b);
bool is_subset(const DyadicSet& a, const DyadicSet& b);

// Dyadic Hausdorff content: content(Q) = min(side(Q)^alpha, sum over
// children), evaluated bottom-up from the finest cells to the whole box.
double hausdorff_content(const DyadicSet& set, double alpha);

enum class CapacityKind { ws1, hs1, hs1_plus, hs1_minus };

std::string_view to_string(CapacityKind kind);
CapacityKind capacity_kind_from_string(std::string_view name);

struct SolverParams {
  int max_iter = 20000;
  double tol_gap = 1e-4;
  // Bound M on |u| that keeps the dual function finite.
  double box_bound = 3.0;
  int check_every = 50;
  // Ratio of dual to primal step sizes. Zero picks a per-kind default: 100
  // for ws1 and hs1, 3 for hs1m, and for hs1p 1 with adaptive updates at
  // restarts.
  double primal_weight = 0.0;
};

struct CapacityProblem {
  DyadicSet set;
  CapacityKind kind = CapacityKind::hs1;
  FracOrder ord;
  SolverParams params;
};

struct TracePoint {
  int iter = 0;
  double primal = 0.0;
  double dual = 0.0;
};

struct SolveReport {
  double value = 0.0;       // best feasible primal objective (upper bound)
  double dual_value = 0.0;  // best dual objective (lower bound)
  double gap = 0.0;
  int iters = 0;
  bool converged = false;
  // True when the minimizer touches the +-box_bound constraint.
  bool box_active = false;
  double op_norm = 0.0;
  ScalarField minimizer = ScalarField::zeros(Grid(1, 8, 1.0, true));
  std::vector<TracePoint> trace;
};

// Minimizes the seminorm of the kind over grid fields with u >= 1 on the set.
// Periodic grids add sum u = 0 as the stand-in for decay at infinity; the Ws1
// kind on a truncated grid uses zero extension instead. Hs1 kinds need a
// periodic grid.
SolveReport variational_capacity(const CapacityProblem& problem);

struct LevelSetIntegral {
  double value = 0.0;  // bracket midpoint
  double lower = 0.0;
  double upper = 0.0;
  int levels = 0;
  // The levels reached min|u| > 0 and the support was solved, so the part of
  // the integral below the last level is exact and upper is a true bound.
  bool tail_exact = false;
  bool all_converged = true;
  std::vector<double> thresholds;  // 2^k, decreasing
  std::vector<double> capacities;  // Cap({|u| > 2^k})
  double support_capacity = 0.0;   // Cap({u != 0}) when tail_exact
};

// int_0^inf Cap({|u| > t}) dt bracketed by dyadic sums over t = 2^k, k from
// floor(log2 max|u|) down to floor(log2 min|u|), using min|u| over nonzero
// values. Levels stop early once a level set covers more than
// max_level_fraction of the grid. Solves for distinct sets run in parallel.
LevelSetIntegral level_set_capacity_integral(const ScalarField& field, CapacityKind kind,
                                             const FracOrder& ord, const SolverParams& params,
                                             double max_level_fraction = 0.25);

struct DiscreteMeasure {
  int n = 1;
  std::vector<Point> points;
  std::vector<double> weights;
};

DiscreteMeasure make_measure(int n, std::vector<Point> points, std::vector<double> weights);
double total_mass(const DiscreteMeasure& mu);

struct GrowthResult {
  double value = 0.0;  // +infinity when the scan diverges
  double best_radius = 0.0;
  Point best_center{};
  // Dyadic radius sampling factor between the scan and the continuum sup.
  double radius_factor = 0.0;
};

// sup over centers and radii of r^(beta - n) mu(B(x, r)) with open balls.
// Centers: the atoms plus a dyadic lattice of spacing r/2. Radii: base 2^k
// from the smallest inter-atom distance up to the diameter of the support.
GrowthResult measure_growth_detail(const DiscreteMeasure& mu, double beta, double base_radius);
double measure_growth_norm(const DiscreteMeasure& mu, double beta, double base_radius);

enum class TraceMode { strong, weak };

// ||u||_{L^q(mu)} (or the weak norm) with q = n/(n-s) over [u]_X. Values at
// atoms use multilinear interpolation.
double trace_ratio(const DiscreteMeasure& mu, const ScalarField& field, const FracOrder& ord,
                   TraceMode mode, SeminormKind kind = SeminormKind::hs1);

double measure_norm(const DiscreteMeasure& mu, const ScalarField& field, double q, TraceMode mode);

double interpolate(const ScalarField& field, const Point& x);

}  // namespace fraclab
