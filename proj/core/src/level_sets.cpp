#include <cmath>
#include <limits>
#include <stdexcept>

#include "fraclab/capacity.hpp"
#include "fraclab/parallel.hpp"

namespace fraclab {

LevelSetIntegral level_set_capacity_integral(const ScalarField& field, CapacityKind kind,
                                             const FracOrder& ord, const SolverParams& params,
                                             double max_level_fraction) {
  if (!(max_level_fraction > 0.0 && max_level_fraction <= 1.0))
    throw std::invalid_argument("max_level_fraction must lie in (0, 1]");
  LevelSetIntegral out;
  double top = 0.0, bottom = std::numeric_limits<double>::infinity();
  for (double v : field.values()) {
    const double a = std::abs(v);
    top = std::max(top, a);
    if (a > 0.0) bottom = std::min(bottom, a);
  }
  if (top == 0.0) {
    out.tail_exact = true;
    return out;
  }
  const double limit = max_level_fraction * static_cast<double>(field.size());
  const int kmax = static_cast<int>(std::floor(std::log2(top)));
  const int kmin = static_cast<int>(std::floor(std::log2(bottom)));

  // Distinct sets to solve; level k refers to slot[k].
  std::vector<DyadicSet> sets;
  std::vector<std::size_t> slot;
  bool truncated = false;
  for (int k = kmax; k >= kmin; --k) {
    const double t = std::ldexp(1.0, k);
    DyadicSet set = level_set(field, t, true);
    if (static_cast<double>(set.size()) > limit) {
      truncated = true;
      break;
    }
    out.thresholds.push_back(t);
    if (sets.empty() || set.cells() != sets.back().cells()) sets.push_back(std::move(set));
    slot.push_back(sets.size() - 1);
  }
  out.levels = static_cast<int>(out.thresholds.size());
  DyadicSet support = level_set(field, 0.0, true);
  out.tail_exact = !truncated && out.levels > 0 && static_cast<double>(support.size()) <= limit;
  std::size_t support_slot = 0;
  if (out.tail_exact) {
    if (sets.empty() || support.cells() != sets.back().cells()) sets.push_back(std::move(support));
    support_slot = sets.size() - 1;
  }
  if (out.levels == 0) return out;

  std::vector<double> caps(sets.size(), 0.0);
  std::vector<char> converged(sets.size(), 1);
  parallel_for(sets.size(), [&](std::size_t i) {
    const SolveReport rep = variational_capacity({sets[i], kind, ord, params});
    caps[i] = rep.value;
    converged[i] = rep.converged ? 1 : 0;
  });
  for (char c : converged) out.all_converged = out.all_converged && c != 0;

  for (std::size_t j = 0; j < slot.size(); ++j) out.capacities.push_back(caps[slot[j]]);
  // On [2^k, 2^(k+1)] the capacity lies between Cap(E_(k+1)) and Cap(E_k).
  double lower = 0.0, upper = 0.0;
  for (std::size_t j = 0; j < out.capacities.size(); ++j) {
    const double t = out.thresholds[j];
    upper += t * out.capacities[j];
    if (j > 0) lower += t * out.capacities[j - 1];
  }
  const double t_low = out.thresholds.back();
  if (out.tail_exact) {
    out.support_capacity = caps[support_slot];
    lower += t_low * out.support_capacity;
    upper += t_low * out.support_capacity;
  } else {
    lower += t_low * out.capacities.back();
    upper += t_low * out.capacities.back();
  }
  out.lower = lower;
  out.upper = upper;
  out.value = 0.5 * (lower + upper);
  return out;
}

}  // namespace fraclab
