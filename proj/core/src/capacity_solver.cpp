#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "fraclab/capacity.hpp"
#include "fraclab/fft.hpp"
#include "fraclab/fracops.hpp"
#include "fraclab/parallel.hpp"
#include "fracops_internal.hpp"
#include "quadrature.hpp"

namespace fraclab {

std::string_view to_string(CapacityKind kind) {
  switch (kind) {
    case CapacityKind::ws1: return "ws1";
    case CapacityKind::hs1: return "hs1";
    case CapacityKind::hs1_plus: return "hs1p";
    case CapacityKind::hs1_minus: return "hs1m";
  }
  return "unknown";
}

CapacityKind capacity_kind_from_string(std::string_view name) {
  for (auto k : {CapacityKind::ws1, CapacityKind::hs1, CapacityKind::hs1_plus, CapacityKind::hs1_minus})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown capacity kind: " + std::string(name));
}

namespace {

using cplx = std::complex<double>;

// Linear map K with the L1 objective ||K u||_1.
class Operator {
 public:
  virtual ~Operator() = default;
  virtual std::size_t rows() const = 0;
  virtual void apply(std::span<const double> u, std::span<double> y) const = 0;
  virtual void adjoint(std::span<const double> p, std::span<double> g) const = 0;
  // Least-squares q with K^T q = d on the range of K^T; false if unsupported.
  virtual bool lift(std::span<const double>, std::span<double>) const { return false; }
};

// Stack of Fourier multipliers scaled by h^n.
class SpectralOperator final : public Operator {
 public:
  SpectralOperator(const Grid& grid, const std::vector<Symbol>& symbols) : grid_(grid) {
    const double hn = grid.cell_volume();
    for (const auto& sym : symbols) {
      auto table = symbol_table(sym, grid);
      for (auto& m : table) m *= hn;
      tables_.push_back(std::move(table));
    }
  }

  std::size_t rows() const override { return tables_.size() * grid_.size(); }

  void apply(std::span<const double> u, std::span<double> y) const override {
    const std::size_t m = grid_.size();
    std::vector<cplx> uhat(u.begin(), u.end()), work(m);
    fft_forward(grid_, uhat);
    for (std::size_t b = 0; b < tables_.size(); ++b) {
      for (std::size_t i = 0; i < m; ++i) work[i] = tables_[b][i] * uhat[i];
      fft_inverse(grid_, work);
      for (std::size_t i = 0; i < m; ++i) y[b * m + i] = work[i].real();
    }
  }

  void adjoint(std::span<const double> p, std::span<double> g) const override {
    const std::size_t m = grid_.size();
    std::vector<cplx> acc(m, 0.0), work(m);
    for (std::size_t b = 0; b < tables_.size(); ++b) {
      for (std::size_t i = 0; i < m; ++i) work[i] = p[b * m + i];
      fft_forward(grid_, work);
      for (std::size_t i = 0; i < m; ++i) acc[i] += std::conj(tables_[b][i]) * work[i];
    }
    fft_inverse(grid_, acc);
    for (std::size_t i = 0; i < m; ++i) g[i] = acc[i].real();
  }

  bool lift(std::span<const double> d, std::span<double> q) const override {
    const std::size_t m = grid_.size();
    std::vector<cplx> dhat(d.begin(), d.end());
    fft_forward(grid_, dhat);
    double gmax = 0.0;
    std::vector<double> gram(m, 0.0);
    for (const auto& t : tables_)
      for (std::size_t i = 0; i < m; ++i) gram[i] += std::norm(t[i]);
    for (double v : gram) gmax = std::max(gmax, v);
    for (std::size_t i = 0; i < m; ++i) dhat[i] = gram[i] > 1e-14 * gmax ? dhat[i] / gram[i] : cplx(0.0);
    fft_inverse(grid_, dhat);
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = dhat[i].real();
    apply(w, q);
    return true;
  }

 private:
  Grid grid_;
  std::vector<std::vector<cplx>> tables_;
};

// Weighted differences w (u_i - u_j) over unordered pairs, plus a diagonal
// block w_i u_i for the exterior of a truncated box.
class PairOperator final : public Operator {
 public:
  explicit PairOperator(const Grid& grid, double s) : m_(grid.size()) {
    const detail::OffsetTable table = detail::hypersingular_table(grid, s);
    const double hn = grid.cell_volume();
    const std::size_t N = grid.per_axis();
    const int n = grid.dim();
    for (std::size_t i = 0; i < m_; ++i) {
      const Index xi = grid.unflatten(i);
      for (std::size_t j = i + 1; j < m_; ++j) {
        const Index xj = grid.unflatten(j);
        std::size_t off = 0;
        for (int d = 0; d < n; ++d) {
          const std::size_t c = table.periodic ? (xj[d] + N - xi[d]) % N : xj[d] + (N - 1) - xi[d];
          off = off * table.width + c;
        }
        const double w = 2.0 * hn * table.values[off];
        if (w != 0.0) pairs_.push_back({i, j, w});
      }
    }
    if (!grid.periodic()) {
      diag_.resize(m_);
      for (std::size_t i = 0; i < m_; ++i) diag_[i] = 2.0 * hn * detail::exterior_weight(grid, s, i);
    }
  }

  std::size_t rows() const override { return pairs_.size() + diag_.size(); }

  void apply(std::span<const double> u, std::span<double> y) const override {
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      const auto& e = pairs_[k];
      y[k] = e.w * (u[e.i] - u[e.j]);
    }
    for (std::size_t i = 0; i < diag_.size(); ++i) y[pairs_.size() + i] = diag_[i] * u[i];
  }

  void adjoint(std::span<const double> p, std::span<double> g) const override {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      const auto& e = pairs_[k];
      g[e.i] += e.w * p[k];
      g[e.j] -= e.w * p[k];
    }
    for (std::size_t i = 0; i < diag_.size(); ++i) g[i] += diag_[i] * p[pairs_.size() + i];
  }

 private:
  struct Pair {
    std::size_t i, j;
    double w;
  };
  std::size_t m_;
  std::vector<Pair> pairs_;
  std::vector<double> diag_;
};

// C = {lo <= u <= hi} intersected with {sum u = 0} when mean_zero is set.
struct Constraints {
  std::vector<double> lo, hi;
  bool mean_zero = false;
  mutable double lambda = 0.0;  // warm start for the projection

  void project(std::span<const double> v, std::span<double> u) const {
    const std::size_t m = v.size();
    if (!mean_zero) {
      for (std::size_t i = 0; i < m; ++i) u[i] = std::clamp(v[i], lo[i], hi[i]);
      return;
    }
    // sum clamp(v - lambda, lo, hi) = 0 is piecewise linear and nonincreasing in lambda.
    auto total = [&](double lam, std::size_t* free_count) {
      double acc = 0.0;
      std::size_t nf = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const double w = v[i] - lam;
        if (w <= lo[i]) {
          acc += lo[i];
        } else if (w >= hi[i]) {
          acc += hi[i];
        } else {
          acc += w;
          ++nf;
        }
      }
      if (free_count) *free_count = nf;
      return acc;
    };
    double a = -std::numeric_limits<double>::infinity(), b = std::numeric_limits<double>::infinity();
    double lam = lambda;
    for (int iter = 0; iter < 200; ++iter) {
      std::size_t nf = 0;
      const double phi = total(lam, &nf);
      if (phi == 0.0) break;
      if (phi > 0.0) a = lam; else b = lam;
      double next = nf > 0 ? lam + phi / static_cast<double>(nf) : lam + (phi > 0 ? 1.0 : -1.0);
      if (std::isfinite(a) && std::isfinite(b) && !(next > a && next < b)) next = 0.5 * (a + b);
      if (next == lam || (std::isfinite(a) && std::isfinite(b) && b - a <= 1e-15 * (1.0 + std::abs(lam)))) {
        lam = next;
        break;
      }
      lam = next;
    }
    lambda = lam;
    for (std::size_t i = 0; i < m; ++i) u[i] = std::clamp(v[i] - lam, lo[i], hi[i]);
  }

  // min over C of <g, u>.
  double linear_min(std::span<const double> g) const {
    const std::size_t m = g.size();
    if (!mean_zero) {
      double acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) acc += std::min(g[i] * lo[i], g[i] * hi[i]);
      return acc;
    }
    // max_c sum_i min((g_i - c) lo_i, (g_i - c) hi_i), concave in c; the
    // slope drops from -lo_i to -hi_i as c crosses g_i.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return g[x] < g[y]; });
    double slope = 0.0;
    for (std::size_t i = 0; i < m; ++i) slope -= lo[i];
    double c = g[order.front()];
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = order[k];
      c = g[i];
      slope += lo[i] - hi[i];
      if (slope <= 0.0) break;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += std::min((g[i] - c) * lo[i], (g[i] - c) * hi[i]);
    return acc;
  }
};

double l1(std::span<const double> y) {
  std::vector<double> a(y.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(y[i]);
  return pairwise_sum(a);
}

double norm2(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double estimate_norm(const Operator& op, std::size_t m) {
  std::vector<double> u(m), y(op.rows()), g(m);
  // Deterministic start with energy in every mode.
  for (std::size_t i = 0; i < m; ++i) u[i] = std::sin(1.0 + 0.618 * static_cast<double>(i)) + 0.1;
  double est = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double nu = norm2(u);
    if (nu == 0.0) return 0.0;
    for (double& x : u) x /= nu;
    op.apply(u, y);
    op.adjoint(y, g);
    const double next = std::sqrt(norm2(g));
    const bool done = it > 5 && std::abs(next - est) <= 1e-6 * next;
    est = next;
    u = g;
    if (done) break;
  }
  return est;
}

std::unique_ptr<Operator> make_operator(const Grid& grid, CapacityKind kind, const FracOrder& ord) {
  if (kind == CapacityKind::ws1) return std::make_unique<PairOperator>(grid, ord.s);
  detail::require_periodic(grid, "variational_capacity");
  std::vector<Symbol> symbols;
  if (kind != CapacityKind::hs1_minus) symbols.push_back({SymbolKind::laplacian, ord.s, 0});
  if (kind != CapacityKind::hs1_plus)
    for (int j = 0; j < grid.dim(); ++j) symbols.push_back({SymbolKind::gradient, ord.s, j});
  return std::make_unique<SpectralOperator>(grid, symbols);
}

}  // namespace

SolveReport variational_capacity(const CapacityProblem& prob) {
  const Grid& grid = prob.set.grid();
  const SolverParams& par = prob.params;
  if (!(par.tol_gap > 0.0)) throw std::invalid_argument("tol_gap must be positive");
  if (par.max_iter < 1 || par.check_every < 1) throw std::invalid_argument("bad iteration limits");
  if (!(par.box_bound >= 1.0)) throw std::invalid_argument("box_bound must be at least 1");
  if (prob.ord.n != grid.dim()) throw std::invalid_argument("order dimension mismatch");
  SolveReport rep;
  const std::size_t m = grid.size();
  if (prob.set.empty()) {
    rep.minimizer = ScalarField::zeros(grid);
    rep.converged = true;
    return rep;
  }
  const auto op = make_operator(grid, prob.kind, prob.ord);
  Constraints cons;
  cons.mean_zero = grid.periodic();
  cons.lo.assign(m, -par.box_bound);
  cons.hi.assign(m, par.box_bound);
  for (std::size_t c : prob.set.cells()) cons.lo[c] = 1.0;
  if (cons.mean_zero) {
    double lo_sum = 0.0;
    for (double v : cons.lo) lo_sum += v;
    if (lo_sum > 0.0) throw std::invalid_argument("set too large for the mean-zero constraint");
  }

  rep.op_norm = estimate_norm(*op, m);
  const double eta = 0.95 / rep.op_norm;
  // Primal weight omega: tau = eta/omega, sigma = eta*omega.
  double omega = par.primal_weight;
  bool adapt = false;
  if (!(omega > 0.0)) {
    switch (prob.kind) {
      case CapacityKind::hs1_plus: omega = 1.0; adapt = true; break;
      case CapacityKind::hs1_minus: omega = 3.0; break;
      default: omega = 100.0; break;
    }
  }

  const std::size_t r = op->rows();
  std::vector<double> u(m), u_prev(m), ubar(m), p(r, 0.0), Ku(r), Ktp(m), tmp(m);
  // Start from the indicator of the set, made feasible.
  for (std::size_t i = 0; i < m; ++i) tmp[i] = prob.set.contains(i) ? 1.0 : 0.0;
  cons.project(tmp, u);
  ubar = u;
  std::vector<double> u_sum(m, 0.0), p_sum(r, 0.0);
  std::size_t avg_count = 0;
  std::vector<double> u_restart = u, p_restart = p;
  double restart_gap = std::numeric_limits<double>::infinity();

  double best_primal = std::numeric_limits<double>::infinity();
  double best_dual = -std::numeric_limits<double>::infinity();
  std::vector<double> best_u = u;

  auto primal_of = [&](const std::vector<double>& x) {
    op->apply(x, Ku);
    return l1(Ku);
  };
  // Plain bound, and the bound after lifting K^T q onto a target that is
  // constant off the set; the latter avoids the box penalty on free nodes.
  std::vector<double> target(m), q(r), lifted(r);
  auto dual_of = [&](const std::vector<double>& pv) {
    op->adjoint(pv, Ktp);
    double best = cons.linear_min(Ktp);
    if (!cons.mean_zero) return best;
    lifted = pv;
    for (int round = 0; round < 2; ++round) {
      double c = 0.0;
      std::size_t nf = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (!prob.set.contains(i)) {
          c += Ktp[i];
          ++nf;
        }
      if (nf == 0) break;
      c /= static_cast<double>(nf);
      for (std::size_t i = 0; i < m; ++i) target[i] = prob.set.contains(i) ? std::max(Ktp[i], c) - Ktp[i] : c - Ktp[i];
      const double shift = std::accumulate(target.begin(), target.end(), 0.0) / static_cast<double>(m);
      for (double& v : target) v -= shift;
      if (!op->lift(target, q)) break;
      double sup = 1.0;
      for (std::size_t k = 0; k < r; ++k) {
        lifted[k] += q[k];
        sup = std::max(sup, std::abs(lifted[k]));
      }
      std::vector<double> scaled(lifted);
      for (double& v : scaled) v /= sup;
      op->adjoint(scaled, tmp);
      best = std::max(best, cons.linear_min(tmp));
      for (double& v : lifted) v = std::clamp(v, -1.0, 1.0);
      op->adjoint(lifted, Ktp);
      best = std::max(best, cons.linear_min(Ktp));
    }
    return best;
  };

  int it = 0;
  for (; it < par.max_iter;) {
    const double tau = eta / omega, sigma = eta * omega;
    op->apply(ubar, Ku);
    for (std::size_t k = 0; k < r; ++k) p[k] = std::clamp(p[k] + sigma * Ku[k], -1.0, 1.0);
    op->adjoint(p, Ktp);
    u_prev = u;
    for (std::size_t i = 0; i < m; ++i) tmp[i] = u[i] - tau * Ktp[i];
    cons.project(tmp, u);
    for (std::size_t i = 0; i < m; ++i) ubar[i] = 2.0 * u[i] - u_prev[i];
    for (std::size_t i = 0; i < m; ++i) u_sum[i] += u[i];
    for (std::size_t k = 0; k < r; ++k) p_sum[k] += p[k];
    ++avg_count;
    ++it;
    if (it % par.check_every != 0 && it != par.max_iter) continue;

    // Candidates: current iterate and the average since the last restart.
    std::vector<double> u_avg(m), p_avg(r);
    for (std::size_t i = 0; i < m; ++i) u_avg[i] = u_sum[i] / static_cast<double>(avg_count);
    for (std::size_t k = 0; k < r; ++k) p_avg[k] = p_sum[k] / static_cast<double>(avg_count);
    cons.project(std::vector<double>(u_avg), u_avg);
    const double pc = primal_of(u), dc = dual_of(p);
    const double pa = primal_of(u_avg), da = dual_of(p_avg);
    if (pc < best_primal) {
      best_primal = pc;
      best_u = u;
    }
    if (pa < best_primal) {
      best_primal = pa;
      best_u = u_avg;
    }
    best_dual = std::max({best_dual, dc, da});
    rep.trace.push_back({it, best_primal, best_dual});
    if (best_primal - best_dual <= par.tol_gap * best_primal) {
      rep.converged = true;
      break;
    }
    // Restart from the better candidate once its gap has halved, or after
    // a fixed number of checks without progress.
    const bool use_avg = (pa - da) < (pc - dc);
    const double cand_gap = use_avg ? pa - da : pc - dc;
    if (cand_gap <= 0.5 * restart_gap || avg_count >= 20 * static_cast<std::size_t>(par.check_every)) {
      std::vector<double> u_new = use_avg ? u_avg : u;
      std::vector<double> p_new = use_avg ? p_avg : p;
      if (adapt) {
        double nu = 0.0, np = 0.0;
        for (std::size_t i = 0; i < m; ++i) nu += (u_new[i] - u_restart[i]) * (u_new[i] - u_restart[i]);
        for (std::size_t k = 0; k < r; ++k) np += (p_new[k] - p_restart[k]) * (p_new[k] - p_restart[k]);
        if (nu > 1e-24 && np > 1e-24) omega = std::sqrt(omega * std::sqrt(np / nu));
      }
      u = u_new;
      p = p_new;
      ubar = u;
      u_restart = u;
      p_restart = p;
      restart_gap = cand_gap;
      std::fill(u_sum.begin(), u_sum.end(), 0.0);
      std::fill(p_sum.begin(), p_sum.end(), 0.0);
      avg_count = 0;
    }
  }
  rep.iters = it;
  rep.value = best_primal;
  rep.dual_value = best_dual;
  rep.gap = best_primal - best_dual;
  for (double v : best_u)
    if (std::abs(v) >= par.box_bound * (1.0 - 1e-9)) rep.box_active = true;
  rep.minimizer = ScalarField(grid, best_u);
  return rep;
}

}  // namespace fraclab
