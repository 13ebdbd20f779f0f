#pragma once

#include <string_view>

#include "fraclab/grid.hpp"
#include "fraclab/special.hpp"

namespace fraclab {

// (sum |u|^p h^n)^(1/p); p may be +infinity.
double lp_norm(const ScalarField& field, double p);

// sup_t t |{|u| > t}|^(1/p). For a grid function the sup is the maximum over
// attained levels v of v (h^n #{|u| >= v})^(1/p).
double weak_lp_norm(const ScalarField& field, double p);

// int_0^inf |{|u| > t}|^((n-s)/n) dt, exact for grid functions.
double lorentz_norm(const ScalarField& field, const FracOrder& ord);

struct GagliardoResult {
  double value = 0.0;
  // Estimate of the excluded diagonal cells, sum h^n |grad u| h^(1-s) kappa.
  double diagonal_estimate = 0.0;
};

// int int |u(x) - u(y)| / |x - y|^(n+s) over the torus, or over R^n with zero
// extension on a truncated grid.
GagliardoResult gagliardo_detail(const ScalarField& field, double s);
double gagliardo_seminorm(const ScalarField& field, double s);

enum class HardyVariant { riesz, maximal };

// riesz: ||u||_1 + sum_j ||R_j u||_1.
// maximal: || sup_t |phi_t * u| ||_1 with phi the unit-mass gaussian and
// t in {h 2^k : 0 <= k <= log2 N}. Both reject fields with nonzero mean.
double hardy_h1_norm(const ScalarField& field, HardyVariant variant);

// Maximum over aligned dyadic cubes of (1/|Q|) int_Q |u - u_Q|.
double bmo_norm(const ScalarField& field);

enum class SeminormKind { hs1, hs1_plus, hs1_minus };

std::string_view to_string(SeminormKind kind);

// hs1:       ||A u||_1 + sum_j ||R_j A u||_1 with A = (-Delta)^(s/2)
// hs1_plus:  ||A u||_1
// hs1_minus: sum_j ||R_j A u||_1
// The zero mode of every symbol vanishes, so the mean of u is ignored.
double seminorm(const ScalarField& field, SeminormKind kind, const FracOrder& ord);

}  // namespace fraclab
