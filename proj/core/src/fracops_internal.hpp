#pragma once

#include "fraclab/fracops.hpp"
#include "offset_sum.hpp"

namespace fraclab::detail {

ScalarField flag_mean_zero(ScalarField field);
void require_periodic(const Grid& grid, const char* op);
bool has_zero_mean(const ScalarField& field);

ScalarField frac_laplacian_direct(const ScalarField& field, const FracOrder& ord);
ScalarField riesz_potential_direct(const ScalarField& field, const FracOrder& ord);
ScalarField riesz_transform_direct(const ScalarField& field, int axis);
VectorField frac_gradient_direct(const ScalarField& field, const FracOrder& ord);

// h^n |z|^(-n-s) on offsets, periodized on a torus.
OffsetTable hypersingular_table(const Grid& grid, double s);
// Integral of |y - x_i|^(-n-s) over the complement of the truncated box.
double exterior_weight(const Grid& grid, double s, std::size_t i);

// Central difference along an axis (periodic wrap or zero extension).
std::vector<double> central_difference(const ScalarField& field, int axis);
// Five-point style second difference summed over axes.
std::vector<double> discrete_laplacian(const ScalarField& field);

}  // namespace fraclab::detail
