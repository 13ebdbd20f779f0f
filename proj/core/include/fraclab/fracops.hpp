#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "fraclab/grid.hpp"
#include "fraclab/special.hpp"

namespace fraclab {

enum class OperatorMethod { spectral, singular };

std::string_view to_string(OperatorMethod method);
OperatorMethod method_from_string(std::string_view name);

// Fourier multipliers on the discrete frequencies of a periodic grid.
//   laplacian  (2 pi |xi|)^s
//   potential  (2 pi |xi|)^(-s)
//   riesz      -i xi_j / |xi|
//   gradient   (-2 pi i xi_j) (2 pi |xi|)^(s-1)
//   derivative 2 pi i xi_j
//   gaussian   exp(-pi s^2 |xi|^2)   (s is the width here)
// The zero mode maps to 0 for every kind except gaussian. Odd symbols vanish
// on the Nyquist index of their axis so real input gives real output.
enum class SymbolKind { laplacian, potential, riesz, gradient, derivative, gaussian };

struct Symbol {
  SymbolKind kind = SymbolKind::laplacian;
  double s = 0.5;
  int axis = 0;
};

std::complex<double> symbol_value(const Symbol& symbol, const Grid& grid, const Index& k);
std::vector<std::complex<double>> symbol_table(const Symbol& symbol, const Grid& grid);

// Applies the product of the symbols in one forward/inverse transform pair.
ScalarField apply_symbols(const ScalarField& field, std::span<const Symbol> symbols,
                          double* imag_residue = nullptr);
ScalarField apply_symbol(const ScalarField& field, const Symbol& symbol,
                         double* imag_residue = nullptr);

// Spectral paths need a periodic grid. Singular paths work on both grids:
// hypersingular kernels use the periodized kernel on a torus and zero
// extension plus the exact exterior integral on a truncated grid. The
// potential and the Riesz transform always use zero extension because their
// periodized kernels do not converge absolutely.
ScalarField frac_laplacian(const ScalarField& field, const FracOrder& ord,
                           OperatorMethod method = OperatorMethod::spectral);
// Spectral path rejects fields whose mean is not zero.
ScalarField riesz_potential(const ScalarField& field, const FracOrder& ord,
                            OperatorMethod method = OperatorMethod::spectral);
ScalarField riesz_transform(const ScalarField& field, int axis,
                            OperatorMethod method = OperatorMethod::spectral);
VectorField riesz_transform_all(const ScalarField& field,
                                OperatorMethod method = OperatorMethod::spectral);
// R (-Delta)^(s/2), i.e. the multiplier (-2 pi i xi)(2 pi |xi|)^(s-1).
VectorField frac_gradient(const ScalarField& field, const FracOrder& ord,
                          OperatorMethod method = OperatorMethod::spectral);
// Spectral first derivative along one axis.
ScalarField spectral_derivative(const ScalarField& field, int axis);

enum class Side { plus, minus };

// One-sided Liouville derivative on n = 1:
//   (s / Gamma(1-s)) int_{+-inf}^0 t (u(x+t) - u(x)) / |t|^(2+s) dt.
ScalarField liouville_one_sided(const ScalarField& field, double s, Side side);

struct LiouvilleFit {
  double c_plus = 0.0;   // (-Delta)^(s/2) u ~ c_plus (d_+ + d_-) u
  double c_minus = 0.0;  // grad^s u ~ c_minus (d_+ - d_-) u
  double residual_plus = 0.0;   // relative L2 residual of the fit
  double residual_minus = 0.0;
};

// Least-squares fit of c_plus and c_minus against the spectral operators over
// the given fields, which must live on one periodic n = 1 grid.
LiouvilleFit fit_liouville_constants(std::span<const ScalarField> fields, double s);

}  // namespace fraclab
