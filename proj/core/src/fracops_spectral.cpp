#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fraclab/fft.hpp"
#include "fraclab/fracops.hpp"
#include "fraclab/parallel.hpp"
#include "fracops_internal.hpp"

namespace fraclab {

using std::numbers::pi;

std::string_view to_string(OperatorMethod method) {
  return method == OperatorMethod::spectral ? "spectral" : "singular";
}

OperatorMethod method_from_string(std::string_view name) {
  if (name == "spectral") return OperatorMethod::spectral;
  if (name == "singular") return OperatorMethod::singular;
  throw std::invalid_argument("unknown operator method: " + std::string(name));
}

std::complex<double> symbol_value(const Symbol& sym, const Grid& grid, const Index& k) {
  const int n = grid.dim();
  const std::size_t nyquist = grid.per_axis() / 2;
  double xi2 = 0.0;
  for (int d = 0; d < n; ++d) {
    const double xi = frequency(grid, k[d]);
    xi2 += xi * xi;
  }
  if (sym.kind == SymbolKind::gaussian) return std::exp(-pi * sym.s * sym.s * xi2);
  if (xi2 == 0.0) return 0.0;
  const double r = 2.0 * pi * std::sqrt(xi2);
  const bool odd = sym.kind == SymbolKind::riesz || sym.kind == SymbolKind::gradient ||
                   sym.kind == SymbolKind::derivative;
  if (odd) {
    if (sym.axis < 0 || sym.axis >= n) throw std::invalid_argument("axis outside grid dimension");
    if (k[sym.axis] == nyquist) return 0.0;
  }
  const double xj = odd ? 2.0 * pi * frequency(grid, k[sym.axis]) : 0.0;
  switch (sym.kind) {
    case SymbolKind::laplacian: return std::pow(r, sym.s);
    case SymbolKind::potential: return std::pow(r, -sym.s);
    case SymbolKind::riesz: return {0.0, -xj / r};
    case SymbolKind::gradient: return {0.0, -xj * std::pow(r, sym.s - 1.0)};
    case SymbolKind::derivative: return {0.0, xj};
    case SymbolKind::gaussian: break;
  }
  return 0.0;
}

std::vector<std::complex<double>> symbol_table(const Symbol& symbol, const Grid& grid) {
  std::vector<std::complex<double>> table(grid.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    table[i] = symbol_value(symbol, grid, grid.unflatten(i));
  return table;
}

namespace detail {

ScalarField flag_mean_zero(ScalarField field) {
  const double mean = field_mean(field);
  if (std::abs(mean) > 1e-12 * field.max_abs()) return field;
  std::vector<double> v(field.values().begin(), field.values().end());
  return ScalarField(field.grid(), std::move(v), true);
}

void require_periodic(const Grid& grid, const char* op) {
  if (!grid.periodic())
    throw std::invalid_argument(std::string(op) + ": spectral method needs a periodic grid");
}

bool has_zero_mean(const ScalarField& field) {
  return field.mean_zero() || std::abs(field_mean(field)) <= 1e-12 * field.max_abs();
}

}  // namespace detail

ScalarField apply_symbols(const ScalarField& field, std::span<const Symbol> symbols,
                          double* imag_residue) {
  const Grid& grid = field.grid();
  detail::require_periodic(grid, "spectral operator");
  Spectrum spec = to_spectrum(field);
  bool kills_mean = false;
  for (const auto& sym : symbols) kills_mean |= sym.kind != SymbolKind::gaussian;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const Index k = grid.unflatten(i);
    std::complex<double> m = 1.0;
    for (const auto& sym : symbols) m *= symbol_value(sym, grid, k);
    spec[i] *= m;
  }
  ScalarField out = from_spectrum(grid, std::move(spec), imag_residue);
  return kills_mean ? detail::flag_mean_zero(std::move(out)) : out;
}

ScalarField apply_symbol(const ScalarField& field, const Symbol& symbol, double* imag_residue) {
  return apply_symbols(field, std::span<const Symbol>(&symbol, 1), imag_residue);
}

ScalarField frac_laplacian(const ScalarField& field, const FracOrder& ord, OperatorMethod method) {
  if (ord.n != field.grid().dim()) throw std::invalid_argument("order dimension mismatch");
  if (method == OperatorMethod::singular) return detail::frac_laplacian_direct(field, ord);
  return apply_symbol(field, {SymbolKind::laplacian, ord.s, 0});
}

ScalarField riesz_potential(const ScalarField& field, const FracOrder& ord, OperatorMethod method) {
  if (ord.n != field.grid().dim()) throw std::invalid_argument("order dimension mismatch");
  if (method == OperatorMethod::singular) return detail::riesz_potential_direct(field, ord);
  if (!detail::has_zero_mean(field))
    throw std::invalid_argument("riesz_potential: spectral path needs a mean-zero field");
  return apply_symbol(field, {SymbolKind::potential, ord.s, 0});
}

ScalarField riesz_transform(const ScalarField& field, int axis, OperatorMethod method) {
  if (axis < 0 || axis >= field.grid().dim()) throw std::invalid_argument("axis outside grid dimension");
  if (method == OperatorMethod::singular) return detail::riesz_transform_direct(field, axis);
  return apply_symbol(field, {SymbolKind::riesz, 0.0, axis});
}

VectorField riesz_transform_all(const ScalarField& field, OperatorMethod method) {
  std::vector<ScalarField> comps;
  for (int j = 0; j < field.grid().dim(); ++j) comps.push_back(riesz_transform(field, j, method));
  return VectorField(std::move(comps));
}

VectorField frac_gradient(const ScalarField& field, const FracOrder& ord, OperatorMethod method) {
  if (ord.n != field.grid().dim()) throw std::invalid_argument("order dimension mismatch");
  if (method == OperatorMethod::singular) return detail::frac_gradient_direct(field, ord);
  std::vector<ScalarField> comps;
  for (int j = 0; j < field.grid().dim(); ++j)
    comps.push_back(apply_symbol(field, {SymbolKind::gradient, ord.s, j}));
  return VectorField(std::move(comps));
}

ScalarField spectral_derivative(const ScalarField& field, int axis) {
  return apply_symbol(field, {SymbolKind::derivative, 0.0, axis});
}

}  // namespace fraclab
