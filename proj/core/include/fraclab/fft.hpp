#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fraclab/grid.hpp"

namespace fraclab {

using Spectrum = std::vector<std::complex<double>>;

// In-place unnormalized complex DFT over the grid shape.
void fft_forward(const Grid& grid, std::span<std::complex<double>> data);
// Inverse DFT including the 1/size normalization.
void fft_inverse(const Grid& grid, std::span<std::complex<double>> data);

Spectrum to_spectrum(const ScalarField& field);
// Real part of the inverse transform; the largest imaginary magnitude is
// stored in *imag_residue when requested.
ScalarField from_spectrum(const Grid& grid, Spectrum spectrum, double* imag_residue = nullptr);

// Discrete frequency xi_k = k'/(2L) with k' the signed FFT index.
inline double frequency(const Grid& grid, std::size_t k) {
  const auto N = static_cast<long long>(grid.per_axis());
  const auto kk = static_cast<long long>(k);
  const long long signed_k = kk < N / 2 ? kk : kk - N;
  return static_cast<double>(signed_k) / (2.0 * grid.half_extent());
}

}  // namespace fraclab
