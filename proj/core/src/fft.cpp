#include "fraclab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace fraclab {

namespace {

class PlanCache {
 public:
  fftw_plan get(int n, std::size_t N, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n, N, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    int dims[3];
    std::size_t total = 1;
    for (int d = 0; d < n; ++d) {
      dims[d] = static_cast<int>(N);
      total *= N;
    }
    fftw_complex* buf = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(n, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!plan) throw std::runtime_error("FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void execute(const Grid& grid, std::span<std::complex<double>> data, int sign) {
  if (data.size() != grid.size()) throw std::invalid_argument("spectrum size does not match grid");
  fftw_plan plan = cache().get(grid.dim(), grid.per_axis(), sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace

void fft_forward(const Grid& grid, std::span<std::complex<double>> data) {
  execute(grid, data, FFTW_FORWARD);
}

void fft_inverse(const Grid& grid, std::span<std::complex<double>> data) {
  execute(grid, data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : data) c *= scale;
}

Spectrum to_spectrum(const ScalarField& field) {
  Spectrum out(field.values().begin(), field.values().end());
  fft_forward(field.grid(), out);
  return out;
}

ScalarField from_spectrum(const Grid& grid, Spectrum spectrum, double* imag_residue) {
  fft_inverse(grid, spectrum);
  std::vector<double> v(spectrum.size());
  double residue = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = spectrum[i].real();
    residue = std::max(residue, std::abs(spectrum[i].imag()));
  }
  if (imag_residue) *imag_residue = residue;
  return ScalarField(grid, std::move(v));
}

}  // namespace fraclab
