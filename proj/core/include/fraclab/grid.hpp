#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fraclab {

using Index = std::array<std::size_t, 3>;
using Point = std::array<double, 3>;

// Uniform grid on [-L, L)^n with N points per axis, x_k = -L + k h.
class Grid {
 public:
  Grid(int n, std::size_t N, double L, bool periodic);

  int dim() const { return n_; }
  std::size_t per_axis() const { return N_; }
  double half_extent() const { return L_; }
  double spacing() const { return h_; }
  bool periodic() const { return periodic_; }
  std::size_t size() const { return size_; }
  double cell_volume() const { return cell_volume_; }

  double coord(std::size_t k) const { return -L_ + static_cast<double>(k) * h_; }
  std::size_t flatten(const Index& k) const;
  Index unflatten(std::size_t flat) const;
  Point point(std::size_t flat) const;

  // Same shape with the other boundary semantics.
  Grid with_periodic(bool periodic) const { return Grid(n_, N_, L_, periodic); }

  bool operator==(const Grid& other) const;

 private:
  int n_;
  std::size_t N_;
  double L_;
  double h_;
  bool periodic_;
  std::size_t size_;
  double cell_volume_;
};

Grid make_grid(int n, std::size_t N, double L, bool periodic = true);

std::string describe(const Grid& grid);

class ScalarField {
 public:
  ScalarField(Grid grid, std::vector<double> values, bool mean_zero = false);

  static ScalarField zeros(const Grid& grid);
  static ScalarField constant(const Grid& grid, double value);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  bool mean_zero() const { return mean_zero_; }

  double max_abs() const;

 private:
  Grid grid_;
  std::vector<double> values_;
  bool mean_zero_;
};

class VectorField {
 public:
  explicit VectorField(std::vector<ScalarField> components);

  const Grid& grid() const { return components_.front().grid(); }
  std::size_t dim() const { return components_.size(); }
  const ScalarField& operator[](std::size_t j) const { return components_[j]; }
  const std::vector<ScalarField>& components() const { return components_; }

 private:
  std::vector<ScalarField> components_;
};

double field_mean(const ScalarField& field);
ScalarField subtract_mean(const ScalarField& field);
ScalarField scaled(const ScalarField& field, double factor);
// a*f + b*g on a shared grid.
ScalarField combine(double a, const ScalarField& f, double b, const ScalarField& g);

enum class FamilyKind {
  gaussian,
  bump,
  shifted_bump_pair,
  log_abs,
  indicator_ball,
  riesz_kernel_mollified,
};

std::string_view to_string(FamilyKind kind);
FamilyKind family_from_string(std::string_view name);

// gaussian: a exp(-pi |x-c|^2 / w^2)
// bump: a exp(1 - 1/(1 - |x-c|^2/w^2)) inside |x-c| < w
// shifted_bump_pair: bump(c, a) + bump(c2, a2)
// log_abs: a ln|x-c|
// indicator_ball: a on |x-c| <= radius
// riesz_kernel_mollified: a (|x-c|^2 + w^2)^(-exponent/2)
struct TestFamily {
  FamilyKind kind = FamilyKind::gaussian;
  Point center{};
  Point center2{};
  double width = 1.0;
  double amplitude = 1.0;
  double amplitude2 = -1.0;
  double radius = 1.0;
  double exponent = 0.5;
};

TestFamily gaussian(double width = 1.0, Point center = {}, double amplitude = 1.0);
// Gaussian of unit mass in n dimensions with width w.
TestFamily unit_mass_gaussian(int n, double width);
TestFamily bump(double width = 1.0, Point center = {}, double amplitude = 1.0);
TestFamily bump_pair(double width, Point c1, Point c2, double a1 = 1.0, double a2 = -1.0);
TestFamily log_abs(Point center = {});
TestFamily indicator_ball(double radius, Point center = {}, double amplitude = 1.0);
TestFamily riesz_kernel_mollified(double exponent, double width, double amplitude = 1.0);

double evaluate(const TestFamily& family, int n, const Point& x);
ScalarField sample(const TestFamily& family, const Grid& grid);

}  // namespace fraclab
