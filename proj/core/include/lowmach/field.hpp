#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "lowmach/fft.hpp"
#include "lowmach/grid.hpp"

namespace lowmach {

/// A real-valued scalar field on the torus, held as its full array of Fourier
/// coefficients (no half-spectrum packing). Samples are produced on demand.
class ScalarField {
 public:
  explicit ScalarField(TorusGrid grid);

  static ScalarField from_samples(const TorusGrid& grid, std::span<const double> samples);

  /// Samples `fn(x)` at the grid points, x = (x0, x1, x2).
  template <class Fn>
  static ScalarField from_function(const TorusGrid& grid, Fn&& fn) {
    std::vector<double> s(grid.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = fn(grid.point(i));
    return from_samples(grid, s);
  }

  std::vector<double> samples() const;

  const TorusGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<Complex> coeffs() noexcept { return coeffs_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex& operator[](std::size_t i) noexcept { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const noexcept { return coeffs_[i]; }

  /// The k = 0 coefficient, i.e. the spatial average.
  Complex mean() const noexcept { return coeffs_[0]; }
  void remove_mean() noexcept { coeffs_[0] = 0.0; }
  void set_zero() noexcept;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s) noexcept;
  /// this += a * x
  void axpy(double a, const ScalarField& x);

  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(double s, ScalarField a) { return a *= s; }
  friend ScalarField operator-(ScalarField a) { return a *= -1.0; }

 private:
  TorusGrid grid_;
  std::vector<Complex> coeffs_;
};

/// A vector field with `grid.dim()` scalar components.
class VectorField {
 public:
  explicit VectorField(const TorusGrid& grid);
  explicit VectorField(std::vector<ScalarField> components);

  template <class Fn>
  static VectorField from_function(const TorusGrid& grid, Fn&& fn) {
    VectorField v(grid);
    std::vector<std::vector<double>> s(static_cast<std::size_t>(grid.dim()),
                                       std::vector<double>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::array<double, 3> val = fn(grid.point(i));
      for (int c = 0; c < grid.dim(); ++c) {
        s[static_cast<std::size_t>(c)][i] = val[static_cast<std::size_t>(c)];
      }
    }
    for (int c = 0; c < grid.dim(); ++c) {
      v[c] = ScalarField::from_samples(grid, s[static_cast<std::size_t>(c)]);
    }
    return v;
  }

  const TorusGrid& grid() const noexcept { return grid_; }
  int size() const noexcept { return static_cast<int>(comps_.size()); }
  ScalarField& operator[](int c) noexcept { return comps_[static_cast<std::size_t>(c)]; }
  const ScalarField& operator[](int c) const noexcept {
    return comps_[static_cast<std::size_t>(c)];
  }

  std::vector<std::vector<double>> samples() const;
  void set_zero() noexcept;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double s) noexcept;
  void axpy(double a, const VectorField& x);

  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(double s, VectorField a) { return a *= s; }
  friend VectorField operator-(VectorField a) { return a *= -1.0; }

 private:
  TorusGrid grid_;
  std::vector<ScalarField> comps_;
};

inline void axpy(ScalarField& y, double a, const ScalarField& x) { y.axpy(a, x); }
inline void axpy(VectorField& y, double a, const VectorField& x) { y.axpy(a, x); }

}  // namespace lowmach
