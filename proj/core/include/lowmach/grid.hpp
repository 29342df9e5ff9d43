#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace lowmach {

using Wavevector = std::array<int, 3>;

/// Uniform discretization of the torus [0, 2pi)^dim with n points per axis.
///
/// Coefficient index layout is row-major with axis 0 slowest, matching the
/// sample layout. Index i along an axis carries wavenumber i for i < n/2 and
/// i - n otherwise, so the Nyquist plane sits at -n/2.
///
/// The grid is a cheap value type: wavenumber tables are computed once and
/// shared between copies.
class TorusGrid {
 public:
  TorusGrid(int dim, int n);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept;
  double volume() const noexcept;

  Wavevector wavevector(std::size_t idx) const noexcept;
  /// Integer |k|^2 including the Nyquist component.
  std::int64_t k2(std::size_t idx) const noexcept { return tables_->k2[idx]; }
  /// Per-axis derivative wavenumber; zero on the Nyquist plane of that axis so
  /// odd derivatives of real fields stay real.
  std::span<const double> kd(int axis) const noexcept {
    return {tables_->kd[static_cast<std::size_t>(axis)].data(), size_};
  }
  /// |kd|^2, the symbol used by the Leray projector.
  std::span<const double> kd2() const noexcept { return {tables_->kd2.data(), size_}; }

  /// Index of a wavevector, or nullopt if some component lies outside the
  /// open range (-n/2, n/2).
  std::optional<std::size_t> index_of(const Wavevector& k) const noexcept;
  /// Index of the negated wavevector (periodic wrap).
  std::size_t negated(std::size_t idx) const noexcept { return tables_->neg[idx]; }

  int mask_cutoff() const noexcept { return n_ / 3; }
  bool in_mask(std::size_t idx) const noexcept { return tables_->mask[idx] != 0; }
  const std::vector<std::size_t>& mask_indices() const noexcept { return tables_->mask_indices; }
  /// Retained modes grouped by integer |k|^2 (k = 0 excluded).
  const std::map<std::int64_t, std::vector<std::size_t>>& mask_shells() const noexcept {
    return tables_->shells;
  }

  /// Physical coordinates of sample `idx`.
  std::array<double, 3> point(std::size_t idx) const noexcept;

  friend bool operator==(const TorusGrid& a, const TorusGrid& b) noexcept {
    return a.dim_ == b.dim_ && a.n_ == b.n_;
  }

 private:
  struct Tables {
    std::array<std::vector<double>, 3> kd;
    std::vector<double> kd2;
    std::vector<std::int64_t> k2;
    std::vector<std::uint8_t> mask;
    std::vector<std::size_t> mask_indices;
    std::vector<std::size_t> neg;
    std::map<std::int64_t, std::vector<std::size_t>> shells;
  };

  int dim_;
  int n_;
  std::size_t size_;
  std::shared_ptr<const Tables> tables_;
};

/// Throws Error(GridMismatch) unless the grids agree.
void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* where);

}  // namespace lowmach
