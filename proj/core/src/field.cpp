#include "lowmach/field.hpp"

#include <algorithm>

#include "lowmach/error.hpp"

namespace lowmach {

ScalarField::ScalarField(TorusGrid grid) : grid_(std::move(grid)), coeffs_(grid_.size()) {}

ScalarField ScalarField::from_samples(const TorusGrid& grid, std::span<const double> samples) {
  ScalarField f(grid);
  forward_transform(grid, samples, f.coeffs_);
  return f;
}

std::vector<double> ScalarField::samples() const {
  std::vector<double> out(grid_.size());
  inverse_transform(grid_, coeffs_, out);
  return out;
}

void ScalarField::set_zero() noexcept { std::fill(coeffs_.begin(), coeffs_.end(), Complex{}); }

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "ScalarField::operator+=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "ScalarField::operator-=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) noexcept {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

void ScalarField::axpy(double a, const ScalarField& x) {
  require_same_grid(grid_, x.grid_, "ScalarField::axpy");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * x.coeffs_[i];
}

VectorField::VectorField(const TorusGrid& grid)
    : grid_(grid), comps_(static_cast<std::size_t>(grid.dim()), ScalarField(grid)) {}

VectorField::VectorField(std::vector<ScalarField> components)
    : grid_(components.empty() ? throw Error(Errc::InvalidArgument, "empty vector field")
                               : components.front().grid()),
      comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != grid_.dim()) {
    throw Error(Errc::InvalidArgument, "vector field needs one component per dimension");
  }
  for (const auto& c : comps_) require_same_grid(grid_, c.grid(), "VectorField");
}

std::vector<std::vector<double>> VectorField::samples() const {
  std::vector<std::vector<double>> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.samples());
  return out;
}

void VectorField::set_zero() noexcept {
  for (auto& c : comps_) c.set_zero();
}

VectorField& VectorField::operator+=(const VectorField& other) {
  for (std::size_t c = 0; c < comps_.size(); ++c) comps_[c] += other.comps_[c];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  for (std::size_t c = 0; c < comps_.size(); ++c) comps_[c] -= other.comps_[c];
  return *this;
}

VectorField& VectorField::operator*=(double s) noexcept {
  for (auto& c : comps_) c *= s;
  return *this;
}

void VectorField::axpy(double a, const VectorField& x) {
  for (std::size_t c = 0; c < comps_.size(); ++c) comps_[c].axpy(a, x.comps_[c]);
}

}  // namespace lowmach
