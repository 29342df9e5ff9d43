#include "lowmach/initial_data.hpp"

#include <algorithm>
#include <cmath>

#include "lowmach/spectral_ops.hpp"

namespace lowmach {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined words.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::pair<VectorField, VectorField> orszag_tang(const TorusGrid& grid) {
  VectorField u = VectorField::from_function(grid, [](const std::array<double, 3>& x) {
    return std::array<double, 3>{-std::sin(x[1]), std::sin(x[0]), 0.0};
  });
  VectorField H = VectorField::from_function(grid, [](const std::array<double, 3>& x) {
    return std::array<double, 3>{-std::sin(x[1]), std::sin(2.0 * x[0]), 0.0};
  });
  return {std::move(u), std::move(H)};
}

ScalarField random_scalar(const TorusGrid& grid, std::int64_t max_k2, Rng& rng) {
  ScalarField f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::int64_t k2 = grid.k2(i);
    if (k2 == 0 || k2 > max_k2 || !grid.in_mask(i)) continue;
    const std::size_t j = grid.negated(i);
    if (j <= i) continue;
    const double w = 1.0 / (1.0 + static_cast<double>(k2));
    const Complex c{rng.uniform(-1.0, 1.0) * w, rng.uniform(-1.0, 1.0) * w};
    f[i] = c;
    f[j] = std::conj(c);
  }
  return f;
}

VectorField random_vector(const TorusGrid& grid, std::int64_t max_k2, Rng& rng) {
  VectorField v(grid);
  for (int a = 0; a < grid.dim(); ++a) v[a] = random_scalar(grid, max_k2, rng);
  return v;
}

VectorField random_solenoidal(const TorusGrid& grid, std::int64_t max_k2, Rng& rng) {
  return leray_p(random_vector(grid, max_k2, rng));
}

VectorField random_gradient(const TorusGrid& grid, std::int64_t max_k2, Rng& rng) {
  return gradient(random_scalar(grid, max_k2, rng));
}

double sup_norm(const ScalarField& f) {
  const auto s = f.samples();
  double m = 0.0;
  for (double x : s) m = std::max(m, std::abs(x));
  return m;
}

double sup_norm(const VectorField& v) {
  const auto s = v.samples();
  double m = 0.0;
  for (std::size_t i = 0; i < s[0].size(); ++i) {
    double m2 = 0.0;
    for (const auto& c : s) m2 += c[i] * c[i];
    m = std::max(m, m2);
  }
  return std::sqrt(m);
}

void scale_to_sup(ScalarField& f, double bound) {
  const double m = sup_norm(f);
  if (m > 0.0) f *= bound / m;
}

void scale_to_sup(VectorField& v, double bound) {
  const double m = sup_norm(v);
  if (m > 0.0) v *= bound / m;
}

}  // namespace lowmach
