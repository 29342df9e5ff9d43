#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "lowmach/field.hpp"

namespace lowmach {

/// Seeded generator with a platform-independent mapping to doubles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and a stream label.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// u = (-sin y, sin x), H = (-sin y, sin 2x); extra components are zero in 3D.
std::pair<VectorField, VectorField> orszag_tang(const TorusGrid& grid);

/// Real, mean-zero field with random coefficients on 0 < |k|^2 <= max_k2,
/// weighted by 1/(1 + |k|^2).
ScalarField random_scalar(const TorusGrid& grid, std::int64_t max_k2, Rng& rng);
VectorField random_vector(const TorusGrid& grid, std::int64_t max_k2, Rng& rng);
VectorField random_solenoidal(const TorusGrid& grid, std::int64_t max_k2, Rng& rng);
VectorField random_gradient(const TorusGrid& grid, std::int64_t max_k2, Rng& rng);

/// Largest sampled |f| (pointwise magnitude for vector fields).
double sup_norm(const ScalarField& f);
double sup_norm(const VectorField& v);

/// Rescales so that the sup norm equals `bound` (no-op for the zero field).
void scale_to_sup(ScalarField& f, double bound);
void scale_to_sup(VectorField& v, double bound);

}  // namespace lowmach
