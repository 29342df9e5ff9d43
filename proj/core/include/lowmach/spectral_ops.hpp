#pragma once

#include "lowmach/field.hpp"

namespace lowmach {

// Differential operators act as Fourier multipliers. Odd derivatives use the
// Nyquist-zeroed wavenumbers so they map real fields to real fields.

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

/// 3D curl, i k x v.
VectorField curl(const VectorField& v);
/// 2D scalar curl d1 v2 - d2 v1.
ScalarField curl_2d(const VectorField& v);
/// 2D curl of a scalar, (d2 w, -d1 w); with curl_2d it satisfies
/// curl curl v = grad div v - lap v.
VectorField curl_2d(const ScalarField& w);

/// Solves lap g = f for mean-zero f; the result has zero mean.
/// Throws NonZeroMean if |f(k=0)| > 1e-12 * ||f||.
ScalarField inverse_laplacian(const ScalarField& f);

struct LerayParts {
  VectorField solenoidal;  // P v, carries the k = 0 mode
  VectorField gradient;   // Q v = grad lap^-1 div v
};

LerayParts leray_project(const VectorField& v);
VectorField leray_p(const VectorField& v);
VectorField leray_q(const VectorField& v);

/// Zeroes every coefficient outside the 2/3 mask. Idempotent.
ScalarField dealias(ScalarField f);
VectorField dealias(VectorField v);
void dealias_in_place(ScalarField& f) noexcept;
void dealias_in_place(VectorField& v) noexcept;

/// Product of two fields evaluated alias-free by zero-padding to a grid of
/// twice the resolution, then truncated to the 2/3 mask.
ScalarField multiply_dealiased(const ScalarField& f, const ScalarField& g);

// Norms use the continuous normalization: ||f||^2 = integral over the torus.

double l2_norm_sq(const ScalarField& f);
double l2_norm_sq(const VectorField& v);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);
double l2_inner(const ScalarField& f, const ScalarField& g);
double l2_inner(const VectorField& v, const VectorField& w);
/// ||grad v||^2 summed over components.
double gradient_norm_sq(const ScalarField& f);
double gradient_norm_sq(const VectorField& v);
/// H^r norm with weight (1 + |k|^2)^r.
double sobolev_norm(const ScalarField& f, double r);
double sobolev_norm(const VectorField& v, double r);

/// Integral of a sampled function by the rectangle rule (spectrally accurate).
double integrate_samples(const TorusGrid& grid, std::span<const double> samples);

/// ||div v|| / ||grad v||, or 0 for a constant field.
double divergence_residual(const VectorField& v);

/// max_k |c(k) - conj(c(-k))| / max_k |c(k)|; zero for exactly real fields.
double conjugate_symmetry_defect(const ScalarField& f);

}  // namespace lowmach
