#pragma once

#include "lowmach/acoustic_filter.hpp"

namespace lowmach {

// Long-time averages of filtered interaction terms, evaluated by exact
// resonance detection on the integer lattice. Inputs are read on the 2/3 mask
// and outputs are supported there.

/// Average of L(-s)(0, div(v (x) L2(s)V + L2(s)V (x) v)). Only pairs with
/// |k|^2 = |m|^2 survive. Throws NotSolenoidal if v is not divergence free.
OscVector q1_form(const VectorField& v, const OscVector& V);

/// Symmetric bilinear average of
/// L(-s)(0, div(L2(s)V (x) L2(s)V) + (gamma-1)/2 grad (L1(s)V)^2).
/// Resonant triples are collinear; they are enumerated along the lattice line
/// through each output mode. Throws InvariantViolation on invalid arguments.
OscVector q2_form(const OscVector& V1, const OscVector& V2, double gamma);

/// Average of L(-s)(0, theta lap L2(s)V) from the per-mode resonance sum.
OscVector averaged_laplacian(const OscVector& V, double theta);

/// ||averaged_laplacian(V) - (theta/2) lap V|| / ||lap V||, zero when lap V = 0.
double averaged_laplacian_check(const OscVector& V, double theta = 1.0);

}  // namespace lowmach
