#pragma once

#include <complex>
#include <span>

#include "lowmach/grid.hpp"

namespace lowmach {

using Complex = std::complex<double>;

/// Forward transform normalized so that f(x) = sum_k c_k exp(i k.x).
void forward_transform(const TorusGrid& grid, std::span<const double> samples,
                       std::span<Complex> coeffs);

/// Inverse transform; returns the real part of the synthesized samples.
void inverse_transform(const TorusGrid& grid, std::span<const Complex> coeffs,
                       std::span<double> samples);

}  // namespace lowmach
