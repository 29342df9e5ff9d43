#pragma once

#include <span>
#include <utility>

namespace lowmach {

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square of the log residuals
};

/// Least squares fit of log(value) = intercept + slope log(eps).
/// Needs at least three points with positive entries; throws DegenerateFit if
/// every eps is the same.
RateFit fit_rate(std::span<const std::pair<double, double>> points);

}  // namespace lowmach
