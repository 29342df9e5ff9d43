#include "lowmach/rate_fit.hpp"

#include <cmath>
#include <string>

#include "lowmach/error.hpp"

namespace lowmach {

RateFit fit_rate(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw Error(Errc::InvalidArgument,
                "rate fit needs at least 3 points, got " + std::to_string(points.size()));
  }
  double sx = 0.0, sy = 0.0;
  for (const auto& [e, v] : points) {
    if (!(e > 0.0) || !(v > 0.0) || !std::isfinite(v)) {
      throw Error(Errc::InvalidArgument, "rate fit needs positive finite entries");
    }
    sx += std::log(e);
    sy += std::log(v);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [e, v] : points) {
    const double dx = std::log(e) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  if (sxx == 0.0) throw Error(Errc::DegenerateFit, "all eps values coincide");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (const auto& [e, v] : points) {
    const double r = std::log(v) - (fit.intercept + fit.slope * std::log(e));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace lowmach
