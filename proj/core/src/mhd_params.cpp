#include "lowmach/mhd_params.hpp"

#include <cmath>
#include <string>

#include "lowmach/error.hpp"

namespace lowmach {

double MhdParams::sound_speed() const noexcept {
  return std::sqrt(pressure_constant() * gamma) / eps;
}

void MhdParams::validate(int dim) const {
  auto fail = [](const std::string& msg) { throw Error(Errc::InvalidArgument, msg); };
  if (!(eps > 0.0)) fail("eps must be > 0, got " + std::to_string(eps));
  if (!(mu >= 0.0)) fail("mu must be >= 0, got " + std::to_string(mu));
  if (!(nu >= 0.0)) fail("nu must be >= 0, got " + std::to_string(nu));
  if (!(gamma > 1.0)) fail("gamma must be > 1, got " + std::to_string(gamma));
  if (!(pressure_constant() > 0.0)) fail("pressure constant a must be > 0");
  if (!(2.0 * mu + dim * lambda >= 0.0)) {
    fail("2 mu + d lambda must be >= 0 (mu=" + std::to_string(mu) +
         ", lambda=" + std::to_string(lambda) + ")");
  }
}

}  // namespace lowmach
