#pragma once

#include <optional>

namespace lowmach {

/// Coefficients of the scaled compressible system. The physical viscosities
/// are eps times these normalized values.
struct MhdParams {
  double eps = 0.1;     // Mach number
  double mu = 0.0;      // shear viscosity
  double lambda = 0.0;  // bulk viscosity
  double nu = 0.0;      // magnetic diffusivity
  double gamma = 2.0;   // adiabatic exponent
  std::optional<double> a;  // pressure constant; 1/gamma when unset

  double pressure_constant() const noexcept { return a ? *a : 1.0 / gamma; }
  /// sqrt(a gamma) / eps; equals 1/eps under the default normalization.
  double sound_speed() const noexcept;
  /// Longitudinal viscosity 2 mu + lambda.
  double theta() const noexcept { return 2.0 * mu + lambda; }

  /// Throws Error(InvalidArgument) unless eps > 0, mu >= 0, nu >= 0,
  /// gamma > 1, a > 0 and 2 mu + dim lambda >= 0.
  void validate(int dim) const;
};

}  // namespace lowmach
