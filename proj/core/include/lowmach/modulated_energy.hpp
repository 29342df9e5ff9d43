#pragma once

#include <utility>

#include "lowmach/acoustic_filter.hpp"
#include "lowmach/compressible.hpp"
#include "lowmach/incompressible.hpp"

namespace lowmach {

struct ModulatedReport {
  double t = 0.0;
  double w2 = 0.0;     // ||w||^2, corrected by the acoustic profile when one is given
  double z2 = 0.0;     // ||H^eps - H||^2
  double pi2 = 0.0;    // ||Pi||^2 (well prepared) or ||Psi||^2 (ill prepared)
  double density_small = 0.0;
  double density_large = 0.0;
  double energy = 0.0;  // total energy of the compressible state
  double dissipated = 0.0;  // running dissipation integral, filled by the caller

  // Auxiliary quantities used by the sweep acceptance checks.
  double w2_uncorrected = 0.0;   // ||sqrt(rho) u - u||^2
  double p_defect2 = 0.0;        // ||P(sqrt(rho) u) - u||^2
  double q_momentum2 = 0.0;      // ||Q(sqrt(rho) u)||^2
  double rho_dev_l2 = 0.0;       // ||rho - 1||
  double psi2_signed = 0.0;      // ||(rho - 1)/eps - L1 V0||^2 (ill prepared only)

  double total() const noexcept { return w2 + z2 + pi2; }
};

inline constexpr double kDefaultDeviationCut = 0.5;

/// Integrals of |rho-1|^2 where |rho-1| <= delta and |rho-1|^gamma where
/// |rho-1| > delta, by pointwise quadrature.
std::pair<double, double> density_deviation(const ScalarField& rho, double delta,
                                            double gamma = 2.0);

/// w = sqrt(rho) u - u, Z = H^eps - H, Pi from pi_field.
/// Throws GridMismatch, or TimeMismatch when |t_cs - t_is| > time_tol.
ModulatedReport well_prepared_functional(const CompressibleState& cs,
                                         const IncompressibleState& is, const MhdParams& p,
                                         double time_tol = 1e-9,
                                         double delta = kDefaultDeviationCut);

/// As above with w = sqrt(rho) u - u - L2(t/eps) V0 and Psi = Pi - L1(t/eps) V0.
ModulatedReport ill_prepared_functional(const CompressibleState& cs,
                                        const IncompressibleState& is, const OscVector& V0,
                                        const MhdParams& p, double time_tol = 1e-9,
                                        double delta = kDefaultDeviationCut);

}  // namespace lowmach
