#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lowmach/acoustic_filter.hpp"
#include "lowmach/compressible.hpp"

namespace lowmach {

/// One numerically evaluated hypothesis: satisfied when value <= bound.
struct HypothesisCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool satisfied() const noexcept { return value <= bound; }
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  std::size_t violations() const noexcept;
  bool ok() const noexcept { return violations() == 0; }
};

/// Constant used in the initial-data bounds: the torus volume (2 pi)^d.
double hypothesis_constant(const TorusGrid& grid);

/// rho = 1 + eps^2 psi, u = u0 + eps zeta, H = H0 + eps xi with seeded
/// perturbations bounded by 1/2 in sup norm and xi solenoidal.
/// Throws NotSolenoidal if u0 or H0 is not divergence free.
CompressibleState gen_well_prepared(const TorusGrid& grid, const MhdParams& p,
                                    const VectorField& u0, const VectorField& H0,
                                    std::uint64_t seed);

/// Density deviation bounded by C eps^2, velocity and magnetic defects by
/// C eps, plus positivity and solenoidal magnetic field.
HypothesisReport check_well_prepared(const CompressibleState& s, const MhdParams& p,
                                     const VectorField& u0, const VectorField& H0,
                                     double delta = 0.5);

struct IllPreparedData {
  CompressibleState state;
  ScalarField phi0;      // after rescaling
  VectorField u_tilde0;  // P u_tilde0 + rescaled Q u_tilde0
  OscVector V0;          // (phi0, Q u_tilde0)
  double scale = 1.0;    // factor applied to (phi0, Q u_tilde0)
};

/// rho = 1 + eps phi0, u = P u_tilde0 + Q u_tilde0, H = H0 + eps xi, with
/// (phi0, Q u_tilde0) scaled down so that ||phi0||_H2 + ||Q u_tilde0||_H2 <= c0 nu.
/// Throws MeanViolation if H0 or phi0 has a mean, NotSolenoidal if H0 is not
/// divergence free, VacuumReached if 1 + eps phi0 touches the vacuum threshold.
IllPreparedData gen_ill_prepared(const TorusGrid& grid, const MhdParams& p,
                                 const ScalarField& phi0, const VectorField& u_tilde0,
                                 const VectorField& H0, double c0, std::uint64_t seed);

/// Oscillation amplitude bound, zero magnetic mean, positivity, strong
/// closeness of sqrt(rho) u to u_tilde0, of H to H0 and of Pi to |phi0|.
HypothesisReport check_ill_prepared(const IllPreparedData& data, const MhdParams& p,
                                    const VectorField& H0, double c0);

}  // namespace lowmach
