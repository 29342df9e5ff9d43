#pragma once

#include <vector>

#include "lowmach/field.hpp"
#include "lowmach/mhd_params.hpp"

namespace lowmach {

/// Density, velocity and magnetic field of the scaled compressible system.
/// The same type carries tendencies, where `rho` holds d(rho)/dt.
struct CompressibleState {
  ScalarField rho;
  VectorField u;
  VectorField H;
  double t = 0.0;

  /// Quiescent state rho = 1, u = H = 0.
  explicit CompressibleState(const TorusGrid& grid);
  CompressibleState(ScalarField rho, VectorField u, VectorField H, double t = 0.0);

  const TorusGrid& grid() const noexcept { return rho.grid(); }
};

/// Field-wise y += a x; the time stamp is left alone.
void axpy(CompressibleState& y, double a, const CompressibleState& x);

inline constexpr double kVacuumThreshold = 1e-8;

/// Minimum of the sampled density; throws VacuumReached at or below the
/// vacuum threshold.
double check_density(const ScalarField& rho);

/// Full tendency (d rho, d u, d H) in velocity form, products dealiased.
CompressibleState compressible_rhs(const CompressibleState& s, const MhdParams& p);

struct CompressibleOptions {
  double cfl_max = 0.5;
  bool check_cfl = true;
  /// When false only the exact linear propagator is applied: the linear
  /// acoustic and diffusive dynamics with all products switched off.
  bool nonlinear = true;
};

/// Lawson RK4 integrator with the acoustic and diffusive terms treated
/// exactly. Not thread-safe: it caches propagator tables per step size, so use
/// one instance per trajectory.
class CompressibleSolver {
 public:
  CompressibleSolver(const TorusGrid& grid, const MhdParams& p, CompressibleOptions opt = {});

  const MhdParams& params() const noexcept { return params_; }
  const CompressibleOptions& options() const noexcept { return opt_; }

  /// Advances s by dt and returns the dissipation integrated over the step.
  /// Throws CflViolation before stepping and VacuumReached if any stage
  /// density touches the vacuum threshold.
  double step(CompressibleState& s, double dt);

  /// The explicit remainder N with d/dt s = L s + N(s).
  CompressibleState nonlinear_tendency(const CompressibleState& s) const;
  /// The linear part L s.
  CompressibleState linear_tendency(const CompressibleState& s) const;
  /// s <- exp(tau L) s for tau >= 0.
  void propagate(CompressibleState& s, double tau);

  /// (max|u| + max|H|) dt n / (2 pi).
  static double cfl_number(const CompressibleState& s, double dt);

 private:
  struct Propagator {
    double tau = -1.0;
    std::vector<Complex> e00, e01, e10, e11;
    std::vector<double> transverse, magnetic;
  };
  const Propagator& propagator(double tau);

  TorusGrid grid_;
  MhdParams params_;
  CompressibleOptions opt_;
  Propagator cache_[2];
  int next_slot_ = 0;
};

/// Convenience wrapper building a solver for a single step.
CompressibleState step_compressible(const CompressibleState& s, const MhdParams& p, double dt,
                                    CompressibleOptions opt = {});

/// rho^gamma - 1 - gamma (rho - 1), evaluated without cancellation near 1.
double pressure_potential(double rho, double gamma);

/// Total energy: integral of rho|u|^2/2 + |H|^2/2 + a/(eps^2 (gamma-1)) G(rho).
double total_energy(const CompressibleState& s, const MhdParams& p);
/// mu ||grad u||^2 + (mu + lambda) ||div u||^2 + nu ||grad H||^2.
double dissipation(const CompressibleState& s, const MhdParams& p);

/// Pointwise (1/eps) sqrt(2a/(gamma-1) G(rho)). Radicands in [-1e-10, 0) are
/// clamped to zero; anything lower throws NegativeRadicand.
ScalarField pi_field(const ScalarField& rho, const MhdParams& p);

}  // namespace lowmach
