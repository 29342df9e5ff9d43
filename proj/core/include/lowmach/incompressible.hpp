#pragma once

#include "lowmach/field.hpp"

namespace lowmach {

/// Solenoidal velocity and magnetic field of the incompressible system. The
/// pressure is not stored; it is recovered on demand by the projection.
struct IncompressibleState {
  VectorField u;
  VectorField H;
  double t = 0.0;

  explicit IncompressibleState(const TorusGrid& grid) : u(grid), H(grid) {}
  IncompressibleState(VectorField u_, VectorField H_, double t_ = 0.0);

  const TorusGrid& grid() const noexcept { return u.grid(); }
};

void axpy(IncompressibleState& y, double a, const IncompressibleState& x);

/// Relative divergence tolerance for solenoidal inputs.
inline constexpr double kSolenoidalTolerance = 1e-10;

/// Throws NotSolenoidal if divergence_residual(v) exceeds the tolerance.
void require_solenoidal(const VectorField& v, const char* what);

/// du = P[-(u.grad)u + (H.grad)H] + mu lap u,
/// dH = -(u.grad)H + (H.grad)u + nu lap H, products dealiased.
IncompressibleState incompressible_rhs(const IncompressibleState& s, double mu, double nu);

/// Nonlinear part alone, without the solenoidal input check.
IncompressibleState incompressible_nonlinear(const IncompressibleState& s);
/// Exact diffusion over tau: u <- exp(tau mu lap) u, H <- exp(tau nu lap) H.
void incompressible_diffuse(IncompressibleState& s, double mu, double nu, double tau);
/// (max|u| + max|H|) dt n / (2 pi)
double incompressible_cfl(const IncompressibleState& s, double dt);

/// Lawson RK4 with diffusion by integrating factor; u and H are re-projected
/// after the step. Returns the dissipation integrated over the step.
/// Throws CflViolation when (max|u| + max|H|) dt n / (2 pi) > cfl_max.
double step_incompressible(IncompressibleState& s, double mu, double nu, double dt,
                           double cfl_max = 0.5);

/// Returns the advanced state instead of updating in place.
IncompressibleState stepped_incompressible(const IncompressibleState& s, double mu, double nu,
                                           double dt, double cfl_max = 0.5);

/// (||u||^2 + ||H||^2) / 2
double incompressible_energy(const IncompressibleState& s);
/// mu ||grad u||^2 + nu ||grad H||^2
double incompressible_dissipation(const IncompressibleState& s, double mu, double nu);

}  // namespace lowmach
