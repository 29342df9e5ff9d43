#pragma once

#include <vector>

#include "lowmach/compressible.hpp"
#include "lowmach/field.hpp"
#include "lowmach/incompressible.hpp"

namespace lowmach {

/// Acoustic pair V = (phi, m): phi has zero mean and m is a pure gradient.
struct OscVector {
  ScalarField phi;
  VectorField m;

  explicit OscVector(const TorusGrid& grid) : phi(grid), m(grid) {}
  OscVector(ScalarField phi_, VectorField m_);

  const TorusGrid& grid() const noexcept { return phi.grid(); }
};

void axpy(OscVector& y, double a, const OscVector& x);

/// integral phi1 phi2 + m1 . m2
double osc_inner(const OscVector& a, const OscVector& b);
double osc_norm_sq(const OscVector& v);
/// Sum of the H^r norms squared of both components.
double osc_sobolev_norm_sq(const OscVector& v, double r);
/// ||grad phi||^2 + ||grad m||^2
double osc_gradient_norm_sq(const OscVector& v);

/// Throws InvariantViolation if phi has a mean or m has a solenoidal part,
/// relative to the norm of the component.
void validate_osc(const OscVector& v, double rel_tol = 1e-12);

/// Characteristic amplitudes per mode, c(+/-) = (phi +/- khat . m) / 2, so
/// that phi = c+ + c- and m = khat (c+ - c-). Under the wave group c(+/-) is
/// multiplied by exp(-/+ i |k| tau).
struct Characteristics {
  std::vector<Complex> plus;
  std::vector<Complex> minus;
};

Characteristics to_characteristics(const OscVector& v);
OscVector from_characteristics(const TorusGrid& grid, const Characteristics& c);

/// The acoustic group exp(tau L) with L(phi, v) = (-div v, -grad phi).
/// Any tau, including negative, is accepted.
OscVector wave_group_apply(const OscVector& v, double tau);

struct Oscillation {
  OscVector U;             // (phi, Q(rho u))
  OscVector V;             // wave_group_apply(U, -t / eps)
  OscVector U_sqrt;        // (phi, Q(sqrt(rho) u)) variant
  double removed_mean = 0.0;  // mean of (rho - 1) / eps that was stripped
};

/// phi = (rho - 1) / eps with its mean removed, the gradient part of the
/// momentum, and the filtered profile at the state's time.
Oscillation extract_oscillation(const CompressibleState& s, const MhdParams& p);

/// (phi0 without mean, Q u_tilde0)
OscVector osc_initial(const ScalarField& phi0, const VectorField& u_tilde0);

/// Tendency -Q1(u, V) - Q2(V, V), the explicit part of the oscillation system.
OscVector oscillation_tendency(const VectorField& u, const OscVector& v, double gamma);

/// Lawson RK4 step of dV/dt + Q1(u, V) + Q2(V, V) = (theta/2) lap V with u
/// frozen over the step. Returns (theta/2) times the integral of
/// ||grad V||^2 over the step.
double step_oscillation(OscVector& v, const VectorField& u, double theta, double gamma,
                        double dt);

/// Limit flow together with its acoustic profile; advancing both at once keeps
/// the coupling fourth-order accurate in time.
struct LimitState {
  IncompressibleState flow;
  OscVector osc;
  double t = 0.0;
};

void axpy(LimitState& y, double a, const LimitState& x);

struct LimitStepReport {
  double flow_dissipated = 0.0;
  double osc_dissipated = 0.0;
};

LimitStepReport step_limit(LimitState& s, double mu, double nu, double theta, double gamma,
                           double dt, double cfl_max = 0.5);

}  // namespace lowmach
