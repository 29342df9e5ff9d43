#include "lowmach/acoustic_filter.hpp"

#include <cmath>
#include <string>

#include "lowmach/error.hpp"
#include "lowmach/lawson_rk4.hpp"
#include "lowmach/resonance.hpp"
#include "lowmach/spectral_ops.hpp"

namespace lowmach {

namespace {

constexpr Complex kI{0.0, 1.0};

void diffuse(OscVector& v, double coef, double tau) {
  const TorusGrid& grid = v.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double e = std::exp(-coef * static_cast<double>(grid.k2(i)) * tau);
    v.phi[i] *= e;
    for (int a = 0; a < grid.dim(); ++a) v.m[a][i] *= e;
  }
}

}  // namespace

OscVector::OscVector(ScalarField phi_, VectorField m_) : phi(std::move(phi_)), m(std::move(m_)) {
  require_same_grid(phi.grid(), m.grid(), "OscVector");
}

void axpy(OscVector& y, double a, const OscVector& x) {
  y.phi.axpy(a, x.phi);
  y.m.axpy(a, x.m);
}

double osc_inner(const OscVector& a, const OscVector& b) {
  return l2_inner(a.phi, b.phi) + l2_inner(a.m, b.m);
}

double osc_norm_sq(const OscVector& v) { return l2_norm_sq(v.phi) + l2_norm_sq(v.m); }

double osc_sobolev_norm_sq(const OscVector& v, double r) {
  const double a = sobolev_norm(v.phi, r), b = sobolev_norm(v.m, r);
  return a * a + b * b;
}

double osc_gradient_norm_sq(const OscVector& v) {
  return gradient_norm_sq(v.phi) + gradient_norm_sq(v.m);
}

void validate_osc(const OscVector& v, double rel_tol) {
  const double pn = l2_norm(v.phi);
  const double mean = std::abs(v.phi.mean()) * std::sqrt(v.grid().volume());
  if (mean > rel_tol * pn && mean > 0.0) {
    throw Error(Errc::InvariantViolation,
                "oscillation density component has mean " + std::to_string(mean));
  }
  const double mn = l2_norm(v.m);
  if (mn > 0.0) {
    const double sol = l2_norm(leray_p(v.m));
    if (sol > rel_tol * mn) {
      throw Error(Errc::InvariantViolation,
                  "oscillation momentum has solenoidal part " + std::to_string(sol / mn));
    }
  }
}

Characteristics to_characteristics(const OscVector& v) {
  const TorusGrid& grid = v.grid();
  const auto kd2 = grid.kd2();
  Characteristics c;
  c.plus.assign(grid.size(), 0.0);
  c.minus.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (kd2[i] == 0.0) continue;
    const double K = std::sqrt(kd2[i]);
    Complex along = 0.0;
    for (int a = 0; a < grid.dim(); ++a) along += grid.kd(a)[i] / K * v.m[a][i];
    c.plus[i] = 0.5 * (v.phi[i] + along);
    c.minus[i] = 0.5 * (v.phi[i] - along);
  }
  return c;
}

OscVector from_characteristics(const TorusGrid& grid, const Characteristics& c) {
  OscVector v(grid);
  const auto kd2 = grid.kd2();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (kd2[i] == 0.0) continue;
    const double K = std::sqrt(kd2[i]);
    v.phi[i] = c.plus[i] + c.minus[i];
    const Complex diff = c.plus[i] - c.minus[i];
    for (int a = 0; a < grid.dim(); ++a) v.m[a][i] = grid.kd(a)[i] / K * diff;
  }
  return v;
}

OscVector wave_group_apply(const OscVector& v, double tau) {
  validate_osc(v);
  const TorusGrid& grid = v.grid();
  const auto kd2 = grid.kd2();
  OscVector out = v;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (kd2[i] == 0.0) continue;
    const double K = std::sqrt(kd2[i]);
    const double c = std::cos(K * tau), s = std::sin(K * tau);
    Complex along = 0.0;
    for (int a = 0; a < grid.dim(); ++a) along += grid.kd(a)[i] / K * v.m[a][i];
    out.phi[i] = c * v.phi[i] - kI * s * along;
    for (int a = 0; a < grid.dim(); ++a) {
      out.m[a][i] = c * v.m[a][i] - kI * (grid.kd(a)[i] / K) * s * v.phi[i];
    }
  }
  return out;
}

Oscillation extract_oscillation(const CompressibleState& s, const MhdParams& p) {
  const TorusGrid& grid = s.grid();
  const auto rho = s.rho.samples();
  for (double r : rho) {
    if (!(r > kVacuumThreshold)) throw Error(Errc::VacuumReached, "extract_oscillation: vacuum");
  }
  const auto u = s.u.samples();

  ScalarField phi = s.rho;
  phi[0] -= 1.0;
  phi *= 1.0 / p.eps;
  const double mean = phi.mean().real();
  phi.remove_mean();

  VectorField mom(grid), mom_sqrt(grid);
  std::vector<double> tmp(grid.size()), tmp_sqrt(grid.size());
  for (int a = 0; a < grid.dim(); ++a) {
    const auto& ua = u[static_cast<std::size_t>(a)];
    for (std::size_t i = 0; i < tmp.size(); ++i) {
      tmp[i] = rho[i] * ua[i];
      tmp_sqrt[i] = std::sqrt(rho[i]) * ua[i];
    }
    mom[a] = dealias(ScalarField::from_samples(grid, tmp));
    mom_sqrt[a] = dealias(ScalarField::from_samples(grid, tmp_sqrt));
  }

  Oscillation out{OscVector(phi, leray_q(mom)), OscVector(grid), OscVector(phi, leray_q(mom_sqrt)),
                  mean};
  out.V = wave_group_apply(out.U, -s.t / p.eps);
  return out;
}

OscVector osc_initial(const ScalarField& phi0, const VectorField& u_tilde0) {
  require_same_grid(phi0.grid(), u_tilde0.grid(), "osc_initial");
  ScalarField phi = phi0;
  phi.remove_mean();
  return OscVector(std::move(phi), leray_q(u_tilde0));
}

OscVector oscillation_tendency(const VectorField& u, const OscVector& v, double gamma) {
  OscVector out = q1_form(u, v);
  axpy(out, 1.0, q2_form(v, v, gamma));
  out.phi *= -1.0;
  out.m *= -1.0;
  return out;
}

double step_oscillation(OscVector& v, const VectorField& u, double theta, double gamma,
                        double dt) {
  if (!(theta > 0.0)) throw Error(Errc::InvalidArgument, "theta must be positive");
  if (!(dt > 0.0)) throw Error(Errc::InvalidArgument, "time step must be positive");
  require_solenoidal(u, "transport velocity");
  validate_osc(v, 1e-10);
  double dissipated = 0.0;
  lawson_rk4_step(
      v, 0.0, dt, [&](const OscVector& y, double) { return oscillation_tendency(u, y, gamma); },
      [theta](OscVector& y, double tau) { diffuse(y, 0.5 * theta, tau); },
      [&](const OscVector& y, double w) {
        dissipated += w * dt * 0.5 * theta * osc_gradient_norm_sq(y);
      });
  return dissipated;
}

void axpy(LimitState& y, double a, const LimitState& x) {
  axpy(y.flow, a, x.flow);
  axpy(y.osc, a, x.osc);
}

LimitStepReport step_limit(LimitState& s, double mu, double nu, double theta, double gamma,
                           double dt, double cfl_max) {
  if (!(theta > 0.0)) throw Error(Errc::InvalidArgument, "theta must be positive");
  if (!(dt > 0.0)) throw Error(Errc::InvalidArgument, "time step must be positive");
  require_solenoidal(s.flow.u, "velocity");
  require_solenoidal(s.flow.H, "magnetic field");
  const double cfl = incompressible_cfl(s.flow, dt);
  if (cfl > cfl_max) {
    throw Error(Errc::CflViolation,
                "CFL number " + std::to_string(cfl) + " exceeds " + std::to_string(cfl_max));
  }

  LimitStepReport rep;
  lawson_rk4_step(
      s, s.t, dt,
      [gamma](const LimitState& y, double t) {
        LimitState out{incompressible_nonlinear(y.flow), oscillation_tendency(y.flow.u, y.osc, gamma),
                       t};
        return out;
      },
      [=](LimitState& y, double tau) {
        incompressible_diffuse(y.flow, mu, nu, tau);
        diffuse(y.osc, 0.5 * theta, tau);
      },
      [&](const LimitState& y, double w) {
        rep.flow_dissipated += w * dt * incompressible_dissipation(y.flow, mu, nu);
        rep.osc_dissipated += w * dt * 0.5 * theta * osc_gradient_norm_sq(y.osc);
      });
  s.flow.u = leray_p(s.flow.u);
  s.flow.H = leray_p(s.flow.H);
  s.t += dt;
  s.flow.t = s.t;
  return rep;
}

}  // namespace lowmach
