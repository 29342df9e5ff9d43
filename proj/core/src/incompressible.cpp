#include "lowmach/incompressible.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lowmach/error.hpp"
#include "lowmach/lawson_rk4.hpp"
#include "lowmach/spectral_ops.hpp"

namespace lowmach {

namespace {

constexpr Complex kI{0.0, 1.0};
using Samples = std::vector<double>;

double max_magnitude(const std::vector<Samples>& s) {
  double best = 0.0;
  for (std::size_t i = 0; i < s[0].size(); ++i) {
    double m2 = 0.0;
    for (const auto& c : s) m2 += c[i] * c[i];
    best = std::max(best, m2);
  }
  return std::sqrt(best);
}

}  // namespace

IncompressibleState incompressible_nonlinear(const IncompressibleState& s) {
  const TorusGrid& grid = s.grid();
  const int d = grid.dim();
  const std::size_t N = grid.size();
  const auto u = s.u.samples();
  const auto H = s.H.samples();

  IncompressibleState out(grid);
  out.t = s.t;
  VectorField force(grid);
  for (int a = 0; a < d; ++a) {
    const auto gu = gradient(s.u[a]).samples();
    const auto gh = gradient(s.H[a]).samples();
    Samples tmp(N);
    for (std::size_t i = 0; i < N; ++i) {
      double v = 0.0;
      for (std::size_t b = 0; b < static_cast<std::size_t>(d); ++b) {
        v += -u[b][i] * gu[b][i] + H[b][i] * gh[b][i];
      }
      tmp[i] = v;
    }
    force[a] = dealias(ScalarField::from_samples(grid, tmp));
  }
  out.u = leray_p(force);

  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const auto ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(b);
      Samples tmp(N);
      for (std::size_t i = 0; i < N; ++i) tmp[i] = H[ib][i] * u[ia][i] - u[ib][i] * H[ia][i];
      const ScalarField A = dealias(ScalarField::from_samples(grid, tmp));
      const auto kb = grid.kd(b), ka = grid.kd(a);
      for (std::size_t i = 0; i < N; ++i) {
        out.H[a][i] += kI * kb[i] * A[i];
        out.H[b][i] -= kI * ka[i] * A[i];
      }
    }
  }
  return out;
}

void incompressible_diffuse(IncompressibleState& s, double mu, double nu, double tau) {
  const TorusGrid& grid = s.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double k2 = static_cast<double>(grid.k2(i));
    const double eu = std::exp(-mu * k2 * tau), eh = std::exp(-nu * k2 * tau);
    for (int a = 0; a < grid.dim(); ++a) {
      s.u[a][i] *= eu;
      s.H[a][i] *= eh;
    }
  }
}

double incompressible_cfl(const IncompressibleState& s, double dt) {
  return (max_magnitude(s.u.samples()) + max_magnitude(s.H.samples())) * dt * s.grid().n() /
         (2.0 * std::numbers::pi);
}

IncompressibleState::IncompressibleState(VectorField u_, VectorField H_, double t_)
    : u(std::move(u_)), H(std::move(H_)), t(t_) {
  require_same_grid(u.grid(), H.grid(), "IncompressibleState");
}

void axpy(IncompressibleState& y, double a, const IncompressibleState& x) {
  y.u.axpy(a, x.u);
  y.H.axpy(a, x.H);
}

void require_solenoidal(const VectorField& v, const char* what) {
  const double r = divergence_residual(v);
  if (r > kSolenoidalTolerance) {
    throw Error(Errc::NotSolenoidal,
                std::string(what) + " has relative divergence " + std::to_string(r));
  }
}

IncompressibleState incompressible_rhs(const IncompressibleState& s, double mu, double nu) {
  require_solenoidal(s.u, "velocity");
  require_solenoidal(s.H, "magnetic field");
  IncompressibleState out = incompressible_nonlinear(s);
  out.u.axpy(mu, laplacian(s.u));
  out.H.axpy(nu, laplacian(s.H));
  return out;
}

double step_incompressible(IncompressibleState& s, double mu, double nu, double dt,
                           double cfl_max) {
  if (!(dt > 0.0)) throw Error(Errc::InvalidArgument, "time step must be positive");
  if (!(mu >= 0.0) || !(nu >= 0.0)) {
    throw Error(Errc::InvalidArgument, "viscosities must be non-negative");
  }
  require_solenoidal(s.u, "velocity");
  require_solenoidal(s.H, "magnetic field");
  const double cfl = incompressible_cfl(s, dt);
  if (cfl > cfl_max) {
    throw Error(Errc::CflViolation,
                "CFL number " + std::to_string(cfl) + " exceeds " + std::to_string(cfl_max));
  }

  double dissipated = 0.0;
  lawson_rk4_step(
      s, s.t, dt, [](const IncompressibleState& y, double) { return incompressible_nonlinear(y); },
      [mu, nu](IncompressibleState& y, double tau) { incompressible_diffuse(y, mu, nu, tau); },
      [&](const IncompressibleState& y, double w) {
        dissipated += w * dt * incompressible_dissipation(y, mu, nu);
      });
  s.u = leray_p(s.u);
  s.H = leray_p(s.H);
  s.t += dt;
  return dissipated;
}

IncompressibleState stepped_incompressible(const IncompressibleState& s, double mu, double nu,
                                           double dt, double cfl_max) {
  IncompressibleState out = s;
  step_incompressible(out, mu, nu, dt, cfl_max);
  return out;
}

double incompressible_energy(const IncompressibleState& s) {
  return 0.5 * (l2_norm_sq(s.u) + l2_norm_sq(s.H));
}

double incompressible_dissipation(const IncompressibleState& s, double mu, double nu) {
  double d = 0.0;
  if (mu != 0.0) d += mu * gradient_norm_sq(s.u);
  if (nu != 0.0) d += nu * gradient_norm_sq(s.H);
  return d;
}

}  // namespace lowmach
