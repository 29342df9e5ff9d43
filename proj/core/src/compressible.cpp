#include "lowmach/compressible.hpp"

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

ScalarField to_masked(const TorusGrid& grid, const Samples& s) {
  ScalarField f = ScalarField::from_samples(grid, s);
  dealias_in_place(f);
  return f;
}

double max_magnitude(const VectorField& v) {
  const auto s = v.samples();
  double best = 0.0;
  for (std::size_t i = 0; i < s[0].size(); ++i) {
    double m2 = 0.0;
    for (const auto& c : s) m2 += c[i] * c[i];
    best = std::max(best, m2);
  }
  return std::sqrt(best);
}

}  // namespace

CompressibleState::CompressibleState(const TorusGrid& grid) : rho(grid), u(grid), H(grid) {
  rho[0] = 1.0;
}

CompressibleState::CompressibleState(ScalarField rho_, VectorField u_, VectorField H_, double t_)
    : rho(std::move(rho_)), u(std::move(u_)), H(std::move(H_)), t(t_) {
  require_same_grid(rho.grid(), u.grid(), "CompressibleState");
  require_same_grid(rho.grid(), H.grid(), "CompressibleState");
}

void axpy(CompressibleState& y, double a, const CompressibleState& x) {
  y.rho.axpy(a, x.rho);
  y.u.axpy(a, x.u);
  y.H.axpy(a, x.H);
}

double check_density(const ScalarField& rho) {
  const Samples s = rho.samples();
  const double m = *std::min_element(s.begin(), s.end());
  if (!(m > kVacuumThreshold)) {
    throw Error(Errc::VacuumReached, "density minimum " + std::to_string(m) +
                                         " at or below " + std::to_string(kVacuumThreshold));
  }
  return m;
}

double pressure_potential(double rho, double gamma) {
  const double r = rho - 1.0;
  if (std::abs(r) < 1e-3) {
    // Binomial series from the quadratic term on.
    double coef = gamma * (gamma - 1.0) / 2.0;
    double pw = r * r;
    double sum = 0.0;
    for (int j = 2; j < 12; ++j) {
      sum += coef * pw;
      coef *= (gamma - j) / (j + 1.0);
      pw *= r;
    }
    return sum;
  }
  return std::expm1(gamma * std::log1p(r)) - gamma * r;
}

CompressibleSolver::CompressibleSolver(const TorusGrid& grid, const MhdParams& p,
                                       CompressibleOptions opt)
    : grid_(grid), params_(p), opt_(opt) {
  params_.validate(grid.dim());
  if (!(opt_.cfl_max > 0.0)) throw Error(Errc::InvalidArgument, "cfl_max must be positive");
}

CompressibleState CompressibleSolver::linear_tendency(const CompressibleState& s) const {
  const double c2 = params_.sound_speed() * params_.sound_speed();
  CompressibleState out(s.grid());
  out.rho = -divergence(s.u);
  out.u = laplacian(s.u);
  out.u *= params_.mu;
  out.u.axpy(params_.mu + params_.lambda, gradient(divergence(s.u)));
  out.u.axpy(-c2, gradient(s.rho));
  out.H = laplacian(s.H);
  out.H *= params_.nu;
  out.t = s.t;
  return out;
}

CompressibleState CompressibleSolver::nonlinear_tendency(const CompressibleState& s) const {
  const TorusGrid& grid = s.grid();
  const int d = grid.dim();
  const std::size_t N = grid.size();
  const auto du = static_cast<std::size_t>(d);

  const Samples rho = s.rho.samples();
  const double rmin = *std::min_element(rho.begin(), rho.end());
  if (!(rmin > kVacuumThreshold)) {
    throw Error(Errc::VacuumReached,
                "density minimum " + std::to_string(rmin) + " during stage evaluation");
  }

  const auto u = s.u.samples();
  const auto H = s.H.samples();
  std::vector<std::vector<Samples>> grad_u(du), grad_h(du);
  for (int a = 0; a < d; ++a) {
    const VectorField gu = gradient(s.u[a]);
    const VectorField gh = gradient(s.H[a]);
    grad_u[static_cast<std::size_t>(a)] = gu.samples();
    grad_h[static_cast<std::size_t>(a)] = gh.samples();
  }
  VectorField visc = laplacian(s.u);
  visc *= params_.mu;
  visc.axpy(params_.mu + params_.lambda, gradient(divergence(s.u)));
  const auto vis = visc.samples();
  const auto grad_rho = gradient(s.rho).samples();

  const double c2 = params_.sound_speed() * params_.sound_speed();
  const double gm2 = params_.gamma - 2.0;

  CompressibleState out(grid);
  out.rho.set_zero();
  out.t = s.t;

  // Continuity remainder -div((rho - 1) u).
  {
    VectorField flux(grid);
    Samples tmp(N);
    for (int b = 0; b < d; ++b) {
      const auto& ub = u[static_cast<std::size_t>(b)];
      for (std::size_t i = 0; i < N; ++i) tmp[i] = (rho[i] - 1.0) * ub[i];
      flux[b] = to_masked(grid, tmp);
    }
    out.rho = -divergence(flux);
  }

  // Momentum remainder in velocity form.
  for (int a = 0; a < d; ++a) {
    const auto ia = static_cast<std::size_t>(a);
    Samples tmp(N);
    for (std::size_t i = 0; i < N; ++i) {
      double adv = 0.0, lorentz = 0.0;
      for (std::size_t b = 0; b < du; ++b) {
        adv += u[b][i] * grad_u[ia][b][i];
        lorentz += H[b][i] * (grad_h[ia][b][i] - grad_h[b][ia][i]);
      }
      const double inv_rho = 1.0 / rho[i];
      double pressure = 0.0;
      if (gm2 != 0.0) pressure = c2 * std::expm1(gm2 * std::log(rho[i])) * grad_rho[ia][i];
      tmp[i] = -adv - pressure + inv_rho * lorentz + (inv_rho - 1.0) * vis[ia][i];
    }
    out.u[a] = to_masked(grid, tmp);
  }

  // Induction in conservative form: dH_a/dt = d_b (H_b u_a - u_b H_a), which
  // agrees with the advective form for solenoidal H and keeps the tendency
  // exactly solenoidal and mean free.
  out.H.set_zero();
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const auto ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(b);
      Samples tmp(N);
      for (std::size_t i = 0; i < N; ++i) tmp[i] = H[ib][i] * u[ia][i] - u[ib][i] * H[ia][i];
      const ScalarField A = to_masked(grid, tmp);  // A_ab, with A_ba = -A_ab
      const auto kb = grid.kd(b), ka = grid.kd(a);
      for (std::size_t i = 0; i < N; ++i) {
        out.H[a][i] += kI * kb[i] * A[i];
        out.H[b][i] -= kI * ka[i] * A[i];
      }
    }
  }
  return out;
}

const CompressibleSolver::Propagator& CompressibleSolver::propagator(double tau) {
  for (const auto& c : cache_) {
    if (c.tau == tau) return c;
  }
  Propagator& pr = cache_[next_slot_];
  next_slot_ = 1 - next_slot_;

  const std::size_t N = grid_.size();
  pr.tau = tau;
  pr.e00.assign(N, 1.0);
  pr.e01.assign(N, 0.0);
  pr.e10.assign(N, 0.0);
  pr.e11.assign(N, 1.0);
  pr.transverse.assign(N, 1.0);
  pr.magnetic.assign(N, 1.0);

  const double c2 = params_.sound_speed() * params_.sound_speed();
  const auto kd2 = grid_.kd2();
  for (std::size_t i = 0; i < N; ++i) {
    const double k2 = static_cast<double>(grid_.k2(i));
    pr.transverse[i] = std::exp(-params_.mu * k2 * tau);
    pr.magnetic[i] = std::exp(-params_.nu * k2 * tau);
    if (kd2[i] == 0.0) {
      pr.e11[i] = pr.transverse[i];
      continue;
    }
    // (r, a) with a = khat . u obeys y' = M y,
    // M = [[0, -iK], [-i c^2 K, -g]], g = mu |k|^2 + (mu + lambda) |kd|^2.
    const double K = std::sqrt(kd2[i]);
    const double g = params_.mu * k2 + (params_.mu + params_.lambda) * kd2[i];
    const double mid = -0.5 * g;
    const Complex s = std::sqrt(Complex(0.25 * g * g - c2 * K * K, 0.0));
    Complex C, S;
    if (std::abs(s * tau) < 1e-4) {
      const Complex z2 = s * s * tau * tau;
      const double em = std::exp(mid * tau);
      C = em * (1.0 + z2 / 2.0 + z2 * z2 / 24.0);
      S = em * tau * (1.0 + z2 / 6.0 + z2 * z2 / 120.0);
    } else {
      const Complex ep = std::exp((mid + s) * tau);
      const Complex emn = std::exp((mid - s) * tau);
      C = 0.5 * (ep + emn);
      S = (ep - emn) / (2.0 * s);
    }
    // exp(tau M) = C I + S (M - mid I)
    pr.e00[i] = C + S * (0.5 * g);
    pr.e01[i] = S * (-kI * K);
    pr.e10[i] = S * (-kI * c2 * K);
    pr.e11[i] = C - S * (0.5 * g);
  }
  return pr;
}

void CompressibleSolver::propagate(CompressibleState& s, double tau) {
  require_same_grid(grid_, s.grid(), "CompressibleSolver::propagate");
  const Propagator& pr = propagator(tau);
  const int d = grid_.dim();
  const auto kd2 = grid_.kd2();
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    for (int a = 0; a < d; ++a) s.H[a][i] *= pr.magnetic[i];
    if (kd2[i] == 0.0) {
      for (int a = 0; a < d; ++a) s.u[a][i] *= pr.transverse[i];
      continue;
    }
    const double K = std::sqrt(kd2[i]);
    Complex along = 0.0;
    for (int a = 0; a < d; ++a) along += grid_.kd(a)[i] / K * s.u[a][i];
    const Complex r = s.rho[i];
    const Complex r_new = pr.e00[i] * r + pr.e01[i] * along;
    const Complex a_new = pr.e10[i] * r + pr.e11[i] * along;
    for (int a = 0; a < d; ++a) {
      const double kh = grid_.kd(a)[i] / K;
      s.u[a][i] = (s.u[a][i] - kh * along) * pr.transverse[i] + kh * a_new;
    }
    s.rho[i] = r_new;
  }
}

double CompressibleSolver::cfl_number(const CompressibleState& s, double dt) {
  const double speed = max_magnitude(s.u) + max_magnitude(s.H);
  return speed * dt * s.grid().n() / (2.0 * std::numbers::pi);
}

double CompressibleSolver::step(CompressibleState& s, double dt) {
  require_same_grid(grid_, s.grid(), "CompressibleSolver::step");
  if (!(dt > 0.0)) throw Error(Errc::InvalidArgument, "time step must be positive");
  if (opt_.check_cfl) {
    const double cfl = cfl_number(s, dt);
    if (cfl > opt_.cfl_max) {
      throw Error(Errc::CflViolation, "CFL number " + std::to_string(cfl) + " exceeds " +
                                          std::to_string(opt_.cfl_max) +
                                          " (dt = " + std::to_string(dt) + ")");
    }
  }

  double dissipated = 0.0;
  auto observe = [&](const CompressibleState& y, double w) {
    dissipated += w * dt * dissipation(y, params_);
  };
  auto prop = [this](CompressibleState& y, double tau) { propagate(y, tau); };

  if (opt_.nonlinear) {
    auto nl = [this](const CompressibleState& y, double) { return nonlinear_tendency(y); };
    lawson_rk4_step(s, s.t, dt, nl, prop, observe);
  } else {
    auto zero = [](const CompressibleState& y, double) {
      CompressibleState z(y.grid());
      z.rho.set_zero();
      return z;
    };
    lawson_rk4_step(s, s.t, dt, zero, prop, observe);
  }

  s.H = leray_p(s.H);
  s.t += dt;
  check_density(s.rho);
  return dissipated;
}

CompressibleState step_compressible(const CompressibleState& s, const MhdParams& p, double dt,
                                    CompressibleOptions opt) {
  CompressibleSolver solver(s.grid(), p, opt);
  CompressibleState out = s;
  solver.step(out, dt);
  return out;
}

CompressibleState compressible_rhs(const CompressibleState& s, const MhdParams& p) {
  CompressibleSolver solver(s.grid(), p);
  CompressibleState out = solver.nonlinear_tendency(s);
  axpy(out, 1.0, solver.linear_tendency(s));
  return out;
}

double total_energy(const CompressibleState& s, const MhdParams& p) {
  const TorusGrid& grid = s.grid();
  const Samples rho = s.rho.samples();
  const double rmin = *std::min_element(rho.begin(), rho.end());
  if (!(rmin > kVacuumThreshold)) throw Error(Errc::VacuumReached, "total_energy: vacuum");
  const auto u = s.u.samples();
  const auto H = s.H.samples();
  const double coef = p.pressure_constant() / (p.eps * p.eps * (p.gamma - 1.0));
  Samples e(grid.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    double u2 = 0.0, h2 = 0.0;
    for (std::size_t a = 0; a < u.size(); ++a) {
      u2 += u[a][i] * u[a][i];
      h2 += H[a][i] * H[a][i];
    }
    e[i] = 0.5 * rho[i] * u2 + 0.5 * h2 + coef * pressure_potential(rho[i], p.gamma);
  }
  return integrate_samples(grid, e);
}

double dissipation(const CompressibleState& s, const MhdParams& p) {
  double d = 0.0;
  if (p.mu != 0.0) d += p.mu * gradient_norm_sq(s.u);
  if (p.mu + p.lambda != 0.0) d += (p.mu + p.lambda) * l2_norm_sq(divergence(s.u));
  if (p.nu != 0.0) d += p.nu * gradient_norm_sq(s.H);
  return d;
}

ScalarField pi_field(const ScalarField& rho, const MhdParams& p) {
  const Samples r = rho.samples();
  const double coef = 2.0 * p.pressure_constant() / (p.gamma - 1.0);
  Samples out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > kVacuumThreshold)) throw Error(Errc::VacuumReached, "pi_field: vacuum");
    double rad = coef * pressure_potential(r[i], p.gamma);
    if (rad < 0.0) {
      if (rad < -1e-10) {
        throw Error(Errc::NegativeRadicand, "pi_field radicand " + std::to_string(rad));
      }
      rad = 0.0;
    }
    out[i] = std::sqrt(rad) / p.eps;
  }
  return ScalarField::from_samples(rho.grid(), out);
}

}  // namespace lowmach
