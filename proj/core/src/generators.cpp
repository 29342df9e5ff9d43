#include "lowmach/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lowmach/error.hpp"
#include "lowmach/incompressible.hpp"
#include "lowmach/initial_data.hpp"
#include "lowmach/modulated_energy.hpp"
#include "lowmach/spectral_ops.hpp"

namespace lowmach {

namespace {

constexpr std::int64_t kPerturbationK2 = 8;
constexpr double kPerturbationSup = 0.5;

enum Stream : std::uint64_t { kPsi = 1, kZeta = 2, kXi = 3 };

VectorField sqrt_rho_u(const CompressibleState& s) {
  const TorusGrid& grid = s.grid();
  const auto rho = s.rho.samples();
  const auto u = s.u.samples();
  VectorField out(grid);
  std::vector<double> tmp(grid.size());
  for (int a = 0; a < grid.dim(); ++a) {
    for (std::size_t i = 0; i < tmp.size(); ++i) {
      tmp[i] = std::sqrt(std::max(rho[i], 0.0)) * u[static_cast<std::size_t>(a)][i];
    }
    out[a] = dealias(ScalarField::from_samples(grid, tmp));
  }
  return out;
}

VectorField magnetic_perturbation(const TorusGrid& grid, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kXi));
  VectorField xi = random_solenoidal(grid, kPerturbationK2, rng);
  scale_to_sup(xi, kPerturbationSup);
  return xi;
}

double min_sample(const ScalarField& f) {
  const auto s = f.samples();
  return *std::min_element(s.begin(), s.end());
}

}  // namespace

std::size_t HypothesisReport::violations() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.satisfied(); }));
}

double hypothesis_constant(const TorusGrid& grid) { return grid.volume(); }

CompressibleState gen_well_prepared(const TorusGrid& grid, const MhdParams& p,
                                    const VectorField& u0, const VectorField& H0,
                                    std::uint64_t seed) {
  p.validate(grid.dim());
  require_same_grid(grid, u0.grid(), "gen_well_prepared");
  require_same_grid(grid, H0.grid(), "gen_well_prepared");
  require_solenoidal(u0, "u0");
  require_solenoidal(H0, "H0");

  Rng rpsi(derive_seed(seed, kPsi));
  ScalarField psi = random_scalar(grid, kPerturbationK2, rpsi);
  scale_to_sup(psi, kPerturbationSup);
  Rng rzeta(derive_seed(seed, kZeta));
  VectorField zeta = random_vector(grid, kPerturbationK2, rzeta);
  scale_to_sup(zeta, kPerturbationSup);
  const VectorField xi = magnetic_perturbation(grid, seed);

  CompressibleState s(grid);
  s.rho.axpy(p.eps * p.eps, psi);
  s.u = dealias(u0);
  s.u.axpy(p.eps, zeta);
  s.H = dealias(H0);
  s.H.axpy(p.eps, xi);
  check_density(s.rho);
  return s;
}

HypothesisReport check_well_prepared(const CompressibleState& s, const MhdParams& p,
                                     const VectorField& u0, const VectorField& H0,
                                     double delta) {
  const TorusGrid& grid = s.grid();
  const double C = hypothesis_constant(grid);
  const double eps = p.eps;
  HypothesisReport rep;
  const auto [small, large] = density_deviation(s.rho, delta, p.gamma);
  rep.checks.push_back({"density deviation <= C eps^2", small + large, C * eps * eps});
  rep.checks.push_back(
      {"|sqrt(rho) u - u0|^2 <= C eps", l2_norm_sq(sqrt_rho_u(s) - u0), C * eps});
  rep.checks.push_back({"|H - H0|^2 <= C eps", l2_norm_sq(s.H - H0), C * eps});
  rep.checks.push_back({"rho > 0", -min_sample(s.rho), -kVacuumThreshold});
  rep.checks.push_back({"div H = 0", divergence_residual(s.H), kSolenoidalTolerance});
  rep.checks.push_back({"div u0 = 0", divergence_residual(u0), kSolenoidalTolerance});
  rep.checks.push_back({"div H0 = 0", divergence_residual(H0), kSolenoidalTolerance});
  return rep;
}

IllPreparedData gen_ill_prepared(const TorusGrid& grid, const MhdParams& p,
                                 const ScalarField& phi0, const VectorField& u_tilde0,
                                 const VectorField& H0, double c0, std::uint64_t seed) {
  p.validate(grid.dim());
  require_same_grid(grid, phi0.grid(), "gen_ill_prepared");
  require_same_grid(grid, u_tilde0.grid(), "gen_ill_prepared");
  require_same_grid(grid, H0.grid(), "gen_ill_prepared");
  if (!(c0 > 0.0)) throw Error(Errc::InvalidArgument, "c0 must be positive");
  if (!(p.nu > 0.0)) throw Error(Errc::InvalidArgument, "ill-prepared data needs nu > 0");
  require_solenoidal(H0, "H0");
  const double tol = 1e-12;
  for (int a = 0; a < grid.dim(); ++a) {
    if (std::abs(H0[a].mean()) > tol * std::max(1.0, l2_norm(H0))) {
      throw Error(Errc::MeanViolation, "H0 must have zero mean");
    }
  }
  if (std::abs(phi0.mean()) > tol * std::max(1.0, l2_norm(phi0))) {
    throw Error(Errc::MeanViolation, "phi0 must have zero mean");
  }

  const LerayParts parts = leray_project(dealias(u_tilde0));
  ScalarField phi = dealias(phi0);
  phi.remove_mean();
  VectorField q = parts.gradient;
  const double size = sobolev_norm(phi, 2.0) + sobolev_norm(q, 2.0);
  const double cap = c0 * p.nu;
  double scale = 1.0;
  if (size > cap) {
    // Land slightly inside the cap so rounding cannot push it over.
    scale = cap / size * (1.0 - 1e-12);
    phi *= scale;
    q *= scale;
  }

  CompressibleState s(grid);
  s.rho.axpy(p.eps, phi);
  const double rmin = min_sample(s.rho);
  if (!(rmin > kVacuumThreshold)) {
    throw Error(Errc::VacuumReached, "1 + eps phi0 has minimum " + std::to_string(rmin));
  }
  VectorField ut = parts.solenoidal + q;
  s.u = ut;
  s.H = dealias(H0);
  s.H.axpy(p.eps, magnetic_perturbation(grid, seed));

  OscVector V0(phi, q);
  return IllPreparedData{std::move(s), std::move(phi), std::move(ut), std::move(V0), scale};
}

HypothesisReport check_ill_prepared(const IllPreparedData& data, const MhdParams& p,
                                    const VectorField& H0, double c0) {
  const CompressibleState& s = data.state;
  const TorusGrid& grid = s.grid();
  const double C = hypothesis_constant(grid);
  const double eps = p.eps;
  HypothesisReport rep;
  const double size = sobolev_norm(data.V0.phi, 2.0) + sobolev_norm(data.V0.m, 2.0);
  rep.checks.push_back({"|phi0|_H2 + |Q u_tilde0|_H2 <= c0 nu", size, c0 * p.nu});
  double mean = 0.0;
  for (int a = 0; a < grid.dim(); ++a) mean += std::abs(H0[a].mean());
  rep.checks.push_back({"mean of H0 = 0", mean, 1e-12});
  rep.checks.push_back({"mean of phi0 = 0", std::abs(data.phi0.mean()), 1e-12});
  rep.checks.push_back({"rho > 0", -min_sample(s.rho), -kVacuumThreshold});
  rep.checks.push_back({"div H = 0", divergence_residual(s.H), kSolenoidalTolerance});
  rep.checks.push_back(
      {"|sqrt(rho) u - u_tilde0|^2 <= C eps", l2_norm_sq(sqrt_rho_u(s) - data.u_tilde0), C * eps});
  rep.checks.push_back({"|H - H0|^2 <= C eps", l2_norm_sq(s.H - H0), C * eps});

  // Pi at t = 0 against sqrt(a gamma) |phi0| sampled pointwise.
  const double amp = std::sqrt(p.pressure_constant() * p.gamma);
  const auto phi = data.phi0.samples();
  std::vector<double> absphi(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) absphi[i] = amp * std::abs(phi[i]);
  const ScalarField pi = pi_field(s.rho, p);
  const double gap = l2_norm_sq(pi - ScalarField::from_samples(grid, absphi));
  rep.checks.push_back({"|Pi0 - c |phi0||^2 <= C eps", gap, C * eps});
  return rep;
}

}  // namespace lowmach
