#include "lowmach/modulated_energy.hpp"

#include <cmath>
#include <string>

#include "lowmach/error.hpp"
#include "lowmach/spectral_ops.hpp"

namespace lowmach {

std::pair<double, double> density_deviation(const ScalarField& rho, double delta, double gamma) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(Errc::InvalidArgument, "deviation cut must lie in (0, 1)");
  }
  const auto r = rho.samples();
  std::vector<double> small(r.size()), large(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double dev = std::abs(r[i] - 1.0);
    if (dev <= delta) {
      small[i] = dev * dev;
    } else {
      large[i] = std::pow(dev, gamma);
    }
  }
  return {integrate_samples(rho.grid(), small), integrate_samples(rho.grid(), large)};
}

namespace {

ModulatedReport evaluate(const CompressibleState& cs, const IncompressibleState& is,
                         const OscVector* V0, const MhdParams& p, double time_tol,
                         double delta) {
  const TorusGrid& grid = cs.grid();
  require_same_grid(grid, is.grid(), "modulated functional");
  if (V0) require_same_grid(grid, V0->grid(), "modulated functional");
  if (std::abs(cs.t - is.t) > time_tol) {
    throw Error(Errc::TimeMismatch, "compressible time " + std::to_string(cs.t) +
                                        " vs limit time " + std::to_string(is.t));
  }

  const auto rho = cs.rho.samples();
  for (double r : rho) {
    if (!(r > kVacuumThreshold)) throw Error(Errc::VacuumReached, "modulated functional: vacuum");
  }
  const auto u = cs.u.samples();

  VectorField su(grid);
  std::vector<double> tmp(grid.size());
  for (int a = 0; a < grid.dim(); ++a) {
    const auto& ua = u[static_cast<std::size_t>(a)];
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = std::sqrt(rho[i]) * ua[i];
    su[a] = dealias(ScalarField::from_samples(grid, tmp));
  }

  ModulatedReport rep;
  rep.t = cs.t;
  const VectorField w_plain = su - is.u;
  rep.w2_uncorrected = l2_norm_sq(w_plain);
  const LerayParts parts = leray_project(su);
  rep.p_defect2 = l2_norm_sq(parts.solenoidal - is.u);
  rep.q_momentum2 = l2_norm_sq(parts.gradient);
  rep.z2 = l2_norm_sq(cs.H - is.H);

  ScalarField dev = cs.rho;
  dev[0] -= 1.0;
  rep.rho_dev_l2 = l2_norm(dev);

  const ScalarField pi = pi_field(cs.rho, p);
  if (V0) {
    const OscVector prof = wave_group_apply(*V0, cs.t / p.eps);
    rep.w2 = l2_norm_sq(w_plain - prof.m);
    rep.pi2 = l2_norm_sq(pi - prof.phi);
    ScalarField phi = dev;
    phi *= 1.0 / p.eps;
    rep.psi2_signed = l2_norm_sq(phi - prof.phi);
  } else {
    rep.w2 = rep.w2_uncorrected;
    rep.pi2 = l2_norm_sq(pi);
  }

  const auto [small, large] = density_deviation(cs.rho, delta, p.gamma);
  rep.density_small = small;
  rep.density_large = large;
  rep.energy = total_energy(cs, p);
  return rep;
}

}  // namespace

ModulatedReport well_prepared_functional(const CompressibleState& cs,
                                         const IncompressibleState& is, const MhdParams& p,
                                         double time_tol, double delta) {
  return evaluate(cs, is, nullptr, p, time_tol, delta);
}

ModulatedReport ill_prepared_functional(const CompressibleState& cs,
                                        const IncompressibleState& is, const OscVector& V0,
                                        const MhdParams& p, double time_tol, double delta) {
  return evaluate(cs, is, &V0, p, time_tol, delta);
}

}  // namespace lowmach
