#include <gtest/gtest.h>

#include <cmath>

#include "lowmach/error.hpp"
#include "lowmach/generators.hpp"
#include "lowmach/initial_data.hpp"
#include "lowmach/spectral_ops.hpp"
#include "oracles.hpp"

using namespace lowmach;
using oracle::Point;

namespace {

template <class F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::Io;
}

MhdParams with_eps(double eps) {
  MhdParams p;
  p.eps = eps;
  p.mu = p.nu = 0.1;
  return p;
}

}  // namespace

TEST(WellPreparedData, PerturbationsScaleWithEps) {
  const TorusGrid g(2, 32);
  auto [u0, H0] = orszag_tang(g);
  const CompressibleState a = gen_well_prepared(g, with_eps(0.1), u0, H0, 5);
  const CompressibleState b = gen_well_prepared(g, with_eps(0.05), u0, H0, 5);
  // same seed, so (rho - 1)/eps^2 and (u - u0)/eps coincide
  ScalarField pa = a.rho, pb = b.rho;
  pa[0] -= 1.0;
  pb[0] -= 1.0;
  EXPECT_LE(oracle::coeff_diff((1.0 / 0.01) * pa, (1.0 / 0.0025) * pb), 1e-12);
  EXPECT_LE(oracle::coeff_diff((1.0 / 0.1) * (a.u - dealias(u0)), (1.0 / 0.05) * (b.u - dealias(u0))),
            1e-12);
  EXPECT_LE(oracle::coeff_diff((1.0 / 0.1) * (a.H - dealias(H0)), (1.0 / 0.05) * (b.H - dealias(H0))),
            1e-12);
  EXPECT_LE(divergence_residual(a.H), 1e-12);
}

TEST(WellPreparedData, HypothesesHoldWithStableConstant) {
  const TorusGrid g(2, 32);
  auto [u0, H0] = orszag_tang(g);
  std::vector<double> ratio;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    const MhdParams p = with_eps(eps);
    const CompressibleState s = gen_well_prepared(g, p, u0, H0, 11);
    const HypothesisReport rep = check_well_prepared(s, p, u0, H0);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.violations(), 0u);
    ratio.push_back(l2_norm_sq(s.u - u0) / (eps * eps));
  }
  for (double r : ratio) EXPECT_NEAR(r / ratio.front(), 1.0, 0.2);
}

TEST(WellPreparedData, DeterministicPerSeed) {
  const TorusGrid g(2, 16);
  auto [u0, H0] = orszag_tang(g);
  const CompressibleState a = gen_well_prepared(g, with_eps(0.1), u0, H0, 3);
  const CompressibleState b = gen_well_prepared(g, with_eps(0.1), u0, H0, 3);
  const CompressibleState c = gen_well_prepared(g, with_eps(0.1), u0, H0, 4);
  EXPECT_EQ(oracle::coeff_diff(a.u, b.u), 0.0);
  EXPECT_GT(oracle::coeff_diff(a.u, c.u), 1e-3);
}

TEST(WellPreparedData, RejectsCompressibleBase) {
  const TorusGrid g(2, 16);
  Rng rng(2);
  auto [u0, H0] = orszag_tang(g);
  EXPECT_EQ(error_code([&] { gen_well_prepared(g, with_eps(0.1), random_gradient(g, 4, rng), H0, 1); }),
            Errc::NotSolenoidal);
}

TEST(IllPreparedData, RescaledBoundAndChecks) {
  const TorusGrid g(2, 32);
  auto [u0, H0] = orszag_tang(g);
  Rng r1(21), r2(22);
  const ScalarField phi = random_scalar(g, 9, r1);
  const VectorField ut = u0 + random_gradient(g, 9, r2);
  for (double eps : {0.2, 0.1, 0.05}) {
    const MhdParams p = with_eps(eps);
    const IllPreparedData d = gen_ill_prepared(g, p, phi, ut, H0, 1.0, 8);
    EXPECT_LT(d.scale, 1.0);
    const double size = sobolev_norm(d.V0.phi, 2.0) + sobolev_norm(d.V0.m, 2.0);
    EXPECT_LE(size, 1.0 * p.nu);
    EXPECT_NEAR(size, p.nu, 1e-9);
    EXPECT_NO_THROW(validate_osc(d.V0));
    const HypothesisReport rep = check_ill_prepared(d, p, H0, 1.0);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.satisfied()) << c.name << " " << c.value << " > " << c.bound;
  }
}

TEST(IllPreparedData, NoProfileReducesToIncompressibleStart) {
  const TorusGrid g(2, 16);
  auto [u0, H0] = orszag_tang(g);
  const IllPreparedData d = gen_ill_prepared(g, with_eps(0.1), ScalarField(g), u0, H0, 1.0, 8);
  EXPECT_EQ(d.scale, 1.0);
  EXPECT_EQ(osc_norm_sq(d.V0), 0.0);
  ScalarField dev = d.state.rho;
  dev[0] -= 1.0;
  EXPECT_EQ(oracle::coeff_max(dev), 0.0);
  EXPECT_LE(oracle::coeff_diff(d.state.u, dealias(u0)), 1e-14);
}

TEST(IllPreparedData, PiApproachesScaledProfile) {
  const TorusGrid g(2, 32);
  auto [u0, H0] = orszag_tang(g);
  Rng r1(23);
  const ScalarField phi = random_scalar(g, 5, r1);
  std::vector<double> gaps;
  for (double eps : {0.2, 0.1, 0.05}) {
    // for gamma = 2 the gap vanishes identically
    MhdParams p = with_eps(eps);
    p.gamma = 1.4;
    const IllPreparedData d = gen_ill_prepared(g, p, phi, u0, H0, 1.0, 8);
    for (const auto& c : check_ill_prepared(d, p, H0, 1.0).checks) {
      if (c.name.rfind("|Pi0", 0) == 0) gaps.push_back(c.value);
    }
  }
  ASSERT_EQ(gaps.size(), 3u);
  // the gap is quadratic in eps phi0
  EXPECT_NEAR(gaps[0] / gaps[1], 4.0, 0.5);
  EXPECT_NEAR(gaps[1] / gaps[2], 4.0, 0.5);
}

TEST(IllPreparedData, ErrorPaths) {
  const TorusGrid g(2, 16);
  auto [u0, H0] = orszag_tang(g);
  const ScalarField deep =
      ScalarField::from_function(g, [](const Point& x) { return -5.0 * std::cos(x[0]); });
  MhdParams p = with_eps(0.5);
  p.nu = 1.0;
  EXPECT_EQ(error_code([&] { gen_ill_prepared(g, p, deep, u0, H0, 1000.0, 1); }), Errc::VacuumReached);

  VectorField shifted = H0;
  shifted[0][0] = 0.3;
  EXPECT_EQ(error_code([&] { gen_ill_prepared(g, p, ScalarField(g), u0, shifted, 1.0, 1); }),
            Errc::MeanViolation);
  ScalarField lifted(g);
  lifted[0] = 0.2;
  EXPECT_EQ(error_code([&] { gen_ill_prepared(g, p, lifted, u0, H0, 1.0, 1); }), Errc::MeanViolation);
  EXPECT_EQ(error_code([&] { gen_ill_prepared(g, p, ScalarField(g), u0, H0, 0.0, 1); }),
            Errc::InvalidArgument);
}
