#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lowmach/error.hpp"
#include "lowmach/fft.hpp"
#include "lowmach/initial_data.hpp"
#include "lowmach/spectral_ops.hpp"
#include "oracles.hpp"

using namespace lowmach;
using oracle::coeff_diff;
using oracle::Point;

namespace {

ScalarField sin_x(const TorusGrid& g) {
  return ScalarField::from_function(g, [](const Point& x) { return std::sin(x[0]); });
}

ScalarField cos_x(const TorusGrid& g) {
  return ScalarField::from_function(g, [](const Point& x) { return std::cos(x[0]); });
}

}  // namespace

TEST(Grid, SizesAndMask) {
  const TorusGrid g2(2, 32), g3(3, 16);
  EXPECT_EQ(g2.size(), 32u * 32u);
  EXPECT_EQ(g3.size(), 16u * 16u * 16u);
  EXPECT_NEAR(g2.volume(), 4.0 * std::numbers::pi * std::numbers::pi, 1e-12);
  // |k_i| <= floor(n/3) in every direction
  EXPECT_EQ(g2.mask_indices().size(), 21u * 21u);
  EXPECT_EQ(g3.mask_indices().size(), 11u * 11u * 11u);
  for (std::size_t i = 0; i < g2.size(); ++i) {
    const auto k = g2.wavevector(i);
    EXPECT_EQ(g2.in_mask(i), std::abs(k[0]) <= 10 && std::abs(k[1]) <= 10);
    const auto nk = g2.wavevector(g2.negated(i));
    if (std::abs(k[0]) < 16 && std::abs(k[1]) < 16) {
      EXPECT_EQ(nk[0], -k[0]);
      EXPECT_EQ(nk[1], -k[1]);
    }
  }
}

TEST(Grid, RejectsBadResolution) {
  EXPECT_THROW(TorusGrid(2, 12), Error);
  EXPECT_THROW(TorusGrid(4, 16), Error);
}

TEST(Transform, RoundTripAndConjugateSymmetry) {
  for (const auto& g : {TorusGrid(2, 32), TorusGrid(3, 16)}) {
    Rng rng(3);
    std::vector<double> s(g.size());
    for (auto& x : s) x = rng.uniform(-1.0, 1.0);
    const ScalarField f = ScalarField::from_samples(g, s);
    EXPECT_LE(oracle::rel_max_diff(f.samples(), s), 1e-12);
    EXPECT_LE(conjugate_symmetry_defect(f), 1e-12);
  }
}

TEST(Transform, Parseval) {
  const TorusGrid g(2, 32);
  Rng rng(4);
  std::vector<double> s(g.size());
  for (auto& x : s) x = rng.uniform(-1.0, 1.0);
  const ScalarField f = ScalarField::from_samples(g, s);
  std::vector<double> sq(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) sq[i] = s[i] * s[i];
  const double physical = integrate_samples(g, sq);
  EXPECT_NEAR(l2_norm_sq(f) / physical, 1.0, 1e-12);
}

TEST(Gradient, SingleModeAndConstant) {
  const TorusGrid g(2, 16);
  const VectorField gr = gradient(sin_x(g));
  EXPECT_LE(coeff_diff(gr[0], cos_x(g)), 1e-14);
  EXPECT_LE(oracle::coeff_max(gr[1]), 1e-15);

  const ScalarField c = ScalarField::from_function(g, [](const Point&) { return 3.5; });
  EXPECT_LE(oracle::coeff_max(gradient(c)), 1e-15);
}

TEST(Gradient, MatchesFourthOrderDifferences) {
  const TorusGrid g(2, 64);
  Rng rng(5);
  const ScalarField f = random_scalar(g, 50, rng);
  const oracle::TrigSum ts(f);
  const VectorField gr = gradient(f);
  for (int a = 0; a < 2; ++a) {
    const auto fd = oracle::sample(g, [&](const Point& x) { return oracle::fd1_fourth(ts, x, a); });
    EXPECT_LE(oracle::rel_max_diff(gr[a].samples(), fd), 1e-6);
  }
}

TEST(Divergence, SingleModeAndCurl) {
  const TorusGrid g(2, 16);
  const ScalarField d = divergence(gradient(sin_x(g)));
  EXPECT_LE(coeff_diff(d, -1.0 * sin_x(g)), 1e-14);

  Rng rng(6);
  const ScalarField psi = random_scalar(g, 20, rng);
  const VectorField v = curl_2d(psi);
  EXPECT_LE(oracle::coeff_max(divergence(v)), 1e-12 * oracle::coeff_max(v));
}

TEST(Divergence, MatchesFiniteDifferences) {
  const TorusGrid g(2, 64);
  Rng rng(7);
  const VectorField v = random_vector(g, 40, rng);
  const oracle::TrigSum v0(v[0]), v1(v[1]);
  const auto fd = oracle::sample(g, [&](const Point& x) {
    return oracle::fd1_fourth(v0, x, 0) + oracle::fd1_fourth(v1, x, 1);
  });
  EXPECT_LE(oracle::rel_max_diff(divergence(v).samples(), fd), 1e-6);
}

TEST(Laplacian, SingleModeAndCurlCurlIdentity) {
  const TorusGrid g2(2, 16);
  EXPECT_LE(coeff_diff(laplacian(sin_x(g2)), -1.0 * sin_x(g2)), 1e-14);

  const TorusGrid g(3, 16);
  Rng rng(8);
  const VectorField H = random_vector(g, 12, rng);
  const VectorField lhs = curl(curl(H));
  const VectorField rhs = gradient(divergence(H)) - laplacian(H);
  EXPECT_LE(coeff_diff(lhs, rhs), 1e-10);

  const VectorField h2 = random_vector(g2, 12, rng);
  EXPECT_LE(coeff_diff(curl_2d(curl_2d(h2)), gradient(divergence(h2)) - laplacian(h2)), 1e-10);
}

TEST(Curl, OfGradientVanishes) {
  const TorusGrid g(3, 16);
  Rng rng(9);
  const VectorField gr = gradient(random_scalar(g, 12, rng));
  EXPECT_LE(oracle::coeff_max(curl(gr)), 1e-12 * oracle::coeff_max(gr));
  const TorusGrid g2(2, 16);
  const VectorField gr2 = gradient(random_scalar(g2, 12, rng));
  EXPECT_LE(oracle::coeff_max(curl_2d(gr2)), 1e-12 * oracle::coeff_max(gr2));
}

TEST(Operators, MatchEighthOrderDifferencesToTenDigits) {
  for (const auto& g : {TorusGrid(2, 32), TorusGrid(3, 16)}) {
    Rng rng(10);
    const ScalarField f = random_scalar(g, 8, rng);
    const oracle::TrigSum ts(f);
    const VectorField gr = gradient(f);
    double lap_fd_max = 0.0;
    std::vector<double> lap_fd(g.size(), 0.0);
    for (int a = 0; a < g.dim(); ++a) {
      const auto fd = oracle::sample(g, [&](const Point& x) { return oracle::fd1(ts, x, a); });
      EXPECT_LE(oracle::rel_max_diff(gr[a].samples(), fd), 1e-10);
      const auto fd2 = oracle::sample(g, [&](const Point& x) { return oracle::fd2(ts, x, a); });
      for (std::size_t i = 0; i < g.size(); ++i) lap_fd[i] += fd2[i];
    }
    for (double x : lap_fd) lap_fd_max = std::max(lap_fd_max, std::abs(x));
    EXPECT_GT(lap_fd_max, 0.0);
    EXPECT_LE(oracle::rel_max_diff(laplacian(f).samples(), lap_fd), 1e-10);
  }
}

TEST(Operators, Commute) {
  const TorusGrid g(3, 16);
  Rng rng(11);
  const VectorField v = random_vector(g, 12, rng);
  EXPECT_LE(coeff_diff(divergence(laplacian(v)), laplacian(divergence(v))), 1e-12);
  EXPECT_LE(coeff_diff(curl(laplacian(v)), laplacian(curl(v))), 1e-12);
}

TEST(InverseLaplacian, ClosedFormsAndInverse) {
  const TorusGrid g(2, 16);
  EXPECT_LE(coeff_diff(inverse_laplacian(-1.0 * sin_x(g)), sin_x(g)), 1e-14);

  const ScalarField f = ScalarField::from_function(
      g, [](const Point& x) { return -2.0 * std::sin(x[0]) * std::sin(x[1]); });
  const ScalarField expect = ScalarField::from_function(
      g, [](const Point& x) { return std::sin(x[0]) * std::sin(x[1]); });
  EXPECT_LE(coeff_diff(inverse_laplacian(f), expect), 1e-14);

  Rng rng(12);
  const ScalarField r = random_scalar(g, 20, rng);
  const ScalarField back = laplacian(inverse_laplacian(r));
  EXPECT_LE(coeff_diff(back, r), 1e-12);
  EXPECT_EQ(inverse_laplacian(r).mean(), Complex{});
}

TEST(InverseLaplacian, RejectsMean) {
  const TorusGrid g(2, 16);
  ScalarField f = sin_x(g);
  f[0] = 0.5;
  try {
    inverse_laplacian(f);
    FAIL() << "expected NonZeroMean";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonZeroMean);
  }
}

TEST(Leray, GradientAndSolenoidalInputs) {
  const TorusGrid g(2, 16);
  Rng rng(13);
  const VectorField gr = gradient(random_scalar(g, 20, rng));
  auto parts = leray_project(gr);
  EXPECT_LE(oracle::coeff_max(parts.solenoidal), 1e-14 * oracle::coeff_max(gr));
  EXPECT_LE(coeff_diff(parts.gradient, gr), 1e-14);

  const VectorField sol = random_solenoidal(g, 20, rng);
  parts = leray_project(sol);
  EXPECT_LE(coeff_diff(parts.solenoidal, sol), 1e-14);
  EXPECT_LE(oracle::coeff_max(parts.gradient), 1e-14 * oracle::coeff_max(sol));
}

TEST(Leray, RecoversConstructedSummands) {
  const TorusGrid g(2, 16);
  const VectorField q = VectorField::from_function(
      g, [](const Point& x) { return Point{std::cos(x[0]), 0.0, 0.0}; });
  // psi = sin x cos y, (-d2 psi, d1 psi)
  const VectorField p = VectorField::from_function(g, [](const Point& x) {
    return Point{std::sin(x[0]) * std::sin(x[1]), std::cos(x[0]) * std::cos(x[1]), 0.0};
  });
  const auto parts = leray_project(q + p);
  EXPECT_LE(coeff_diff(parts.gradient, q), 1e-12);
  EXPECT_LE(coeff_diff(parts.solenoidal, p), 1e-12);
}

TEST(Leray, ProjectorAlgebra) {
  for (const auto& g : {TorusGrid(2, 32), TorusGrid(3, 16)}) {
    Rng rng(14);
    VectorField v = random_vector(g, 30, rng);
    for (int a = 0; a < g.dim(); ++a) v[a][0] = 0.25 * (a + 1);
    const auto parts = leray_project(v);
    EXPECT_LE(coeff_diff(parts.solenoidal + parts.gradient, v), 1e-15);
    EXPECT_LE(coeff_diff(leray_p(parts.solenoidal), parts.solenoidal), 1e-12);
    EXPECT_LE(coeff_diff(leray_q(parts.gradient), parts.gradient), 1e-12);
    EXPECT_LE(oracle::coeff_max(leray_p(parts.gradient)), 1e-12 * oracle::coeff_max(v));
    EXPECT_LE(divergence_residual(parts.solenoidal), 1e-12);
    if (g.dim() == 3) {
      EXPECT_LE(oracle::coeff_max(curl(parts.gradient)), 1e-12 * oracle::coeff_max(v));
    } else {
      EXPECT_LE(oracle::coeff_max(curl_2d(parts.gradient)), 1e-12 * oracle::coeff_max(v));
    }
    // the mean belongs to P
    for (int a = 0; a < g.dim(); ++a) {
      EXPECT_EQ(parts.solenoidal[a][0], v[a][0]);
      EXPECT_EQ(parts.gradient[a][0], Complex{});
    }
  }
}

TEST(Dealias, MaskedFieldsAreFixedPoints) {
  const TorusGrid g(2, 32);
  Rng rng(15);
  const ScalarField inside = random_scalar(g, 50, rng);
  EXPECT_EQ(coeff_diff(dealias(inside), inside), 0.0);

  std::vector<double> s(g.size());
  for (auto& x : s) x = rng.uniform(-1.0, 1.0);
  const ScalarField f = ScalarField::from_samples(g, s);
  const ScalarField once = dealias(f);
  EXPECT_EQ(coeff_diff(dealias(once), once), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.in_mask(i)) EXPECT_EQ(once[i], Complex{});
  }
}

TEST(Dealias, ProductOfHighModesMatchesConvolution) {
  const TorusGrid g(2, 32);
  const int m = g.n() / 2 - 1;
  const ScalarField f = ScalarField::from_function(
      g, [m](const Point& x) { return std::sin(m * x[0]); });
  const ScalarField prod = multiply_dealiased(f, f);
  const ScalarField exact = dealias(oracle::convolve(f, f));
  double err = 0.0;
  for (std::size_t i : g.mask_indices()) err = std::max(err, std::abs(prod[i] - exact[i]));
  EXPECT_LE(err, 1e-10);
  EXPECT_NEAR(prod[0].real(), 0.5, 1e-12);

  // A naive product on the same grid aliases cos(2 m x) onto a retained mode.
  auto fs = f.samples();
  for (auto& x : fs) x *= x;
  const ScalarField naive = dealias(ScalarField::from_samples(g, fs));
  EXPECT_GT(coeff_diff(naive, exact), 0.1);
}

TEST(Dealias, RandomProductsMatchConvolution) {
  const TorusGrid g(3, 16);
  Rng rng(16);
  const ScalarField a = random_scalar(g, 27, rng);
  const ScalarField b = random_scalar(g, 27, rng);
  EXPECT_LE(coeff_diff(multiply_dealiased(a, b), dealias(oracle::convolve(a, b))), 1e-12);
}

TEST(Norms, SobolevAndGradient) {
  const TorusGrid g(2, 16);
  const double vol = g.volume();
  const ScalarField f = sin_x(g);
  EXPECT_NEAR(l2_norm_sq(f), 0.5 * vol, 1e-12);
  EXPECT_NEAR(gradient_norm_sq(f), 0.5 * vol, 1e-12);
  EXPECT_NEAR(sobolev_norm(f, 2.0), std::sqrt(0.5 * vol) * 2.0, 1e-12);
}
