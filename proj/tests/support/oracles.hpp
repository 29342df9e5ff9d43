#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these reuse the production spectral kernels for the quantity under
// test: derivatives come from finite differences of directly evaluated
// trigonometric sums, products from explicit convolution, and the resonant
// averages from brute-force time quadrature.

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "lowmach/acoustic_filter.hpp"
#include "lowmach/compressible.hpp"
#include "lowmach/field.hpp"

namespace oracle {

using Point = std::array<double, 3>;
using Fn = std::function<double(const Point&)>;

/// Evaluates sum_k c_k exp(i k.x) directly, skipping zero coefficients.
class TrigSum {
 public:
  explicit TrigSum(const lowmach::ScalarField& f);
  double operator()(const Point& x) const;

 private:
  int dim_;
  std::vector<std::array<double, 3>> k_;
  std::vector<std::complex<double>> c_;
};

/// Eighth-order central difference of fn along `axis` with step h.
double fd1(const Fn& fn, const Point& x, int axis, double h = 1e-2);
/// Eighth-order central second difference.
double fd2(const Fn& fn, const Point& x, int axis, double h = 2e-2);

/// Classical fourth-order central difference, used where only a loose
/// comparison is needed.
double fd1_fourth(const Fn& fn, const Point& x, int axis, double h = 1e-3);

/// Samples fn at the grid points.
std::vector<double> sample(const lowmach::TorusGrid& grid, const Fn& fn);

/// Coefficientwise max |a - b| over max(|a|, |b|); zero when both vanish.
double coeff_diff(const lowmach::ScalarField& a, const lowmach::ScalarField& b);
double coeff_diff(const lowmach::VectorField& a, const lowmach::VectorField& b);
/// Largest coefficient magnitude.
double coeff_max(const lowmach::ScalarField& a);
double coeff_max(const lowmach::VectorField& a);

/// Relative max-norm distance between two sample vectors.
double rel_max_diff(const std::vector<double>& a, const std::vector<double>& b);

/// Convolution of two coefficient arrays on the unbounded lattice, read back on
/// the representable modes of the grid (no wrap-around).
lowmach::ScalarField convolve(const lowmach::ScalarField& f, const lowmach::ScalarField& g);

/// Pointwise tendencies of the compressible system written in conservative
/// (momentum) form and differentiated with finite differences.
struct CompressibleFd {
  std::vector<double> drho;
  std::vector<std::vector<double>> du;
  std::vector<std::vector<double>> dH;
};
CompressibleFd compressible_fd(const lowmach::CompressibleState& s, const lowmach::MhdParams& p);

/// Finite-difference curl (2D) of the unprojected incompressible forcing plus
/// viscous terms, and the induction tendency.
struct IncompressibleFd {
  std::vector<double> curl_du;
  std::vector<std::vector<double>> dH;
};
IncompressibleFd incompressible_fd(const lowmach::VectorField& u, const lowmach::VectorField& H,
                                   double mu, double nu);

/// Right-hand side of the acoustic system for a single mode (phi, a):
/// dphi/dtau = -i K a, da/dtau = -i K phi, integrated with small-step RK4.
std::array<std::complex<double>, 2> integrate_single_mode(std::complex<double> phi,
                                                          std::complex<double> a, double K,
                                                          double tau, int steps);

/// Brute-force resonant sums over all pairs of lattice modes with
/// floating-point resonance detection.
lowmach::OscVector q1_bruteforce(const lowmach::VectorField& v, const lowmach::OscVector& V);
lowmach::OscVector q2_bruteforce(const lowmach::OscVector& V1, const lowmach::OscVector& V2,
                                 double gamma);

/// Running time averages (1/tau) int_0^tau g(s) ds of an OscVector-valued
/// integrand, evaluated by composite Gauss-Legendre quadrature and reported at
/// each requested tau (ascending).
std::vector<lowmach::OscVector> time_average(
    const lowmach::TorusGrid& grid, const std::function<lowmach::OscVector(double)>& g,
    const std::vector<double>& taus, double panel = 0.25);

/// Integrand L(-s)(0, div(v (x) W + W (x) v)) with W = L2(s)V, products
/// evaluated on a zero-padded grid and read back on the mask.
lowmach::OscVector q1_integrand(const lowmach::VectorField& v, const lowmach::OscVector& V,
                                double s);
/// Integrand of the symmetric quadratic form.
lowmach::OscVector q2_integrand(const lowmach::OscVector& V1, const lowmach::OscVector& V2,
                                double gamma, double s);
/// Integrand L(-s)(0, theta lap L2(s) V).
lowmach::OscVector laplacian_integrand(const lowmach::OscVector& V, double theta, double s);

/// ||a - b|| in the L2 norm of OscVector pairs, restricted to the mask.
double osc_distance(const lowmach::OscVector& a, const lowmach::OscVector& b);

}  // namespace oracle
