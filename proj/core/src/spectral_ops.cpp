#include "lowmach/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

#include "lowmach/error.hpp"

namespace lowmach {

namespace {

constexpr Complex kI{0.0, 1.0};

ScalarField derivative(const ScalarField& f, int axis) {
  ScalarField out(f.grid());
  const auto kd = f.grid().kd(axis);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = kI * kd[i] * f[i];
  return out;
}

}  // namespace

VectorField gradient(const ScalarField& f) {
  VectorField g(f.grid());
  for (int a = 0; a < f.grid().dim(); ++a) g[a] = derivative(f, a);
  return g;
}

ScalarField divergence(const VectorField& v) {
  const TorusGrid& grid = v.grid();
  ScalarField out(grid);
  for (int a = 0; a < grid.dim(); ++a) {
    const auto kd = grid.kd(a);
    const auto& c = v[a];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += kI * kd[i] * c[i];
  }
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  ScalarField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = -static_cast<double>(f.grid().k2(i)) * f[i];
  }
  return out;
}

VectorField laplacian(const VectorField& v) {
  VectorField out(v.grid());
  for (int a = 0; a < v.size(); ++a) out[a] = laplacian(v[a]);
  return out;
}

VectorField curl(const VectorField& v) {
  const TorusGrid& grid = v.grid();
  if (grid.dim() != 3) throw Error(Errc::InvalidArgument, "vector curl requires a 3D grid");
  VectorField out(grid);
  const auto k0 = grid.kd(0), k1 = grid.kd(1), k2 = grid.kd(2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[0][i] = kI * (k1[i] * v[2][i] - k2[i] * v[1][i]);
    out[1][i] = kI * (k2[i] * v[0][i] - k0[i] * v[2][i]);
    out[2][i] = kI * (k0[i] * v[1][i] - k1[i] * v[0][i]);
  }
  return out;
}

ScalarField curl_2d(const VectorField& v) {
  const TorusGrid& grid = v.grid();
  if (grid.dim() != 2) throw Error(Errc::InvalidArgument, "scalar curl requires a 2D grid");
  ScalarField out(grid);
  const auto k0 = grid.kd(0), k1 = grid.kd(1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i] = kI * (k0[i] * v[1][i] - k1[i] * v[0][i]);
  }
  return out;
}

VectorField curl_2d(const ScalarField& w) {
  const TorusGrid& grid = w.grid();
  if (grid.dim() != 2) throw Error(Errc::InvalidArgument, "scalar curl requires a 2D grid");
  VectorField out(grid);
  const auto k0 = grid.kd(0), k1 = grid.kd(1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[0][i] = kI * k1[i] * w[i];
    out[1][i] = -kI * k0[i] * w[i];
  }
  return out;
}

ScalarField inverse_laplacian(const ScalarField& f) {
  double norm = 0.0;
  for (const auto& c : f.coeffs()) norm += std::norm(c);
  norm = std::sqrt(norm);
  if (std::abs(f.mean()) > 1e-12 * norm) {
    throw Error(Errc::NonZeroMean, "inverse_laplacian needs a mean-zero field");
  }
  ScalarField out(f.grid());
  for (std::size_t i = 1; i < f.size(); ++i) {
    out[i] = -f[i] / static_cast<double>(f.grid().k2(i));
  }
  return out;
}

LerayParts leray_project(const VectorField& v) {
  const TorusGrid& grid = v.grid();
  const int d = grid.dim();
  LerayParts parts{v, VectorField(grid)};
  const auto kd2 = grid.kd2();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (kd2[i] == 0.0) continue;
    Complex kdotv = 0.0;
    for (int a = 0; a < d; ++a) kdotv += grid.kd(a)[i] * v[a][i];
    const Complex s = kdotv / kd2[i];
    for (int a = 0; a < d; ++a) {
      const Complex q = grid.kd(a)[i] * s;
      parts.gradient[a][i] = q;
      parts.solenoidal[a][i] -= q;
    }
  }
  return parts;
}

VectorField leray_p(const VectorField& v) { return leray_project(v).solenoidal; }
VectorField leray_q(const VectorField& v) { return leray_project(v).gradient; }

void dealias_in_place(ScalarField& f) noexcept {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f.grid().in_mask(i)) f[i] = 0.0;
  }
}

void dealias_in_place(VectorField& v) noexcept {
  for (int a = 0; a < v.size(); ++a) dealias_in_place(v[a]);
}

ScalarField dealias(ScalarField f) {
  dealias_in_place(f);
  return f;
}

VectorField dealias(VectorField v) {
  dealias_in_place(v);
  return v;
}

ScalarField multiply_dealiased(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid(), "multiply_dealiased");
  const TorusGrid& grid = f.grid();
  const TorusGrid fine(grid.dim(), 2 * grid.n());

  auto pad = [&](const ScalarField& src) {
    ScalarField out(fine);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (auto j = fine.index_of(grid.wavevector(i))) out[*j] = src[i];
    }
    return out.samples();
  };
  const auto fs = pad(f);
  const auto gs = pad(g);
  std::vector<double> prod(fine.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = fs[i] * gs[i];
  const ScalarField fine_prod = ScalarField::from_samples(fine, prod);

  ScalarField out(grid);
  for (std::size_t i : grid.mask_indices()) {
    if (auto j = fine.index_of(grid.wavevector(i))) out[i] = fine_prod[*j];
  }
  return out;
}

double l2_norm_sq(const ScalarField& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return s * f.grid().volume();
}

double l2_norm_sq(const VectorField& v) {
  double s = 0.0;
  for (int a = 0; a < v.size(); ++a) s += l2_norm_sq(v[a]);
  return s;
}

double l2_norm(const ScalarField& f) { return std::sqrt(l2_norm_sq(f)); }
double l2_norm(const VectorField& v) { return std::sqrt(l2_norm_sq(v)); }

double l2_inner(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid(), "l2_inner");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += (f[i] * std::conj(g[i])).real();
  return s * f.grid().volume();
}

double l2_inner(const VectorField& v, const VectorField& w) {
  double s = 0.0;
  for (int a = 0; a < v.size(); ++a) s += l2_inner(v[a], w[a]);
  return s;
}

double gradient_norm_sq(const ScalarField& f) {
  double s = 0.0;
  const auto kd2 = f.grid().kd2();
  for (std::size_t i = 0; i < f.size(); ++i) s += kd2[i] * std::norm(f[i]);
  return s * f.grid().volume();
}

double gradient_norm_sq(const VectorField& v) {
  double s = 0.0;
  for (int a = 0; a < v.size(); ++a) s += gradient_norm_sq(v[a]);
  return s;
}

double sobolev_norm(const ScalarField& f, double r) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    s += std::pow(1.0 + static_cast<double>(f.grid().k2(i)), r) * std::norm(f[i]);
  }
  return std::sqrt(s * f.grid().volume());
}

double sobolev_norm(const VectorField& v, double r) {
  double s = 0.0;
  for (int a = 0; a < v.size(); ++a) {
    const double na = sobolev_norm(v[a], r);
    s += na * na;
  }
  return std::sqrt(s);
}

double integrate_samples(const TorusGrid& grid, std::span<const double> samples) {
  double s = 0.0;
  for (double x : samples) s += x;
  return s / static_cast<double>(samples.size()) * grid.volume();
}

double divergence_residual(const VectorField& v) {
  const double g = gradient_norm_sq(v);
  if (g == 0.0) return 0.0;
  return l2_norm(divergence(v)) / std::sqrt(g);
}

double conjugate_symmetry_defect(const ScalarField& f) {
  double scale = 0.0, defect = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    scale = std::max(scale, std::abs(f[i]));
    defect = std::max(defect, std::abs(f[i] - std::conj(f[f.grid().negated(i)])));
  }
  return scale == 0.0 ? 0.0 : defect / scale;
}

}  // namespace lowmach
