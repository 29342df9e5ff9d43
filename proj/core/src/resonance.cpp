#include "lowmach/resonance.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "lowmach/error.hpp"
#include "lowmach/spectral_ops.hpp"

namespace lowmach {

namespace {

constexpr Complex kI{0.0, 1.0};

double dot(const Wavevector& a, const Wavevector& b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += static_cast<double>(a[static_cast<std::size_t>(i)]) *
                                   b[static_cast<std::size_t>(i)];
  return s;
}

std::int64_t norm2(const Wavevector& a) {
  return static_cast<std::int64_t>(a[0]) * a[0] + static_cast<std::int64_t>(a[1]) * a[1] +
         static_cast<std::int64_t>(a[2]) * a[2];
}

int sign(int x) { return (x > 0) - (x < 0); }

}  // namespace

OscVector q1_form(const VectorField& v, const OscVector& V) {
  require_same_grid(v.grid(), V.grid(), "q1_form");
  require_solenoidal(v, "transport velocity");
  const TorusGrid& grid = V.grid();
  const int d = grid.dim();
  const Characteristics c = to_characteristics(V);
  Characteristics out{std::vector<Complex>(grid.size()), std::vector<Complex>(grid.size())};

  for (const auto& [k2, shell] : grid.mask_shells()) {
    const double K = std::sqrt(static_cast<double>(k2));
    for (const std::size_t ki : shell) {
      const Wavevector k = grid.wavevector(ki);
      Complex acc_p = 0.0, acc_m = 0.0;
      for (const std::size_t mi : shell) {
        const Wavevector m = grid.wavevector(mi);
        const auto ji = grid.index_of({k[0] - m[0], k[1] - m[1], k[2] - m[2]});
        if (!ji) continue;
        Complex kh_vj = 0.0, k_vj = 0.0;
        for (int a = 0; a < d; ++a) {
          const Complex va = v[a][*ji];
          k_vj += static_cast<double>(k[static_cast<std::size_t>(a)]) * va;
        }
        kh_vj = k_vj / K;
        // m and k share the norm K.
        const double k_mh = dot(k, m, d) / K;
        const double kh_mh = k_mh / K;
        const Complex coef = 0.5 * kI * (kh_vj * k_mh + kh_mh * k_vj);
        acc_p += coef * c.plus[mi];
        acc_m += coef * c.minus[mi];
      }
      out.plus[ki] = acc_p;
      out.minus[ki] = acc_m;
    }
  }
  return from_characteristics(grid, out);
}

OscVector q2_form(const OscVector& V1, const OscVector& V2, double gamma) {
  require_same_grid(V1.grid(), V2.grid(), "q2_form");
  validate_osc(V1, 1e-10);
  validate_osc(V2, 1e-10);
  const TorusGrid& grid = V1.grid();
  const int cut = grid.mask_cutoff();
  const double g = 0.5 * (gamma - 1.0);
  const Characteristics c1 = to_characteristics(V1);
  const Characteristics c2 = to_characteristics(V2);
  Characteristics out{std::vector<Complex>(grid.size()), std::vector<Complex>(grid.size())};

  auto in_mask = [cut](const Wavevector& w) {
    return std::abs(w[0]) <= cut && std::abs(w[1]) <= cut && std::abs(w[2]) <= cut;
  };
  auto amp = [](const Characteristics& c, int s, std::size_t i) {
    return s > 0 ? c.plus[i] : c.minus[i];
  };

  for (const std::size_t ki : grid.mask_indices()) {
    const std::int64_t C = grid.k2(ki);
    if (C == 0) continue;
    const Wavevector k = grid.wavevector(ki);
    const int kint = std::gcd(std::gcd(std::abs(k[0]), std::abs(k[1])), std::abs(k[2]));
    const Wavevector p{k[0] / kint, k[1] / kint, k[2] / kint};
    const int pmax = std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
    const int tmax = cut / pmax;
    const double K = std::sqrt(static_cast<double>(C));

    Complex acc[2] = {0.0, 0.0};  // [0] minus, [1] plus
    for (int t = -tmax; t <= tmax; ++t) {
      if (t == 0 || t == kint) continue;
      const Wavevector m{t * p[0], t * p[1], t * p[2]};
      const Wavevector n{k[0] - m[0], k[1] - m[1], k[2] - m[2]};
      if (!in_mask(n)) continue;
      const std::int64_t A = norm2(m), B = norm2(n), D = C - A - B;
      if (D * D != 4 * A * B) continue;
      const std::size_t mi = *grid.index_of(m);
      const std::size_t ni = *grid.index_of(n);
      const double kh_mh = sign(t);
      const double kh_nh = sign(kint - t);
      // Resonant sign triples (s1, s2, s3) of s1|m| + s2|n| = s3|k|.
      int sets[2][3];
      if (D > 0) {
        sets[0][0] = 1; sets[0][1] = 1; sets[0][2] = 1;
        sets[1][0] = -1; sets[1][1] = -1; sets[1][2] = -1;
      } else if (A > B) {
        sets[0][0] = 1; sets[0][1] = -1; sets[0][2] = 1;
        sets[1][0] = -1; sets[1][1] = 1; sets[1][2] = -1;
      } else {
        sets[0][0] = -1; sets[0][1] = 1; sets[0][2] = 1;
        sets[1][0] = 1; sets[1][1] = -1; sets[1][2] = -1;
      }
      for (const auto& s : sets) {
        const double w = s[0] * s[1] * kh_mh * kh_nh + g;
        acc[s[2] > 0 ? 1 : 0] +=
            static_cast<double>(s[2]) * w * amp(c1, s[0], mi) * amp(c2, s[1], ni);
      }
    }
    out.plus[ki] = 0.5 * kI * K * acc[1];
    out.minus[ki] = 0.5 * kI * K * acc[0];
  }
  return from_characteristics(grid, out);
}

OscVector averaged_laplacian(const OscVector& V, double theta) {
  const TorusGrid& grid = V.grid();
  const Characteristics c = to_characteristics(V);
  Characteristics out{std::vector<Complex>(grid.size()), std::vector<Complex>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double k2 = static_cast<double>(grid.k2(i));
    if (k2 == 0.0) continue;
    // Output sign s3 pairs with input sign s1 only when s3 |k| = s1 |k|.
    for (int s3 : {1, -1}) {
      Complex acc = 0.0;
      for (int s1 : {1, -1}) {
        if (s3 != s1) continue;
        acc += static_cast<double>(s3 * s1) * (-theta * k2) * 0.5 * (s1 > 0 ? c.plus[i] : c.minus[i]);
      }
      (s3 > 0 ? out.plus[i] : out.minus[i]) = acc;
    }
  }
  return from_characteristics(grid, out);
}

double averaged_laplacian_check(const OscVector& V, double theta) {
  validate_osc(V);
  const OscVector avg = averaged_laplacian(V, theta);
  OscVector lap(laplacian(V.phi), laplacian(V.m));
  const double denom = std::sqrt(osc_norm_sq(lap));
  if (denom == 0.0) return 0.0;
  OscVector diff = avg;
  axpy(diff, -0.5 * theta, lap);
  return std::sqrt(osc_norm_sq(diff)) / denom;
}

}  // namespace lowmach
