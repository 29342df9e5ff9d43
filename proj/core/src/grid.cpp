#include "lowmach/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lowmach/error.hpp"

namespace lowmach {

namespace {

int wavenumber_of(int i, int n) { return i < n / 2 ? i : i - n; }

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

TorusGrid::TorusGrid(int dim, int n) : dim_(dim), n_(n), size_(1) {
  if (dim != 2 && dim != 3) {
    throw Error(Errc::InvalidArgument, "grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (!is_power_of_two(n) || n < 4) {
    throw Error(Errc::InvalidArgument,
                "points per dimension must be a power of two >= 4, got " + std::to_string(n));
  }
  for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(n);

  auto t = std::make_shared<Tables>();
  for (int a = 0; a < 3; ++a) t->kd[static_cast<std::size_t>(a)].assign(size_, 0.0);
  t->kd2.assign(size_, 0.0);
  t->k2.assign(size_, 0);
  t->mask.assign(size_, 0);
  t->neg.assign(size_, 0);

  const int cutoff = n / 3;
  for (std::size_t idx = 0; idx < size_; ++idx) {
    std::size_t rem = idx;
    std::array<int, 3> i{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
      i[static_cast<std::size_t>(a)] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    bool retained = true;
    std::size_t neg = 0;
    for (int a = 0; a < dim; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      const int k = wavenumber_of(i[ua], n);
      const double kd = (2 * std::abs(k) == n) ? 0.0 : static_cast<double>(k);
      t->kd[ua][idx] = kd;
      t->kd2[idx] += kd * kd;
      t->k2[idx] += static_cast<std::int64_t>(k) * k;
      retained = retained && std::abs(k) <= cutoff;
      neg = neg * static_cast<std::size_t>(n) + static_cast<std::size_t>((n - i[ua]) % n);
    }
    t->neg[idx] = neg;
    if (retained) {
      t->mask[idx] = 1;
      t->mask_indices.push_back(idx);
      if (t->k2[idx] != 0) t->shells[t->k2[idx]].push_back(idx);
    }
  }
  tables_ = std::move(t);
}

double TorusGrid::spacing() const noexcept { return 2.0 * std::numbers::pi / n_; }

double TorusGrid::volume() const noexcept { return std::pow(2.0 * std::numbers::pi, dim_); }

Wavevector TorusGrid::wavevector(std::size_t idx) const noexcept {
  Wavevector k{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    k[static_cast<std::size_t>(a)] =
        wavenumber_of(static_cast<int>(idx % static_cast<std::size_t>(n_)), n_);
    idx /= static_cast<std::size_t>(n_);
  }
  return k;
}

std::optional<std::size_t> TorusGrid::index_of(const Wavevector& k) const noexcept {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) {
    const int ka = k[static_cast<std::size_t>(a)];
    if (2 * std::abs(ka) >= n_) return std::nullopt;
    idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>((ka + n_) % n_);
  }
  for (int a = dim_; a < 3; ++a) {
    if (k[static_cast<std::size_t>(a)] != 0) return std::nullopt;
  }
  return idx;
}

std::array<double, 3> TorusGrid::point(std::size_t idx) const noexcept {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const double h = spacing();
  for (int a = dim_ - 1; a >= 0; --a) {
    x[static_cast<std::size_t>(a)] = h * static_cast<double>(idx % static_cast<std::size_t>(n_));
    idx /= static_cast<std::size_t>(n_);
  }
  return x;
}

void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* where) {
  if (!(a == b)) {
    throw Error(Errc::GridMismatch,
                std::string(where) + ": grids differ (" + std::to_string(a.dim()) + "d n=" +
                    std::to_string(a.n()) + " vs " + std::to_string(b.dim()) +
                    "d n=" + std::to_string(b.n()) + ")");
  }
}

}  // namespace lowmach
