#include "lowmach/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "lowmach/error.hpp"

namespace lowmach {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Plans are created once per (dim, n) and never destroyed. Creation goes
// through a mutex; fftw_execute_dft on distinct arrays is thread-safe.
// FFTW_ESTIMATE keeps the chosen algorithm, and hence the bits, deterministic.
class PlanCache {
 public:
  const PlanPair& get(int dim, int n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(dim, n);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    int dims[3] = {n, n, n};
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
    std::vector<fftw_complex> in(total), out(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT;
    PlanPair p;
    p.forward = fftw_plan_dft(dim, dims, in.data(), out.data(), FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft(dim, dims, in.data(), out.data(), FFTW_BACKWARD, flags);
    if (p.forward == nullptr || p.backward == nullptr) {
      throw Error(Errc::InvalidArgument, "FFTW plan creation failed");
    }
    return plans_.emplace(key, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

std::vector<Complex>& scratch(std::size_t size) {
  thread_local std::vector<Complex> buf;
  if (buf.size() < size) buf.resize(size);
  return buf;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void forward_transform(const TorusGrid& grid, std::span<const double> samples,
                       std::span<Complex> coeffs) {
  const std::size_t size = grid.size();
  if (samples.size() != size || coeffs.size() != size) {
    throw Error(Errc::InvalidArgument, "forward_transform: buffer size mismatch");
  }
  const PlanPair& plan = cache().get(grid.dim(), grid.n());
  auto& buf = scratch(size);
  for (std::size_t i = 0; i < size; ++i) buf[i] = Complex(samples[i], 0.0);
  fftw_execute_dft(plan.forward, as_fftw(buf.data()), as_fftw(coeffs.data()));
  const double scale = 1.0 / static_cast<double>(size);
  for (auto& c : coeffs) c *= scale;
}

void inverse_transform(const TorusGrid& grid, std::span<const Complex> coeffs,
                       std::span<double> samples) {
  const std::size_t size = grid.size();
  if (samples.size() != size || coeffs.size() != size) {
    throw Error(Errc::InvalidArgument, "inverse_transform: buffer size mismatch");
  }
  const PlanPair& plan = cache().get(grid.dim(), grid.n());
  auto& buf = scratch(size);
  fftw_execute_dft(plan.backward, as_fftw(const_cast<Complex*>(coeffs.data())),
                   as_fftw(buf.data()));
  for (std::size_t i = 0; i < size; ++i) samples[i] = buf[i].real();
}

}  // namespace lowmach
