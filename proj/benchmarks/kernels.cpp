#include <benchmark/benchmark.h>

#include <vector>

#include "lowmach/acoustic_filter.hpp"
#include "lowmach/compressible.hpp"
#include "lowmach/fft.hpp"
#include "lowmach/initial_data.hpp"
#include "lowmach/resonance.hpp"

using namespace lowmach;

namespace {

TorusGrid grid_for(const benchmark::State& state) {
  return TorusGrid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
}

void BM_ForwardTransform(benchmark::State& state) {
  const TorusGrid g = grid_for(state);
  Rng rng(1);
  const std::vector<double> samples = random_scalar(g, 20, rng).samples();
  std::vector<Complex> coeffs(g.size());
  for (auto _ : state) {
    forward_transform(g, samples, coeffs);
    benchmark::DoNotOptimize(coeffs.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}

void BM_InverseTransform(benchmark::State& state) {
  const TorusGrid g = grid_for(state);
  Rng rng(2);
  const ScalarField f = random_scalar(g, 20, rng);
  std::vector<double> samples(g.size());
  for (auto _ : state) {
    inverse_transform(g, f.coeffs(), samples);
    benchmark::DoNotOptimize(samples.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}

void BM_CompressibleRhs(benchmark::State& state) {
  const TorusGrid g = grid_for(state);
  auto [u, H] = orszag_tang(g);
  ScalarField rho(g);
  rho[0] = 1.0;
  const CompressibleState s{rho, u, H};
  MhdParams p;
  p.mu = p.nu = 0.01;
  for (auto _ : state) {
    CompressibleState r = compressible_rhs(s, p);
    benchmark::DoNotOptimize(r.rho.coeffs().data());
  }
}

void BM_Q2Form(benchmark::State& state) {
  const TorusGrid g = grid_for(state);
  Rng rng(3);
  const OscVector V(random_scalar(g, 12, rng), random_gradient(g, 12, rng));
  const OscVector W(random_scalar(g, 12, rng), random_gradient(g, 12, rng));
  for (auto _ : state) {
    OscVector q = q2_form(V, W, 2.0);
    benchmark::DoNotOptimize(q.phi.coeffs().data());
  }
}

}  // namespace

BENCHMARK(BM_ForwardTransform)->Args({2, 64})->Args({2, 256})->Args({3, 32});
BENCHMARK(BM_InverseTransform)->Args({2, 64})->Args({2, 256})->Args({3, 32});
BENCHMARK(BM_CompressibleRhs)->Args({2, 64})->Args({2, 128})->Args({3, 32});
BENCHMARK(BM_Q2Form)->Args({2, 16})->Args({2, 32});
BENCHMARK_MAIN();
