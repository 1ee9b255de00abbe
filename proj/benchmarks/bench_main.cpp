#include <benchmark/benchmark.h>

#include "pathforest/generators.hpp"
#include "pathforest/integrate.hpp"
#include "pathforest/merge_tree.hpp"
#include "pathforest/trim.hpp"
#include "pathforest/variation.hpp"

namespace {

using namespace pathforest;

void bm_build_merge_tree(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SampledPath w = gen_brownian(n, 1.0, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_merge_tree(w).total_length());
  }
  state.SetItemsProcessed(static_cast<long>(n) * state.iterations());
}
BENCHMARK(bm_build_merge_tree)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20);

void bm_trim_events(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SampledPath w = gen_brownian(n, 1.0, 7);
  const double a = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(trim_events(w, a).count);
  }
  state.SetItemsProcessed(static_cast<long>(n) * state.iterations());
}
BENCHMARK(bm_trim_events)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20);

void bm_trim_profile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SampledPath w = gen_brownian(n, 1.0, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trim_profile(w, ScaleGrid::auto_for(w, 30)));
  }
}
BENCHMARK(bm_trim_profile)->Arg(1 << 14)->Arg(1 << 17);

void bm_pvar_exact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SampledPath w = gen_brownian(n, 1.0, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pvar_exact(w.values(), 2.0));
  }
}
BENCHMARK(bm_pvar_exact)->Arg(1 << 10)->Arg(1 << 12);

void bm_fbm_hosking(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gen_fbm(2048, 0.7, 1.0, ++seed, FbmMethod::hosking).last_value());
  }
}
BENCHMARK(bm_fbm_hosking);

void bm_fbm_circulant(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gen_fbm(n, 0.7, 1.0, ++seed, FbmMethod::circulant).last_value());
  }
}
BENCHMARK(bm_fbm_circulant)->Arg(1 << 14)->Arg(1 << 18)->Arg(1 << 20);

void bm_tree_integral(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SampledPath w = gen_fbm(n, 0.7, 1.0, 5);
  const SampledPath e = gen_fbm(n, 0.7, 1.0, 6);
  const Integrand rho = Integrand::sampled(e);
  const ScaleGrid grid = ScaleGrid::auto_for(w, 30);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree_integral(rho, w, grid, 1e-4, false).value);
  }
}
BENCHMARK(bm_tree_integral)->Arg(1 << 12)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
