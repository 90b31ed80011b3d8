#include <benchmark/benchmark.h>

#include "bppm/hawkes.hpp"
#include "bppm/random.hpp"

namespace {

using namespace bppm;

constexpr hawkes::Params kParams{0.6, 0.8, 1.8};

std::vector<double> sample(std::size_t m) {
  // Horizon chosen so the expected count is about m (mean rate lambda / (1 - alpha/beta)).
  Rng rng = make_rng(1, {m});
  return hawkes::simulate(kParams, static_cast<double>(m) / 7.2, rng);
}

void BM_LogLikelihood(benchmark::State& state) {
  const auto times = sample(static_cast<std::size_t>(state.range(0)));
  const double horizon = static_cast<double>(state.range(0)) / 7.2;
  for (auto _ : state) benchmark::DoNotOptimize(hawkes::log_likelihood(kParams, times, horizon));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(times.size()));
}
BENCHMARK(BM_LogLikelihood)->RangeMultiplier(10)->Range(100, 100'000);

void BM_Derivatives(benchmark::State& state) {
  const auto times = sample(static_cast<std::size_t>(state.range(0)));
  const double horizon = static_cast<double>(state.range(0)) / 7.2;
  for (auto _ : state) benchmark::DoNotOptimize(hawkes::log_likelihood_derivatives(kParams, times, horizon));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(times.size()));
}
BENCHMARK(BM_Derivatives)->RangeMultiplier(10)->Range(100, 100'000);

void BM_FitMle(benchmark::State& state) {
  const auto times = sample(static_cast<std::size_t>(state.range(0)));
  const double horizon = static_cast<double>(state.range(0)) / 7.2;
  for (auto _ : state) benchmark::DoNotOptimize(hawkes::fit_mle(times, horizon));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(times.size()));
}
BENCHMARK(BM_FitMle)->RangeMultiplier(10)->Range(100, 10'000);

void BM_Simulate(benchmark::State& state) {
  const double horizon = static_cast<double>(state.range(0)) / 7.2;
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(hawkes::simulate(kParams, horizon, rng));
}
BENCHMARK(BM_Simulate)->RangeMultiplier(10)->Range(100, 100'000);

}  // namespace
