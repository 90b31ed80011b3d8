#include <benchmark/benchmark.h>

#include "bppm/generator.hpp"
#include "bppm/inference.hpp"
#include "bppm/spectral.hpp"

namespace {

using namespace bppm;

gen::SampledNetwork network(std::size_t n, double horizon) {
  const auto model = BlockHawkesModel::assortative(4, {0.6, 0.8, 1.8}, {0.6, 0.8, 0.6});
  Rng rng = make_rng(2, {n});
  return gen::sample_network(model, n, horizon, rng);
}

// One local-search iteration (all N(K-1) moves scored, best one applied),
// from random labels so a move always exists.
void BM_LocalSearchIteration(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto net = network(n, 20.0);
  Rng rng(5);
  const auto start = infer::harden(infer::random_soft_assignment(n, 4, rng));
  infer::LocalSearchOptions opt;
  opt.max_iterations = 1;
  for (auto _ : state) {
    const auto r = infer::local_search(net.stream, start, opt);
    state.SetIterationTime(r.iteration_seconds.at(0));
  }
  state.counters["events"] = static_cast<double>(net.stream.size());
}
BENCHMARK(BM_LocalSearchIteration)->Arg(64)->Arg(128)->Arg(256)->UseManualTime()->Unit(benchmark::kMillisecond);

void BM_SpectralCluster(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto net = network(n, 20.0);
  const auto adj = aggregate_all(net.stream);
  for (auto _ : state) benchmark::DoNotOptimize(spectral::spectral_cluster(adj, 4));
}
BENCHMARK(BM_SpectralCluster)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_VemIteration(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto net = network(n, 20.0);
  Rng rng(6);
  const auto tau = infer::random_soft_assignment(n, 4, rng);
  infer::VemOptions opt;
  opt.max_iterations = 1;
  for (auto _ : state) benchmark::DoNotOptimize(infer::variational_em(net.stream, tau, opt));
}
BENCHMARK(BM_VemIteration)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
