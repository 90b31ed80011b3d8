#include "fixtures.hpp"

#include <algorithm>
#include <random>

namespace fixture {

bppm::EventStream six_events() {
  return bppm::EventStream({{0, 1, 0.1}, {1, 2, 0.4}, {2, 1, 0.6}, {0, 1, 1.2}, {0, 2, 1.3}, {1, 0, 1.6}}, 3, 1.6);
}

Planted planted_two_block(std::size_t n, double horizon, std::uint64_t seed) {
  const auto model = bppm::BlockHawkesModel::assortative(2, {0.5, 2.0, 1.5}, {0.0, 1.0, 0.1});
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i < n / 2 ? 0 : 1;
  bppm::ClassAssignment truth(labels, 2);
  bppm::Rng rng(seed);
  auto net = bppm::gen::sample_network(model, truth, horizon, rng);
  return {std::move(net.stream), truth};
}

std::vector<double> uniform_times(std::size_t m, double horizon, std::uint64_t seed) {
  bppm::Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, horizon);
  std::vector<double> t(m);
  for (auto& x : t) x = u(rng);
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace fixture
