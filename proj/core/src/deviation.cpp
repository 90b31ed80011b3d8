#include <cmath>
#include <limits>

#include "bppm/error.hpp"
#include "bppm/evaluation.hpp"
#include "bppm/generator.hpp"
#include "bppm/parallel.hpp"

namespace bppm::eval {
namespace {

struct SimOutcome {
  std::size_t events = 0;
  bool hit[4] = {false, false, false, false};  // (0,1), (2,3), (4,5), (6,7)
};

EntryPairDeviation estimate(const std::vector<SimOutcome>& sims, int first, int second) {
  double n = 0.0, n_a1 = 0.0, n_b1 = 0.0, n_a1_b1 = 0.0, n_a0_b0 = 0.0;
  for (const auto& s : sims) {
    const bool a = s.hit[first];
    const bool b = s.hit[second];
    n += 1.0;
    n_a1 += a;
    n_b1 += b;
    n_a1_b1 += a && b;
    n_a0_b0 += !a && !b;
  }
  const double n_b0 = n - n_b1;
  const double p0 = (n - n_a1) / n;  // Pr(a = 0)
  const double w = n_b0 / n;         // Pr(a' = 0)
  EntryPairDeviation out;
  if (n_b0 > 0.0) out.delta0 = n_a0_b0 / n_b0 - p0;
  if (n_b1 > 0.0) out.delta1 = n_a1_b1 / n_b1 - (1.0 - p0);
  // delta0 = (1-w)(p(0|0) - p(0|1)), delta1 = w (p(1|1) - p(1|0)); under
  // independence each conditional is a binomial proportion with variance p0(1-p0)/count.
  if (n_b0 > 0.0 && n_b1 > 0.0) {
    const double spread = std::sqrt(p0 * (1.0 - p0) * (1.0 / n_b0 + 1.0 / n_b1));
    out.se0 = (1.0 - w) * spread;
    out.se1 = w * spread;
  }
  return out;
}

}  // namespace

hawkes::Params theorem_rule(std::size_t num_nodes) {
  const auto n = static_cast<double>(num_nodes);
  return {5.0 * n, 10.0 * n, 0.5 * n};
}

hawkes::Params poisson_rule(std::size_t num_nodes) {
  const auto n = static_cast<double>(num_nodes);
  return {0.0, 10.0 * n, 0.5 * n};
}

DeviationReport deviation_experiment(const DeviationConfig& config) {
  if (config.simulations < 1) throw ArgumentError("need at least one simulation");
  if (!(config.horizon > 0.0)) throw ArgumentError("horizon must be positive");
  DeviationReport report;
  for (std::size_t point = 0; point < config.sizes.size(); ++point) {
    const std::size_t n_nodes = config.sizes[point];
    if (n_nodes < 4) throw ArgumentError("deviation experiment needs at least 4 nodes");
    const hawkes::Params p = config.rule(n_nodes);
    hawkes::validate(p);
    const BlockHawkesModel model({1.0}, {p});
    const ClassAssignment one_block(std::vector<int>(n_nodes, 0), 1);

    std::vector<SimOutcome> sims(config.simulations);
    parallel_for(config.simulations, config.threads, [&](std::size_t s) {
      Rng rng = make_rng(config.seed, {point, s});
      const auto net = gen::sample_network(model, one_block, config.horizon, rng);
      SimOutcome& out = sims[s];
      out.events = net.stream.size();
      for (const Event& e : net.stream.events()) {
        for (int k = 0; k < 4; ++k) {
          if (e.sender == static_cast<NodeIndex>(2 * k) && e.receiver == static_cast<NodeIndex>(2 * k + 1))
            out.hit[k] = true;
        }
      }
    });

    DeviationPoint pt;
    pt.num_nodes = n_nodes;
    pt.block_size = block_pair_size(n_nodes, n_nodes, true);
    pt.simulations = config.simulations;
    double total = 0.0;
    double zeros = 0.0;
    for (const auto& s : sims) {
      total += static_cast<double>(s.events);
      zeros += !s.hit[0];
    }
    pt.mean_events = total / static_cast<double>(sims.size());
    pt.theoretical_events = p.alpha < p.beta ? p.lambda_inf * config.horizon / (1.0 - p.alpha / p.beta)
                                             : std::numeric_limits<double>::quiet_NaN();
    pt.bound = std::min(1.0, pt.mean_events / static_cast<double>(pt.block_size));
    pt.zero_probability = zeros / static_cast<double>(sims.size());
    pt.primary = estimate(sims, 0, 1);
    if (n_nodes >= 8) pt.secondary = estimate(sims, 2, 3);
    report.points.push_back(pt);
  }
  return report;
}

}  // namespace bppm::eval
