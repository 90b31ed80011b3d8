#include <cmath>
#include <numeric>

#include "bppm/error.hpp"
#include "bppm/inference.hpp"

namespace bppm::infer {
namespace {

double pair_horizon(const std::vector<double>& times, double window_end, CompensatorEnd end) {
  if (end == CompensatorEnd::kWindowEnd) return window_end;
  return times.empty() ? 0.0 : times.back();
}

}  // namespace

double conditional_log_likelihood(const EventStream& stream, const ClassAssignment& c,
                                  std::span<const hawkes::Params> theta, const LikelihoodOptions& options) {
  const BlockPairView view = partition_by_blocks(stream, c);
  if (theta.size() != view.num_pairs()) throw ArgumentError("theta must hold K^2 parameter triples");
  double total = 0.0;
  for (std::size_t b = 0; b < view.num_pairs(); ++b) {
    const auto m = view.counts[b];
    const auto n = view.sizes[b];
    if (n == 0) {
      if (m > 0) throw ArgumentError("events fall in a block pair with no admissible node pairs");
      continue;
    }
    const double horizon = pair_horizon(view.times[b], stream.horizon(), options.end);
    if (horizon <= 0.0) continue;  // last-event mode with no events (or all at t = 0)
    total += hawkes::log_likelihood(theta[b], view.times[b], horizon) -
             static_cast<double>(m) * std::log(static_cast<double>(n));
  }
  return total;
}

BlockFit fit_block_params(const EventStream& stream, const ClassAssignment& c, const hawkes::FitOptions& fit,
                          const LikelihoodOptions& options) {
  const BlockPairView view = partition_by_blocks(stream, c);
  BlockFit out;
  out.params.resize(view.num_pairs());
  out.pair_objective.assign(view.num_pairs(), 0.0);
  for (std::size_t b = 0; b < view.num_pairs(); ++b) {
    const double horizon = pair_horizon(view.times[b], stream.horizon(), options.end);
    if (view.sizes[b] == 0 || horizon <= 0.0) {
      out.params[b] = {0.0, fit.beta_floor, fit.lambda_floor};
      continue;
    }
    const auto r = hawkes::fit_mle(view.times[b], horizon, fit);
    out.params[b] = r.params;
    out.pair_objective[b] =
        r.log_likelihood - static_cast<double>(view.counts[b]) * std::log(static_cast<double>(view.sizes[b]));
  }
  out.objective = std::accumulate(out.pair_objective.begin(), out.pair_objective.end(), 0.0);
  return out;
}

std::vector<double> class_frequencies(const ClassAssignment& c) {
  const auto sizes = c.class_sizes();
  std::vector<double> pi(sizes.size());
  double sum = 0.0;
  for (std::size_t q = 0; q < sizes.size(); ++q) {
    pi[q] = static_cast<double>(sizes[q]) / static_cast<double>(c.size());
    sum += pi[q];
  }
  // absorb rounding so the simplex check holds exactly
  for (std::size_t q = sizes.size(); q-- > 0;) {
    if (pi[q] > 0.0) {
      pi[q] += 1.0 - sum;
      break;
    }
  }
  return pi;
}

}  // namespace bppm::infer
