#include "bppm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bppm/error.hpp"

namespace bppm {
namespace {

void check_simplex(std::span<const double> pi) {
  if (pi.empty()) throw ArgumentError("class probability vector is empty");
  double sum = 0.0;
  for (double v : pi) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("class probabilities must be finite and >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ArgumentError("class probabilities must sum to 1");
}

}  // namespace

BlockHawkesModel::BlockHawkesModel(std::vector<double> class_probs, std::vector<hawkes::Params> params)
    : class_probs_(std::move(class_probs)), params_(std::move(params)) {
  check_simplex(class_probs_);
  const auto k = class_probs_.size();
  if (params_.size() != k * k) throw ArgumentError("model needs one Hawkes parameter triple per ordered block pair");
  for (const auto& p : params_) hawkes::validate(p);
}

BlockHawkesModel BlockHawkesModel::assortative(int num_classes, const hawkes::Params& diagonal,
                                               const hawkes::Params& off_diagonal) {
  if (num_classes < 1) throw ArgumentError("number of classes must be >= 1");
  const auto k = static_cast<std::size_t>(num_classes);
  std::vector<double> pi(k, 1.0 / static_cast<double>(k));
  // Renormalize so the entries sum to 1 within the simplex tolerance.
  pi.back() = 1.0 - std::accumulate(pi.begin(), pi.end() - 1, 0.0);
  std::vector<hawkes::Params> params(k * k, off_diagonal);
  for (std::size_t q = 0; q < k; ++q) params[q * k + q] = diagonal;
  return BlockHawkesModel(std::move(pi), std::move(params));
}

namespace gen {

ClassAssignment sample_classes(std::span<const double> pi, std::size_t num_nodes, Rng& rng) {
  check_simplex(pi);
  std::discrete_distribution<int> categorical(pi.begin(), pi.end());
  std::vector<int> labels(num_nodes);
  for (auto& label : labels) label = categorical(rng);
  return ClassAssignment(std::move(labels), static_cast<int>(pi.size()));
}

SampledNetwork sample_network(const BlockHawkesModel& model, std::size_t num_nodes, double horizon, Rng& rng,
                              const SampleOptions& options) {
  ClassAssignment classes = sample_classes(model.class_probs(), num_nodes, rng);
  return sample_network(model, classes, horizon, rng, options);
}

SampledNetwork sample_network(const BlockHawkesModel& model, const ClassAssignment& classes, double horizon, Rng& rng,
                              const SampleOptions& options) {
  const std::size_t n = classes.size();
  if (n < 2) throw ArgumentError("a network needs at least two nodes");
  if (!(horizon > 0.0)) throw ArgumentError("horizon must be positive");
  if (classes.num_classes() != model.num_classes()) throw ArgumentError("class count differs from the model's K");
  const int k = model.num_classes();

  std::vector<std::vector<NodeIndex>> members(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) members[static_cast<std::size_t>(classes[i])].push_back(static_cast<NodeIndex>(i));

  // Per-pair sub-streams are seeded from one master draw and the pair index.
  const std::uint64_t master = rng();
  SampledNetwork out{EventStream(), classes, 0, {}};
  std::vector<Event> events;
  for (int q = 0; q < k; ++q) {
    for (int l = 0; l < k; ++l) {
      const auto b = static_cast<std::uint64_t>(q * k + l);
      Rng pair_rng = make_rng(master, {b});
      std::vector<double> times = hawkes::simulate(model.params(q, l), horizon, pair_rng, options.simulation);
      const auto& from = members[static_cast<std::size_t>(q)];
      const auto& to = members[static_cast<std::size_t>(l)];
      const bool diagonal = q == l;
      if (block_pair_size(from.size(), to.size(), diagonal) == 0) {
        if (!times.empty()) {
          out.discarded_events += times.size();
          out.warnings.push_back("block pair (" + std::to_string(q) + "," + std::to_string(l) + ") has no node pairs; " +
                                 std::to_string(times.size()) + " events discarded");
        }
        continue;
      }
      std::uniform_int_distribution<std::size_t> pick_from(0, from.size() - 1);
      for (double t : times) {
        const std::size_t a = pick_from(pair_rng);
        std::size_t c = 0;
        if (diagonal) {
          // uniform over the other |q|-1 members
          c = std::uniform_int_distribution<std::size_t>(0, to.size() - 2)(pair_rng);
          if (c >= a) ++c;
        } else {
          c = std::uniform_int_distribution<std::size_t>(0, to.size() - 1)(pair_rng);
        }
        events.push_back({from[a], to[c], t});
      }
    }
  }
  out.stream = EventStream(std::move(events), n, horizon);
  return out;
}

}  // namespace gen
}  // namespace bppm
