#pragma once

#include <span>
#include <string>
#include <vector>

#include "bppm/core.hpp"
#include "bppm/hawkes.hpp"
#include "bppm/random.hpp"

namespace bppm {

// K classes, a class-probability simplex vector pi, and one Hawkes process per
// ordered block pair (row-major: params[q*K + l]).
class BlockHawkesModel {
 public:
  BlockHawkesModel() = default;
  BlockHawkesModel(std::vector<double> class_probs, std::vector<hawkes::Params> params);

  // Diagonal pairs share `diagonal`, off-diagonal pairs share `off_diagonal`; uniform pi.
  static BlockHawkesModel assortative(int num_classes, const hawkes::Params& diagonal,
                                      const hawkes::Params& off_diagonal);

  [[nodiscard]] int num_classes() const noexcept { return static_cast<int>(class_probs_.size()); }
  [[nodiscard]] std::span<const double> class_probs() const noexcept { return class_probs_; }
  [[nodiscard]] const hawkes::Params& params(int q, int l) const {
    return params_[static_cast<std::size_t>(q * num_classes() + l)];
  }
  [[nodiscard]] std::span<const hawkes::Params> all_params() const noexcept { return params_; }

 private:
  std::vector<double> class_probs_;
  std::vector<hawkes::Params> params_;
};

namespace gen {

// Throws ArgumentError when pi is not a probability vector (tolerance 1e-12).
[[nodiscard]] ClassAssignment sample_classes(std::span<const double> pi, std::size_t num_nodes, Rng& rng);

struct SampledNetwork {
  EventStream stream;
  ClassAssignment classes;
  // Events dropped because their block pair has no admissible node pair
  // (a diagonal block of size 1).
  std::size_t discarded_events = 0;
  std::vector<std::string> warnings;
};

struct SampleOptions {
  hawkes::SimulationOptions simulation;
};

// Draws classes from pi, then simulates each block pair and attaches every
// event to a uniformly random ordered node pair of that block pair.
[[nodiscard]] SampledNetwork sample_network(const BlockHawkesModel& model, std::size_t num_nodes, double horizon,
                                            Rng& rng, const SampleOptions& options = {});

// Same generative process with planted classes.
[[nodiscard]] SampledNetwork sample_network(const BlockHawkesModel& model, const ClassAssignment& classes,
                                            double horizon, Rng& rng, const SampleOptions& options = {});

}  // namespace gen
}  // namespace bppm
