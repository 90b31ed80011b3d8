#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bppm/core.hpp"
#include "bppm/hawkes.hpp"

namespace bppm::eval {

// Adjusted Rand index from the pair-counting contingency table. Returns 1 when
// both partitions are trivial in the same way (all-in-one or all singletons).
[[nodiscard]] double adjusted_rand_index(const ClassAssignment& a, const ClassAssignment& b);
[[nodiscard]] double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

// ---- asymptotic independence of adjacency entries ----

using ParamsRule = std::function<hawkes::Params(std::size_t num_nodes)>;

// alpha = 5N, beta = 10N, lambda_inf = 0.5N
[[nodiscard]] hawkes::Params theorem_rule(std::size_t num_nodes);
// alpha = 0, lambda_inf = 0.5N (homogeneous Poisson block)
[[nodiscard]] hawkes::Params poisson_rule(std::size_t num_nodes);

struct DeviationConfig {
  std::vector<std::size_t> sizes;
  ParamsRule rule = theorem_rule;
  double horizon = 20.0;
  std::size_t simulations = 10'000;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

// Deviations for one monitored entry pair (i,j) | (i',j').
struct EntryPairDeviation {
  std::optional<double> delta0;  // Pr(a=0 | a'=0) - Pr(a=0); empty if a'=0 never seen
  std::optional<double> delta1;  // Pr(a=1 | a'=1) - Pr(a=1); empty if a'=1 never seen
  double se0 = 0.0;              // Monte Carlo standard errors
  double se1 = 0.0;
};

struct DeviationPoint {
  std::size_t num_nodes = 0;
  std::int64_t block_size = 0;      // n = N(N-1)
  std::size_t simulations = 0;
  double mean_events = 0.0;         // mu, estimated from the simulations
  double theoretical_events = 0.0;  // lambda T / (1 - alpha/beta); NaN when alpha >= beta
  double bound = 0.0;               // min(1, mu / n)
  double zero_probability = 0.0;    // Pr(a_01 = 0)
  EntryPairDeviation primary;       // entries (0,1) and (2,3)
  std::optional<EntryPairDeviation> secondary;  // entries (4,5) and (6,7), when N >= 8
};

struct DeviationReport {
  std::vector<DeviationPoint> points;
};

// Single-block networks simulated with the generator, aggregated over the
// full window. Each simulation draws from make_rng(seed, {size index, sim}).
[[nodiscard]] DeviationReport deviation_experiment(const DeviationConfig& config);

// ---- next-event-time prediction ----

// Shared by both prediction arms so they see the same classes and split.
struct PredictionProtocol {
  const EventStream* stream = nullptr;
  ClassAssignment classes;
  double split_time = 0.0;          // training ends here
  double window = 0.0;              // update period
  int num_windows = 0;
  double hours_per_time_unit = 1.0; // RMSE is reported in hours
  std::size_t threads = 1;

  // split = train_fraction * T, then num_windows equal windows to T.
  static PredictionProtocol make(const EventStream& stream, ClassAssignment classes, double train_fraction,
                                 int num_windows);
  [[nodiscard]] double window_start(int w) const { return split_time + w * window; }
};

struct PredictionRecord {
  int q = 0;
  int l = 0;
  int window = 0;
  double predicted = 0.0;  // waiting time from the window start, stream units
  double actual = 0.0;     // meaningful only when !censored
  bool censored = false;   // no event of the pair in the window
  bool excluded = false;   // prediction undefined or flagged
  std::string flag;
};

struct PredictionReport {
  std::vector<PredictionRecord> records;
  // sqrt(mean squared residual) in hours over all uncensored, non-excluded
  // records of diagonal pairs, off-diagonal pairs, and all pairs.
  double within_rmse = 0.0;
  double between_rmse = 0.0;
  double total_rmse = 0.0;
  std::size_t within_count = 0;
  std::size_t between_count = 0;
};

// Recomputes the RMSE fields from the records.
void summarize(PredictionReport& report, double hours_per_time_unit);

// Hawkes arm: per window and pair, refit on all pair events before the window
// start (warm-started from the previous window) and predict the expected
// waiting time to the next event.
[[nodiscard]] PredictionReport predict_rolling(const PredictionProtocol& protocol, const hawkes::FitOptions& fit = {});

// Discrete-time SBM arm: p = fraction of full snapshots before the window start
// that contain an event of the pair; prediction = h/p - h/2.
[[nodiscard]] PredictionReport predict_discrete_baseline(const PredictionProtocol& protocol, double snapshot_length);

}  // namespace bppm::eval
