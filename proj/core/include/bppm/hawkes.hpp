#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bppm/random.hpp"

namespace bppm::hawkes {

// Univariate exponential Hawkes process:
//   lambda(t) = lambda_inf + sum_{t_i < t} alpha * exp(-beta * (t - t_i)).
// Stationarity (alpha < beta) is not required.
struct Params {
  double alpha = 0.0;
  double beta = 1.0;
  double lambda_inf = 1.0;

  [[nodiscard]] double branching_ratio() const noexcept { return alpha / beta; }
  friend bool operator==(const Params&, const Params&) = default;
};

// Throws ArgumentError unless alpha >= 0, beta > 0, lambda_inf > 0.
void validate(const Params& p);

// Only events strictly before t contribute.
[[nodiscard]] double intensity(const Params& p, std::span<const double> history, double t);

// Integral of the conditional intensity over [from, to], given the events in
// `history` that precede `from` (history times must be <= from).
[[nodiscard]] double compensator(const Params& p, std::span<const double> history, double from, double to);

// Log-likelihood of ascending event times on [0, horizon], evaluated with the
// O(m) recursion A(s) = exp(-beta (t_s - t_{s-1})) (1 + A(s-1)). Pass
// horizon = times.back() to use the last-event compensator endpoint.
[[nodiscard]] double log_likelihood(const Params& p, std::span<const double> times, double horizon);

// Same objective with per-event weights w_s in [0, 1]: each event's log-intensity
// and compensator jump are scaled by w_s and its excitation is w_s * alpha.
// Unit weights reproduce log_likelihood exactly.
[[nodiscard]] double weighted_log_likelihood(const Params& p, std::span<const double> times,
                                             std::span<const double> weights, double horizon);

// Value, gradient and Hessian of the log-likelihood with respect to
// (alpha, beta, lambda_inf), in that order.
struct Derivatives {
  double value = 0.0;
  std::array<double, 3> gradient{};
  std::array<std::array<double, 3>, 3> hessian{};
};

[[nodiscard]] Derivatives log_likelihood_derivatives(const Params& p, std::span<const double> times, double horizon);
[[nodiscard]] Derivatives weighted_log_likelihood_derivatives(const Params& p, std::span<const double> times,
                                                              std::span<const double> weights, double horizon);

struct FitOptions {
  std::optional<Params> init;  // default: lambda = m/horizon, beta = 1, alpha = 0.5 beta
  int max_iterations = 500;
  double alpha_floor = 1e-12;
  double beta_floor = 1e-8;
  double lambda_floor = 1e-8;
  double upper_bound = 1e9;   // cap on every parameter
  double gradient_tolerance = 1e-9;
  bool poisson_only = false;  // fix alpha = 0 and fit lambda_inf alone
};

struct FitResult {
  Params params;
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Local maximum of log_likelihood. The returned objective is never below the
// objective at the (floored) initial point. Empty `times` returns
// (alpha = 0, beta = beta_floor, lambda_inf = lambda_floor).
[[nodiscard]] FitResult fit_mle(std::span<const double> times, double horizon, const FitOptions& options = {});

// Maximizes weighted_log_likelihood; used by the variational M-step.
[[nodiscard]] FitResult fit_weighted_mle(std::span<const double> times, std::span<const double> weights,
                                         double horizon, const FitOptions& options = {});

struct SimulationOptions {
  std::size_t max_events = 10'000'000;
};

// Ogata thinning on [0, horizon]. Throws SupercriticalError past max_events.
[[nodiscard]] std::vector<double> simulate(const Params& p, double horizon, Rng& rng,
                                           const SimulationOptions& options = {});

// Expected waiting time from `now` to the next event given the history
// (times <= now): integral over [0, inf) of exp(-Lambda(now, now + t)).
[[nodiscard]] double expected_next_event_time(const Params& p, std::span<const double> history, double now);

}  // namespace bppm::hawkes
