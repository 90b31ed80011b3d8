#include "bppm/hawkes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bppm/error.hpp"
#include "hawkes_detail.hpp"

namespace bppm::hawkes {

void validate(const Params& p) {
  if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha)) throw ArgumentError("hawkes alpha must be >= 0");
  if (!(p.beta > 0.0) || !std::isfinite(p.beta)) throw ArgumentError("hawkes beta must be > 0");
  if (!(p.lambda_inf > 0.0) || !std::isfinite(p.lambda_inf)) throw ArgumentError("hawkes lambda_inf must be > 0");
}

double intensity(const Params& p, std::span<const double> history, double t) {
  double sum = 0.0;
  for (double ti : history) {
    if (ti >= t) break;
    sum += std::exp(-p.beta * (t - ti));
  }
  return p.lambda_inf + p.alpha * sum;
}

namespace {

// alpha * sum_{t_i <= now} exp(-beta (now - t_i)): intensity jump still active at now+.
double excitation_at(const Params& p, std::span<const double> history, double now) {
  double sum = 0.0;
  for (double ti : history) {
    if (ti > now) throw ArgumentError("history contains events after the evaluation time");
    sum += std::exp(-p.beta * (now - ti));
  }
  return p.alpha * sum;
}

}  // namespace

double compensator(const Params& p, std::span<const double> history, double from, double to) {
  if (to < from) throw ArgumentError("compensator requires from <= to");
  const double excitation = excitation_at(p, history, from);
  return p.lambda_inf * (to - from) - excitation / p.beta * std::expm1(-p.beta * (to - from));
}

double log_likelihood(const Params& p, std::span<const double> times, double horizon) {
  validate(p);
  if (!(horizon > 0.0)) throw ArgumentError("log-likelihood horizon must be positive");
  return detail::evaluate_value(p, times, detail::UnitWeights{}, horizon);
}

double weighted_log_likelihood(const Params& p, std::span<const double> times, std::span<const double> weights,
                               double horizon) {
  validate(p);
  if (weights.size() != times.size()) throw ArgumentError("weights and times differ in length");
  if (!(horizon > 0.0)) throw ArgumentError("log-likelihood horizon must be positive");
  return detail::evaluate_value(p, times, detail::SpanWeights{weights}, horizon);
}

Derivatives log_likelihood_derivatives(const Params& p, std::span<const double> times, double horizon) {
  validate(p);
  return detail::evaluate_derivatives(p, times, detail::UnitWeights{}, horizon);
}

Derivatives weighted_log_likelihood_derivatives(const Params& p, std::span<const double> times,
                                                std::span<const double> weights, double horizon) {
  validate(p);
  if (weights.size() != times.size()) throw ArgumentError("weights and times differ in length");
  return detail::evaluate_derivatives(p, times, detail::SpanWeights{weights}, horizon);
}

std::vector<double> simulate(const Params& p, double horizon, Rng& rng, const SimulationOptions& options) {
  validate(p);
  if (!(horizon > 0.0)) throw ArgumentError("simulation horizon must be positive");
  std::vector<double> times;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double t = 0.0;
  double excitation = 0.0;  // intensity above background at time t (after any jump at t)
  for (;;) {
    const double upper = p.lambda_inf + excitation;
    const double wait = std::exponential_distribution<double>(upper)(rng);
    t += wait;
    if (t > horizon) break;
    excitation *= std::exp(-p.beta * wait);
    if (uniform(rng) * upper <= p.lambda_inf + excitation) {
      times.push_back(t);
      excitation += p.alpha;
      if (times.size() > options.max_events)
        throw SupercriticalError("hawkes simulation exceeded " + std::to_string(options.max_events) +
                                 " events (branching ratio " + std::to_string(p.branching_ratio()) + ")");
    }
  }
  return times;
}

double expected_next_event_time(const Params& p, std::span<const double> history, double now) {
  validate(p);
  const double excitation = excitation_at(p, history, now);
  // Lambda(t) = lambda t + (E / beta)(1 - e^{-beta t});  S(t) = exp(-Lambda(t)).
  auto survival = [&](double t) {
    return std::exp(-(p.lambda_inf * t - excitation / p.beta * std::expm1(-p.beta * t)));
  };
  constexpr double kSurvivalCutoff = 1e-12;
  // S(t) <= e^{-lambda t}, so the cutoff is reached no later than this.
  const double t_cap = -std::log(kSurvivalCutoff) / p.lambda_inf;
  double t_max = 1.0 / (p.lambda_inf + excitation);
  while (t_max < t_cap && survival(t_max) > kSurvivalCutoff) t_max *= 2.0;
  t_max = std::min(t_max, t_cap);

  using boost::math::quadrature::gauss_kronrod;
  constexpr double kTol = 1e-10;
  // The excitation decays on a 1/beta scale; split there so both pieces are smooth.
  const double split = std::min(t_max, 10.0 / p.beta);
  double total = gauss_kronrod<double, 61>::integrate(survival, 0.0, split, 20, kTol);
  if (split < t_max) total += gauss_kronrod<double, 61>::integrate(survival, split, t_max, 20, kTol);
  return total;
}

}  // namespace bppm::hawkes
