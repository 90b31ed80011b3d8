#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "bppm/error.hpp"
#include "bppm/inference.hpp"
#include "hawkes_detail.hpp"

namespace bppm::infer {
namespace {

constexpr double kTauFloor = 1e-14;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void check_tau(const EventStream& stream, const Eigen::MatrixXd& tau) {
  if (static_cast<std::size_t>(tau.rows()) != stream.num_nodes()) throw ArgumentError("tau needs one row per node");
  if (tau.cols() < 1) throw ArgumentError("tau needs at least one column");
  for (Eigen::Index i = 0; i < tau.rows(); ++i) {
    if ((tau.row(i).array() < 0.0).any() || std::abs(tau.row(i).sum() - 1.0) > 1e-10)
      throw ArgumentError("tau rows must lie on the simplex");
  }
}

// Expected number of ordered node pairs i != j with z_i = q, z_j = l.
double expected_pairs(const Eigen::MatrixXd& tau, const Eigen::VectorXd& col_sums, int q, int l) {
  return col_sums[q] * col_sums[l] - tau.col(q).dot(tau.col(l));
}

void pair_weights(const EventStream& stream, const Eigen::MatrixXd& tau, int q, int l, std::vector<double>& w) {
  w.resize(stream.size());
  for (std::size_t s = 0; s < stream.size(); ++s) w[s] = tau(stream[s].sender, q) * tau(stream[s].receiver, l);
}

void renormalize(Eigen::MatrixXd& tau) {
  for (Eigen::Index i = 0; i < tau.rows(); ++i) {
    tau.row(i) = tau.row(i).cwiseMax(kTauFloor);
    tau.row(i) /= tau.row(i).sum();
  }
}

// d ELBO / d tau. The Hawkes part comes from one forward pass (intensities x_s)
// and one backward pass (B_s = sum_{r>s} w_r/x_r e^{-beta (t_r - t_s)}) per pair.
Eigen::MatrixXd gradient(const EventStream& stream, const Eigen::MatrixXd& tau,
                         std::span<const hawkes::Params> theta, std::span<const double> pi, double horizon,
                         const std::vector<double>& times) {
  const int k = static_cast<int>(tau.cols());
  const std::size_t m = stream.size();
  Eigen::MatrixXd grad(tau.rows(), k);
  for (Eigen::Index i = 0; i < tau.rows(); ++i)
    for (int q = 0; q < k; ++q)
      grad(i, q) = std::log(std::max(pi[static_cast<std::size_t>(q)], 1e-300)) - std::log(tau(i, q)) - 1.0;

  const Eigen::VectorXd col_sums = tau.colwise().sum().transpose();
  std::vector<double> w;
  std::vector<double> x(m);
  std::vector<double> coef(m);
  for (int a = 0; a < k; ++a) {
    for (int c = 0; c < k; ++c) {
      const auto& p = theta[static_cast<std::size_t>(a * k + c)];
      pair_weights(stream, tau, a, c, w);
      double mass = 0.0;
      for (double v : w) mass += v;
      const double n_pairs = std::max(expected_pairs(tau, col_sums, a, c), 1e-300);
      const double log_n = std::log(n_pairs);

      double r = 0.0;
      for (std::size_t s = 0; s < m; ++s) {
        if (s > 0) r = std::exp(-p.beta * (times[s] - times[s - 1])) * (r + w[s - 1]);
        x[s] = p.lambda_inf + p.alpha * r;
      }
      double back = 0.0;
      for (std::size_t s = m; s-- > 0;) {
        if (s + 1 < m) back = std::exp(-p.beta * (times[s + 1] - times[s])) * (back + w[s + 1] / x[s + 1]);
        const double u = horizon - times[s];
        coef[s] = std::log(x[s]) - p.alpha * u * hawkes::detail::phi1(p.beta * u) + p.alpha * back - log_n;
      }
      for (std::size_t s = 0; s < m; ++s) {
        const auto snd = stream[s].sender;
        const auto rcv = stream[s].receiver;
        grad(snd, a) += coef[s] * tau(rcv, c);
        grad(rcv, c) += coef[s] * tau(snd, a);
      }
      // - m_b / n_b * d n_b / d tau
      const double ratio = mass / n_pairs;
      for (Eigen::Index i = 0; i < tau.rows(); ++i) {
        grad(i, a) -= ratio * (col_sums[c] - tau(i, c));
        grad(i, c) -= ratio * (col_sums[a] - tau(i, a));
      }
    }
  }
  return grad;
}

struct Model {
  std::vector<hawkes::Params> theta;
  std::vector<double> pi;
};

// Weighted Hawkes fit per pair, keeping the previous parameters when the refit
// does not improve the pair's term; pi from the column means of tau.
void m_step(const EventStream& stream, const Eigen::MatrixXd& tau, double horizon, const std::vector<double>& times,
            const hawkes::FitOptions& fit, Model& model) {
  const int k = static_cast<int>(tau.cols());
  std::vector<double> w;
  for (int a = 0; a < k; ++a) {
    for (int c = 0; c < k; ++c) {
      auto& p = model.theta[static_cast<std::size_t>(a * k + c)];
      pair_weights(stream, tau, a, c, w);
      const double old_value = hawkes::weighted_log_likelihood(p, times, w, horizon);
      hawkes::FitOptions warm = fit;
      warm.init = p;
      auto best = hawkes::fit_weighted_mle(times, w, horizon, warm);
      // the pair term is not concave, so a cold start competes with the warm one
      const auto cold = hawkes::fit_weighted_mle(times, w, horizon, fit);
      if (cold.log_likelihood > best.log_likelihood) best = cold;
      if (best.log_likelihood >= old_value) p = best.params;
    }
  }
  const double n = static_cast<double>(tau.rows());
  model.pi.assign(static_cast<std::size_t>(k), 0.0);
  double sum = 0.0;
  for (int q = 0; q < k; ++q) {
    model.pi[static_cast<std::size_t>(q)] = tau.col(q).sum() / n;
    sum += model.pi[static_cast<std::size_t>(q)];
  }
  model.pi.back() += 1.0 - sum;
}

}  // namespace

double elbo(const EventStream& stream, const Eigen::MatrixXd& tau, std::span<const hawkes::Params> theta,
            std::span<const double> pi, double horizon) {
  check_tau(stream, tau);
  const int k = static_cast<int>(tau.cols());
  if (theta.size() != static_cast<std::size_t>(k * k)) throw ArgumentError("theta must hold K^2 parameter triples");
  if (pi.size() != static_cast<std::size_t>(k)) throw ArgumentError("pi must have K entries");

  double value = 0.0;
  for (Eigen::Index i = 0; i < tau.rows(); ++i) {
    for (int q = 0; q < k; ++q) {
      const double t = tau(i, q);
      if (t > 0.0) value += t * std::log(pi[static_cast<std::size_t>(q)]) - xlogx(t);
    }
  }
  const Eigen::VectorXd col_sums = tau.colwise().sum().transpose();
  const std::vector<double> times = stream.times();
  std::vector<double> w;
  for (int q = 0; q < k; ++q) {
    for (int l = 0; l < k; ++l) {
      pair_weights(stream, tau, q, l, w);
      double mass = 0.0;
      for (double v : w) mass += v;
      const double n_pairs = expected_pairs(tau, col_sums, q, l);
      if (n_pairs <= 0.0 && mass == 0.0) continue;  // no admissible pairs, as in the hard likelihood
      value -= mass > 0.0 ? mass * std::log(n_pairs) : 0.0;
      const auto& p = theta[static_cast<std::size_t>(q * k + l)];
      value += horizon > 0.0 ? hawkes::weighted_log_likelihood(p, times, w, horizon) : 0.0;
    }
  }
  return value;
}

Eigen::MatrixXd elbo_gradient(const EventStream& stream, const Eigen::MatrixXd& tau,
                              std::span<const hawkes::Params> theta, std::span<const double> pi, double horizon) {
  check_tau(stream, tau);
  return gradient(stream, tau, theta, pi, horizon, stream.times());
}

FitResult variational_em(const EventStream& stream, const Eigen::MatrixXd& tau0, const VemOptions& options) {
  check_tau(stream, tau0);
  const int k = static_cast<int>(tau0.cols());
  const double horizon = options.horizon == ElboHorizon::kLastEvent ? stream.last_time() : stream.horizon();
  const std::vector<double> times = stream.times();

  Eigen::MatrixXd tau = tau0;
  renormalize(tau);
  Model model{std::vector<hawkes::Params>(static_cast<std::size_t>(k * k)), {}};
  for (auto& p : model.theta) p = {0.5, 1.0, std::max(1.0, static_cast<double>(stream.size())) / std::max(horizon, 1e-12)};

  FitResult out;
  if (horizon > 0.0) m_step(stream, tau, horizon, times, options.fit, model);
  else model.pi = std::vector<double>(static_cast<std::size_t>(k), 1.0 / k);
  double current = elbo(stream, tau, model.theta, model.pi, horizon);
  out.trace.push_back(current);

  const auto slack = [&](double v) { return options.slack * std::max(1.0, std::abs(v)); };
  bool converged = false;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const auto start = std::chrono::steady_clock::now();
    const double before = current;

    // E-step: exponentiated-gradient ascent on all rows, each step accepted
    // only if the exact ELBO does not decrease. eta = 1 is the mean-field
    // fixed-point update.
    if (k > 1 && horizon > 0.0) {
      for (int inner = 0; inner < options.inner_iterations; ++inner) {
        const Eigen::MatrixXd grad = gradient(stream, tau, model.theta, model.pi, horizon, times);
        bool accepted = false;
        double eta = 1.0;
        Eigen::MatrixXd trial(tau.rows(), k);
        double trial_value = current;
        for (int halving = 0; halving < 30; ++halving, eta *= 0.5) {
          for (Eigen::Index i = 0; i < tau.rows(); ++i) {
            Eigen::RowVectorXd logits = tau.row(i).array().log().matrix() + eta * grad.row(i);
            logits.array() -= logits.maxCoeff();
            trial.row(i) = logits.array().exp().matrix();
            trial.row(i) /= trial.row(i).sum();
          }
          renormalize(trial);
          trial_value = elbo(stream, trial, model.theta, model.pi, horizon);
          if (trial_value >= current) {
            accepted = true;
            break;
          }
        }
        if (!accepted) break;
        const double gain = trial_value - current;
        tau = trial;
        current = trial_value;
        if (gain <= options.inner_tolerance * std::max(1.0, std::abs(current))) break;
      }
    }

    // M-step
    if (horizon > 0.0) m_step(stream, tau, horizon, times, options.fit, model);
    const double next = elbo(stream, tau, model.theta, model.pi, horizon);
    out.trace.push_back(next);
    out.iteration_seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    current = next;
    if (next < before - slack(before)) {
      out.diagnostic = "ELBO decreased by " + std::to_string(before - next) + " at iteration " + std::to_string(it + 1);
      ++it;
      break;
    }
    if (std::abs(next - before) <= options.tolerance * std::max(1.0, std::abs(before))) {
      converged = true;
      ++it;
      break;
    }
  }
  if (!converged && out.diagnostic.empty()) out.diagnostic = "iteration cap reached";

  out.iterations = it;
  out.converged = converged;
  out.objective = current;
  out.assignment = harden(tau);
  out.soft = tau;
  out.model = BlockHawkesModel(model.pi, model.theta);
  return out;
}

Eigen::MatrixXd random_soft_assignment(std::size_t n, int k, Rng& rng) {
  if (k < 1) throw ArgumentError("number of classes must be >= 1");
  // Dirichlet(1, ..., 1) rows
  std::exponential_distribution<double> draw(1.0);
  Eigen::MatrixXd tau(static_cast<Eigen::Index>(n), k);
  for (Eigen::Index i = 0; i < tau.rows(); ++i) {
    for (int q = 0; q < k; ++q) tau(i, q) = draw(rng);
    tau.row(i) /= tau.row(i).sum();
  }
  return tau;
}

ClassAssignment harden(const Eigen::MatrixXd& tau) {
  std::vector<int> labels(static_cast<std::size_t>(tau.rows()));
  for (Eigen::Index i = 0; i < tau.rows(); ++i) {
    Eigen::Index best = 0;
    tau.row(i).maxCoeff(&best);  // first maximum wins
    labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return ClassAssignment(std::move(labels), static_cast<int>(tau.cols()));
}

Eigen::MatrixXd one_hot(const ClassAssignment& c) {
  Eigen::MatrixXd tau = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(c.size()), c.num_classes());
  for (std::size_t i = 0; i < c.size(); ++i) tau(static_cast<Eigen::Index>(i), c[i]) = 1.0;
  return tau;
}

}  // namespace bppm::infer
