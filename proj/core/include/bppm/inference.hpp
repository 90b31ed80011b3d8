#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bppm/core.hpp"
#include "bppm/generator.hpp"
#include "bppm/hawkes.hpp"
#include "bppm/spectral.hpp"

namespace bppm::infer {

// Where each block pair's compensator stops: the observation end T, or that
// pair's own last event time t_(m).
enum class CompensatorEnd { kWindowEnd, kLastEvent };

struct LikelihoodOptions {
  CompensatorEnd end = CompensatorEnd::kWindowEnd;
};

// sum_b [ log Pr(t^(b) | theta_b) - m_b log n_b ] over the K^2 ordered block
// pairs. Pairs with n_b = 0 are skipped; an event in such a pair is an error.
// theta is row-major (theta[q*K + l]).
[[nodiscard]] double conditional_log_likelihood(const EventStream& stream, const ClassAssignment& c,
                                                std::span<const hawkes::Params> theta,
                                                const LikelihoodOptions& options = {});

// Per-pair Hawkes MLE for a fixed assignment, and the resulting profile objective.
struct BlockFit {
  std::vector<hawkes::Params> params;
  std::vector<double> pair_objective;  // log-likelihood - m_b log n_b, per pair
  double objective = 0.0;
};

[[nodiscard]] BlockFit fit_block_params(const EventStream& stream, const ClassAssignment& c,
                                        const hawkes::FitOptions& fit = {}, const LikelihoodOptions& options = {});

// pi_q = |class q| / N.
[[nodiscard]] std::vector<double> class_frequencies(const ClassAssignment& c);

struct FitResult {
  ClassAssignment assignment;        // hard labels (argmax of tau for variational fits)
  Eigen::MatrixXd soft;              // N x K tau for variational fits, empty otherwise
  BlockHawkesModel model;
  double objective = 0.0;            // conditional log-likelihood or ELBO
  std::vector<double> trace;         // objective per iteration, starting at the initial value
  int iterations = 0;
  bool converged = false;
  std::vector<double> iteration_seconds;
  std::string diagnostic;
};

struct LocalSearchOptions {
  int max_iterations = -1;  // default 100 * K
  bool forbid_empty_classes = false;
  std::size_t threads = 1;
  double min_improvement = 1e-9;  // relative to max(1, |objective|)
  hawkes::FitOptions fit;
  LikelihoodOptions likelihood;
};

// Greedy single-node relabeling: each iteration evaluates all N(K-1) moves with
// refitted Hawkes parameters for the affected block pairs and applies the best
// strictly improving one. Ties go to the lowest node, then the lowest class.
[[nodiscard]] FitResult local_search(const EventStream& stream, const ClassAssignment& initial,
                                     const LocalSearchOptions& options = {});

// ---- variational EM ----

enum class ElboHorizon { kLastEvent, kWindowEnd };

struct VemOptions {
  int max_iterations = 100;
  double tolerance = 1e-7;       // relative ELBO change between iterations
  int inner_iterations = 50;     // simplex ascent steps per row
  double inner_tolerance = 1e-8;
  double slack = 1e-8;           // allowed ELBO decrease before halting
  ElboHorizon horizon = ElboHorizon::kLastEvent;
  hawkes::FitOptions fit;
};

// Mean-field evidence lower bound for soft assignment tau (N x K, rows on the
// simplex), pair parameters theta (row-major) and class probabilities pi.
[[nodiscard]] double elbo(const EventStream& stream, const Eigen::MatrixXd& tau,
                          std::span<const hawkes::Params> theta, std::span<const double> pi, double horizon);

// Partial derivatives of the ELBO in each tau entry, ignoring the simplex
// constraint. Only differences within a row are meaningful on the simplex.
[[nodiscard]] Eigen::MatrixXd elbo_gradient(const EventStream& stream, const Eigen::MatrixXd& tau,
                                            std::span<const hawkes::Params> theta, std::span<const double> pi,
                                            double horizon);

[[nodiscard]] FitResult variational_em(const EventStream& stream, const Eigen::MatrixXd& tau0,
                                       const VemOptions& options = {});

[[nodiscard]] Eigen::MatrixXd random_soft_assignment(std::size_t n, int k, Rng& rng);
[[nodiscard]] ClassAssignment harden(const Eigen::MatrixXd& tau);
[[nodiscard]] Eigen::MatrixXd one_hot(const ClassAssignment& c);

// ---- end-to-end fitting ----

enum class Method { kSpectral, kSpectralLocalSearch, kSpectralVem, kRandomLocalSearch, kRandomVem };

[[nodiscard]] Method parse_method(const std::string& name);
[[nodiscard]] std::string method_name(Method m);

struct PipelineOptions {
  std::uint64_t seed = 0;
  int restarts = 10;  // random initializations
  spectral::SpectralOptions spectral;
  LocalSearchOptions local_search;
  VemOptions vem;
};

// Spectral initialization uses the binary adjacency of the whole stream.
[[nodiscard]] FitResult fit(const EventStream& stream, int k, Method method, const PipelineOptions& options = {});

}  // namespace bppm::infer
