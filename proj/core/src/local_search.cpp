#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <tuple>

#include "bppm/error.hpp"
#include "bppm/inference.hpp"
#include "bppm/parallel.hpp"

namespace bppm::infer {
namespace {

constexpr double kInfeasible = -std::numeric_limits<double>::infinity();
// Newton iterations for a warm-started candidate score. Each iteration only
// raises the likelihood, so a truncated fit still bounds the refit from below.
constexpr int kScoringIterations = 2;

struct PairFit {
  hawkes::Params params;
  double value = 0.0;  // log-likelihood - m log n
};

// Search state: labels, class sizes and, per block pair, its event indices,
// fitted parameters and objective contribution.
class SearchState {
 public:
  SearchState(const EventStream& stream, const ClassAssignment& c, const LocalSearchOptions& opt)
      : stream_(stream), opt_(opt), k_(c.num_classes()), labels_(c.labels().begin(), c.labels().end()) {
    const std::size_t n = stream.num_nodes();
    if (c.size() != n) throw ArgumentError("assignment size differs from the number of nodes");
    sizes_.assign(static_cast<std::size_t>(k_), 0);
    for (int label : labels_) ++sizes_[static_cast<std::size_t>(label)];
    incident_.resize(n);
    pair_events_.resize(num_pairs());
    for (std::size_t s = 0; s < stream.size(); ++s) {
      const Event& e = stream[s];
      incident_[e.sender].push_back(static_cast<std::uint32_t>(s));
      incident_[e.receiver].push_back(static_cast<std::uint32_t>(s));
      pair_events_[pair_of(labels_[e.sender], labels_[e.receiver])].push_back(static_cast<std::uint32_t>(s));
    }
    fits_.resize(num_pairs());
    std::vector<double> times;
    for (std::size_t b = 0; b < num_pairs(); ++b) {
      gather(pair_events_[b], times);
      fits_[b] = fit_pair(times, pair_size(b, sizes_), std::nullopt, true);
    }
  }

  [[nodiscard]] std::size_t num_pairs() const { return static_cast<std::size_t>(k_ * k_); }
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] std::size_t size(int q) const { return sizes_[static_cast<std::size_t>(q)]; }
  [[nodiscard]] int label(std::size_t i) const { return labels_[i]; }

  [[nodiscard]] double total() const {
    double sum = 0.0;
    for (const auto& f : fits_) sum += f.value;
    return sum;
  }

  // Objective change of moving node i to class l, for every l (kInfeasible
  // for l == label(i)). Removal-only pairs are shared across the targets.
  // Without cold fits the change is a lower bound on the refitted one.
  void evaluate_moves(std::size_t i, std::vector<double>& delta, bool with_cold) const {
    const int q = labels_[i];
    delta.assign(static_cast<std::size_t>(k_), kInfeasible);
    std::vector<double> times;
    std::vector<std::size_t> sizes_after = sizes_;
    --sizes_after[static_cast<std::size_t>(q)];

    // Pairs touching q; those also touching l are recomputed per target.
    std::vector<char> removal_done(num_pairs(), 0);
    std::vector<PairFit> removal_fit(num_pairs());
    for (int l = 0; l < k_; ++l) {
      if (l == q) continue;
      if (opt_.forbid_empty_classes && sizes_[static_cast<std::size_t>(q)] == 1) continue;
      ++sizes_after[static_cast<std::size_t>(l)];
      double d = 0.0;
      bool feasible = true;
      for (int a = 0; a < k_ && feasible; ++a) {
        for (int c = 0; c < k_; ++c) {
          const bool touches_q = a == q || c == q;
          const bool touches_l = a == l || c == l;
          if (!touches_q && !touches_l) continue;
          const std::size_t b = pair_of(a, c);
          PairFit f;
          if (!touches_l) {
            if (!removal_done[b]) {
              build_moved(i, b, std::nullopt, times);
              removal_fit[b] = fit_pair(times, pair_size(b, sizes_after), fits_[b].params, with_cold);
              removal_done[b] = 1;
            }
            f = removal_fit[b];
          } else {
            build_moved(i, b, l, times);
            f = fit_pair(times, pair_size(b, sizes_after), fits_[b].params, with_cold);
          }
          if (f.value == kInfeasible) {
            feasible = false;
            break;
          }
          d += f.value - fits_[b].value;
        }
      }
      --sizes_after[static_cast<std::size_t>(l)];
      if (feasible) delta[static_cast<std::size_t>(l)] = d;
    }
  }

  void apply_move(std::size_t i, int l) {
    const int q = labels_[i];
    std::vector<std::size_t> sizes_after = sizes_;
    --sizes_after[static_cast<std::size_t>(q)];
    ++sizes_after[static_cast<std::size_t>(l)];
    std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> lists;
    std::vector<double> times;
    for (int a = 0; a < k_; ++a) {
      for (int c = 0; c < k_; ++c) {
        if (a != q && c != q && a != l && c != l) continue;
        const std::size_t b = pair_of(a, c);
        std::vector<std::uint32_t> idx;
        build_moved_indices(i, b, (a == l || c == l) ? std::optional<int>(l) : std::nullopt, idx);
        gather(idx, times);
        fits_[b] = fit_pair(times, pair_size(b, sizes_after), fits_[b].params, true);
        lists.emplace_back(b, std::move(idx));
      }
    }
    for (auto& [b, idx] : lists) pair_events_[b] = std::move(idx);
    labels_[i] = l;
    sizes_ = std::move(sizes_after);
  }

  [[nodiscard]] std::vector<hawkes::Params> params() const {
    std::vector<hawkes::Params> out;
    out.reserve(fits_.size());
    for (const auto& f : fits_) out.push_back(f.params);
    return out;
  }
  [[nodiscard]] ClassAssignment assignment() const { return ClassAssignment(labels_, k_); }

 private:
  [[nodiscard]] std::size_t pair_of(int a, int c) const { return static_cast<std::size_t>(a * k_ + c); }

  [[nodiscard]] std::int64_t pair_size(std::size_t b, const std::vector<std::size_t>& sizes) const {
    const auto a = b / static_cast<std::size_t>(k_);
    const auto c = b % static_cast<std::size_t>(k_);
    return block_pair_size(sizes[a], sizes[c], a == c);
  }

  void gather(const std::vector<std::uint32_t>& idx, std::vector<double>& times) const {
    times.resize(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) times[j] = stream_[idx[j]].time;
  }

  // Pair b's event list once node i leaves its class (and joins `target`, when given):
  // the current list without i's events, merged with i's events that land in b.
  void build_moved_indices(std::size_t i, std::size_t b, std::optional<int> target,
                           std::vector<std::uint32_t>& out) const {
    out.clear();
    const auto& old = pair_events_[b];
    const auto& mine = incident_[i];
    const auto node = static_cast<NodeIndex>(i);
    auto lands_in_b = [&](std::uint32_t s) {
      if (!target) return false;
      const Event& e = stream_[s];
      const int a = e.sender == node ? *target : labels_[e.sender];
      const int c = e.receiver == node ? *target : labels_[e.receiver];
      return pair_of(a, c) == b;
    };
    std::size_t u = 0;
    std::size_t v = 0;
    while (u < old.size() || v < mine.size()) {
      if (v == mine.size() || (u < old.size() && old[u] < mine[v])) {
        const Event& e = stream_[old[u]];
        if (e.sender != node && e.receiver != node) out.push_back(old[u]);
        ++u;
      } else {
        if (u < old.size() && old[u] == mine[v]) ++u;  // i's own event, re-routed below
        if (lands_in_b(mine[v])) out.push_back(mine[v]);
        ++v;
      }
    }
  }

  void build_moved(std::size_t i, std::size_t b, std::optional<int> target, std::vector<double>& times) const {
    thread_local std::vector<std::uint32_t> idx;
    build_moved_indices(i, b, target, idx);
    gather(idx, times);
  }

  // Candidate moves are scored from short warm-started fits. Applied moves also run a
  // cold fit and keep the better one: the pair likelihood is not concave and
  // warm starts can stall in a corner (alpha -> 0, beta -> 0 or infinity).
  // An applied move therefore gains at least its scored improvement.
  [[nodiscard]] PairFit fit_pair(const std::vector<double>& times, std::int64_t n_pairs,
                                 std::optional<hawkes::Params> warm, bool with_cold) const {
    if (n_pairs == 0) {
      if (!times.empty()) return {{}, kInfeasible};
      return {{0.0, opt_.fit.beta_floor, opt_.fit.lambda_floor}, 0.0};
    }
    const double horizon = opt_.likelihood.end == CompensatorEnd::kWindowEnd
                               ? stream_.horizon()
                               : (times.empty() ? 0.0 : times.back());
    if (horizon <= 0.0) return {{0.0, opt_.fit.beta_floor, opt_.fit.lambda_floor}, 0.0};
    std::optional<hawkes::FitResult> r;
    if (warm && !opt_.fit.init) {
      hawkes::FitOptions fo = opt_.fit;
      fo.init = warm;
      if (!with_cold) fo.max_iterations = std::min(fo.max_iterations, kScoringIterations);
      r = hawkes::fit_mle(times, horizon, fo);
    }
    if (!r || with_cold) {
      const auto cold = hawkes::fit_mle(times, horizon, opt_.fit);
      if (!r || cold.log_likelihood > r->log_likelihood) r = cold;
    }
    return {r->params, r->log_likelihood - static_cast<double>(times.size()) * std::log(static_cast<double>(n_pairs))};
  }

  const EventStream& stream_;
  const LocalSearchOptions& opt_;
  int k_;
  std::vector<int> labels_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<std::uint32_t>> incident_;     // per node, ascending event index
  std::vector<std::vector<std::uint32_t>> pair_events_;  // per block pair, ascending event index
  std::vector<PairFit> fits_;
};

}  // namespace

FitResult local_search(const EventStream& stream, const ClassAssignment& initial, const LocalSearchOptions& options) {
  if (initial.num_classes() < 1) throw ArgumentError("number of classes must be >= 1");
  SearchState state(stream, initial, options);
  const int max_it = options.max_iterations < 0 ? 100 * initial.num_classes() : options.max_iterations;
  const std::size_t n = stream.num_nodes();
  const int k = state.k();

  FitResult out;
  double current = state.total();
  out.trace.push_back(current);
  bool converged = false;
  int it = 0;
  std::vector<std::vector<double>> deltas(n);
  // Moves are scored from warm-started refits. When none improves, one more
  // pass scores every move with cold refits as well before declaring a local
  // maximum.
  const auto pick = [&](bool with_cold) {
    if (k > 1) parallel_for(n, options.threads, [&](std::size_t i) { state.evaluate_moves(i, deltas[i], with_cold); });
    double best = options.min_improvement * std::max(1.0, std::abs(current));
    std::pair<std::size_t, int> move{n, -1};
    for (std::size_t i = 0; i < n && k > 1; ++i) {
      for (int l = 0; l < k; ++l) {
        const double d = deltas[i][static_cast<std::size_t>(l)];
        if (d > best) {
          best = d;
          move = {i, l};
        }
      }
    }
    return move;
  };
  for (; it < max_it; ++it) {
    const auto start = std::chrono::steady_clock::now();
    auto [best_i, best_l] = pick(false);
    if (best_i == n && k > 1) std::tie(best_i, best_l) = pick(true);
    if (best_i == n) {
      converged = true;
      out.iteration_seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      break;
    }
    state.apply_move(best_i, best_l);
    current = state.total();
    out.trace.push_back(current);
    out.iteration_seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  out.iterations = it;
  out.converged = converged;
  if (!converged) out.diagnostic = "iteration cap reached";
  out.assignment = state.assignment();
  out.objective = current;
  out.model = BlockHawkesModel(class_frequencies(out.assignment), state.params());
  return out;
}

}  // namespace bppm::infer
