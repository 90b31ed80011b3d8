// Acceptance run: one PASS/FAIL line per criterion. `--only 1,4` restricts
// the run; the exit code is nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "bppm/evaluation.hpp"
#include "bppm/generator.hpp"
#include "bppm/inference.hpp"
#include "bppm/spectral.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bppm;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Objective traces gathered from the other criteria for the monotonicity check.
struct Traces {
  std::vector<std::vector<double>> local_search;
  std::vector<std::vector<double>> vem;
  void add(infer::Method m, const infer::FitResult& r) {
    if (m == infer::Method::kSpectralLocalSearch || m == infer::Method::kRandomLocalSearch) local_search.push_back(r.trace);
    if (m == infer::Method::kSpectralVem || m == infer::Method::kRandomVem) vem.push_back(r.trace);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<double> random_times(std::size_t m, double horizon, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, horizon);
  std::vector<double> t(m);
  for (auto& x : t) x = u(rng);
  std::sort(t.begin(), t.end());
  return t;
}

Outcome likelihood_oracle() {
  Rng rng = make_rng(kSeed, {1});
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> count(0, 500);
  double worst = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 100; ++trial) {
    const double beta = std::exp(std::log(0.05) + u(rng) * std::log(2000.0));  // [0.05, 100]
    const hawkes::Params p{0.95 * beta * u(rng), beta, 0.05 + 5.0 * u(rng)};
    const double horizon = 1.0 + 99.0 * u(rng);
    const auto times = random_times(count(rng), horizon, rng);
    const double fast = hawkes::log_likelihood(p, times, horizon);
    const double direct = oracle::direct_log_likelihood(p, times, horizon);
    worst = std::max(worst, std::abs(fast - direct) / std::max(std::abs(direct), 1e-300));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 10.0, "max relative error " + fmt("%.2e", worst) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome deviation(bool poisson) {
  eval::DeviationConfig cfg;
  cfg.sizes = {10, 50, 200};
  cfg.rule = poisson ? eval::poisson_rule : eval::theorem_rule;
  cfg.simulations = 10'000;
  cfg.seed = derive_seed(kSeed, {poisson ? 3u : 2u});
  const auto report = eval::deviation_experiment(cfg);
  bool ok = true;
  std::ostringstream out;
  const auto check = [&](const std::optional<double>& d, double se, double bound) {
    if (!d) {
      ok = false;
      return;
    }
    if (poisson ? std::abs(*d) > 3.0 * se : std::abs(*d) > bound) ok = false;
  };
  for (const auto& pt : report.points) {
    for (const auto* e : {&pt.primary, pt.secondary ? &*pt.secondary : nullptr}) {
      if (e == nullptr) continue;
      check(e->delta0, e->se0, pt.bound);
      check(e->delta1, e->se1, pt.bound);
    }
    if (!pt.secondary) ok = false;
    out << "N=" << pt.num_nodes << " |d0|=" << fmt("%.2e", std::abs(pt.primary.delta0.value_or(NAN)))
        << " |d1|=" << fmt("%.2e", std::abs(pt.primary.delta1.value_or(NAN)));
    if (poisson) {
      out << " (3se " << fmt("%.2e", 3.0 * pt.primary.se0) << ", " << fmt("%.2e", 3.0 * pt.primary.se1) << ")";
    } else {
      const double target = 20.0 * static_cast<double>(pt.num_nodes);
      const double rel = std::abs(pt.mean_events - target) / target;
      if (rel > 0.05) ok = false;
      out << " bound " << fmt("%.2e", pt.bound) << " events " << fmt("%.1f", pt.mean_events);
    }
    out << "; ";
  }
  return {ok, out.str()};
}

Outcome class_recovery(Traces& traces) {
  const auto model = BlockHawkesModel::assortative(4, {0.6, 0.8, 1.8}, {0.6, 0.8, 0.6});
  const std::vector<infer::Method> methods{infer::Method::kSpectral, infer::Method::kSpectralLocalSearch,
                                           infer::Method::kSpectralVem, infer::Method::kRandomLocalSearch,
                                           infer::Method::kRandomVem};
  const int reps = 5;
  std::map<std::pair<int, infer::Method>, double> mean;
  const auto t0 = std::chrono::steady_clock::now();
  for (int duration : {20, 80}) {
    for (int rep = 0; rep < reps; ++rep) {
      Rng rng = make_rng(kSeed, {static_cast<std::uint64_t>(duration), static_cast<std::uint64_t>(rep)});
      const auto net = gen::sample_network(model, 128, duration, rng);
      for (auto m : methods) {
        infer::PipelineOptions opt;
        opt.seed = static_cast<std::uint64_t>(rep);
        const auto r = infer::fit(net.stream, 4, m, opt);
        traces.add(m, r);
        mean[{duration, m}] += eval::adjusted_rand_index(r.assignment, net.classes) / reps;
      }
    }
  }
  const double secs = seconds_since(t0);
  using M = infer::Method;
  bool a = true;
  bool c = true;
  for (int d : {20, 80}) {
    a = a && mean[{d, M::kSpectralLocalSearch}] >= mean[{d, M::kSpectral}];
    for (auto m : methods) c = c && mean[{d, M::kSpectralLocalSearch}] >= mean[{d, m}];
  }
  const bool b = mean[{80, M::kSpectralLocalSearch}] > mean[{20, M::kSpectralLocalSearch}];
  std::ostringstream out;
  out << "(a) " << (a ? "ok" : "no") << " (b) " << (b ? "ok" : "no") << " (c) " << (c ? "ok" : "no") << "; mean ARI";
  for (int d : {20, 80}) {
    out << " T=" << d << ":";
    for (auto m : methods) out << " " << infer::method_name(m) << "=" << fmt("%.3f", mean[{d, m}]);
    out << ";";
  }
  out << " " << fmt("%.0f", secs) << " s";
  return {a && b && c && secs < 1800.0, out.str()};
}

Outcome exhaustive_optimality(Traces& traces) {
  int hits = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const auto planted = fixture::planted_two_block(8, 25.0, derive_seed(kSeed, {5, static_cast<std::uint64_t>(inst)}));
    const auto best = oracle::brute_force_best(planted.stream, 2);
    infer::PipelineOptions opt;
    opt.seed = static_cast<std::uint64_t>(inst);
    const auto r = infer::fit(planted.stream, 2, infer::Method::kSpectralLocalSearch, opt);
    traces.add(infer::Method::kSpectralLocalSearch, r);
    if (eval::adjusted_rand_index(r.assignment.labels(), best.labels) == 1.0 || r.objective >= best.objective) ++hits;
  }
  return {hits >= 18, std::to_string(hits) + "/20 instances reach the brute-force optimum"};
}

Outcome monotonicity(Traces& traces) {
  // Own suite: small planted streams from random starts.
  for (int inst = 0; inst < 10; ++inst) {
    const std::size_t n = 10 + 4 * static_cast<std::size_t>(inst % 4);
    const auto planted = fixture::planted_two_block(n, 20.0, derive_seed(kSeed, {6, static_cast<std::uint64_t>(inst)}));
    const int k = 2 + inst % 2;
    infer::PipelineOptions opt;
    opt.seed = static_cast<std::uint64_t>(inst);
    opt.restarts = 1;
    traces.add(infer::Method::kRandomLocalSearch, infer::fit(planted.stream, k, infer::Method::kRandomLocalSearch, opt));
    traces.add(infer::Method::kRandomVem, infer::fit(planted.stream, k, infer::Method::kRandomVem, opt));
    traces.add(infer::Method::kSpectralVem, infer::fit(planted.stream, k, infer::Method::kSpectralVem, opt));
  }
  std::size_t ls_bad = 0;
  std::size_t vem_bad = 0;
  std::size_t ls_steps = 0;
  std::size_t vem_steps = 0;
  for (const auto& t : traces.local_search) {
    for (std::size_t i = 1; i < t.size(); ++i, ++ls_steps) ls_bad += t[i] > t[i - 1] ? 0 : 1;
  }
  for (const auto& t : traces.vem) {
    for (std::size_t i = 1; i < t.size(); ++i, ++vem_steps) vem_bad += t[i] >= t[i - 1] - 1e-8 ? 0 : 1;
  }
  std::ostringstream out;
  out << traces.local_search.size() << " local-search traces (" << ls_steps << " swaps, " << ls_bad << " violations), "
      << traces.vem.size() << " VEM traces (" << vem_steps << " iterations, " << vem_bad << " violations)";
  return {ls_bad == 0 && vem_bad == 0, out.str()};
}

Outcome scalability(Traces& traces) {
  const auto model = BlockHawkesModel::assortative(4, {1.6, 2.0, 1.2}, {0.6, 0.8, 0.6});
  const std::vector<std::size_t> sizes{256, 512, 1024};
  const int networks = 5;
  std::vector<double> median;
  std::ostringstream out;
  for (std::size_t n : sizes) {
    std::vector<double> secs;
    std::size_t events = 0;
    for (int rep = 0; rep < networks; ++rep) {
      Rng rng = make_rng(kSeed, {7, n, static_cast<std::uint64_t>(rep)});
      const auto net = gen::sample_network(model, n, 1200.0, rng);
      events += net.stream.size();
      // Random starting labels, so the first iteration applies a move.
      Rng init = make_rng(kSeed, {7, n, static_cast<std::uint64_t>(rep), 1});
      const auto tau = infer::random_soft_assignment(n, 4, init);
      infer::LocalSearchOptions opt;
      opt.max_iterations = 1;
      const auto r = infer::local_search(net.stream, infer::harden(tau), opt);
      traces.local_search.push_back(r.trace);
      secs.push_back(r.iteration_seconds.at(0));
    }
    std::sort(secs.begin(), secs.end());
    median.push_back(secs[secs.size() / 2]);
    out << "N=" << n << " M~" << events / networks << " " << fmt("%.2f", median.back()) << " s; ";
  }
  bool ok = true;
  for (std::size_t i = 1; i < median.size(); ++i) {
    const double ratio = median[i] / median[i - 1];
    ok = ok && ratio <= 3.0;
    out << "ratio " << fmt("%.2f", ratio) << " ";
  }
  return {ok, out.str()};
}

Outcome prediction_tradeoff() {
  // Time unit: hours. 48 weeks; within-block pairs fire in short bursts,
  // between-block pairs in slower clusters.
  const double horizon = 48.0 * 168.0;
  const auto model = BlockHawkesModel::assortative(4, {1.6, 2.0, 0.1}, {0.16, 0.2, 0.02});
  Rng rng = make_rng(kSeed, {8});
  const auto net = gen::sample_network(model, 200, horizon, rng);
  const double train = 2.0 / 3.0;
  const auto sc = spectral::spectral_cluster(aggregate(net.stream, 0.0, train * horizon), 4);
  const double ari = eval::adjusted_rand_index(sc.labels, net.classes);
  const auto protocol = eval::PredictionProtocol::make(net.stream, sc.labels, train, 16);
  const auto bhm = eval::predict_rolling(protocol);
  std::ostringstream out;
  out << "class ARI " << fmt("%.3f", ari) << "; BHM RMSE " << fmt("%.2f", bhm.total_rmse) << " h;";
  bool ok = true;
  double best_within = INFINITY;
  double best_between = INFINITY;
  double h_within = 0.0;
  double h_between = 0.0;
  for (double h : {1.0, 2.0, 3.0, 6.0, 12.0}) {
    const auto d = eval::predict_discrete_baseline(protocol, h);
    ok = ok && bhm.total_rmse <= d.total_rmse;
    if (d.within_rmse < best_within) best_within = d.within_rmse, h_within = h;
    if (d.between_rmse < best_between) best_between = d.between_rmse, h_between = h;
    out << " h=" << h << " " << fmt("%.2f", d.total_rmse);
  }
  out << "; discrete best h within " << h_within << ", between " << h_between;
  return {ok && h_within != h_between, out.str()};
}

Outcome elbo_bound() {
  Rng rng = make_rng(kSeed, {9});
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::uniform_int_distribution<std::size_t> nodes(4, 8);
  std::uniform_int_distribution<int> bit(0, 1);
  double worst = -INFINITY;
  for (int inst = 0; inst < 10; ++inst) {
    const std::size_t n = nodes(rng);
    const auto planted = fixture::planted_two_block(n, 8.0, derive_seed(kSeed, {9, static_cast<std::uint64_t>(inst)}));
    const auto& s = planted.stream;
    std::vector<hawkes::Params> theta(4);
    for (auto& p : theta) {
      const double beta = u(rng);
      p = {0.4 * beta * u(rng), beta, u(rng)};
    }
    const double p0 = 0.2 + 0.6 * (u(rng) - 0.1) / 1.9;
    const std::vector<double> pi{p0, 1.0 - p0};
    const double evidence = oracle::log_evidence(s, 2, theta, pi, s.horizon());
    std::vector<int> labels(n);
    for (auto& l : labels) l = bit(rng);
    for (const Eigen::MatrixXd& tau :
         {infer::random_soft_assignment(n, 2, rng), infer::one_hot(ClassAssignment(labels, 2))}) {
      worst = std::max(worst, infer::elbo(s, tau, theta, pi, s.horizon()) - evidence);
    }
  }
  return {worst <= 0.0, "max(elbo - log evidence) " + fmt("%.3e", worst)};
}

Outcome simulation_checks() {
  Rng rng = make_rng(kSeed, {10});
  const hawkes::Params poisson{0.0, 1.0, 3.0};
  const auto times = hawkes::simulate(poisson, 1000.0, rng);
  std::vector<double> gaps(times.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) gaps[i] = times[i] - std::exchange(prev, times[i]);
  const double ks = oracle::ks_exponential_pvalue(gaps, poisson.lambda_inf);

  // Two planted classes; every block pair has at least 12 ordered node pairs.
  const auto model = BlockHawkesModel::assortative(2, {0.0, 1.0, 60.0}, {0.0, 1.0, 60.0});
  const ClassAssignment classes({0, 0, 0, 0, 1, 1, 1, 1}, 2);
  const auto net = gen::sample_network(model, classes, 50.0, rng);
  double worst_chi = 1.0;
  for (int q = 0; q < 2; ++q) {
    for (int l = 0; l < 2; ++l) {
      std::map<std::pair<NodeIndex, NodeIndex>, std::size_t> counts;
      for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
          if (i != j && classes[i] == q && classes[j] == l) counts[{static_cast<NodeIndex>(i), static_cast<NodeIndex>(j)}] = 0;
        }
      }
      for (const auto& e : net.stream.events()) {
        if (classes[e.sender] == q && classes[e.receiver] == l) ++counts.at({e.sender, e.receiver});
      }
      std::vector<std::size_t> cells;
      for (const auto& [key, v] : counts) cells.push_back(v);
      worst_chi = std::min(worst_chi, oracle::chi_square_uniform_pvalue(cells));
    }
  }
  return {ks >= 0.01 && worst_chi >= 0.01,
          "KS p=" + fmt("%.3f", ks) + " (" + std::to_string(gaps.size()) + " gaps), min chi-square p=" +
              fmt("%.3f", worst_chi) + " over 4 block pairs"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bppm acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "criteria to run (default: all)")->delimiter(',')->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  const std::set<int> selected = only.empty() ? std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}
                                              : std::set<int>(only.begin(), only.end());
  Traces traces;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"likelihood oracle equivalence", likelihood_oracle},
      {"deviation bound", [] { return deviation(false); }},
      {"Poisson independence", [] { return deviation(true); }},
      {"class recovery", [&] { return class_recovery(traces); }},
      {"exhaustive-oracle optimality", [&] { return exhaustive_optimality(traces); }},
      {"scalability", [&] { return scalability(traces); }},
      {"prediction trade-off", prediction_tradeoff},
      {"ELBO upper bound", elbo_bound},
      {"simulation distributions", simulation_checks},
      {"monotonicity", [&] { return monotonicity(traces); }},
  };
  // Monotonicity runs last so it sees the traces of the other criteria.
  const int ids[] = {1, 2, 3, 4, 5, 7, 8, 9, 10, 6};
  bool all = true;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const int id = ids[c];
    if (!selected.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("criterion %d %s: %s: %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", criteria[c].first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
