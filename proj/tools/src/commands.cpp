#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bppm/error.hpp"
#include "bppm/evaluation.hpp"
#include "bppm/event_io.hpp"
#include "bppm/generator.hpp"
#include "bppm/inference.hpp"
#include "bppm/model_io.hpp"
#include "bppm/spectral.hpp"

namespace bppm::cli {
namespace {

using nlohmann::json;

// ---- shared input handling ----

struct Input {
  std::string events;
  std::string ids = "auto";  // dense | map | auto
  std::size_t nodes = 0;     // 0: infer
  double horizon = 0.0;      // 0: last event time
  std::string mapping;       // default: next to the primary output
};

void add_input(CLI::App* sub, Input& in) {
  sub->add_option("--events", in.events, "event CSV (sender,receiver,time)")->required()->check(CLI::ExistingFile);
  sub->add_option("--ids", in.ids, "node ids: dense integers, first-appearance map, or auto")
      ->check(CLI::IsMember({"dense", "map", "auto"}))
      ->capture_default_str();
  sub->add_option("--nodes", in.nodes, "number of nodes (default: inferred)");
  sub->add_option("--horizon", in.horizon, "observation window end T (default: last event time)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--mapping", in.mapping, "node mapping CSV output (map mode; default <output>.nodes.csv)");
}

struct Loaded {
  EventStream stream;
  std::vector<std::string> ids;
  bool mapped = false;
};

Loaded load(const Input& in) {
  LoadOptions opt;
  if (in.nodes > 0) opt.num_nodes = in.nodes;
  if (in.horizon > 0.0) opt.horizon = in.horizon;
  const auto try_load = [&](bool dense) {
    opt.dense_ids = dense;
    auto r = load_events(in.events, opt);
    return Loaded{std::move(r.stream), std::move(r.original_ids), !dense};
  };
  if (in.ids == "dense") return try_load(true);
  if (in.ids == "map") return try_load(false);
  try {
    return try_load(true);
  } catch (const ParseError&) {
    return try_load(false);
  }
}

void emit_mapping(const Input& in, const Loaded& data, const std::string& primary, const Context& ctx) {
  if (!data.mapped && in.mapping.empty()) return;
  std::ostringstream out;
  if (data.mapped) {
    write_node_mapping(out, data.ids);
  } else {
    std::vector<std::string> identity(data.stream.num_nodes());
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = std::to_string(i);
    write_node_mapping(out, identity);
  }
  write_output(in.mapping.empty() ? primary + ".nodes.csv" : in.mapping, out.str(), ctx.provenance);
}

template <class F>
std::string render(F&& f) {
  std::ostringstream out;
  f(out);
  return out.str();
}

hawkes::Params params_from(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) throw ArgumentError(std::string(what) + " needs alpha,beta,lambda_inf");
  return {v[0], v[1], v[2]};
}

// ---- simulate ----

struct SimulateArgs {
  std::string model;
  int k = 4;
  std::size_t nodes = 128;
  double horizon = 80.0;
  std::vector<double> diagonal{0.6, 0.8, 1.8};
  std::vector<double> off_diagonal{0.6, 0.8, 0.6};
  std::vector<double> pi;
  std::string events_out;
  std::string labels_out;
  std::string model_out;
};

void simulate(const SimulateArgs& a, const Context& ctx) {
  BlockHawkesModel model;
  if (!a.model.empty()) {
    std::ifstream in(a.model);
    if (!in) throw std::runtime_error("cannot open model " + a.model);
    model = read_model(in);
  } else {
    model = BlockHawkesModel::assortative(a.k, params_from(a.diagonal, "--diagonal"),
                                          params_from(a.off_diagonal, "--off-diagonal"));
    if (!a.pi.empty()) {
      if (static_cast<int>(a.pi.size()) != a.k) throw ArgumentError("--pi needs K entries");
      model = BlockHawkesModel(a.pi, {model.all_params().begin(), model.all_params().end()});
    }
  }
  Rng rng = make_rng(ctx.seed);
  const auto net = gen::sample_network(model, a.nodes, a.horizon, rng);
  for (const auto& w : net.warnings) std::cerr << json{{"warning", w}}.dump() << "\n";
  write_output(a.events_out, render([&](std::ostream& o) { write_events(o, net.stream); }), ctx.provenance);
  if (!a.labels_out.empty())
    write_output(a.labels_out, render([&](std::ostream& o) { write_labels(o, net.classes); }), ctx.provenance);
  if (!a.model_out.empty()) write_output(a.model_out, model_to_json(model) + "\n", ctx.provenance);
  std::cout << json{{"events", net.stream.size()}, {"nodes", a.nodes}, {"discarded", net.discarded_events}}.dump()
            << "\n";
}

// ---- fit ----

struct FitArgs {
  Input input;
  int k = 0;
  std::string method = "spectral+ls";
  int restarts = 10;
  double tau = 0.0;  // 0: average degree
  int ls_max_iterations = -1;
  int vem_max_iterations = 100;
  double vem_tolerance = 1e-7;
  double fit_tolerance = 1e-9;
  std::string compensator = "window-end";
  std::string elbo_horizon = "last-event";
  bool forbid_empty = false;
  std::string labels_out;
  std::string model_out;
  std::string trace_out;
};

infer::PipelineOptions pipeline_options(const FitArgs& a, const Context& ctx) {
  infer::PipelineOptions o;
  o.seed = ctx.seed;
  o.restarts = a.restarts;
  if (a.tau > 0.0) o.spectral.tau = a.tau;
  o.local_search.max_iterations = a.ls_max_iterations;
  o.local_search.threads = ctx.threads;
  o.local_search.forbid_empty_classes = a.forbid_empty;
  o.local_search.fit.gradient_tolerance = a.fit_tolerance;
  o.local_search.likelihood.end =
      a.compensator == "last-event" ? infer::CompensatorEnd::kLastEvent : infer::CompensatorEnd::kWindowEnd;
  o.vem.max_iterations = a.vem_max_iterations;
  o.vem.tolerance = a.vem_tolerance;
  o.vem.fit.gradient_tolerance = a.fit_tolerance;
  o.vem.horizon = a.elbo_horizon == "window-end" ? infer::ElboHorizon::kWindowEnd : infer::ElboHorizon::kLastEvent;
  return o;
}

void add_fit_options(CLI::App* sub, FitArgs& a) {
  sub->add_option("--method", a.method, "spectral, spectral+ls, spectral+vem, random+ls or random+vem")
      ->check(CLI::IsMember({"spectral", "spectral+ls", "spectral+vem", "random+ls", "random+vem"}))
      ->capture_default_str();
  sub->add_option("--restarts", a.restarts, "random initializations")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--tau", a.tau, "spectral regularizer (default: average degree)")->check(CLI::PositiveNumber);
  sub->add_option("--ls-max-iterations", a.ls_max_iterations, "local-search iteration cap (default 100K)");
  sub->add_option("--vem-max-iterations", a.vem_max_iterations)->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--vem-tolerance", a.vem_tolerance, "relative ELBO change")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--fit-tolerance", a.fit_tolerance, "Hawkes MLE gradient tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--compensator", a.compensator, "likelihood compensator end: window-end or last-event")
      ->check(CLI::IsMember({"window-end", "last-event"}))
      ->capture_default_str();
  sub->add_option("--elbo-horizon", a.elbo_horizon, "ELBO compensator end: last-event or window-end")
      ->check(CLI::IsMember({"window-end", "last-event"}))
      ->capture_default_str();
  sub->add_flag("--forbid-empty-classes", a.forbid_empty, "local search never empties a class");
}

void fit(const FitArgs& a, const Context& ctx) {
  const auto data = load(a.input);
  const auto r = infer::fit(data.stream, a.k, infer::parse_method(a.method), pipeline_options(a, ctx));
  write_output(a.labels_out, render([&](std::ostream& o) { write_labels(o, r.assignment); }), ctx.provenance);
  if (!a.model_out.empty()) write_output(a.model_out, model_to_json(r.model) + "\n", ctx.provenance);
  if (!a.trace_out.empty()) {
    write_output(a.trace_out, render([&](std::ostream& o) {
                   o << "iteration,objective\n";
                   for (std::size_t i = 0; i < r.trace.size(); ++i) o << i << ',' << format_real(r.trace[i]) << '\n';
                 }),
                 ctx.provenance);
  }
  emit_mapping(a.input, data, a.labels_out, ctx);
  json summary{{"method", a.method},       {"objective", r.objective}, {"iterations", r.iterations},
               {"converged", r.converged}, {"nodes", data.stream.num_nodes()}, {"events", data.stream.size()}};
  if (!r.diagnostic.empty()) summary["diagnostic"] = r.diagnostic;
  std::cout << summary.dump() << "\n";
}

// ---- spectral ----

struct SpectralArgs {
  Input input;
  int k = 0;
  double tau = 0.0;
  bool scale = false;
  double t1 = 0.0;
  double t2 = 0.0;  // 0: through T inclusive
  int kmeans_restarts = 20;
  int top = 10;
  std::string labels_out;
  std::string singular_values_out;
};

// Events in [t1, t2), or in [t1, T] when no end was given, so the default
// window keeps events stamped at T.
EventStream window(const EventStream& s, double t1, double t2) {
  if (t2 > 0.0) {
    if (!(t1 < t2)) throw ArgumentError("need t1 < t2");
    return s.slice(t1, t2);
  }
  if (!(t1 >= 0.0 && t1 < s.horizon())) throw ArgumentError("need 0 <= t1 < T");
  std::vector<Event> kept;
  for (const auto& e : s.events())
    if (e.time >= t1) kept.push_back(e);
  return EventStream(std::move(kept), s.num_nodes(), s.horizon());
}

void spectral_cmd(const SpectralArgs& a, const Context& ctx) {
  const auto data = load(a.input);
  const auto adj = aggregate_all(window(data.stream, a.t1, a.t2));
  spectral::SpectralOptions opt;
  if (a.tau > 0.0) opt.tau = a.tau;
  opt.scale_by_singular_values = a.scale;
  opt.kmeans.restarts = a.kmeans_restarts;
  opt.kmeans.seed = ctx.seed;
  const auto r = spectral::spectral_cluster(adj, a.k, opt);
  for (bool z : r.embedding.zero_rows) {
    if (z) {
      std::cerr << json{{"warning", "isolated nodes in the aggregated window"}}.dump() << "\n";
      break;
    }
  }
  if (r.embedding.rank_deficient) std::cerr << json{{"warning", "Laplacian rank below K"}}.dump() << "\n";
  write_output(a.labels_out, render([&](std::ostream& o) { write_labels(o, r.labels); }), ctx.provenance);
  if (!a.singular_values_out.empty()) {
    const auto sv = spectral::singular_value_profile(adj, a.top, opt.tau);
    write_output(a.singular_values_out, render([&](std::ostream& o) {
                   o << "rank,singular_value\n";
                   for (std::size_t i = 0; i < sv.size(); ++i) o << i + 1 << ',' << format_real(sv[i]) << '\n';
                 }),
                 ctx.provenance);
  }
  emit_mapping(a.input, data, a.labels_out, ctx);
  std::cout << json{{"tau", r.embedding.tau}, {"rank", r.embedding.rank}, {"kmeans_objective", r.kmeans_objective}}.dump()
            << "\n";
}

// ---- predict ----

struct PredictArgs {
  FitArgs fit;  // class estimation when no labels are given
  std::string labels;
  double train_fraction = 2.0 / 3.0;
  int windows = 16;
  std::vector<double> snapshot_hours{1, 2, 3, 6, 12};
  double hours_per_unit = 1.0;
  std::string report_out;
  std::string records_out;
};

void write_records(std::ostream& o, const char* arm, double h, const eval::PredictionReport& r, bool header) {
  if (header) o << "arm,snapshot_hours,q,l,window,predicted,actual,censored,excluded,flag\n";
  for (const auto& rec : r.records) {
    o << arm << ',' << (h > 0.0 ? format_real(h) : "") << ',' << rec.q << ',' << rec.l << ',' << rec.window << ','
      << (rec.excluded && !std::isfinite(rec.predicted) ? "" : format_real(rec.predicted)) << ','
      << (rec.censored ? "" : format_real(rec.actual)) << ',' << rec.censored << ',' << rec.excluded << ','
      << rec.flag << '\n';
  }
}

void predict(const PredictArgs& a, const Context& ctx) {
  const auto data = load(a.fit.input);
  const auto& stream = data.stream;
  ClassAssignment classes;
  if (!a.labels.empty()) {
    classes = load_labels(a.labels, a.fit.k > 0 ? std::optional<int>(a.fit.k) : std::nullopt);
    if (classes.size() != stream.num_nodes()) throw ValidationError("labels do not cover the stream's nodes");
  } else {
    if (a.fit.k < 1) throw ArgumentError("predict needs --labels or --k");
    const auto train = stream.slice(0.0, a.train_fraction * stream.horizon());
    classes = infer::fit(train, a.fit.k, infer::parse_method(a.fit.method), pipeline_options(a.fit, ctx)).assignment;
  }
  auto protocol = eval::PredictionProtocol::make(stream, classes, a.train_fraction, a.windows);
  protocol.hours_per_time_unit = a.hours_per_unit;
  protocol.threads = ctx.threads;
  hawkes::FitOptions fo;
  fo.gradient_tolerance = a.fit.fit_tolerance;
  const auto bhm = eval::predict_rolling(protocol, fo);
  std::vector<std::pair<double, eval::PredictionReport>> discrete;
  for (double h : a.snapshot_hours) discrete.emplace_back(h, eval::predict_discrete_baseline(protocol, h / a.hours_per_unit));

  std::ostringstream rep;
  rep << "arm,snapshot_hours,within_rmse,between_rmse,total_rmse,within_count,between_count\n";
  const auto row = [&](const char* arm, double h, const eval::PredictionReport& r) {
    rep << arm << ',' << (h > 0.0 ? format_real(h) : "") << ',' << format_real(r.within_rmse) << ','
        << format_real(r.between_rmse) << ',' << format_real(r.total_rmse) << ',' << r.within_count << ','
        << r.between_count << '\n';
  };
  row("bhm", 0.0, bhm);
  for (const auto& [h, r] : discrete) row("discrete", h, r);
  write_output(a.report_out, rep.str(), ctx.provenance);
  std::cout << rep.str();
  if (!a.records_out.empty()) {
    write_output(a.records_out, render([&](std::ostream& o) {
                   write_records(o, "bhm", 0.0, bhm, true);
                   for (const auto& [h, r] : discrete) write_records(o, "discrete", h, r, false);
                 }),
                 ctx.provenance);
  }
  if (a.labels.empty()) {
    write_output(a.report_out + ".labels.csv", render([&](std::ostream& o) { write_labels(o, classes); }),
                 ctx.provenance);
  }
  emit_mapping(a.fit.input, data, a.report_out, ctx);
}

// ---- check-theorem ----

struct TheoremArgs {
  std::vector<std::size_t> sizes{10, 50, 200};
  std::size_t sims = 10'000;
  double horizon = 20.0;
  std::string rule = "theorem";
  std::string out;
};

void check_theorem(const TheoremArgs& a, const Context& ctx) {
  eval::DeviationConfig cfg;
  cfg.sizes = a.sizes;
  cfg.simulations = a.sims;
  cfg.horizon = a.horizon;
  cfg.rule = a.rule == "poisson" ? eval::ParamsRule(eval::poisson_rule) : eval::ParamsRule(eval::theorem_rule);
  cfg.seed = ctx.seed;
  cfg.threads = ctx.threads;
  const auto report = eval::deviation_experiment(cfg);
  const auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  std::ostringstream o;
  o << "num_nodes,block_size,simulations,mean_events,theoretical_events,zero_probability,entries,delta0,se0,delta1,se1,"
       "bound,within_bound\n";
  for (const auto& p : report.points) {
    const auto line = [&](const char* which, const eval::EntryPairDeviation& d) {
      const bool within = d.delta0 && d.delta1 && std::abs(*d.delta0) <= p.bound && std::abs(*d.delta1) <= p.bound;
      o << p.num_nodes << ',' << p.block_size << ',' << p.simulations << ',' << format_real(p.mean_events) << ','
        << (std::isfinite(p.theoretical_events) ? format_real(p.theoretical_events) : "") << ','
        << format_real(p.zero_probability) << ',' << which << ',' << opt(d.delta0) << ',' << format_real(d.se0) << ','
        << opt(d.delta1) << ',' << format_real(d.se1) << ',' << format_real(p.bound) << ',' << within << '\n';
    };
    line("primary", p.primary);
    if (p.secondary) line("secondary", *p.secondary);
  }
  write_output(a.out, o.str(), ctx.provenance);
  std::cout << o.str();
}

// ---- eval-ari ----

struct AriArgs {
  std::string truth;
  std::vector<std::string> labels;
  std::string out;
};

void eval_ari(const AriArgs& a, const Context& ctx) {
  const auto truth = load_labels(a.truth);
  std::ostringstream o;
  o << "labels,ari\n";
  for (const auto& path : a.labels) {
    o << path << ',' << format_real(eval::adjusted_rand_index(truth, load_labels(path))) << '\n';
  }
  if (!a.out.empty()) write_output(a.out, o.str(), ctx.provenance);
  std::cout << o.str();
}

// ---- aggregate ----

struct AggregateArgs {
  Input input;
  double t1 = 0.0;
  double t2 = 0.0;  // 0: through T inclusive
  bool weighted = false;
  std::string out;
};

void aggregate_cmd(const AggregateArgs& a, const Context& ctx) {
  const auto data = load(a.input);
  const auto win = window(data.stream, a.t1, a.t2);
  std::string text;
  if (a.weighted) {
    const auto w = weighted_adjacency(win);
    text = render([&](std::ostream& o) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) o << (j ? "," : "") << w(i, j);
        o << '\n';
      }
    });
  } else {
    text = render([&](std::ostream& o) { write_adjacency(o, aggregate_all(win)); });
  }
  write_output(a.out, text, ctx.provenance);
  emit_mapping(a.input, data, a.out, ctx);
}

}  // namespace

Command add_simulate(CLI::App& app) {
  auto a = std::make_shared<SimulateArgs>();
  auto* sub = app.add_subcommand("simulate", "sample a network from the block Hawkes model");
  sub->add_option("--model", a->model, "model JSON (overrides the assortative parameters)")->check(CLI::ExistingFile);
  sub->add_option("--k", a->k, "number of classes")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--nodes", a->nodes, "number of nodes")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--horizon", a->horizon, "duration T")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--diagonal", a->diagonal, "alpha,beta,lambda_inf of diagonal pairs")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--off-diagonal", a->off_diagonal, "alpha,beta,lambda_inf of off-diagonal pairs")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--pi", a->pi, "class probabilities (default uniform)")->delimiter(',');
  sub->add_option("--events-out", a->events_out, "event CSV output")->required();
  sub->add_option("--labels-out", a->labels_out, "true class labels CSV output");
  sub->add_option("--model-out", a->model_out, "model JSON output");
  return [a](const Context& ctx) { simulate(*a, ctx); };
}

Command add_fit(CLI::App& app) {
  auto a = std::make_shared<FitArgs>();
  auto* sub = app.add_subcommand("fit", "estimate classes and block-pair Hawkes parameters");
  add_input(sub, a->input);
  sub->add_option("--k", a->k, "number of classes")->required()->check(CLI::PositiveNumber);
  add_fit_options(sub, *a);
  sub->add_option("--labels-out", a->labels_out, "estimated labels CSV")->required();
  sub->add_option("--model-out", a->model_out, "fitted model JSON");
  sub->add_option("--trace-out", a->trace_out, "objective trace CSV");
  return [a](const Context& ctx) { fit(*a, ctx); };
}

Command add_spectral(CLI::App& app) {
  auto a = std::make_shared<SpectralArgs>();
  auto* sub = app.add_subcommand("spectral", "regularized spectral clustering of the aggregated adjacency");
  add_input(sub, a->input);
  sub->add_option("--k", a->k, "number of classes")->required()->check(CLI::PositiveNumber);
  sub->add_option("--tau", a->tau, "regularizer (default: average degree)")->check(CLI::PositiveNumber);
  sub->add_flag("--scale", a->scale, "scale the embedding by square-root singular values");
  sub->add_option("--t1", a->t1, "aggregation window start")->capture_default_str();
  sub->add_option("--t2", a->t2, "aggregation window end (default: T, inclusive)");
  sub->add_option("--kmeans-restarts", a->kmeans_restarts)->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--top", a->top, "singular values to report")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--labels-out", a->labels_out, "labels CSV")->required();
  sub->add_option("--singular-values-out", a->singular_values_out, "singular value CSV");
  return [a](const Context& ctx) { spectral_cmd(*a, ctx); };
}

Command add_predict(CLI::App& app) {
  auto a = std::make_shared<PredictArgs>();
  auto* sub = app.add_subcommand("predict", "next-event-time prediction: Hawkes arm against the discrete SBM");
  add_input(sub, a->fit.input);
  sub->add_option("--labels", a->labels, "class labels CSV (otherwise estimated on the training split)")
      ->check(CLI::ExistingFile);
  sub->add_option("--k", a->fit.k, "number of classes when estimating")->check(CLI::PositiveNumber);
  add_fit_options(sub, a->fit);
  sub->add_option("--train-fraction", a->train_fraction)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sub->add_option("--windows", a->windows, "test windows")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--snapshot-hours", a->snapshot_hours, "discrete SBM snapshot lengths in hours")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--hours-per-unit", a->hours_per_unit, "hours per stream time unit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--report-out", a->report_out, "RMSE summary CSV")->required();
  sub->add_option("--records-out", a->records_out, "per-window prediction CSV");
  return [a](const Context& ctx) { predict(*a, ctx); };
}

Command add_check_theorem(CLI::App& app) {
  auto a = std::make_shared<TheoremArgs>();
  auto* sub = app.add_subcommand("check-theorem", "deviation-from-independence simulation for single blocks");
  sub->add_option("--sizes", a->sizes, "numbers of nodes")->delimiter(',')->check(CLI::Range(4, 1 << 20))->capture_default_str();
  sub->add_option("--sims", a->sims, "simulations per size")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--horizon", a->horizon)->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--rule", a->rule, "theorem (alpha=5N, beta=10N, lambda=0.5N) or poisson (alpha=0)")
      ->check(CLI::IsMember({"theorem", "poisson"}))
      ->capture_default_str();
  sub->add_option("--out", a->out, "deviation report CSV")->required();
  return [a](const Context& ctx) { check_theorem(*a, ctx); };
}

Command add_eval_ari(CLI::App& app) {
  auto a = std::make_shared<AriArgs>();
  auto* sub = app.add_subcommand("eval-ari", "adjusted Rand index of label files against the truth");
  sub->add_option("--truth", a->truth, "reference labels CSV")->required()->check(CLI::ExistingFile);
  sub->add_option("--labels", a->labels, "labels CSVs to score")->required()->delimiter(',')->check(CLI::ExistingFile);
  sub->add_option("--out", a->out, "ARI report CSV");
  return [a](const Context& ctx) { eval_ari(*a, ctx); };
}

Command add_aggregate(CLI::App& app) {
  auto a = std::make_shared<AggregateArgs>();
  auto* sub = app.add_subcommand("aggregate", "adjacency matrix of the events in [t1, t2), or [t1, T] by default");
  add_input(sub, a->input);
  sub->add_option("--t1", a->t1)->capture_default_str();
  sub->add_option("--t2", a->t2, "window end (default: T, inclusive)");
  sub->add_flag("--weighted", a->weighted, "event counts instead of 0/1 entries");
  sub->add_option("--out", a->out, "adjacency CSV")->required();
  return [a](const Context& ctx) { aggregate_cmd(*a, ctx); };
}

}  // namespace bppm::cli
