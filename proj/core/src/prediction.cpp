#include <algorithm>
#include <cmath>

#include "bppm/error.hpp"
#include "bppm/evaluation.hpp"
#include "bppm/parallel.hpp"

namespace bppm::eval {
namespace {

void check(const PredictionProtocol& p) {
  if (p.stream == nullptr) throw ArgumentError("prediction protocol has no stream");
  if (p.classes.size() != p.stream->num_nodes()) throw ArgumentError("class assignment size differs from node count");
  if (!(p.split_time > 0.0) || !(p.split_time < p.stream->horizon()))
    throw ArgumentError("split time must lie inside (0, T)");
  if (p.num_windows < 1 || !(p.window > 0.0)) throw ArgumentError("need at least one positive-length window");
  if (p.window_start(p.num_windows) > p.stream->horizon() * (1.0 + 1e-12))
    throw ArgumentError("test windows run past the horizon");
  if (!(p.hours_per_time_unit > 0.0)) throw ArgumentError("hours_per_time_unit must be positive");
}

// Records for every admissible pair and window; `predict(b, w, history)`
// fills `predicted`, `excluded` and `flag` given the pair's events before the window.
template <class Predict>
PredictionReport run(const PredictionProtocol& protocol, Predict&& predict) {
  check(protocol);
  const BlockPairView view = partition_by_blocks(*protocol.stream, protocol.classes);
  const int k = protocol.classes.num_classes();
  std::vector<std::vector<PredictionRecord>> per_pair(view.num_pairs());
  parallel_for(view.num_pairs(), protocol.threads, [&](std::size_t b) {
    if (view.sizes[b] == 0) return;
    const auto& times = view.times[b];
    auto& out = per_pair[b];
    for (int w = 0; w < protocol.num_windows; ++w) {
      const double start = protocol.window_start(w);
      const double end = protocol.window_start(w + 1);
      const auto first = std::lower_bound(times.begin(), times.end(), start);
      PredictionRecord rec;
      rec.q = static_cast<int>(b) / k;
      rec.l = static_cast<int>(b) % k;
      rec.window = w;
      rec.censored = first == times.end() || !(*first < end);
      if (!rec.censored) rec.actual = *first - start;
      predict(b, w, std::span<const double>(times.data(), static_cast<std::size_t>(first - times.begin())), rec);
      out.push_back(rec);
    }
  });
  PredictionReport report;
  for (auto& recs : per_pair) report.records.insert(report.records.end(), recs.begin(), recs.end());
  summarize(report, protocol.hours_per_time_unit);
  return report;
}

}  // namespace

PredictionProtocol PredictionProtocol::make(const EventStream& stream, ClassAssignment classes, double train_fraction,
                                            int num_windows) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ArgumentError("train fraction must lie in (0, 1)");
  if (num_windows < 1) throw ArgumentError("need at least one test window");
  PredictionProtocol p;
  p.stream = &stream;
  p.classes = std::move(classes);
  p.split_time = train_fraction * stream.horizon();
  p.num_windows = num_windows;
  p.window = (stream.horizon() - p.split_time) / num_windows;
  return p;
}

void summarize(PredictionReport& report, double hours_per_time_unit) {
  double within = 0.0;
  double between = 0.0;
  report.within_count = 0;
  report.between_count = 0;
  for (const auto& r : report.records) {
    if (r.censored || r.excluded) continue;
    const double e = (r.predicted - r.actual) * hours_per_time_unit;
    if (r.q == r.l) {
      within += e * e;
      ++report.within_count;
    } else {
      between += e * e;
      ++report.between_count;
    }
  }
  const auto rmse = [](double sq, std::size_t n) { return n == 0 ? 0.0 : std::sqrt(sq / static_cast<double>(n)); };
  report.within_rmse = rmse(within, report.within_count);
  report.between_rmse = rmse(between, report.between_count);
  report.total_rmse = rmse(within + between, report.within_count + report.between_count);
}

PredictionReport predict_rolling(const PredictionProtocol& protocol, const hawkes::FitOptions& fit) {
  std::vector<std::optional<hawkes::Params>> warm(
      static_cast<std::size_t>(protocol.classes.num_classes() * protocol.classes.num_classes()));
  return run(protocol, [&](std::size_t b, int w, std::span<const double> history, PredictionRecord& rec) {
    const double now = protocol.window_start(w);
    auto r = hawkes::fit_mle(history, now, fit);
    if (warm[b] && !fit.init) {
      // cold and warm starts compete; the pair likelihood is not concave
      hawkes::FitOptions fo = fit;
      fo.init = warm[b];
      const auto w_fit = hawkes::fit_mle(history, now, fo);
      if (w_fit.log_likelihood > r.log_likelihood) r = w_fit;
    }
    warm[b] = r.params;
    rec.predicted = hawkes::expected_next_event_time(r.params, history, now);
    if (history.empty()) {
      rec.excluded = true;
      rec.flag = "no training events";
    } else if (!std::isfinite(rec.predicted)) {
      rec.excluded = true;
      rec.flag = "prediction not finite";
    }
  });
}

PredictionReport predict_discrete_baseline(const PredictionProtocol& protocol, double snapshot_length) {
  if (!(snapshot_length > 0.0)) throw ArgumentError("snapshot length must be positive");
  if (protocol.split_time / snapshot_length < 2.0)
    throw ArgumentError("training window must hold at least two snapshots");
  return run(protocol, [&](std::size_t, int w, std::span<const double> history, PredictionRecord& rec) {
    const double now = protocol.window_start(w);
    const auto snapshots = static_cast<std::size_t>(std::floor(now / snapshot_length + 1e-9));
    std::size_t active = 0;
    std::size_t last = static_cast<std::size_t>(-1);
    for (double t : history) {
      const auto j = static_cast<std::size_t>(std::floor(t / snapshot_length));
      if (j >= snapshots) break;
      if (j != last) {
        ++active;
        last = j;
      }
    }
    const double p = static_cast<double>(active) / static_cast<double>(snapshots);
    if (p == 0.0) {
      rec.excluded = true;
      rec.flag = "no event in any training snapshot";
      return;
    }
    rec.predicted = snapshot_length / p - snapshot_length / 2.0;
  });
}

}  // namespace bppm::eval
