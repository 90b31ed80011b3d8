#include "bppm/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bppm/error.hpp"

namespace bppm {

EventStream::EventStream(std::vector<Event> events, std::size_t num_nodes, double horizon)
    : events_(std::move(events)), num_nodes_(num_nodes), horizon_(horizon) {
  if (num_nodes_ == 0) throw ValidationError("event stream needs at least one node");
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) throw ValidationError("stream horizon must be positive and finite");
  for (std::size_t s = 0; s < events_.size(); ++s) {
    const Event& e = events_[s];
    if (e.sender == e.receiver)
      throw ValidationError("event " + std::to_string(s) + " is a self-loop on node " + std::to_string(e.sender));
    if (e.sender >= num_nodes_ || e.receiver >= num_nodes_)
      throw ValidationError("event " + std::to_string(s) + " references a node >= N=" + std::to_string(num_nodes_));
    if (!std::isfinite(e.time) || e.time < 0.0)
      throw ValidationError("event " + std::to_string(s) + " has a negative or non-finite time");
    if (e.time > horizon_)
      throw ValidationError("event " + std::to_string(s) + " lies past the horizon");
  }
  std::stable_sort(events_.begin(), events_.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });
}

std::vector<double> EventStream::times() const {
  std::vector<double> out(events_.size());
  std::transform(events_.begin(), events_.end(), out.begin(), [](const Event& e) { return e.time; });
  return out;
}

EventStream EventStream::slice(double t1, double t2) const {
  if (!(t1 < t2)) throw ArgumentError("slice requires t1 < t2");
  auto lo = std::lower_bound(events_.begin(), events_.end(), t1,
                             [](const Event& e, double t) { return e.time < t; });
  auto hi = std::lower_bound(lo, events_.end(), t2, [](const Event& e, double t) { return e.time < t; });
  return EventStream(std::vector<Event>(lo, hi), num_nodes_, t2);
}

ClassAssignment::ClassAssignment(std::vector<int> labels, int num_classes)
    : labels_(std::move(labels)), num_classes_(num_classes) {
  if (num_classes_ < 1) throw ArgumentError("number of classes must be >= 1");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0 || labels_[i] >= num_classes_)
      throw ArgumentError("label of node " + std::to_string(i) + " outside [0, K)");
  }
}

std::vector<std::size_t> ClassAssignment::class_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(num_classes_), 0);
  for (int label : labels_) ++sizes[static_cast<std::size_t>(label)];
  return sizes;
}

void ClassAssignment::set(std::size_t node, int label) {
  if (label < 0 || label >= num_classes_) throw ArgumentError("label outside [0, K)");
  labels_.at(node) = label;
}

std::int64_t block_pair_size(std::size_t size_q, std::size_t size_l, bool diagonal) noexcept {
  const auto q = static_cast<std::int64_t>(size_q);
  const auto l = static_cast<std::int64_t>(size_l);
  if (diagonal) return q > 0 ? q * (q - 1) : 0;
  return q * l;
}

BlockPairView partition_by_blocks(const EventStream& stream, const ClassAssignment& c) {
  if (c.size() < stream.num_nodes())
    throw ArgumentError("class assignment covers fewer nodes than the stream");
  const int k = c.num_classes();
  BlockPairView view;
  view.num_classes = k;
  const std::size_t p = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
  view.times.assign(p, {});
  view.counts.assign(p, 0);
  view.sizes.assign(p, 0);
  for (const Event& e : stream.events()) {
    const std::size_t b = view.index(c[e.sender], c[e.receiver]);
    view.times[b].push_back(e.time);
  }
  const auto sizes = c.class_sizes();
  for (int q = 0; q < k; ++q) {
    for (int l = 0; l < k; ++l) {
      const std::size_t b = view.index(q, l);
      view.counts[b] = view.times[b].size();
      view.sizes[b] = block_pair_size(sizes[static_cast<std::size_t>(q)], sizes[static_cast<std::size_t>(l)], q == l);
    }
  }
  return view;
}

std::size_t AdjacencyMatrix::num_edges() const noexcept {
  return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), std::uint8_t{1}));
}

std::uint64_t WeightedAdjacency::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto w : counts_) sum += w;
  return sum;
}

AdjacencyMatrix aggregate(const EventStream& stream, double t1, double t2) {
  if (!(t1 < t2)) throw ArgumentError("aggregate requires t1 < t2");
  if (t1 < 0.0 || t2 > stream.horizon()) throw ArgumentError("aggregate window must lie within [0, T]");
  AdjacencyMatrix a(stream.num_nodes(), t1, t2);
  const auto events = stream.events();
  auto it = std::lower_bound(events.begin(), events.end(), t1,
                             [](const Event& e, double t) { return e.time < t; });
  for (; it != events.end() && it->time < t2; ++it) a.set(it->sender, it->receiver, 1);
  return a;
}

AdjacencyMatrix aggregate_all(const EventStream& stream) {
  AdjacencyMatrix a(stream.num_nodes(), 0.0, stream.horizon());
  for (const Event& e : stream.events()) a.set(e.sender, e.receiver, 1);
  return a;
}

WeightedAdjacency weighted_adjacency(const EventStream& stream) {
  WeightedAdjacency w(stream.num_nodes());
  for (const Event& e : stream.events()) w.add(e.sender, e.receiver);
  return w;
}

}  // namespace bppm
