#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bppm {

using NodeIndex = std::uint32_t;

// One directed, timestamped interaction.
struct Event {
  NodeIndex sender = 0;
  NodeIndex receiver = 0;
  double time = 0.0;

  friend bool operator==(const Event&, const Event&) = default;
};

// Events among `num_nodes` nodes on the observation window [0, horizon],
// stored in nondecreasing time order. Ties keep their input order.
class EventStream {
 public:
  EventStream() = default;

  // Validates every event and stable-sorts by time. Throws ValidationError on
  // self-loops, negative times, times past the horizon or out-of-range nodes.
  EventStream(std::vector<Event> events, std::size_t num_nodes, double horizon);

  [[nodiscard]] std::span<const Event> events() const noexcept { return events_; }
  [[nodiscard]] const Event& operator[](std::size_t s) const noexcept { return events_[s]; }
  [[nodiscard]] std::size_t size() const noexcept { return events_.size(); }
  [[nodiscard]] bool empty() const noexcept { return events_.empty(); }
  [[nodiscard]] std::size_t num_nodes() const noexcept { return num_nodes_; }
  [[nodiscard]] double horizon() const noexcept { return horizon_; }

  // Time of the last event, or 0 for an empty stream.
  [[nodiscard]] double last_time() const noexcept { return events_.empty() ? 0.0 : events_.back().time; }

  [[nodiscard]] std::vector<double> times() const;

  // Events with t1 <= time < t2, as a new stream on the same node set with horizon t2.
  [[nodiscard]] EventStream slice(double t1, double t2) const;

 private:
  std::vector<Event> events_;
  std::size_t num_nodes_ = 0;
  double horizon_ = 0.0;
};

// Hard class labels in {0..K-1}. Empty classes are allowed.
class ClassAssignment {
 public:
  ClassAssignment() = default;
  ClassAssignment(std::vector<int> labels, int num_classes);

  [[nodiscard]] std::span<const int> labels() const noexcept { return labels_; }
  [[nodiscard]] int operator[](std::size_t i) const noexcept { return labels_[i]; }
  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] int num_classes() const noexcept { return num_classes_; }
  [[nodiscard]] std::vector<std::size_t> class_sizes() const;

  void set(std::size_t node, int label);

  friend bool operator==(const ClassAssignment&, const ClassAssignment&) = default;

 private:
  std::vector<int> labels_;
  int num_classes_ = 0;
};

// Number of ordered node pairs (i != j) in block pair (q, l).
[[nodiscard]] std::int64_t block_pair_size(std::size_t size_q, std::size_t size_l, bool diagonal) noexcept;

// Events grouped by ordered block pair b = q*K + l.
struct BlockPairView {
  int num_classes = 0;
  std::vector<std::vector<double>> times;  // ascending per pair
  std::vector<std::size_t> counts;         // m_b
  std::vector<std::int64_t> sizes;         // n_b

  [[nodiscard]] std::size_t index(int q, int l) const noexcept {
    return static_cast<std::size_t>(q) * static_cast<std::size_t>(num_classes) + static_cast<std::size_t>(l);
  }
  [[nodiscard]] std::size_t num_pairs() const noexcept { return counts.size(); }
};

[[nodiscard]] BlockPairView partition_by_blocks(const EventStream& stream, const ClassAssignment& c);

// a_ij = 1 iff at least one i->j event in [t1, t2).
class AdjacencyMatrix {
 public:
  AdjacencyMatrix(std::size_t n, double t1, double t2) : n_(n), t1_(t1), t2_(t2), entries_(n * n, 0) {}

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double t1() const noexcept { return t1_; }
  [[nodiscard]] double t2() const noexcept { return t2_; }
  [[nodiscard]] std::uint8_t operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint8_t v) noexcept { entries_[i * n_ + j] = v; }
  [[nodiscard]] std::size_t num_edges() const noexcept;

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_;
  double t1_;
  double t2_;
  std::vector<std::uint8_t> entries_;
};

// w_ij = number of i->j events.
class WeightedAdjacency {
 public:
  explicit WeightedAdjacency(std::size_t n) : n_(n), counts_(n * n, 0) {}

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::uint32_t operator()(std::size_t i, std::size_t j) const noexcept { return counts_[i * n_ + j]; }
  void add(std::size_t i, std::size_t j) noexcept { ++counts_[i * n_ + j]; }
  [[nodiscard]] std::uint64_t total() const noexcept;

 private:
  std::size_t n_;
  std::vector<std::uint32_t> counts_;
};

// Throws ArgumentError unless 0 <= t1 < t2 <= horizon.
[[nodiscard]] AdjacencyMatrix aggregate(const EventStream& stream, double t1, double t2);

// Binary adjacency over every event of the stream (closed window [0, T]).
[[nodiscard]] AdjacencyMatrix aggregate_all(const EventStream& stream);

[[nodiscard]] WeightedAdjacency weighted_adjacency(const EventStream& stream);

}  // namespace bppm
