#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bppm/core.hpp"

namespace bppm {

struct LoadOptions {
  std::optional<std::size_t> num_nodes;  // default: number of distinct ids
  std::optional<double> horizon;         // default: last event time
  // Keep integer ids as node indices (N = 1 + max id) instead of first-appearance mapping.
  bool dense_ids = false;
};

struct LoadedEvents {
  EventStream stream;
  // original_ids[index] is the id string as it appeared in the file.
  std::vector<std::string> original_ids;
};

// Reads the event CSV format: header `sender,receiver,time`, one event per row.
// Ids are mapped to 0-based indices in order of first appearance after a stable
// sort on time, so row order in the file never changes the result.
[[nodiscard]] LoadedEvents read_events(std::istream& in, const LoadOptions& options = {});
[[nodiscard]] LoadedEvents load_events(const std::filesystem::path& path, const LoadOptions& options = {});

void write_events(std::ostream& out, const EventStream& stream);
void write_node_mapping(std::ostream& out, const std::vector<std::string>& original_ids);

// Labels CSV: header `node,label`.
void write_labels(std::ostream& out, const ClassAssignment& c);
[[nodiscard]] ClassAssignment read_labels(std::istream& in, std::optional<int> num_classes = std::nullopt);
[[nodiscard]] ClassAssignment load_labels(const std::filesystem::path& path, std::optional<int> num_classes = std::nullopt);

void write_adjacency(std::ostream& out, const AdjacencyMatrix& a);

// Shortest decimal form that round-trips a double.
[[nodiscard]] std::string format_real(double value);

}  // namespace bppm
