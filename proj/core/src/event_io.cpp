#include "bppm/event_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "bppm/error.hpp"

namespace bppm {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

template <class Int>
bool parse_int(std::string_view s, Int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

bool is_header(const std::vector<std::string_view>& fields, std::array<std::string_view, 3> names) {
  if (fields.size() != names.size()) return false;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (fields[i] != names[i]) return false;
  }
  return true;
}

struct RawRow {
  std::string sender;
  std::string receiver;
  double time;
  std::size_t line;
};

}  // namespace

std::string format_real(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf.data(), ptr);
}

LoadedEvents read_events(std::istream& in, const LoadOptions& options) {
  std::vector<RawRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    auto fields = split(view);
    if (first) {
      first = false;
      if (is_header(fields, {"sender", "receiver", "time"})) continue;
    }
    if (fields.size() != 3) throw ParseError("expected 3 fields (sender,receiver,time), got " + std::to_string(fields.size()), line_no);
    double t = 0.0;
    if (fields[0].empty() || fields[1].empty()) throw ParseError("empty node id", line_no);
    if (!parse_double(fields[2], t)) throw ParseError("time is not a decimal real: '" + std::string(fields[2]) + "'", line_no);
    if (t < 0.0) throw ValidationError("line " + std::to_string(line_no) + ": negative event time");
    if (fields[0] == fields[1]) throw ValidationError("line " + std::to_string(line_no) + ": self-loop on node " + std::string(fields[0]));
    rows.push_back({std::string(fields[0]), std::string(fields[1]), t, line_no});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const RawRow& a, const RawRow& b) { return a.time < b.time; });

  std::vector<Event> events;
  events.reserve(rows.size());
  std::vector<std::string> ids;
  if (options.dense_ids) {
    std::size_t max_id = 0;
    for (const RawRow& r : rows) {
      NodeIndex u = 0;
      NodeIndex v = 0;
      if (!parse_int(r.sender, u) || !parse_int(r.receiver, v))
        throw ParseError("node ids must be non-negative integers in dense-id mode", r.line);
      max_id = std::max<std::size_t>({max_id, u, v});
      events.push_back({u, v, r.time});
    }
    const std::size_t n = options.num_nodes.value_or(rows.empty() ? 0 : max_id + 1);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  } else {
    std::unordered_map<std::string, NodeIndex> index;
    auto lookup = [&](const std::string& id) {
      auto [it, inserted] = index.try_emplace(id, static_cast<NodeIndex>(ids.size()));
      if (inserted) ids.push_back(id);
      return it->second;
    };
    for (const RawRow& r : rows) {
      NodeIndex u = lookup(r.sender);
      NodeIndex v = lookup(r.receiver);
      events.push_back({u, v, r.time});
    }
    if (options.num_nodes) {
      if (*options.num_nodes < ids.size())
        throw ValidationError("file has " + std::to_string(ids.size()) + " distinct nodes, more than N=" +
                              std::to_string(*options.num_nodes));
      ids.resize(*options.num_nodes);
    }
  }
  const double last = rows.empty() ? 0.0 : rows.back().time;
  const double horizon = options.horizon.value_or(last);
  if (horizon < last) throw ValidationError("horizon is earlier than the last event time");
  const std::size_t n = options.num_nodes.value_or(ids.size());
  return {EventStream(std::move(events), n, horizon), std::move(ids)};
}

LoadedEvents load_events(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open event file " + path.string());
  return read_events(in, options);
}

void write_events(std::ostream& out, const EventStream& stream) {
  out << "sender,receiver,time\n";
  for (const Event& e : stream.events()) out << e.sender << ',' << e.receiver << ',' << format_real(e.time) << '\n';
}

void write_node_mapping(std::ostream& out, const std::vector<std::string>& original_ids) {
  out << "original_id,index\n";
  for (std::size_t i = 0; i < original_ids.size(); ++i) {
    if (!original_ids[i].empty()) out << original_ids[i] << ',' << i << '\n';
  }
}

void write_labels(std::ostream& out, const ClassAssignment& c) {
  out << "node,label\n";
  for (std::size_t i = 0; i < c.size(); ++i) out << i << ',' << c[i] << '\n';
}

ClassAssignment read_labels(std::istream& in, std::optional<int> num_classes) {
  std::vector<std::pair<std::size_t, int>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    auto fields = split(view);
    if (first) {
      first = false;
      if (fields.size() == 2 && fields[0] == "node" && fields[1] == "label") continue;
    }
    std::size_t node = 0;
    int label = 0;
    if (fields.size() != 2 || !parse_int(fields[0], node) || !parse_int(fields[1], label))
      throw ParseError("expected `node,label` integers", line_no);
    if (label < 0) throw ValidationError("line " + std::to_string(line_no) + ": negative label");
    rows.emplace_back(node, label);
  }
  std::size_t n = 0;
  int max_label = -1;
  for (auto [node, label] : rows) {
    n = std::max(n, node + 1);
    max_label = std::max(max_label, label);
  }
  std::vector<int> labels(n, -1);
  for (auto [node, label] : rows) labels[node] = label;
  if (std::find(labels.begin(), labels.end(), -1) != labels.end())
    throw ValidationError("labels file does not cover every node index below its maximum");
  return ClassAssignment(std::move(labels), num_classes.value_or(max_label + 1));
}

ClassAssignment load_labels(const std::filesystem::path& path, std::optional<int> num_classes) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open labels file " + path.string());
  return read_labels(in, num_classes);
}

void write_adjacency(std::ostream& out, const AdjacencyMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j) out << ',';
      out << static_cast<int>(a(i, j));
    }
    out << '\n';
  }
}

}  // namespace bppm
