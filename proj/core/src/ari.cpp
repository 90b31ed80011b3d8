#include <algorithm>
#include <map>
#include <utility>

#include "bppm/error.hpp"
#include "bppm/evaluation.hpp"

namespace bppm::eval {
namespace {

double choose2(double n) { return n * (n - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw ArgumentError("partitions differ in length");
  const auto n = static_cast<double>(a.size());
  std::map<std::pair<int, int>, double> table;
  std::map<int, double> rows;
  std::map<int, double> cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  double index = 0.0;
  for (const auto& [key, count] : table) index += choose2(count);
  double sum_a = 0.0;
  for (const auto& [key, count] : rows) sum_a += choose2(count);
  double sum_b = 0.0;
  for (const auto& [key, count] : cols) sum_b += choose2(count);
  const double total = choose2(n);
  if (total == 0.0) return 1.0;
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;  // both partitions trivial in the same way
  return (index - expected) / (max_index - expected);
}

double adjusted_rand_index(const ClassAssignment& a, const ClassAssignment& b) {
  return adjusted_rand_index(a.labels(), b.labels());
}

}  // namespace bppm::eval
