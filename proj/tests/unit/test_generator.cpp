#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "bppm/error.hpp"
#include "bppm/generator.hpp"
#include "oracles.hpp"

using namespace bppm;

TEST(SampleClasses, Degenerate) {
  Rng rng(1);
  const std::vector<double> pi{1.0, 0.0};
  const auto c = gen::sample_classes(pi, 10, rng);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(c[i], 0);
}

TEST(SampleClasses, BinomialConcentration) {
  Rng rng(2);
  const std::vector<double> pi{0.5, 0.5};
  const auto sizes = gen::sample_classes(pi, 100'000, rng).class_sizes();
  EXPECT_NEAR(static_cast<double>(sizes[0]) / 1e5, 0.5, 0.005);
}

TEST(SampleClasses, ChiSquareUniform) {
  Rng rng(3);
  const std::vector<double> pi{0.25, 0.25, 0.25, 0.25};
  const auto sizes = gen::sample_classes(pi, 40'000, rng).class_sizes();
  EXPECT_GT(oracle::chi_square_uniform_pvalue(sizes), 0.01);
}

TEST(SampleClasses, RejectsNonSimplex) {
  Rng rng(4);
  const std::vector<double> bad{0.5, 0.6};
  EXPECT_THROW((void)gen::sample_classes(bad, 3, rng), ArgumentError);
  const std::vector<double> negative{1.5, -0.5};
  EXPECT_THROW((void)gen::sample_classes(negative, 3, rng), ArgumentError);
}

TEST(SampleNetwork, SingleClassIsAllZero) {
  Rng rng(5);
  const BlockHawkesModel model({1.0}, {{0.3, 1.0, 2.0}});
  const auto net = gen::sample_network(model, 12, 5.0, rng);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(net.classes[i], 0);
}

TEST(SampleNetwork, PoissonCountMean) {
  Rng rng(6);
  const BlockHawkesModel model({1.0}, {{0.0, 1.0, 3.0}});
  double sum = 0.0;
  const int runs = 2000;
  for (int r = 0; r < runs; ++r) sum += static_cast<double>(gen::sample_network(model, 6, 4.0, rng).stream.size());
  EXPECT_LT(std::abs(sum / runs - 12.0), 3.0 * std::sqrt(12.0 / runs));
}

TEST(SampleNetwork, StreamIsValidAndPartitionsMatch) {
  Rng rng(7);
  const auto model = BlockHawkesModel::assortative(4, {0.6, 0.8, 1.8}, {0.6, 0.8, 0.6});
  const auto net = gen::sample_network(model, 128, 20.0, rng);
  EXPECT_EQ(net.stream.num_nodes(), 128u);
  EXPECT_GT(net.stream.size(), 0u);
  for (const auto& e : net.stream.events()) EXPECT_NE(e.sender, e.receiver);
  const auto view = partition_by_blocks(net.stream, net.classes);
  std::size_t total = 0;
  for (auto m : view.counts) total += m;
  EXPECT_EQ(total, net.stream.size());
}

TEST(SampleNetwork, PerPairCountsMatchHawkesDraws) {
  // Replays the per-pair sub-streams that sample_network derives from the master draw.
  const auto model = BlockHawkesModel::assortative(2, {0.5, 1.0, 2.0}, {0.2, 1.0, 0.5});
  const ClassAssignment classes({0, 0, 0, 1, 1, 1, 1}, 2);
  Rng rng(8);
  const auto net = gen::sample_network(model, classes, 30.0, rng);
  Rng replay(8);
  const std::uint64_t master = replay();
  const auto view = partition_by_blocks(net.stream, classes);
  for (int q = 0; q < 2; ++q) {
    for (int l = 0; l < 2; ++l) {
      Rng pair_rng = make_rng(master, {static_cast<std::uint64_t>(q * 2 + l)});
      const auto times = hawkes::simulate(model.params(q, l), 30.0, pair_rng);
      EXPECT_EQ(view.counts[view.index(q, l)], times.size());
    }
  }
}

TEST(SampleNetwork, SingletonDiagonalDiscards) {
  Rng rng(9);
  const auto model = BlockHawkesModel::assortative(2, {0.0, 1.0, 5.0}, {0.0, 1.0, 0.5});
  const ClassAssignment classes({0, 1, 1, 1}, 2);
  const auto net = gen::sample_network(model, classes, 10.0, rng);
  EXPECT_GT(net.discarded_events, 0u);
  EXPECT_FALSE(net.warnings.empty());
  for (const auto& e : net.stream.events()) EXPECT_FALSE(classes[e.sender] == 0 && classes[e.receiver] == 0);
}

TEST(SampleNetwork, AttachmentIsUniformWithinPair) {
  // Diagonal block of 4 nodes: 12 ordered node pairs.
  const BlockHawkesModel model({1.0}, {{0.0, 1.0, 100.0}});
  const ClassAssignment classes(std::vector<int>(4, 0), 1);
  Rng rng(10);
  const auto net = gen::sample_network(model, classes, 110.0, rng);
  ASSERT_GE(net.stream.size(), 10'000u);
  std::map<std::pair<NodeIndex, NodeIndex>, std::size_t> counts;
  for (const auto& e : net.stream.events()) ++counts[{e.sender, e.receiver}];
  ASSERT_EQ(counts.size(), 12u);
  std::vector<std::size_t> cells;
  for (const auto& [k, v] : counts) cells.push_back(v);
  EXPECT_GT(oracle::chi_square_uniform_pvalue(cells), 0.01);
}

TEST(SampleNetwork, DeterministicUnderSeed) {
  const auto model = BlockHawkesModel::assortative(3, {0.4, 1.0, 1.0}, {0.1, 1.0, 0.2});
  Rng a(11);
  Rng b(11);
  const auto x = gen::sample_network(model, 20, 10.0, a);
  const auto y = gen::sample_network(model, 20, 10.0, b);
  EXPECT_EQ(x.classes, y.classes);
  ASSERT_EQ(x.stream.size(), y.stream.size());
  for (std::size_t s = 0; s < x.stream.size(); ++s) EXPECT_EQ(x.stream[s], y.stream[s]);
}

TEST(BlockHawkesModel, Validation) {
  EXPECT_THROW(BlockHawkesModel({0.5, 0.5}, {{0.1, 1.0, 1.0}}), ArgumentError);
  EXPECT_THROW(BlockHawkesModel({1.0}, {{0.1, -1.0, 1.0}}), ArgumentError);
  EXPECT_NO_THROW((void)BlockHawkesModel::assortative(7, {0.1, 1.0, 1.0}, {0.1, 1.0, 1.0}));
}
