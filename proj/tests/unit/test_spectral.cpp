#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/SVD>

#include "bppm/error.hpp"
#include "bppm/evaluation.hpp"
#include "bppm/generator.hpp"
#include "bppm/kmeans.hpp"
#include "bppm/spectral.hpp"
#include "fixtures.hpp"

using namespace bppm;

namespace {

AdjacencyMatrix from_pairs(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  AdjacencyMatrix a(n, 0.0, 1.0);
  for (auto [i, j] : edges) a.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), 1);
  return a;
}

// Two disjoint directed cliques on nodes [0, n1) and [n1, n1 + n2).
AdjacencyMatrix two_cliques(std::size_t n1, std::size_t n2) {
  AdjacencyMatrix a(n1 + n2, 0.0, 1.0);
  for (std::size_t i = 0; i < n1 + n2; ++i)
    for (std::size_t j = 0; j < n1 + n2; ++j)
      if (i != j && (i < n1) == (j < n1)) a.set(i, j, 1);
  return a;
}

}  // namespace

TEST(Laplacian, SixEventWindowWithUnitRegularizer) {
  const auto a = aggregate(fixture::six_events(), 0.0, 1.0);
  const Eigen::MatrixXd l = spectral::regularized_laplacian(a, 1.0);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
  expected(0, 1) = 1.0 / std::sqrt(2.0 * 3.0);
  expected(1, 2) = 1.0 / std::sqrt(2.0 * 2.0);
  expected(2, 1) = 1.0 / std::sqrt(2.0 * 3.0);
  EXPECT_LT((l - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Laplacian, ZeroMatrixAndRegularGraph) {
  const AdjacencyMatrix zero(5, 0.0, 1.0);
  EXPECT_EQ(spectral::regularized_laplacian(zero, 1.0).cwiseAbs().maxCoeff(), 0.0);

  // bidirected 6-cycle: every in- and out-degree is 2
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 6; ++i) {
    edges.emplace_back(i, (i + 1) % 6);
    edges.emplace_back((i + 1) % 6, i);
  }
  const auto a = from_pairs(6, edges);
  const Eigen::MatrixXd l = spectral::regularized_laplacian(a, 0.0);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      EXPECT_NEAR(l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), a(i, j) / 2.0, 1e-15);
}

TEST(Laplacian, ZeroDegreeNeedsPositiveRegularizer) {
  const auto a = from_pairs(3, {{0, 1}});
  EXPECT_THROW((void)spectral::regularized_laplacian(a, 0.0), ArgumentError);
  const Eigen::MatrixXd l = spectral::regularized_laplacian(a, 0.5);
  EXPECT_GT(l(0, 1), 0.0);
  EXPECT_EQ((l.array() > 0.0).count(), 1);
}

TEST(Laplacian, DefaultRegularizerIsAverageDegree) {
  const auto a = two_cliques(3, 4);
  EXPECT_DOUBLE_EQ(spectral::default_regularizer(a), (6.0 + 12.0) / 7.0);
}

TEST(SpectralCluster, DisjointCliques) {
  const auto a = two_cliques(10, 10);
  const auto r = spectral::spectral_cluster(a, 2);
  std::vector<int> truth(20);
  for (int i = 10; i < 20; ++i) truth[static_cast<std::size_t>(i)] = 1;
  EXPECT_DOUBLE_EQ(eval::adjusted_rand_index(r.labels.labels(), truth), 1.0);
}

TEST(SpectralCluster, SixNodeBlocksMatchExhaustiveDensityOptimum) {
  const auto a = two_cliques(3, 3);
  // exhaustive search for the two-block split with the highest within-block edge density
  double best = -1.0;
  std::vector<int> best_labels;
  for (int mask = 1; mask < 63; ++mask) {
    std::vector<int> labels(6);
    for (int i = 0; i < 6; ++i) labels[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    double within = 0.0;
    double slots = 0.0;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        if (i != j && labels[i] == labels[j]) {
          within += a(i, j);
          slots += 1.0;
        }
    if (within / slots > best + 1e-12) {
      best = within / slots;
      best_labels = labels;
    }
  }
  const auto r = spectral::spectral_cluster(a, 2);
  EXPECT_DOUBLE_EQ(eval::adjusted_rand_index(r.labels.labels(), best_labels), 1.0);
}

TEST(SpectralCluster, InvariantUnderNodeRelabeling) {
  Rng rng(3);
  const auto model = BlockHawkesModel::assortative(3, {0.0, 1.0, 2.0}, {0.0, 1.0, 0.05});
  const auto net = gen::sample_network(model, 30, 10.0, rng);
  const auto a = aggregate_all(net.stream);
  std::vector<std::size_t> perm(30);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  AdjacencyMatrix b(30, 0.0, 1.0);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) b.set(perm[i], perm[j], a(i, j));
  const auto ra = spectral::spectral_cluster(a, 3);
  const auto rb = spectral::spectral_cluster(b, 3);
  std::vector<int> unpermuted(30);
  for (std::size_t i = 0; i < 30; ++i) unpermuted[i] = rb.labels[perm[i]];
  EXPECT_DOUBLE_EQ(eval::adjusted_rand_index(ra.labels.labels(), unpermuted), 1.0);
}

TEST(Embedding, UnitRowsAndFlaggedIsolatedNodes) {
  auto a = two_cliques(5, 5);
  AdjacencyMatrix with_isolated(11, 0.0, 1.0);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) with_isolated.set(i, j, a(i, j));
  const auto emb = spectral::embed(with_isolated, 2);
  EXPECT_EQ(emb.rows.rows(), 11);
  EXPECT_EQ(emb.rows.cols(), 4);
  for (Eigen::Index i = 0; i < 10; ++i) {
    EXPECT_FALSE(emb.zero_rows[static_cast<std::size_t>(i)]);
    EXPECT_NEAR(emb.rows.row(i).norm(), 1.0, 1e-12);
  }
  EXPECT_TRUE(emb.zero_rows[10]);
  EXPECT_EQ(emb.rows.row(10).norm(), 0.0);
}

TEST(Embedding, RankDeficiencyIsFlagged) {
  const auto a = from_pairs(4, {{0, 1}, {1, 0}});
  const auto emb = spectral::embed(a, 3);
  EXPECT_TRUE(emb.rank_deficient);
  EXPECT_EQ(emb.rows.cols(), 6);
}

TEST(SingularValues, Profiles) {
  for (double v : spectral::singular_value_profile(AdjacencyMatrix(6, 0.0, 1.0), 4, 1.0)) EXPECT_EQ(v, 0.0);

  // permutation matrix with tau = 0: L is the permutation itself
  const auto perm = from_pairs(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  for (double v : spectral::singular_value_profile(perm, 5, 0.0)) EXPECT_NEAR(v, 1.0, 1e-12);

  // two equal dense blocks: the expectation matrix has rank two
  const auto blocks = two_cliques(15, 15);
  const auto sv = spectral::singular_value_profile(blocks, 4);
  EXPECT_GT(sv[1], 5.0 * sv[2]);
  EXPECT_NEAR(sv[0], sv[1], 1e-12);
}

TEST(SingularValues, MatchJacobiSvd) {
  Rng rng(12);
  const auto model = BlockHawkesModel::assortative(4, {0.3, 1.0, 0.8}, {0.1, 1.0, 0.1});
  const auto net = gen::sample_network(model, 80, 10.0, rng);
  const auto a = aggregate_all(net.stream);
  const double tau = spectral::default_regularizer(a);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(spectral::regularized_laplacian(a, tau),
                                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto sv = spectral::singular_value_profile(a, 10, tau);
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(sv[static_cast<std::size_t>(i)], svd.singularValues()[i], 1e-8);
  // leading singular vectors agree up to sign
  spectral::SpectralOptions opt;
  opt.tau = tau;
  const auto emb = spectral::embed(a, 1, opt);
  Eigen::VectorXd u = svd.matrixU().col(0);
  Eigen::VectorXd v = svd.matrixV().col(0);
  for (Eigen::Index i = 0; i < 80; ++i) {
    const double norm = std::hypot(u[i], v[i]);
    if (norm < 1e-12) continue;
    EXPECT_NEAR(std::abs(emb.rows(i, 0)), std::abs(u[i]) / norm, 1e-7);
    EXPECT_NEAR(std::abs(emb.rows(i, 1)), std::abs(v[i]) / norm, 1e-7);
  }
}

TEST(KMeans, ObjectiveNeverIncreases) {
  Rng rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd pts(300, 3);
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (Eigen::Index j = 0; j < 3; ++j) pts(i, j) = g(rng) + 4.0 * static_cast<double>(i % 4 == j);
  const auto r = spectral::kmeans(pts, 4);
  for (std::size_t s = 1; s < r.trace.size(); ++s) EXPECT_LE(r.trace[s], r.trace[s - 1] + 1e-12);
  EXPECT_NEAR(r.objective, r.trace.back(), 1e-9 * r.objective);
  // restart selection: no single restart with the same options does better
  for (int restarts : {1, 3}) {
    spectral::KMeansOptions opt;
    opt.restarts = restarts;
    EXPECT_LE(r.objective, spectral::kmeans(pts, 4, opt).objective + 1e-9);
  }
}

TEST(SoftInitialization, RowsOnSimplex) {
  const auto emb = spectral::embed(two_cliques(6, 6), 2);
  const Eigen::MatrixXd tau = spectral::soft_initialization(emb, 2);
  EXPECT_EQ(tau.cols(), 2);
  for (Eigen::Index i = 0; i < tau.rows(); ++i) {
    EXPECT_NEAR(tau.row(i).sum(), 1.0, 1e-12);
    EXPECT_GT(tau.row(i).minCoeff(), 0.0);
  }
}
