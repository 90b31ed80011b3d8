#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bppm/core.hpp"
#include "bppm/kmeans.hpp"

namespace bppm::spectral {

// tau = average node degree (edges / N), the default regularizer.
[[nodiscard]] double default_regularizer(const AdjacencyMatrix& a);

// L = (O^tau)^{-1/2} A (P^tau)^{-1/2} with out-degrees O and in-degrees P shifted
// by tau. Throws ArgumentError when a regularized degree is zero (tau = 0 with an
// empty row or column).
[[nodiscard]] Eigen::MatrixXd regularized_laplacian(const AdjacencyMatrix& a, double tau);

struct SpectralEmbedding {
  Eigen::MatrixXd rows;                 // N x 2K, [U V] row-normalized
  std::vector<double> singular_values;  // K largest, descending
  std::vector<bool> zero_rows;          // rows left unnormalized (isolated nodes)
  int rank = 0;                         // numerical rank of L
  bool rank_deficient = false;          // K > rank: trailing columns are zero
  double tau = 0.0;
};

struct SpectralOptions {
  std::optional<double> tau;          // default: average node degree
  bool scale_by_singular_values = false;  // use [U S^{1/2}, V S^{1/2}] instead of [U, V]
  KMeansOptions kmeans;
};

struct SpectralResult {
  ClassAssignment labels;
  SpectralEmbedding embedding;
  double kmeans_objective = 0.0;
  std::vector<double> kmeans_trace;
};

[[nodiscard]] SpectralEmbedding embed(const AdjacencyMatrix& a, int k, const SpectralOptions& options = {});

// Regularized spectral clustering for directed graphs: embed, then k-means on rows.
[[nodiscard]] SpectralResult spectral_cluster(const AdjacencyMatrix& a, int k, const SpectralOptions& options = {});

// The `top` largest singular values of L, descending.
[[nodiscard]] std::vector<double> singular_value_profile(const AdjacencyMatrix& a, int top,
                                                         std::optional<double> tau = std::nullopt);

// N x K variational initialization from the embedding: the first K coordinates
// of each row, negatives clamped to 0, plus 1e-6, normalized to sum 1.
[[nodiscard]] Eigen::MatrixXd soft_initialization(const SpectralEmbedding& embedding, int k);

}  // namespace bppm::spectral
