#include "bppm/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "bppm/error.hpp"

namespace bppm::spectral {

double default_regularizer(const AdjacencyMatrix& a) {
  return a.size() == 0 ? 0.0 : static_cast<double>(a.num_edges()) / static_cast<double>(a.size());
}

Eigen::MatrixXd regularized_laplacian(const AdjacencyMatrix& a, double tau) {
  if (!(tau >= 0.0)) throw ArgumentError("regularizer tau must be >= 0");
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::VectorXd out_deg = Eigen::VectorXd::Constant(n, tau);
  Eigen::VectorXd in_deg = Eigen::VectorXd::Constant(n, tau);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (a(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
        out_deg[i] += 1.0;
        in_deg[j] += 1.0;
      }
    }
  }
  if (out_deg.minCoeff() <= 0.0 || in_deg.minCoeff() <= 0.0)
    throw ArgumentError("zero regularized degree: use a positive tau when some node has no in- or out-edges");
  const Eigen::VectorXd out_scale = out_deg.cwiseSqrt().cwiseInverse();
  const Eigen::VectorXd in_scale = in_deg.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (a(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) l(i, j) = out_scale[i] * in_scale[j];
    }
  }
  return l;
}

namespace {

// Top singular triples of L from the symmetric eigenproblem L L^T = U S^2 U^T,
// with V = L^T U S^{-1}. Eigen 3.4.0's BDCSVD returns wrong singular values on
// block-structured Laplacians with repeated singular values, so it is avoided.
struct Svd {
  Eigen::VectorXd values;  // descending
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;
};

Svd decompose(const Eigen::MatrixXd& l, bool vectors) {
  const Eigen::MatrixXd gram = l * l.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  const Eigen::Index n = l.rows();
  Svd out;
  out.values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.values[i] = std::sqrt(std::max(0.0, eig.eigenvalues()[n - 1 - i]));
  if (vectors) {
    out.u = eig.eigenvectors().rowwise().reverse();
    out.v = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      if (out.values[i] > 0.0) out.v.col(i) = l.transpose() * out.u.col(i) / out.values[i];
  }
  return out;
}

// Singular values below this fraction of the largest are numerically zero;
// squaring in the Gram matrix limits resolution to about sqrt(machine epsilon).
int numerical_rank(const Eigen::VectorXd& sv) {
  if (sv.size() == 0) return 0;
  const double cutoff = 1e-7 * std::max(1.0, sv[0]);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return rank;
}

}  // namespace

SpectralEmbedding embed(const AdjacencyMatrix& a, int k, const SpectralOptions& options) {
  const auto n = static_cast<Eigen::Index>(a.size());
  if (k < 1 || k > n) throw ArgumentError("spectral clustering needs 1 <= K <= N");
  SpectralEmbedding emb;
  emb.tau = options.tau.value_or(default_regularizer(a));
  const Eigen::MatrixXd l = regularized_laplacian(a, emb.tau);
  const Svd svd = decompose(l, true);
  const Eigen::VectorXd& sv = svd.values;
  emb.rank = numerical_rank(sv);
  emb.rank_deficient = k > emb.rank;
  emb.rows = Eigen::MatrixXd::Zero(n, 2 * k);
  for (int c = 0; c < k; ++c) {
    emb.singular_values.push_back(sv[c]);
    if (c >= emb.rank) continue;
    const double scale = options.scale_by_singular_values ? std::sqrt(sv[c]) : 1.0;
    emb.rows.col(c) = svd.u.col(c) * scale;
    emb.rows.col(k + c) = svd.v.col(c) * scale;
  }
  emb.zero_rows.assign(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = emb.rows.row(i).norm();
    if (norm > 1e-300) {
      emb.rows.row(i) /= norm;
    } else {
      emb.zero_rows[static_cast<std::size_t>(i)] = true;
    }
  }
  return emb;
}

SpectralResult spectral_cluster(const AdjacencyMatrix& a, int k, const SpectralOptions& options) {
  SpectralEmbedding emb = embed(a, k, options);
  KMeansResult km = kmeans(emb.rows, k, options.kmeans);
  return {ClassAssignment(std::move(km.labels), k), std::move(emb), km.objective, std::move(km.trace)};
}

std::vector<double> singular_value_profile(const AdjacencyMatrix& a, int top, std::optional<double> tau) {
  if (top < 0 || static_cast<std::size_t>(top) > a.size()) throw ArgumentError("profile length must be in [0, N]");
  const Eigen::MatrixXd l = regularized_laplacian(a, tau.value_or(default_regularizer(a)));
  const Svd svd = decompose(l, false);
  return std::vector<double>(svd.values.data(), svd.values.data() + top);
}

Eigen::MatrixXd soft_initialization(const SpectralEmbedding& embedding, int k) {
  const Eigen::Index n = embedding.rows.rows();
  if (embedding.rows.cols() < k) throw ArgumentError("embedding has fewer than K columns");
  Eigen::MatrixXd tau(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int q = 0; q < k; ++q) tau(i, q) = std::max(0.0, embedding.rows(i, q)) + 1e-6;
    tau.row(i) /= tau.row(i).sum();
  }
  return tau;
}

}  // namespace bppm::spectral
