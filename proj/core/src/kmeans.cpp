#include "bppm/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "bppm/error.hpp"
#include "bppm/random.hpp"

namespace bppm::spectral {
namespace {

struct Run {
  std::vector<int> labels;
  Eigen::MatrixXd centroids;
  double objective = std::numeric_limits<double>::infinity();
  std::vector<double> trace;
};

Eigen::MatrixXd seed_plus_plus(const Eigen::MatrixXd& x, int k, Rng& rng) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd c(k, x.cols());
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  c.row(0) = x.row(first(rng));
  Eigen::VectorXd dist = (x.rowwise() - c.row(0)).rowwise().squaredNorm();
  for (int j = 1; j < k; ++j) {
    const double total = dist.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      for (pick = 0; pick < n - 1; ++pick) {
        target -= dist[pick];
        if (target < 0.0) break;
      }
    } else {
      pick = first(rng);
    }
    c.row(j) = x.row(pick);
    dist = dist.cwiseMin((x.rowwise() - c.row(j)).rowwise().squaredNorm());
  }
  return c;
}

double assign(const Eigen::MatrixXd& x, const Eigen::MatrixXd& c, std::vector<int>& labels) {
  double objective = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < c.rows(); ++j) {
      const double d = (x.row(i) - c.row(j)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(j);
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
    objective += best_d;
  }
  return objective;
}

Run lloyd(const Eigen::MatrixXd& x, int k, const KMeansOptions& opt, Rng& rng) {
  Run run;
  run.labels.assign(static_cast<std::size_t>(x.rows()), 0);
  run.centroids = seed_plus_plus(x, k, rng);
  double objective = assign(x, run.centroids, run.labels);
  for (int it = 0; it < opt.max_iterations; ++it) {
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      sums.row(run.labels[static_cast<std::size_t>(i)]) += x.row(i);
      ++counts[static_cast<std::size_t>(run.labels[static_cast<std::size_t>(i)])];
    }
    for (int j = 0; j < k; ++j) {
      if (counts[static_cast<std::size_t>(j)] > 0) {
        run.centroids.row(j) = sums.row(j) / counts[static_cast<std::size_t>(j)];
      } else {
        // Empty cluster: move it onto the point farthest from its centroid.
        Eigen::Index far = 0;
        double far_d = -1.0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
          const double d = (x.row(i) - run.centroids.row(run.labels[static_cast<std::size_t>(i)])).squaredNorm();
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        run.centroids.row(j) = x.row(far);
      }
    }
    const double next = assign(x, run.centroids, run.labels);
    run.trace.push_back(next);
    const bool done = objective - next <= opt.relative_tolerance * std::max(objective, 1e-300);
    objective = next;
    if (done) break;
  }
  run.objective = objective;
  return run;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, const KMeansOptions& options) {
  if (k < 1) throw ArgumentError("k-means needs k >= 1");
  if (points.rows() < k) throw ArgumentError("k-means needs at least k points");
  Run best;
  int best_restart = 0;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Rng rng = make_rng(options.seed, {static_cast<std::uint64_t>(r)});
    Run run = lloyd(points, k, options, rng);
    if (run.objective < best.objective) {
      best = std::move(run);
      best_restart = r;
    }
  }
  KMeansResult out;
  out.labels = std::move(best.labels);
  out.centroids = std::move(best.centroids);
  out.objective = best.objective;
  out.trace = std::move(best.trace);
  out.restart = best_restart;
  return out;
}

}  // namespace bppm::spectral
