#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace bppm::spectral {

struct KMeansOptions {
  int restarts = 20;
  int max_iterations = 300;
  double relative_tolerance = 1e-9;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> labels;
  Eigen::MatrixXd centroids;         // k x d
  double objective = 0.0;            // within-cluster sum of squares
  std::vector<double> trace;         // objective after each Lloyd iteration of the winning run
  int restart = 0;                   // index of the winning restart
};

// Lloyd's algorithm with k-means++ seeding on the rows of `points`. The lowest
// objective over the restarts wins (earliest restart on ties); nearest-centroid
// ties go to the lowest centroid index.
[[nodiscard]] KMeansResult kmeans(const Eigen::MatrixXd& points, int k, const KMeansOptions& options = {});

}  // namespace bppm::spectral
