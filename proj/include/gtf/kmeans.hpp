#pragma once

#include <cstdint>
#include <vector>

#include "gtf/types.hpp"

namespace gtf {

struct KMeansOptions {
  int restarts = 10;
  int max_iter = 300;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> labels;
  Matrix centroids;  ///< k x dim
  double inertia = 0.0;
  int iterations = 0;  ///< Lloyd iterations of the winning restart
};

/// Lloyd's algorithm from k-means++ seeding; best of `restarts` runs by
/// inertia. An empty cluster is reseeded with the point farthest from its
/// current centroid. Points are the rows of `points`.
KMeansResult kmeans(const Matrix& points, int k, const KMeansOptions& options = {});

}  // namespace gtf
