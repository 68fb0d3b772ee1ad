#include "gtf/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "gtf/error.hpp"
#include "gtf/kernels.hpp"

namespace gtf {

namespace {

Matrix seed_plus_plus(const Matrix& points, int k, Rng& rng) {
  const auto& kt = kernels::table();
  const auto m = static_cast<std::size_t>(points.rows());
  const auto dim = static_cast<std::size_t>(points.cols());
  Matrix centers(k, points.cols());
  std::vector<double> d2(m, std::numeric_limits<double>::infinity());
  std::vector<char> taken(m, 0);

  std::uniform_int_distribution<std::size_t> first(0, m - 1);
  std::size_t chosen = first(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 0; c < k; ++c) {
    centers.row(c) = points.row(static_cast<Eigen::Index>(chosen));
    taken[chosen] = 1;
    if (c + 1 == k) break;
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = kt.squared_distance(points.row(static_cast<Eigen::Index>(i)).data(),
                                           centers.row(c).data(), dim);
      d2[i] = std::min(d2[i], d);
      total += d2[i];
    }
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      chosen = m;
      for (std::size_t i = 0; i < m; ++i) {
        acc += d2[i];
        if (d2[i] > 0.0 && acc > target) {
          chosen = i;
          break;
        }
      }
      if (chosen == m) {
        // Rounding pushed the target past the end; take the last candidate.
        for (std::size_t i = m; i-- > 0;) {
          if (d2[i] > 0.0) {
            chosen = i;
            break;
          }
        }
      }
    } else {
      // Every point coincides with a chosen centre; fall back to an unused index.
      chosen = static_cast<std::size_t>(std::find(taken.begin(), taken.end(), 0) - taken.begin());
      if (chosen == m) chosen = 0;
    }
  }
  return centers;
}

KMeansResult lloyd(const Matrix& points, Matrix centers, int max_iter) {
  const auto& kt = kernels::table();
  const auto m = static_cast<std::size_t>(points.rows());
  const auto k = static_cast<std::size_t>(centers.rows());
  const auto dim = static_cast<std::size_t>(points.cols());
  KMeansResult r;
  r.labels.assign(m, -1);
  std::vector<double> dist(m, 0.0);
  std::vector<int> counts(k, 0);

  for (int iter = 0; iter < std::max(1, max_iter); ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      const auto c = static_cast<int>(kt.nearest_row(points.row(static_cast<Eigen::Index>(i)).data(),
                                                     centers.data(), k, dim, &dist[i]));
      if (c != r.labels[i]) {
        r.labels[i] = c;
        changed = true;
      }
    }
    std::fill(counts.begin(), counts.end(), 0);
    for (int l : r.labels) ++counts[static_cast<std::size_t>(l)];
    // Reseed empty clusters with the currently worst-fit point.
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      std::size_t far = m;
      double far_d = -1.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (counts[static_cast<std::size_t>(r.labels[i])] > 1 && dist[i] > far_d) {
          far_d = dist[i];
          far = i;
        }
      }
      if (far == m) break;
      --counts[static_cast<std::size_t>(r.labels[far])];
      r.labels[far] = static_cast<int>(c);
      counts[c] = 1;
      dist[far] = 0.0;
      changed = true;
    }
    centers.setZero();
    for (std::size_t i = 0; i < m; ++i) {
      kt.axpy(1.0, points.row(static_cast<Eigen::Index>(i)).data(),
              centers.row(r.labels[i]).data(), dim);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) centers.row(static_cast<Eigen::Index>(c)) /= counts[c];
    }
    r.iterations = iter + 1;
    if (!changed && iter > 0) break;
  }
  r.inertia = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    r.inertia += kt.squared_distance(points.row(static_cast<Eigen::Index>(i)).data(),
                                     centers.row(r.labels[i]).data(), dim);
  }
  r.centroids = std::move(centers);
  return r;
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, const KMeansOptions& options) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  if (points.rows() < k) {
    fail(ErrorCode::TooFewPoints, std::to_string(points.rows()) + " points for k=" + std::to_string(k));
  }
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  const int restarts = std::max(1, options.restarts);
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
    KMeansResult run = lloyd(points, seed_plus_plus(points, k, rng), options.max_iter);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

}  // namespace gtf
