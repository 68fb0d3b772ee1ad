#pragma once

// The l2,0 graph trend filtering objective family: counting penalty,
// cut identity, closed-form centroids, and the P0 / P1 / q objectives.
//
// Cluster labels are 0-based throughout the library.

#include <cstddef>
#include <span>
#include <vector>

#include "gtf/graph.hpp"
#include "gtf/types.hpp"

namespace gtf {

/// Node -> cluster labels in [0, k). Clusters may be empty unless an
/// operation requires otherwise.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::vector<int> labels, int k);

  /// k = 1 + max label.
  static Assignment from_labels(std::vector<int> labels);
  static Assignment single_cluster(int n);
  static Assignment singletons(int n);

  int n() const noexcept { return static_cast<int>(labels_.size()); }
  int k() const noexcept { return k_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  int operator[](int i) const { return labels_[static_cast<std::size_t>(i)]; }

  std::vector<int> cluster_sizes() const;
  int nonempty_clusters() const;

  /// One-hot n x k matrix X with unit row sums.
  Eigen::MatrixXd one_hot() const;

  /// Drops empty clusters, keeping the relative order of surviving ids.
  Assignment compacted() const;
  /// Relabels clusters in order of first occurrence (restricted-growth form).
  Assignment canonical() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

/// Centroid matrix mu (k x d); row c is the signal shared by cluster c.
using Centroids = Matrix;

struct GtfSolution {
  Assignment assignment;       ///< compacted, all clusters nonempty
  Centroids centroids;         ///< closed-form cluster means
  Matrix reconstruction;       ///< B = X mu
  double p1_objective = 0.0;   ///< 1/2 ||Y - X mu||^2 + lambda * cut
  double p0_objective = 0.0;   ///< 1/2 ||Y - B||^2 + lambda * L(B), penalty read off B
  int cut = 0;                 ///< crossing edges of the assignment
  int k = 0;                   ///< number of nonempty clusters
};

/// Default counting tolerance for arbitrary B: 1e-9 * max row norm.
double default_tolerance(const Matrix& b);

/// |{(i,j) in E : ||b_i - b_j||_2 > tol}|.
int l20_penalty(const Matrix& b, const Graph& g, double tol = 0.0);
/// The edges counted by l20_penalty.
EdgeList boundary_edges(const Matrix& b, const Graph& g, double tol = 0.0);

/// Number of edges whose endpoints carry different labels.
int cut_size(const Assignment& x, const Graph& g);
/// Tr(X^T L X) evaluated through the sparse Laplacian (equals 2 * cut_size).
double laplacian_quadratic_trace(const Assignment& x, const Graph& g);

/// mu = (X^T X)^{-1} X^T Y, i.e. per-cluster means. Throws EmptyCluster.
Centroids centroid_closed_form(const Assignment& x, const SignalMatrix& y);

/// B = X mu.
Matrix reconstruct(const Assignment& x, const Centroids& mu);

double objective_p0(const SignalMatrix& y, const Matrix& b, const Graph& g, double lambda,
                    double tol = 0.0);
double objective_p1(const SignalMatrix& y, const Assignment& x, const Centroids& mu,
                    const Graph& g, double lambda);
/// q = Tr(Y Y^T X X^+) - lambda Tr(X^T L X), evaluated from cluster means.
double objective_q2(const SignalMatrix& y, const Assignment& x, const Graph& g, double lambda);

/// Compacts the assignment and fills centroids, reconstruction and objectives.
GtfSolution make_solution(const SignalMatrix& y, const Graph& g, const Assignment& x,
                          double lambda);

}  // namespace gtf
