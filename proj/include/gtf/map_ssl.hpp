#pragma once

// Semi-supervised classification with an l2,0 graph penalty:
//
//   Q(B) = 1/2 ||M (Y - B)||_F^2 + lambda L(B) + eps ||R - B||_F^2,
//
// reduced to a search over partitions X with B = X B~(X):
//
//   Q1(X) = 1/2 ||M (Y - X B~)||_F^2 + lambda Tr(X^T L X) + eps ||R - X B~||_F^2.
//
// B~(X) solves the normal equations of Q restricted to B = X B~,
//   (X^T M X + 2 eps X^T X) B~ = X^T M Y + 2 eps X^T R,
// which is diagonal per cluster. The alternative weighting
// (X^T (M + I) X)^{-1} (X^T M Y + eps X^T R) is available as
// closed_form_b_literal for comparison only; it is not a stationary point
// of Q in general (X = I, M = I, eps = 0 gives Y / 2 instead of Y).

#include <cstdint>
#include <optional>
#include <vector>

#include "gtf/anneal.hpp"
#include "gtf/graph.hpp"
#include "gtf/model.hpp"
#include "gtf/spectral.hpp"
#include "gtf/types.hpp"

namespace gtf {

struct MapInstance {
  const Graph* graph = nullptr;
  Matrix y_onehot;        ///< n x K, unlabelled rows all zero
  std::vector<int> mask;  ///< 1 where the label is observed
  Matrix prior;           ///< n x K, nonnegative
  double lambda = 0.0;
  double epsilon = 0.01;

  int n() const noexcept { return static_cast<int>(y_onehot.rows()); }
  int classes() const noexcept { return static_cast<int>(y_onehot.cols()); }

  /// Builds an instance from per-node labels in [0, K) or -1 (unlabelled).
  /// The prior defaults to the uniform 1/K matrix.
  static MapInstance from_labels(const Graph& g, const std::vector<int>& labels, int classes,
                                 double lambda, double epsilon = 0.01,
                                 std::optional<Matrix> prior = std::nullopt);
  // The instance keeps a pointer to the graph.
  static MapInstance from_labels(Graph&&, const std::vector<int>&, int, double, double = 0.01,
                                 std::optional<Matrix> = std::nullopt) = delete;

  void validate() const;
};

struct MapSolution {
  Assignment assignment;  ///< compacted
  Matrix b_tilde;         ///< k x K per-cluster class scores
  Matrix b_full;          ///< n x K
  double q_objective = 0.0;  ///< Q1 of the assignment
  std::vector<int> predicted;
  int k = 0;
};

double objective_q(const Matrix& b, const MapInstance& inst, double tol = 0.0);

/// Stationary per-cluster scores. Throws EmptyCluster or SingularSystem
/// (eps = 0 and a cluster without observed labels).
Matrix closed_form_b(const Assignment& x, const MapInstance& inst);
Matrix closed_form_b_literal(const Assignment& x, const MapInstance& inst);

double objective_q1(const Assignment& x, const MapInstance& inst);

/// Row-wise argmax, ties to the smallest class index.
std::vector<int> predict(const Matrix& b_full);

enum class MapMethod { spectral, sa };

struct MapOptions {
  SpectralOptions spectral{};
  AnnealOptions anneal{};
};

/// method = sa anneals Q1 directly with k_max labels. method = spectral
/// screens k = 1..k_max with the spectral solver on the surrogate signal
/// [M Y, sqrt(eps) R] and rescores every candidate by Q1. Clusters without
/// any weight in the normal equations (eps = 0, no observed label) fall back
/// to the mean prior row of the cluster.
MapSolution solve_map(const MapInstance& inst, int k_max, MapMethod method,
                      const MapOptions& options = {});

/// Largest absolute entry difference between the stationary and the literal
/// per-cluster scores, for reporting.
double literal_formula_divergence(const Assignment& x, const MapInstance& inst);

}  // namespace gtf
