#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "gtf/types.hpp"

namespace gtf {

/// Undirected edge stored with first < second.
struct Edge {
  int first = 0;
  int second = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

/// Simple connected unweighted undirected graph. Immutable after construction.
class Graph {
 public:
  /// Deduplicates edges (either orientation), rejects self-loops and
  /// out-of-range indices, and requires a single connected component.
  Graph(int n, std::span<const std::pair<int, int>> edge_list);
  Graph(int n, const EdgeList& edges);

  int n() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const EdgeList& edges() const noexcept { return edges_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  int degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  /// Sorted neighbour list of node i.
  std::span<const int> neighbors(int i) const;
  bool has_edge(int i, int j) const;

  /// Tr(L) = sum of degrees = 2|E|.
  long long laplacian_trace() const noexcept { return 2LL * static_cast<long long>(edges_.size()); }

  Eigen::MatrixXd dense_adjacency() const;
  Eigen::MatrixXd dense_laplacian() const;
  Eigen::SparseMatrix<double> sparse_laplacian() const;

 private:
  void init(int n, EdgeList edges);

  int n_ = 0;
  EdgeList edges_;
  std::vector<int> degrees_;
  std::vector<std::size_t> offsets_;
  std::vector<int> adjacency_;
};

/// Build a validated graph from an index-pair list (pairs may repeat or be
/// given in either orientation).
Graph build_graph(int n, const std::vector<std::pair<int, int>>& edge_list);

/// Normalise a raw pair list into a sorted, deduplicated edge set. Throws on
/// self-loops and out-of-range indices; does not check connectivity.
EdgeList normalize_edges(int n, std::span<const std::pair<int, int>> edge_list);

/// Connected-component labels (0-based, numbered in order of first node).
std::vector<int> components(int n, const EdgeList& edges);
std::vector<int> components(const Graph& g);
bool is_connected(const Graph& g);
bool is_connected(int n, const EdgeList& edges);

/// Adds uniformly random edges between the two largest components until the
/// edge set is connected. Returns the number of edges added.
int repair_connectivity(int n, EdgeList& edges, Rng& rng);

struct PlantedPartition {
  Graph graph;
  std::vector<int> labels;  ///< ground-truth community per node
  int repair_edges = 0;     ///< edges added to make the sample connected
};

/// Stochastic block model with intra-probability p and inter-probability q.
PlantedPartition planted_partition(std::span<const int> sizes, double p, double q,
                                   std::uint64_t seed);

struct KnnGraph {
  Graph graph;
  int repair_edges = 0;
};

/// Symmetrised (union) k-nearest-neighbour graph under Euclidean distance.
/// Ties go to the smaller node index. A disconnected result is joined by
/// linking the closest pair of points between the two largest components.
KnnGraph knn_graph(const Matrix& features, int k);

/// Parses the edge-list text format: two whitespace-separated 0-based
/// integers per line, '#' comments and blank lines ignored. If n is not
/// given, it is max index + 1.
struct EdgeListFile {
  int n = 0;
  EdgeList edges;
};
EdgeListFile read_edge_list(const std::string& path, int n = -1);
EdgeListFile parse_edge_list(const std::string& text, int n = -1);

}  // namespace gtf
