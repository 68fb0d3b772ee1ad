#include "gtf/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "gtf/error.hpp"

namespace gtf {

namespace {

EdgeList normalize(int n, EdgeList edges) {
  for (auto& e : edges) {
    if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n) {
      fail(ErrorCode::IndexOutOfRange, "edge (" + std::to_string(e.first) + "," +
                                           std::to_string(e.second) + ") outside [0," +
                                           std::to_string(n) + ")");
    }
    if (e.first == e.second) {
      fail(ErrorCode::SelfLoop, "self-loop at node " + std::to_string(e.first));
    }
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

int component_count(const std::vector<int>& labels) {
  int count = 0;
  for (int l : labels) count = std::max(count, l + 1);
  return count;
}

}  // namespace

EdgeList normalize_edges(int n, std::span<const std::pair<int, int>> edge_list) {
  EdgeList edges;
  edges.reserve(edge_list.size());
  for (const auto& [a, b] : edge_list) edges.push_back({a, b});
  return normalize(n, std::move(edges));
}

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edge_list) {
  return Graph(n, std::span<const std::pair<int, int>>(edge_list));
}

Graph::Graph(int n, std::span<const std::pair<int, int>> edge_list) {
  init(n, normalize_edges(n, edge_list));
}

Graph::Graph(int n, const EdgeList& edges) { init(n, normalize(n, edges)); }

void Graph::init(int n, EdgeList edges) {
  if (n <= 0) fail(ErrorCode::InvalidArgument, "graph needs at least one node");
  n_ = n;
  edges_ = std::move(edges);
  const auto un = static_cast<std::size_t>(n);
  degrees_.assign(un, 0);
  for (const auto& e : edges_) {
    ++degrees_[static_cast<std::size_t>(e.first)];
    ++degrees_[static_cast<std::size_t>(e.second)];
  }
  offsets_.assign(un + 1, 0);
  for (std::size_t i = 0; i < un; ++i) offsets_[i + 1] = offsets_[i] + static_cast<std::size_t>(degrees_[i]);
  adjacency_.assign(offsets_[un], 0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[static_cast<std::size_t>(e.first)]++] = e.second;
    adjacency_[fill[static_cast<std::size_t>(e.second)]++] = e.first;
  }
  for (std::size_t i = 0; i < un; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }
  const auto labels = gtf::components(n_, edges_);
  const int count = component_count(labels);
  if (count != 1) {
    fail(ErrorCode::DisconnectedGraph, "graph has " + std::to_string(count) + " components");
  }
}

std::span<const int> Graph::neighbors(int i) const {
  const auto ui = static_cast<std::size_t>(i);
  return {adjacency_.data() + offsets_[ui], offsets_[ui + 1] - offsets_[ui]};
}

bool Graph::has_edge(int i, int j) const {
  const auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

Eigen::MatrixXd Graph::dense_adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& e : edges_) {
    a(e.first, e.second) = 1.0;
    a(e.second, e.first) = 1.0;
  }
  return a;
}

Eigen::MatrixXd Graph::dense_laplacian() const {
  Eigen::MatrixXd l = -dense_adjacency();
  for (int i = 0; i < n_; ++i) l(i, i) = degrees_[static_cast<std::size_t>(i)];
  return l;
}

Eigen::SparseMatrix<double> Graph::sparse_laplacian() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n_) + 2 * edges_.size());
  for (int i = 0; i < n_; ++i) triplets.emplace_back(i, i, degrees_[static_cast<std::size_t>(i)]);
  for (const auto& e : edges_) {
    triplets.emplace_back(e.first, e.second, -1.0);
    triplets.emplace_back(e.second, e.first, -1.0);
  }
  Eigen::SparseMatrix<double> l(n_, n_);
  l.setFromTriplets(triplets.begin(), triplets.end());
  return l;
}

std::vector<int> components(int n, const EdgeList& edges) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<int>> adj(un);
  for (const auto& e : edges) {
    adj[static_cast<std::size_t>(e.first)].push_back(e.second);
    adj[static_cast<std::size_t>(e.second)].push_back(e.first);
  }
  std::vector<int> label(un, -1);
  int next = 0;
  std::queue<int> frontier;
  for (int s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = next;
    frontier.push(s);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (label[static_cast<std::size_t>(v)] < 0) {
          label[static_cast<std::size_t>(v)] = next;
          frontier.push(v);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<int> components(const Graph& g) { return components(g.n(), g.edges()); }

bool is_connected(const Graph& g) { return component_count(components(g)) == 1; }

bool is_connected(int n, const EdgeList& edges) {
  return component_count(components(n, edges)) == 1;
}

namespace {

// Members of the two largest components (ties by smaller component id).
std::pair<std::vector<int>, std::vector<int>> two_largest(const std::vector<int>& labels) {
  const int count = component_count(labels);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    members[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));
  }
  std::vector<int> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return members[static_cast<std::size_t>(a)].size() > members[static_cast<std::size_t>(b)].size();
  });
  return {members[static_cast<std::size_t>(order[0])], members[static_cast<std::size_t>(order[1])]};
}

}  // namespace

int repair_connectivity(int n, EdgeList& edges, Rng& rng) {
  int added = 0;
  for (;;) {
    const auto labels = components(n, edges);
    if (component_count(labels) <= 1) break;
    const auto [a, b] = two_largest(labels);
    std::uniform_int_distribution<std::size_t> pick_a(0, a.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_b(0, b.size() - 1);
    const int u = a[pick_a(rng)];
    const int v = b[pick_b(rng)];
    edges.push_back({std::min(u, v), std::max(u, v)});
    ++added;
  }
  std::sort(edges.begin(), edges.end());
  return added;
}

PlantedPartition planted_partition(std::span<const int> sizes, double p, double q,
                                   std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0 && q <= p)) {
    fail(ErrorCode::ProbabilityOutOfRange, "require 0 <= q <= p <= 1");
  }
  if (sizes.empty()) fail(ErrorCode::InvalidArgument, "at least one community required");
  std::vector<int> labels;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] < 1) fail(ErrorCode::InvalidArgument, "community sizes must be >= 1");
    labels.insert(labels.end(), static_cast<std::size_t>(sizes[c]), static_cast<int>(c));
  }
  const int n = static_cast<int>(labels.size());
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  EdgeList edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double prob = labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)] ? p : q;
      if (unit(rng) < prob) edges.push_back({i, j});
    }
  }
  const int repaired = repair_connectivity(n, edges, rng);
  return {Graph(n, edges), std::move(labels), repaired};
}

KnnGraph knn_graph(const Matrix& features, int k) {
  const auto n = static_cast<int>(features.rows());
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  if (n <= k) fail(ErrorCode::TooFewPoints, "knn graph needs more than k points");
  if (!features.allFinite()) fail(ErrorCode::InvalidArgument, "features must be finite");

  Eigen::MatrixXd dist(n, n);
  double max_dist = 0.0;
  for (int i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double d = (features.row(i) - features.row(j)).squaredNorm();
      dist(i, j) = d;
      dist(j, i) = d;
      max_dist = std::max(max_dist, d);
    }
  }
  if (max_dist == 0.0) fail(ErrorCode::DegenerateFeatures, "all pairwise distances are zero");

  EdgeList edges;
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::erase(order, i);
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int a, int b) {
      if (dist(i, a) != dist(i, b)) return dist(i, a) < dist(i, b);
      return a < b;
    });
    for (int r = 0; r < k; ++r) {
      const int j = order[static_cast<std::size_t>(r)];
      edges.push_back({std::min(i, j), std::max(i, j)});
    }
    order.resize(static_cast<std::size_t>(n));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  int repaired = 0;
  for (;;) {
    const auto labels = components(n, edges);
    if (component_count(labels) <= 1) break;
    const auto [a, b] = two_largest(labels);
    double best = std::numeric_limits<double>::infinity();
    Edge link{};
    for (int u : a) {
      for (int v : b) {
        if (dist(u, v) < best) {
          best = dist(u, v);
          link = {std::min(u, v), std::max(u, v)};
        }
      }
    }
    edges.push_back(link);
    ++repaired;
  }
  return {Graph(n, edges), repaired};
}

EdgeListFile parse_edge_list(const std::string& text, int n) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<int, int>> raw;
  int max_index = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long a = 0, b = 0;
    if (!(fields >> a >> b)) {
      fail(ErrorCode::ParseError, "edge list line " + std::to_string(line_no) + ": expected two integers");
    }
    if (a < 0 || b < 0 || a > std::numeric_limits<int>::max() || b > std::numeric_limits<int>::max()) {
      fail(ErrorCode::IndexOutOfRange, "edge list line " + std::to_string(line_no));
    }
    raw.emplace_back(static_cast<int>(a), static_cast<int>(b));
    max_index = std::max({max_index, static_cast<int>(a), static_cast<int>(b)});
  }
  EdgeListFile out;
  out.n = n >= 0 ? n : max_index + 1;
  out.edges = normalize_edges(out.n, raw);
  return out;
}

EdgeListFile read_edge_list(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::DataNotFound, "cannot open edge list '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str(), n);
}

}  // namespace gtf
