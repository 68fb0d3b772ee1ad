#include "gtf/model.hpp"

#include <algorithm>
#include <string>

#include "gtf/error.hpp"
#include "gtf/kernels.hpp"

namespace gtf {

namespace {

void check_rows(const Matrix& m, const Graph& g, const char* what) {
  if (m.rows() != g.n()) {
    fail(ErrorCode::DimensionMismatch, std::string(what) + " has " + std::to_string(m.rows()) +
                                           " rows, graph has " + std::to_string(g.n()) + " nodes");
  }
}

void check_assignment(const Assignment& x, int n) {
  if (x.n() != n) {
    fail(ErrorCode::DimensionMismatch, "assignment covers " + std::to_string(x.n()) +
                                           " nodes, expected " + std::to_string(n));
  }
}

}  // namespace

Assignment::Assignment(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
  if (k_ < 1 && !labels_.empty()) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  for (int l : labels_) {
    if (l < 0 || l >= k_) {
      fail(ErrorCode::LabelOutOfRange, "label " + std::to_string(l) + " outside [0," +
                                           std::to_string(k_) + ")");
    }
  }
}

Assignment Assignment::from_labels(std::vector<int> labels) {
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  return Assignment(std::move(labels), k);
}

Assignment Assignment::single_cluster(int n) {
  return Assignment(std::vector<int>(static_cast<std::size_t>(n), 0), 1);
}

Assignment Assignment::singletons(int n) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i;
  return Assignment(std::move(labels), n);
}

std::vector<int> Assignment::cluster_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(k_), 0);
  for (int l : labels_) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

int Assignment::nonempty_clusters() const {
  const auto sizes = cluster_sizes();
  return static_cast<int>(std::count_if(sizes.begin(), sizes.end(), [](int s) { return s > 0; }));
}

Eigen::MatrixXd Assignment::one_hot() const {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n(), k_);
  for (int i = 0; i < n(); ++i) x(i, labels_[static_cast<std::size_t>(i)]) = 1.0;
  return x;
}

Assignment Assignment::compacted() const {
  const auto sizes = cluster_sizes();
  std::vector<int> remap(sizes.size(), -1);
  int next = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] > 0) remap[c] = next++;
  }
  std::vector<int> labels(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) labels[i] = remap[static_cast<std::size_t>(labels_[i])];
  return Assignment(std::move(labels), std::max(next, labels_.empty() ? 0 : 1));
}

Assignment Assignment::canonical() const {
  std::vector<int> remap(static_cast<std::size_t>(k_), -1);
  int next = 0;
  std::vector<int> labels(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto& slot = remap[static_cast<std::size_t>(labels_[i])];
    if (slot < 0) slot = next++;
    labels[i] = slot;
  }
  return Assignment(std::move(labels), std::max(next, labels_.empty() ? 0 : 1));
}

double default_tolerance(const Matrix& b) {
  double max_norm = 0.0;
  for (Eigen::Index i = 0; i < b.rows(); ++i) max_norm = std::max(max_norm, b.row(i).norm());
  return 1e-9 * max_norm;
}

EdgeList boundary_edges(const Matrix& b, const Graph& g, double tol) {
  check_rows(b, g, "B");
  if (tol < 0.0) fail(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
  const auto& k = kernels::table();
  const auto d = static_cast<std::size_t>(b.cols());
  const double tol2 = tol * tol;
  EdgeList out;
  for (const auto& e : g.edges()) {
    const double dist2 = k.squared_distance(b.row(e.first).data(), b.row(e.second).data(), d);
    if (dist2 > tol2) out.push_back(e);
  }
  return out;
}

int l20_penalty(const Matrix& b, const Graph& g, double tol) {
  return static_cast<int>(boundary_edges(b, g, tol).size());
}

int cut_size(const Assignment& x, const Graph& g) {
  check_assignment(x, g.n());
  int cut = 0;
  for (const auto& e : g.edges()) cut += x[e.first] != x[e.second] ? 1 : 0;
  return cut;
}

double laplacian_quadratic_trace(const Assignment& x, const Graph& g) {
  check_assignment(x, g.n());
  const Eigen::MatrixXd one_hot = x.one_hot();
  const Eigen::MatrixXd lx = g.sparse_laplacian() * one_hot;
  return (one_hot.transpose() * lx).trace();
}

Centroids centroid_closed_form(const Assignment& x, const SignalMatrix& y) {
  check_assignment(x, static_cast<int>(y.rows()));
  const auto sizes = x.cluster_sizes();
  Centroids mu = Centroids::Zero(x.k(), y.cols());
  for (int c = 0; c < x.k(); ++c) {
    if (sizes[static_cast<std::size_t>(c)] == 0) {
      fail(ErrorCode::EmptyCluster, "cluster " + std::to_string(c) + " is empty");
    }
  }
  for (int i = 0; i < x.n(); ++i) mu.row(x[i]) += y.row(i);
  for (int c = 0; c < x.k(); ++c) mu.row(c) /= sizes[static_cast<std::size_t>(c)];
  return mu;
}

Matrix reconstruct(const Assignment& x, const Centroids& mu) {
  if (mu.rows() != x.k()) fail(ErrorCode::DimensionMismatch, "centroid rows must equal k");
  Matrix b(x.n(), mu.cols());
  for (int i = 0; i < x.n(); ++i) b.row(i) = mu.row(x[i]);
  return b;
}

double objective_p0(const SignalMatrix& y, const Matrix& b, const Graph& g, double lambda,
                    double tol) {
  check_rows(y, g, "Y");
  check_rows(b, g, "B");
  if (y.cols() != b.cols()) fail(ErrorCode::DimensionMismatch, "Y and B differ in columns");
  return 0.5 * (y - b).squaredNorm() + lambda * l20_penalty(b, g, tol);
}

double objective_p1(const SignalMatrix& y, const Assignment& x, const Centroids& mu,
                    const Graph& g, double lambda) {
  check_rows(y, g, "Y");
  check_assignment(x, g.n());
  if (mu.rows() != x.k() || mu.cols() != y.cols()) {
    fail(ErrorCode::DimensionMismatch, "centroids must be k x d");
  }
  const auto& k = kernels::table();
  const auto d = static_cast<std::size_t>(y.cols());
  double fit = 0.0;
  for (int i = 0; i < x.n(); ++i) fit += k.squared_distance(y.row(i).data(), mu.row(x[i]).data(), d);
  // (lambda / 2) Tr(X^T L X) = lambda * cut
  return 0.5 * fit + lambda * cut_size(x, g);
}

double objective_q2(const SignalMatrix& y, const Assignment& x, const Graph& g, double lambda) {
  const Centroids mu = centroid_closed_form(x, y);
  const auto sizes = x.cluster_sizes();
  double explained = 0.0;
  for (int c = 0; c < x.k(); ++c) explained += sizes[static_cast<std::size_t>(c)] * mu.row(c).squaredNorm();
  return explained - lambda * 2.0 * cut_size(x, g);
}

GtfSolution make_solution(const SignalMatrix& y, const Graph& g, const Assignment& x,
                          double lambda) {
  GtfSolution s;
  s.assignment = x.compacted();
  s.centroids = centroid_closed_form(s.assignment, y);
  s.reconstruction = reconstruct(s.assignment, s.centroids);
  s.p1_objective = objective_p1(y, s.assignment, s.centroids, g, lambda);
  s.p0_objective = objective_p0(y, s.reconstruction, g, lambda, 0.0);
  s.cut = cut_size(s.assignment, g);
  s.k = s.assignment.k();
  return s;
}

}  // namespace gtf
