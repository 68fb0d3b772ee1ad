#pragma once

// Exhaustive ground truth for tiny instances.

#include <cstdint>
#include <functional>
#include <vector>

#include "gtf/graph.hpp"
#include "gtf/map_ssl.hpp"
#include "gtf/model.hpp"
#include "gtf/types.hpp"

namespace gtf {

inline constexpr int kMaxEnumerationSize = 12;

/// Walks all set partitions of {0..n-1} as restricted-growth strings:
/// a_0 = 0 and a_i <= 1 + max(a_0..a_{i-1}). Each partition appears once,
/// with labels in first-occurrence order.
class PartitionIterator {
 public:
  /// Throws TooLarge for n > kMaxEnumerationSize.
  explicit PartitionIterator(int n);

  int n() const noexcept { return static_cast<int>(current_.size()); }
  bool done() const noexcept { return done_; }
  const std::vector<int>& current() const noexcept { return current_; }
  int blocks() const noexcept { return n() == 0 ? 0 : prefix_max_.back() + 1; }
  Assignment assignment() const { return Assignment(current_, blocks()); }

  void next();

 private:
  std::vector<int> current_;
  std::vector<int> prefix_max_;  // max(a_0..a_i)
  bool done_ = false;
};

std::uint64_t bell_number(int n);

/// Calls visit for every partition of {0..n-1}.
void enumerate_partitions(int n, const std::function<void(const Assignment&)>& visit);
std::vector<Assignment> all_partitions(int n);

/// Global minimiser of the P1 objective (centroids at cluster means).
/// Ties keep the first partition in enumeration order.
GtfSolution brute_force_p1(const SignalMatrix& y, const Graph& g, double lambda);

/// Global minimiser of Q1. Partitions whose score system is singular
/// (eps = 0 and a cluster with no observed label) are skipped.
MapSolution brute_force_q1(const MapInstance& inst);

/// Central differences with step h * max(1, |x|) per entry.
Matrix numeric_gradient(const std::function<double(const Matrix&)>& f, const Matrix& at, double h = 1e-5);

}  // namespace gtf
