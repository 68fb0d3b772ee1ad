#pragma once

// Heat-bath simulated annealing on the Potts Hamiltonian
//   H(delta) = sum_i ||y_i - c_{delta_i}||^2 + lambda_H * #{(i,j) in E : delta_i != delta_j},
// with c_j the mean of cluster j (empty clusters cost nothing). Crossing
// edges are counted once, so the ordered-pair Potts sum equals 2x this cut.
// Since H(delta; 2 lambda) = 2 * P1(delta; lambda), anneal() takes the P1
// lambda and runs the chain with lambda_H = 2 lambda.

#include <cstdint>
#include <span>
#include <vector>

#include "gtf/graph.hpp"
#include "gtf/model.hpp"
#include "gtf/potts.hpp"
#include "gtf/types.hpp"

namespace gtf {

/// k-means fidelity with running per-cluster sums, counts and sums of
/// squared norms. Moves use the exact two-cluster update
///   leave s: -m_s/(m_s-1) ||y - c_s||^2,  join t: m_t/(m_t+1) ||y - c_t||^2.
class KMeansFidelity {
 public:
  KMeansFidelity(const SignalMatrix& y, int k);

  void assign(int i, int c);
  void unassign(int i, int c);
  double move_delta(int i, int s, int t) const;
  double recompute(std::span<const int> labels) const;

  const Matrix& cluster_sum() const noexcept { return sum_; }
  const std::vector<int>& cluster_count() const noexcept { return count_; }
  const std::vector<double>& cluster_sum_squares() const noexcept { return sum_squares_; }

 private:
  const SignalMatrix* y_;
  Matrix sum_;
  Matrix centroid_;
  std::vector<int> count_;
  std::vector<double> sum_squares_;
};

using SAState = PottsChain<KMeansFidelity>;

/// State with the given labels; lambda_h is the per-crossing-edge weight.
SAState make_sa_state(const SignalMatrix& y, const Graph& g, std::vector<int> labels, int k,
                      double lambda_h);

/// H evaluated from scratch (single-count cut convention, weight lambda_h).
double hamiltonian(const SignalMatrix& y, const Graph& g, std::span<const int> labels,
                   double lambda_h, int k);

double delta_h(const SAState& state, int i, int t);
std::vector<double> heat_bath_probabilities(const SAState& state, int i, double temperature);

struct AnnealOptions {
  Schedule schedule{};
  int restarts = 1;
  std::uint64_t seed = 0;
  bool record_trace = false;
};

struct AnnealResult {
  GtfSolution solution;
  double energy = 0.0;             ///< final H of the winning restart
  std::vector<int> raw_labels;     ///< final labels before compaction
  std::vector<TracePoint> trace;   ///< per sweep, winning restart only
  int winning_restart = 0;
};

/// Anneals from uniformly random labels in [0, k). Per restart, the RNG
/// stream (seeded from seed and restart index) is consumed as: n initial
/// label draws, then per sweep one shuffle followed by one uniform draw per
/// visited node. Restarts are reduced by lowest final energy.
AnnealResult anneal(const SignalMatrix& y, const Graph& g, double lambda, int k,
                    const AnnealOptions& options = {});

}  // namespace gtf
