#pragma once

// Heat-bath Potts chain shared by the GTF and MAP annealers. The energy is
// a per-cluster fidelity term (supplied by the Fidelity policy) plus
// cut_weight times the number of label-crossing edges.
//
// Fidelity policy requirements:
//   void assign(int i, int c);             // node i joins cluster c
//   void unassign(int i, int c);           // node i leaves cluster c
//   double move_delta(int i, int s, int t) const;  // fidelity change of s -> t
//   double recompute(std::span<const int> labels) const;  // from scratch

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gtf/error.hpp"
#include "gtf/graph.hpp"
#include "gtf/types.hpp"

namespace gtf {

/// Geometric cooling: T <- cool * T from t_start while T >= t_end, with
/// sweeps_per_temp sweeps at each level.
struct Schedule {
  double t_start = 100.0;
  double t_end = 0.001;
  double cool = 0.99;
  int sweeps_per_temp = 1;

  void validate() const;
  /// Number of temperature levels visited.
  int levels() const;
};

struct TracePoint {
  double temperature = 0.0;
  long long sweep = 0;
  double energy = 0.0;
};

template <class Fidelity>
class PottsChain {
 public:
  PottsChain(const Graph& g, Fidelity fidelity, std::vector<int> labels, int k, double cut_weight)
      : graph_(&g),
        fidelity_(std::move(fidelity)),
        labels_(std::move(labels)),
        k_(k),
        cut_weight_(cut_weight),
        neighbor_counts_(static_cast<std::size_t>(g.n()) * static_cast<std::size_t>(k), 0) {
    if (static_cast<int>(labels_.size()) != g.n()) {
      fail(ErrorCode::DimensionMismatch, "one label per node required");
    }
    for (int i = 0; i < g.n(); ++i) {
      const int c = labels_[static_cast<std::size_t>(i)];
      if (c < 0 || c >= k_) fail(ErrorCode::LabelOutOfRange, "label " + std::to_string(c));
      fidelity_.assign(i, c);
      for (int j : g.neighbors(i)) ++neighbor_counts_[slot(j, c)];
    }
    energy_ = recompute_energy();
  }

  int n() const noexcept { return graph_->n(); }
  int k() const noexcept { return k_; }
  const Graph& graph() const noexcept { return *graph_; }
  const Fidelity& fidelity() const noexcept { return fidelity_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  double energy() const noexcept { return energy_; }
  double cut_weight() const noexcept { return cut_weight_; }

  /// |{j ~ i : label_j = c}|
  int neighbor_label_count(int i, int c) const { return neighbor_counts_[slot(i, c)]; }

  /// Energy change of relabelling node i to t; exactly 0 when t is current.
  double delta(int i, int t) const {
    const int s = labels_[static_cast<std::size_t>(i)];
    if (t == s) return 0.0;
    const double cut = cut_weight_ * static_cast<double>(neighbor_label_count(i, s) - neighbor_label_count(i, t));
    return fidelity_.move_delta(i, s, t) + cut;
  }

  /// p_t = exp(-dH_t / T) / sum_l exp(-dH_l / T), with min-shift for range safety.
  void probabilities(int i, double temperature, std::span<double> out) const {
    if (!(temperature > 0.0)) fail(ErrorCode::InvalidArgument, "temperature must be positive");
    if (static_cast<int>(out.size()) != k_) fail(ErrorCode::DimensionMismatch, "probability buffer size");
    double lowest = 0.0;  // the self-move has delta 0
    for (int t = 0; t < k_; ++t) {
      out[static_cast<std::size_t>(t)] = delta(i, t);
      lowest = std::min(lowest, out[static_cast<std::size_t>(t)]);
    }
    double total = 0.0;
    for (auto& p : out) {
      p = std::exp(-(p - lowest) / temperature);
      total += p;
    }
    for (auto& p : out) p /= total;
  }

  void move(int i, int t) {
    const int s = labels_[static_cast<std::size_t>(i)];
    if (t == s) return;
    if (t < 0 || t >= k_) fail(ErrorCode::LabelOutOfRange, "label " + std::to_string(t));
    energy_ += delta(i, t);
    fidelity_.unassign(i, s);
    fidelity_.assign(i, t);
    for (int j : graph_->neighbors(i)) {
      --neighbor_counts_[slot(j, s)];
      ++neighbor_counts_[slot(j, t)];
    }
    labels_[static_cast<std::size_t>(i)] = t;
  }

  double recompute_energy() const {
    int cut = 0;
    for (const auto& e : graph_->edges()) {
      cut += labels_[static_cast<std::size_t>(e.first)] != labels_[static_cast<std::size_t>(e.second)] ? 1 : 0;
    }
    return fidelity_.recompute(labels_) + cut_weight_ * cut;
  }

  /// One heat-bath sweep: visit nodes in a fresh random order and resample
  /// each label by roulette wheel over the heat-bath probabilities.
  void sweep(double temperature, Rng& rng, std::vector<int>& order, std::vector<double>& probs) {
    order.resize(static_cast<std::size_t>(n()));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    probs.resize(static_cast<std::size_t>(k_));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i : order) {
      probabilities(i, temperature, probs);
      move(i, roulette(probs, unit(rng)));
    }
  }

 private:
  std::size_t slot(int i, int c) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(c);
  }

  static int roulette(std::span<const double> probs, double u) {
    double acc = 0.0;
    int last_positive = 0;
    for (std::size_t t = 0; t < probs.size(); ++t) {
      if (probs[t] <= 0.0) continue;
      last_positive = static_cast<int>(t);
      acc += probs[t];
      if (u < acc) return static_cast<int>(t);
    }
    return last_positive;
  }

  const Graph* graph_;
  Fidelity fidelity_;
  std::vector<int> labels_;
  int k_;
  double cut_weight_;
  std::vector<int> neighbor_counts_;
  double energy_ = 0.0;
};

/// Runs the full cooling schedule on a chain. Appends one trace point per
/// sweep when `trace` is non-null.
template <class Chain>
void run_schedule(Chain& chain, const Schedule& schedule, Rng& rng, std::vector<TracePoint>* trace) {
  std::vector<int> order;
  std::vector<double> probs;
  long long sweep = 0;
  for (double t = schedule.t_start; t >= schedule.t_end; t *= schedule.cool) {
    for (int rep = 0; rep < schedule.sweeps_per_temp; ++rep) {
      chain.sweep(t, rng, order, probs);
      if (trace != nullptr) trace->push_back({t, sweep, chain.energy()});
      ++sweep;
    }
  }
}

}  // namespace gtf
