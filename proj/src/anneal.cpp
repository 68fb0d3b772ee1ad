#include "gtf/anneal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gtf/error.hpp"
#include "gtf/kernels.hpp"

namespace gtf {

KMeansFidelity::KMeansFidelity(const SignalMatrix& y, int k)
    : y_(&y),
      sum_(Matrix::Zero(k, y.cols())),
      centroid_(Matrix::Zero(k, y.cols())),
      count_(static_cast<std::size_t>(k), 0),
      sum_squares_(static_cast<std::size_t>(k), 0.0) {}

void KMeansFidelity::assign(int i, int c) {
  const auto& kt = kernels::table();
  const auto d = static_cast<std::size_t>(y_->cols());
  const double* yi = y_->row(i).data();
  kt.axpy(1.0, yi, sum_.row(c).data(), d);
  auto& m = count_[static_cast<std::size_t>(c)];
  ++m;
  sum_squares_[static_cast<std::size_t>(c)] += kt.dot(yi, yi, d);
  centroid_.row(c) = sum_.row(c) / m;
}

void KMeansFidelity::unassign(int i, int c) {
  const auto& kt = kernels::table();
  const auto d = static_cast<std::size_t>(y_->cols());
  const double* yi = y_->row(i).data();
  kt.axpy(-1.0, yi, sum_.row(c).data(), d);
  auto& m = count_[static_cast<std::size_t>(c)];
  --m;
  sum_squares_[static_cast<std::size_t>(c)] -= kt.dot(yi, yi, d);
  if (m > 0) {
    centroid_.row(c) = sum_.row(c) / m;
  } else {
    sum_.row(c).setZero();
    centroid_.row(c).setZero();
    sum_squares_[static_cast<std::size_t>(c)] = 0.0;
  }
}

double KMeansFidelity::move_delta(int i, int s, int t) const {
  if (s == t) return 0.0;
  const auto& kt = kernels::table();
  const auto d = static_cast<std::size_t>(y_->cols());
  const double* yi = y_->row(i).data();
  const double ms = count_[static_cast<std::size_t>(s)];
  const double mt = count_[static_cast<std::size_t>(t)];
  double change = 0.0;
  if (ms > 1.0) change -= ms / (ms - 1.0) * kt.squared_distance(yi, centroid_.row(s).data(), d);
  if (mt > 0.0) change += mt / (mt + 1.0) * kt.squared_distance(yi, centroid_.row(t).data(), d);
  return change;
}

double KMeansFidelity::recompute(std::span<const int> labels) const {
  const auto k = static_cast<int>(count_.size());
  const auto n = static_cast<int>(labels.size());
  Matrix sum = Matrix::Zero(k, y_->cols());
  std::vector<int> count(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < n; ++i) {
    sum.row(labels[static_cast<std::size_t>(i)]) += y_->row(i);
    ++count[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
  }
  for (int c = 0; c < k; ++c) {
    if (count[static_cast<std::size_t>(c)] > 0) sum.row(c) /= count[static_cast<std::size_t>(c)];
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += (y_->row(i) - sum.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
  return total;
}

SAState make_sa_state(const SignalMatrix& y, const Graph& g, std::vector<int> labels, int k,
                      double lambda_h) {
  if (y.rows() != g.n()) fail(ErrorCode::DimensionMismatch, "Y rows must equal node count");
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  return SAState(g, KMeansFidelity(y, k), std::move(labels), k, lambda_h);
}

void Schedule::validate() const {
  if (!(t_start > t_end && t_end > 0.0)) fail(ErrorCode::ConfigError, "need t_start > t_end > 0");
  if (!(cool > 0.0 && cool < 1.0)) fail(ErrorCode::ConfigError, "need 0 < cool < 1");
  if (sweeps_per_temp < 1) fail(ErrorCode::ConfigError, "need at least one sweep per temperature");
}

int Schedule::levels() const {
  int count = 0;
  for (double t = t_start; t >= t_end; t *= cool) ++count;
  return count;
}

double hamiltonian(const SignalMatrix& y, const Graph& g, std::span<const int> labels,
                   double lambda_h, int k) {
  if (static_cast<int>(labels.size()) != g.n() || y.rows() != g.n()) {
    fail(ErrorCode::DimensionMismatch, "labels, Y and graph sizes differ");
  }
  for (int l : labels) {
    if (l < 0 || l >= k) fail(ErrorCode::LabelOutOfRange, "label " + std::to_string(l));
  }
  const KMeansFidelity fidelity(y, k);
  int cut = 0;
  for (const auto& e : g.edges()) {
    cut += labels[static_cast<std::size_t>(e.first)] != labels[static_cast<std::size_t>(e.second)] ? 1 : 0;
  }
  return fidelity.recompute(labels) + lambda_h * cut;
}

double delta_h(const SAState& state, int i, int t) {
  if (t < 0 || t >= state.k()) fail(ErrorCode::LabelOutOfRange, "label " + std::to_string(t));
  return state.delta(i, t);
}

std::vector<double> heat_bath_probabilities(const SAState& state, int i, double temperature) {
  std::vector<double> p(static_cast<std::size_t>(state.k()));
  state.probabilities(i, temperature, p);
  return p;
}

AnnealResult anneal(const SignalMatrix& y, const Graph& g, double lambda, int k,
                    const AnnealOptions& options) {
  options.schedule.validate();
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  if (lambda < 0.0) fail(ErrorCode::InvalidArgument, "lambda must be nonnegative");
  if (y.rows() != g.n()) fail(ErrorCode::DimensionMismatch, "Y rows must equal node count");
  const int n = g.n();
  const double lambda_h = 2.0 * lambda;

  AnnealResult best;
  best.energy = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
    std::uniform_int_distribution<int> pick(0, k - 1);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (auto& l : labels) l = pick(rng);
    SAState state = make_sa_state(y, g, std::move(labels), k, lambda_h);

    std::vector<TracePoint> trace;
    run_schedule(state, options.schedule, rng, options.record_trace ? &trace : nullptr);
    // Drop accumulated rounding from the incremental energy.
    const double energy = state.recompute_energy();
    if (energy < best.energy) {
      best.energy = energy;
      best.raw_labels = state.labels();
      best.trace = std::move(trace);
      best.winning_restart = r;
    }
  }
  best.solution = make_solution(y, g, Assignment(best.raw_labels, k), lambda);
  return best;
}

}  // namespace gtf
