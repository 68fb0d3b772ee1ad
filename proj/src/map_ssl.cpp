#include "gtf/map_ssl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gtf/error.hpp"
#include "gtf/kernels.hpp"
#include "gtf/potts.hpp"

namespace gtf {

namespace {

void check_assignment(const Assignment& x, const MapInstance& inst) {
  if (x.n() != inst.n()) fail(ErrorCode::DimensionMismatch, "assignment size mismatch");
}

struct ClusterStats {
  Matrix sum_y;   // k x K, observed rows only
  Matrix sum_r;   // k x K
  std::vector<double> sum_yy;
  std::vector<double> sum_rr;
  std::vector<int> observed;
  std::vector<int> size;
};

ClusterStats gather(const Assignment& x, const MapInstance& inst) {
  const int k = x.k();
  const int classes = inst.classes();
  ClusterStats s{Matrix::Zero(k, classes), Matrix::Zero(k, classes),
                 std::vector<double>(static_cast<std::size_t>(k), 0.0),
                 std::vector<double>(static_cast<std::size_t>(k), 0.0),
                 std::vector<int>(static_cast<std::size_t>(k), 0),
                 std::vector<int>(static_cast<std::size_t>(k), 0)};
  for (int i = 0; i < x.n(); ++i) {
    const auto c = static_cast<std::size_t>(x[i]);
    ++s.size[c];
    s.sum_r.row(x[i]) += inst.prior.row(i);
    s.sum_rr[c] += inst.prior.row(i).squaredNorm();
    if (inst.mask[static_cast<std::size_t>(i)] != 0) {
      ++s.observed[c];
      s.sum_y.row(x[i]) += inst.y_onehot.row(i);
      s.sum_yy[c] += inst.y_onehot.row(i).squaredNorm();
    }
  }
  return s;
}

enum class Singular { raise, prior_mean };

Matrix solve_scores(const Assignment& x, const MapInstance& inst, Singular policy) {
  check_assignment(x, inst);
  const ClusterStats s = gather(x, inst);
  const double eps = inst.epsilon;
  Matrix b(x.k(), inst.classes());
  for (int c = 0; c < x.k(); ++c) {
    const auto uc = static_cast<std::size_t>(c);
    if (s.size[uc] == 0) fail(ErrorCode::EmptyCluster, "cluster " + std::to_string(c) + " is empty");
    const double weight = s.observed[uc] + 2.0 * eps * s.size[uc];
    if (weight <= 0.0) {
      if (policy == Singular::raise) {
        fail(ErrorCode::SingularSystem, "cluster " + std::to_string(c) + " has no observed label and eps = 0");
      }
      b.row(c) = s.sum_r.row(c) / s.size[uc];
      continue;
    }
    b.row(c) = (s.sum_y.row(c) + 2.0 * eps * s.sum_r.row(c)) / weight;
  }
  return b;
}

double q1_value(const Assignment& x, const MapInstance& inst, const Matrix& b_tilde) {
  double masked = 0.0;
  double prior = 0.0;
  for (int i = 0; i < x.n(); ++i) {
    const auto row = b_tilde.row(x[i]);
    if (inst.mask[static_cast<std::size_t>(i)] != 0) masked += (inst.y_onehot.row(i) - row).squaredNorm();
    prior += (inst.prior.row(i) - row).squaredNorm();
  }
  return 0.5 * masked + inst.lambda * 2.0 * cut_size(x, *inst.graph) + inst.epsilon * prior;
}

MapSolution finish(const Assignment& raw, const MapInstance& inst) {
  MapSolution out;
  out.assignment = raw.compacted();
  out.k = out.assignment.k();
  out.b_tilde = solve_scores(out.assignment, inst, Singular::prior_mean);
  out.b_full = reconstruct(out.assignment, out.b_tilde);
  out.q_objective = q1_value(out.assignment, inst, out.b_tilde);
  out.predicted = predict(out.b_full);
  return out;
}

// Per-cluster Q1 fidelity: min_b 1/2 sum_obs ||y - b||^2 + eps sum ||r - b||^2
//   = 1/2 S_yy + eps S_rr - 1/2 ||S_y + 2 eps S_r||^2 / (m + 2 eps n).
class MapFidelity {
 public:
  MapFidelity(const MapInstance& inst, int k)
      : inst_(&inst),
        sum_y_(Matrix::Zero(k, inst.classes())),
        sum_r_(Matrix::Zero(k, inst.classes())),
        sum_yy_(static_cast<std::size_t>(k), 0.0),
        sum_rr_(static_cast<std::size_t>(k), 0.0),
        observed_(static_cast<std::size_t>(k), 0),
        size_(static_cast<std::size_t>(k), 0) {}

  void assign(int i, int c) { update(i, c, 1); }
  void unassign(int i, int c) { update(i, c, -1); }

  double move_delta(int i, int s, int t) const {
    if (s == t) return 0.0;
    return cost_with(s, i, -1) + cost_with(t, i, +1) - cost_with(s, i, 0) - cost_with(t, i, 0);
  }

  double recompute(std::span<const int> labels) const {
    const auto k = static_cast<int>(size_.size());
    const Assignment x(std::vector<int>(labels.begin(), labels.end()), k);
    const ClusterStats s = gather(x, *inst_);
    double total = 0.0;
    for (int c = 0; c < k; ++c) {
      const auto uc = static_cast<std::size_t>(c);
      total += cost(s.sum_y.row(c), s.sum_r.row(c), s.sum_yy[uc], s.sum_rr[uc], s.observed[uc], s.size[uc]);
    }
    return total;
  }

 private:
  template <class RowY, class RowR>
  double cost(const RowY& sy, const RowR& sr, double syy, double srr, int observed, int size) const {
    if (size == 0) return 0.0;
    const double eps = inst_->epsilon;
    const double weight = observed + 2.0 * eps * size;
    double value = 0.5 * syy + eps * srr;
    if (weight > 0.0) value -= 0.5 * (sy + 2.0 * eps * sr).squaredNorm() / weight;
    return value;
  }

  // Cost of cluster c with node i added (+1), removed (-1) or unchanged (0).
  double cost_with(int c, int i, int sign) const {
    const auto uc = static_cast<std::size_t>(c);
    if (sign == 0) {
      return cost(sum_y_.row(c), sum_r_.row(c), sum_yy_[uc], sum_rr_[uc], observed_[uc], size_[uc]);
    }
    const bool obs = inst_->mask[static_cast<std::size_t>(i)] != 0;
    const double s = sign;
    const auto ri = inst_->prior.row(i);
    const auto yi = inst_->y_onehot.row(i);
    const auto sy = (sum_y_.row(c) + (obs ? s : 0.0) * yi).eval();
    const auto sr = (sum_r_.row(c) + s * ri).eval();
    return cost(sy, sr, sum_yy_[uc] + (obs ? s * yi.squaredNorm() : 0.0), sum_rr_[uc] + s * ri.squaredNorm(),
                observed_[uc] + (obs ? sign : 0), size_[uc] + sign);
  }

  void update(int i, int c, int sign) {
    const auto uc = static_cast<std::size_t>(c);
    const double s = sign;
    size_[uc] += sign;
    sum_r_.row(c) += s * inst_->prior.row(i);
    sum_rr_[uc] += s * inst_->prior.row(i).squaredNorm();
    if (inst_->mask[static_cast<std::size_t>(i)] != 0) {
      observed_[uc] += sign;
      sum_y_.row(c) += s * inst_->y_onehot.row(i);
      sum_yy_[uc] += s * inst_->y_onehot.row(i).squaredNorm();
    }
    if (size_[uc] == 0) {
      sum_y_.row(c).setZero();
      sum_r_.row(c).setZero();
      sum_yy_[uc] = 0.0;
      sum_rr_[uc] = 0.0;
    }
  }

  const MapInstance* inst_;
  Matrix sum_y_;
  Matrix sum_r_;
  std::vector<double> sum_yy_;
  std::vector<double> sum_rr_;
  std::vector<int> observed_;
  std::vector<int> size_;
};

}  // namespace

MapInstance MapInstance::from_labels(const Graph& g, const std::vector<int>& labels, int classes,
                                     double lambda, double epsilon, std::optional<Matrix> prior) {
  if (static_cast<int>(labels.size()) != g.n()) fail(ErrorCode::DimensionMismatch, "one label per node required");
  if (classes < 2) fail(ErrorCode::InvalidArgument, "need at least two classes");
  MapInstance inst;
  inst.graph = &g;
  inst.lambda = lambda;
  inst.epsilon = epsilon;
  inst.y_onehot = Matrix::Zero(g.n(), classes);
  inst.mask.assign(labels.size(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    if (l == -1) continue;
    if (l < 0 || l >= classes) fail(ErrorCode::LabelOutOfRange, "class label " + std::to_string(l));
    inst.y_onehot(static_cast<Eigen::Index>(i), l) = 1.0;
    inst.mask[i] = 1;
  }
  inst.prior = prior ? std::move(*prior) : Matrix::Constant(g.n(), classes, 1.0 / classes);
  inst.validate();
  return inst;
}

void MapInstance::validate() const {
  if (graph == nullptr) fail(ErrorCode::InvalidArgument, "instance has no graph");
  if (y_onehot.rows() != graph->n() || prior.rows() != graph->n() ||
      static_cast<int>(mask.size()) != graph->n() || prior.cols() != y_onehot.cols()) {
    fail(ErrorCode::DimensionMismatch, "instance matrices disagree with the graph");
  }
  if (classes() < 2) fail(ErrorCode::InvalidArgument, "need at least two classes");
  if (lambda < 0.0 || epsilon < 0.0) fail(ErrorCode::InvalidArgument, "lambda and epsilon must be nonnegative");
  for (int i = 0; i < n(); ++i) {
    const auto row = y_onehot.row(i);
    if (mask[static_cast<std::size_t>(i)] != 0) {
      const bool one_hot = (row.array() == 0.0 || row.array() == 1.0).all() && row.sum() == 1.0;
      if (!one_hot) fail(ErrorCode::InvalidArgument, "observed row " + std::to_string(i) + " is not one-hot");
    } else if (!row.isZero(0.0)) {
      fail(ErrorCode::InvalidArgument, "unobserved row " + std::to_string(i) + " must be zero");
    }
    if ((prior.row(i).array() < 0.0).any()) fail(ErrorCode::InvalidArgument, "prior must be nonnegative");
  }
}

double objective_q(const Matrix& b, const MapInstance& inst, double tol) {
  if (b.rows() != inst.n() || b.cols() != inst.classes()) {
    fail(ErrorCode::DimensionMismatch, "B must be n x K");
  }
  double masked = 0.0;
  for (int i = 0; i < inst.n(); ++i) {
    if (inst.mask[static_cast<std::size_t>(i)] != 0) masked += (inst.y_onehot.row(i) - b.row(i)).squaredNorm();
  }
  return 0.5 * masked + inst.lambda * l20_penalty(b, *inst.graph, tol) +
         inst.epsilon * (inst.prior - b).squaredNorm();
}

Matrix closed_form_b(const Assignment& x, const MapInstance& inst) {
  return solve_scores(x, inst, Singular::raise);
}

Matrix closed_form_b_literal(const Assignment& x, const MapInstance& inst) {
  check_assignment(x, inst);
  const ClusterStats s = gather(x, inst);
  Matrix b(x.k(), inst.classes());
  for (int c = 0; c < x.k(); ++c) {
    const auto uc = static_cast<std::size_t>(c);
    if (s.size[uc] == 0) fail(ErrorCode::EmptyCluster, "cluster " + std::to_string(c) + " is empty");
    b.row(c) = (s.sum_y.row(c) + inst.epsilon * s.sum_r.row(c)) / (s.observed[uc] + s.size[uc]);
  }
  return b;
}

double objective_q1(const Assignment& x, const MapInstance& inst) {
  return q1_value(x, inst, closed_form_b(x, inst));
}

double literal_formula_divergence(const Assignment& x, const MapInstance& inst) {
  return (closed_form_b(x, inst) - closed_form_b_literal(x, inst)).cwiseAbs().maxCoeff();
}

std::vector<int> predict(const Matrix& b_full) {
  std::vector<int> out(static_cast<std::size_t>(b_full.rows()), 0);
  for (Eigen::Index i = 0; i < b_full.rows(); ++i) {
    int best = 0;
    for (Eigen::Index c = 1; c < b_full.cols(); ++c) {
      if (b_full(i, c) > b_full(i, best)) best = static_cast<int>(c);
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

MapSolution solve_map(const MapInstance& inst, int k_max, MapMethod method, const MapOptions& options) {
  inst.validate();
  if (k_max < 1) fail(ErrorCode::InvalidArgument, "k_max must be >= 1");
  const Graph& g = *inst.graph;
  const int n = g.n();
  k_max = std::min(k_max, n);

  if (method == MapMethod::sa) {
    options.anneal.schedule.validate();
    double best_energy = std::numeric_limits<double>::infinity();
    std::vector<int> best_labels;
    for (int r = 0; r < std::max(1, options.anneal.restarts); ++r) {
      Rng rng(derive_seed(options.anneal.seed, static_cast<std::uint64_t>(r)));
      std::uniform_int_distribution<int> pick(0, k_max - 1);
      std::vector<int> labels(static_cast<std::size_t>(n));
      for (auto& l : labels) l = pick(rng);
      PottsChain<MapFidelity> chain(g, MapFidelity(inst, k_max), std::move(labels), k_max, 2.0 * inst.lambda);
      run_schedule(chain, options.anneal.schedule, rng, nullptr);
      const double energy = chain.recompute_energy();
      if (energy < best_energy) {
        best_energy = energy;
        best_labels = chain.labels();
      }
    }
    return finish(Assignment(best_labels, k_max), inst);
  }

  const double root_eps = std::sqrt(inst.epsilon);
  Matrix surrogate(n, 2 * inst.classes());
  for (int i = 0; i < n; ++i) {
    const double m = inst.mask[static_cast<std::size_t>(i)] != 0 ? 1.0 : 0.0;
    surrogate.row(i).head(inst.classes()) = m * inst.y_onehot.row(i);
    surrogate.row(i).tail(inst.classes()) = root_eps * inst.prior.row(i);
  }
  const SpectralBasis basis = compute_spectral_basis(surrogate, g, k_max, options.spectral.eigen);
  MapSolution best;
  bool have = false;
  for (int k = 1; k <= k_max; ++k) {
    const GtfSolution candidate = solve_p2_fixed_k(basis, surrogate, g, 2.0 * inst.lambda, k, options.spectral);
    MapSolution scored = finish(candidate.assignment, inst);
    if (!have || scored.q_objective < best.q_objective) {
      best = std::move(scored);
      have = true;
    }
  }
  return best;
}

}  // namespace gtf
