#include "gtf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gtf/error.hpp"
#include "gtf/kmeans.hpp"

namespace gtf {

SpectralBasis compute_spectral_basis(const SignalMatrix& y, const Graph& g, int k_max,
                                     const LaplacianEigenOptions& options) {
  const int n = g.n();
  if (y.rows() != n) fail(ErrorCode::DimensionMismatch, "Y rows must equal node count");
  if (k_max < 1) fail(ErrorCode::InvalidArgument, "k_max must be >= 1");
  k_max = std::min(k_max, n);

  SpectralBasis b;
  b.n = n;
  b.k_max = k_max;
  b.trace_l = static_cast<double>(g.laplacian_trace());

  // r = sqrt(sigma_j) u_j. With the Gram route u_j = Y v_j / sqrt(sigma_j),
  // so r_j = Y v_j directly, which avoids dividing by small sigma.
  b.sigma = Eigen::VectorXd::Zero(k_max);
  b.r = Matrix::Zero(n, k_max);
  const Eigen::MatrixXd yd = y;
  if (y.cols() < n) {
    const int kk = std::min<int>(k_max, static_cast<int>(y.cols()));
    const EigenPairs gram = top_eigenpairs(yd.transpose() * yd, kk, Which::largest);
    for (int j = 0; j < kk; ++j) {
      b.sigma(j) = std::max(gram.values(j), 0.0);
      if (b.sigma(j) > 0.0) b.r.col(j) = yd * gram.vectors.col(j);
    }
  } else {
    const EigenPairs direct = top_eigenpairs(yd * yd.transpose(), k_max, Which::largest);
    for (int j = 0; j < k_max; ++j) {
      b.sigma(j) = std::max(direct.values(j), 0.0);
      b.r.col(j) = std::sqrt(b.sigma(j)) * direct.vectors.col(j);
    }
  }

  const EigenPairs lap = laplacian_smallest(g, k_max, options);
  b.gamma = lap.values;
  b.v = lap.vectors;
  return b;
}

double optimal_alpha(double trace_l, std::span<const double> gamma_smallest_k, int n, int k) {
  if (k >= n) fail(ErrorCode::KEqualsN, "optimal alpha needs k < n");
  if (static_cast<int>(gamma_smallest_k.size()) < k) {
    fail(ErrorCode::DimensionMismatch, "need the k smallest eigenvalues");
  }
  double head = 0.0;
  for (int i = 0; i < k; ++i) head += gamma_smallest_k[static_cast<std::size_t>(i)];
  return (trace_l - head) / static_cast<double>(n - k);
}

SpectralEmbedding build_embedding(const SpectralBasis& basis, double lambda, int k,
                                  std::span<const double> weights, std::optional<double> alpha) {
  if (k < 1 || k > basis.k_max) {
    fail(ErrorCode::InvalidArgument, "k=" + std::to_string(k) + " outside [1, k_max]");
  }
  if (lambda < 0.0) fail(ErrorCode::InvalidArgument, "lambda must be nonnegative");
  const int n = basis.n;
  if (!weights.empty() && static_cast<int>(weights.size()) != n) {
    fail(ErrorCode::DimensionMismatch, "one weight per node required");
  }
  const double gamma_k = basis.gamma(k - 1);
  double a = 0.0;
  if (alpha) {
    a = *alpha;
  } else if (k < n) {
    a = optimal_alpha(basis.trace_l, std::span<const double>(basis.gamma.data(), static_cast<std::size_t>(k)), n, k);
  } else {
    a = basis.gamma.maxCoeff();
  }
  if (a < gamma_k) a = gamma_k + 1e-9;

  SpectralEmbedding e;
  e.alpha = a;
  e.r = basis.r.leftCols(k);
  e.t.resize(n, k);
  for (int j = 0; j < k; ++j) {
    e.t.col(j) = std::sqrt(std::max(a - basis.gamma(j), 0.0)) * basis.v.col(j);
  }
  const double root_lambda = std::sqrt(lambda);
  e.z.resize(n, 2 * k);
  for (int i = 0; i < n; ++i) {
    const double w = weights.empty() ? 1.0 : weights[static_cast<std::size_t>(i)];
    e.z.row(i).head(k) = w * e.r.row(i);
    e.z.row(i).tail(k) = root_lambda * e.t.row(i);
  }
  return e;
}

SpectralEmbedding build_embedding(const SignalMatrix& y, const Graph& g, double lambda, int k,
                                  std::span<const double> weights) {
  return build_embedding(compute_spectral_basis(y, g, k), lambda, k, weights);
}

double vpp_objective(const SpectralEmbedding& embedding, const Assignment& x, double lambda) {
  const auto n = static_cast<int>(embedding.r.rows());
  if (x.n() != n) fail(ErrorCode::DimensionMismatch, "assignment size mismatch");
  const auto dim = embedding.r.cols();
  Matrix xi = Matrix::Zero(x.k(), dim);
  Matrix zeta = Matrix::Zero(x.k(), dim);
  for (int i = 0; i < n; ++i) {
    xi.row(x[i]) += embedding.r.row(i);
    zeta.row(x[i]) += embedding.t.row(i);
  }
  const auto sizes = x.cluster_sizes();
  double total = 0.0;
  for (int c = 0; c < x.k(); ++c) {
    const int size = sizes[static_cast<std::size_t>(c)];
    if (size == 0) continue;
    total += xi.row(c).squaredNorm() / size + lambda * zeta.row(c).squaredNorm();
  }
  return total - lambda * embedding.alpha * n;
}

GtfSolution solve_p2_fixed_k(const SpectralBasis& basis, const SignalMatrix& y, const Graph& g,
                             double lambda, int k, const SpectralOptions& options) {
  const int n = g.n();
  if (k < 1 || k > n) fail(ErrorCode::InvalidArgument, "need 1 <= k <= n");
  if (k == 1) return make_solution(y, g, Assignment::single_cluster(n), lambda);

  std::vector<double> weights(static_cast<std::size_t>(n), 1.0);
  GtfSolution best;
  bool have = false;
  for (int pass = 0; pass <= std::max(0, options.reweight_passes); ++pass) {
    const SpectralEmbedding e = build_embedding(basis, lambda, k, weights);
    KMeansOptions km{options.restarts, options.max_iter,
                     derive_seed(options.seed, static_cast<std::uint64_t>(k) * 64 + static_cast<std::uint64_t>(pass))};
    const KMeansResult clusters = kmeans(e.z, k, km);
    const Assignment x(clusters.labels, k);
    GtfSolution candidate = make_solution(y, g, x, lambda);
    if (!have || candidate.p1_objective < best.p1_objective) {
      best = std::move(candidate);
      have = true;
    }
    const auto sizes = x.cluster_sizes();
    for (int i = 0; i < n; ++i) {
      weights[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(static_cast<double>(sizes[static_cast<std::size_t>(x[i])]));
    }
  }
  return best;
}

GtfSolution solve_p2_fixed_k(const SignalMatrix& y, const Graph& g, double lambda, int k,
                             const SpectralOptions& options) {
  return solve_p2_fixed_k(compute_spectral_basis(y, g, k, options.eigen), y, g, lambda, k, options);
}

ScreenResult solve_p2_screen(const SpectralBasis& basis, const SignalMatrix& y, const Graph& g,
                             double lambda, int k_max, const SpectralOptions& options) {
  if (k_max < 1) fail(ErrorCode::InvalidArgument, "k_max must be >= 1");
  k_max = std::min(k_max, g.n());
  if (basis.k_max < k_max) fail(ErrorCode::InvalidArgument, "spectral basis computed for a smaller k_max");
  ScreenResult out;
  const double total = y.squaredNorm();
  for (int k = 1; k <= k_max; ++k) {
    GtfSolution candidate = solve_p2_fixed_k(basis, y, g, lambda, k, options);
    out.p1_by_k.push_back(candidate.p1_objective);
    // 2 P1 + q = ||Y||_F^2
    out.q_by_k.push_back(total - 2.0 * candidate.p1_objective);
    out.effective_k_by_k.push_back(candidate.k);
    if (k == 1 || candidate.p1_objective < out.best.p1_objective) {
      out.best = std::move(candidate);
      out.k_requested = k;
      out.k_star = out.best.k;
    }
  }
  return out;
}

ScreenResult solve_p2_screen(const SignalMatrix& y, const Graph& g, double lambda, int k_max,
                             const SpectralOptions& options) {
  const int kk = std::min(std::max(k_max, 1), g.n());
  return solve_p2_screen(compute_spectral_basis(y, g, kk, options.eigen), y, g, lambda, k_max, options);
}

}  // namespace gtf
