#pragma once

// Spectral approximation for the fixed-k problem and screening over k.
//
// The q objective is rewritten through the eigendecompositions of Y Y^T and
// L into a vector partition problem over the per-node vectors
//   r_i(j) = sqrt(sigma_j) U_ij,   t_i(j) = sqrt(alpha - gamma_j) V_ij,
// which is then solved approximately by k-means on z_i = [w_i r_i ; sqrt(lambda) t_i].

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gtf/eigensolver.hpp"
#include "gtf/graph.hpp"
#include "gtf/model.hpp"
#include "gtf/types.hpp"

namespace gtf {

struct SpectralOptions {
  int restarts = 10;
  int max_iter = 300;
  /// Extra k-means passes with weights 1/sqrt(|C|) taken from the previous pass.
  int reweight_passes = 1;
  std::uint64_t seed = 0;
  LaplacianEigenOptions eigen{};
};

/// Lambda-independent spectral data for one (Y, G) instance, valid for any
/// k <= k_max. Computing it once lets lambda grids and k screens share it.
struct SpectralBasis {
  int n = 0;
  int k_max = 0;
  double trace_l = 0.0;
  Eigen::VectorXd sigma;  ///< k_max leading eigenvalues of Y Y^T, zero padded
  Matrix r;               ///< n x k_max, r_i(j) = sqrt(sigma_j) U_ij
  Eigen::VectorXd gamma;  ///< k_max smallest eigenvalues of L, ascending
  Eigen::MatrixXd v;      ///< n x k_max Laplacian eigenvectors
};

SpectralBasis compute_spectral_basis(const SignalMatrix& y, const Graph& g, int k_max,
                                     const LaplacianEigenOptions& options = {});

/// Minimiser of sum_{i>k} (gamma_i - alpha)^2, computed as
/// (Tr L - sum_{i<=k} gamma_i) / (n - k) so the tail spectrum is not needed.
double optimal_alpha(double trace_l, std::span<const double> gamma_smallest_k, int n, int k);

struct SpectralEmbedding {
  Matrix r;  ///< n x k
  Matrix t;  ///< n x k
  double alpha = 0.0;
  Matrix z;  ///< n x 2k, [w_i r_i ; sqrt(lambda) t_i]
};

/// alpha defaults to optimal_alpha (clamped to >= gamma_k); for k = n it
/// defaults to the largest Laplacian eigenvalue.
SpectralEmbedding build_embedding(const SpectralBasis& basis, double lambda, int k,
                                  std::span<const double> weights,
                                  std::optional<double> alpha = std::nullopt);
SpectralEmbedding build_embedding(const SignalMatrix& y, const Graph& g, double lambda, int k,
                                  std::span<const double> weights);

/// sum_h ||xi_h||^2 + ||zeta_h||^2 - lambda * alpha * n for the given
/// assignment, with xi_h = sum_{i in C_h} r_i / sqrt|C_h| and
/// zeta_h = sqrt(lambda) sum_{i in C_h} t_i. Exact q when k = n.
double vpp_objective(const SpectralEmbedding& embedding, const Assignment& x, double lambda);

GtfSolution solve_p2_fixed_k(const SignalMatrix& y, const Graph& g, double lambda, int k,
                             const SpectralOptions& options = {});
GtfSolution solve_p2_fixed_k(const SpectralBasis& basis, const SignalMatrix& y, const Graph& g,
                             double lambda, int k, const SpectralOptions& options = {});

struct ScreenResult {
  GtfSolution best;
  int k_star = 0;                     ///< nonempty clusters in `best`
  int k_requested = 0;                ///< requested k that produced `best`
  std::vector<double> p1_by_k;        ///< entry k-1 is the P1 objective for k
  std::vector<double> q_by_k;         ///< matching q values
  std::vector<int> effective_k_by_k;  ///< nonempty clusters per candidate
};

/// Runs the fixed-k solver for k = 1..k_max and keeps the candidate with the
/// smallest P1 objective (equivalently the largest q). Ties keep smaller k.
ScreenResult solve_p2_screen(const SignalMatrix& y, const Graph& g, double lambda, int k_max,
                             const SpectralOptions& options = {});
ScreenResult solve_p2_screen(const SpectralBasis& basis, const SignalMatrix& y, const Graph& g,
                             double lambda, int k_max, const SpectralOptions& options = {});

}  // namespace gtf
