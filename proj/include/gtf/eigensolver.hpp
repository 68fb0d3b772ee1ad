#pragma once

#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "gtf/graph.hpp"
#include "gtf/types.hpp"

namespace gtf {

enum class Which { largest, smallest };

/// A set of eigenpairs, ordered by `which` (largest first or smallest first).
/// Each eigenvector's first component with magnitude above 1e-10 is positive.
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  ///< n x count, orthonormal columns
  Which which = Which::largest;

  int count() const noexcept { return static_cast<int>(values.size()); }
};

/// Dense symmetric eigendecomposition. Asymmetry up to 1e-10 (relative to
/// the largest entry) is symmetrised away; anything larger is NonSymmetric.
EigenPairs top_eigenpairs(const Eigen::MatrixXd& s, int k, Which which);

struct LanczosOptions {
  double tolerance = 1e-8;  ///< residual bound relative to ||S||
  std::uint64_t seed = 0x5eedULL;
};

/// Smallest eigenpairs of a sparse symmetric PSD matrix whose spectrum lies
/// in [0, upper_bound], via Lanczos with full reorthogonalisation applied to
/// upper_bound * I - S. Throws ConvergenceFailure when the residual contract
/// cannot be met.
EigenPairs lanczos_smallest(const Eigen::SparseMatrix<double>& s, int k, double upper_bound,
                            const LanczosOptions& options = {});

struct LaplacianEigenOptions {
  int dense_max_n = 2000;  ///< dense decomposition at or below this size
  LanczosOptions lanczos{};
};

/// k smallest eigenpairs of the graph Laplacian.
EigenPairs laplacian_smallest(const Graph& g, int k, const LaplacianEigenOptions& options = {});

/// Leading eigenpairs of Y Y^T. When d < n they are obtained from the d x d
/// Gram matrix Y^T Y and lifted (u = Y v / sqrt(sigma)); directions with
/// (numerically) zero sigma are dropped, so count() may be below k.
EigenPairs signal_top_eigenpairs(const Matrix& y, int k);

/// max_j ||S v_j - lambda_j v_j||_2 for a dense matrix.
double max_residual(const Eigen::MatrixXd& s, const EigenPairs& pairs);

}  // namespace gtf
