#include "gtf/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtf/error.hpp"

namespace gtf {

namespace {

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double v = vectors(i, j);
      if (std::abs(v) > 1e-10) {
        if (v < 0.0) vectors.col(j) *= -1.0;
        break;
      }
    }
  }
}

// Select k pairs from an ascending decomposition.
EigenPairs select(const Eigen::VectorXd& ascending_values, const Eigen::MatrixXd& ascending_vectors,
                  int k, Which which) {
  const auto n = static_cast<int>(ascending_values.size());
  EigenPairs out;
  out.which = which;
  out.values.resize(k);
  out.vectors.resize(ascending_vectors.rows(), k);
  for (int j = 0; j < k; ++j) {
    const int src = which == Which::smallest ? j : n - 1 - j;
    out.values(j) = ascending_values(src);
    out.vectors.col(j) = ascending_vectors.col(src);
  }
  fix_signs(out.vectors);
  return out;
}

}  // namespace

EigenPairs top_eigenpairs(const Eigen::MatrixXd& s, int k, Which which) {
  if (s.rows() != s.cols()) fail(ErrorCode::DimensionMismatch, "matrix must be square");
  const auto n = static_cast<int>(s.rows());
  if (k < 1 || k > n) fail(ErrorCode::InvalidArgument, "need 1 <= k <= n");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    fail(ErrorCode::NonSymmetric, "matrix is not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) fail(ErrorCode::ConvergenceFailure, "dense eigensolver failed");
  return select(solver.eigenvalues(), solver.eigenvectors(), k, which);
}

EigenPairs lanczos_smallest(const Eigen::SparseMatrix<double>& s, int k, double upper_bound,
                            const LanczosOptions& options) {
  const auto n = static_cast<int>(s.rows());
  if (k < 1 || k > n) fail(ErrorCode::InvalidArgument, "need 1 <= k <= n");
  const double norm = std::max(upper_bound, 1e-300);
  Rng rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::MatrixXd basis(n, 0);
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples basis j and j+1

  auto random_orthogonal = [&]() -> Eigen::VectorXd {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v(i) = gauss(rng);
      for (int pass = 0; pass < 2; ++pass) v -= basis * (basis.transpose() * v);
      const double nv = v.norm();
      if (nv > 1e-8) return v / nv;
    }
    fail(ErrorCode::ConvergenceFailure, "could not extend Krylov basis");
  };

  Eigen::VectorXd q = random_orthogonal();
  int checkpoint = std::min(n, 2 * k + 20);
  for (;;) {
    while (basis.cols() < checkpoint) {
      const auto j = basis.cols();
      basis.conservativeResize(Eigen::NoChange, j + 1);
      basis.col(j) = q;
      // w = (upper_bound I - S) q
      Eigen::VectorXd w = upper_bound * q - s * q;
      const double a = q.dot(w);
      alpha.push_back(a);
      for (int pass = 0; pass < 2; ++pass) w -= basis * (basis.transpose() * w);
      const double b = w.norm();
      if (basis.cols() == n) {
        beta.push_back(0.0);
        break;
      }
      if (b <= 1e-10 * norm) {
        beta.push_back(0.0);
        q = random_orthogonal();
      } else {
        beta.push_back(b);
        q = w / b;
      }
    }

    const auto m = basis.cols();
    // Projected matrix T = Q^T (uI - S) Q; with full reorthogonalisation it
    // is tridiagonal up to rounding, but forming it explicitly is cheap here.
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      t(j, j) = alpha[static_cast<std::size_t>(j)];
      if (j + 1 < m) {
        t(j, j + 1) = beta[static_cast<std::size_t>(j)];
        t(j + 1, j) = beta[static_cast<std::size_t>(j)];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
    const auto kk = std::min<Eigen::Index>(k, m);
    EigenPairs out;
    out.which = Which::smallest;
    out.values.resize(kk);
    out.vectors.resize(n, kk);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < kk; ++j) {
      const Eigen::Index src = m - 1 - j;
      Eigen::VectorXd v = basis * small.eigenvectors().col(src);
      v.normalize();
      const double value = v.dot(s * v);
      out.values(j) = value;
      out.vectors.col(j) = v;
      worst = std::max(worst, (s * v - value * v).norm());
    }
    if (kk == k && worst <= options.tolerance * norm) {
      fix_signs(out.vectors);
      return out;
    }
    if (m >= n) {
      fail(ErrorCode::ConvergenceFailure,
           "Lanczos residual " + std::to_string(worst) + " above tolerance after full basis");
    }
    checkpoint = std::min<int>(n, static_cast<int>(m + std::max<Eigen::Index>(m / 2, 16)));
  }
}

EigenPairs laplacian_smallest(const Graph& g, int k, const LaplacianEigenOptions& options) {
  if (g.n() <= options.dense_max_n) return top_eigenpairs(g.dense_laplacian(), k, Which::smallest);
  const int max_degree = *std::max_element(g.degrees().begin(), g.degrees().end());
  return lanczos_smallest(g.sparse_laplacian(), k, 2.0 * max_degree, options.lanczos);
}

EigenPairs signal_top_eigenpairs(const Matrix& y, int k) {
  const auto n = static_cast<int>(y.rows());
  const auto d = static_cast<int>(y.cols());
  if (k < 1 || k > n) fail(ErrorCode::InvalidArgument, "need 1 <= k <= n");
  const Eigen::MatrixXd yd = y;
  if (d >= n) {
    EigenPairs direct = top_eigenpairs(yd * yd.transpose(), k, Which::largest);
    direct.values = direct.values.cwiseMax(0.0);
    return direct;
  }
  const int kk = std::min(k, d);
  EigenPairs gram = top_eigenpairs(yd.transpose() * yd, kk, Which::largest);
  const double top = std::max(gram.values(0), 0.0);
  int keep = 0;
  while (keep < kk && gram.values(keep) > 1e-12 * top && gram.values(keep) > 0.0) ++keep;
  EigenPairs out;
  out.which = Which::largest;
  out.values = gram.values.head(keep);
  out.vectors.resize(n, keep);
  for (int j = 0; j < keep; ++j) {
    out.vectors.col(j) = yd * gram.vectors.col(j) / std::sqrt(gram.values(j));
  }
  fix_signs(out.vectors);
  return out;
}

double max_residual(const Eigen::MatrixXd& s, const EigenPairs& pairs) {
  double worst = 0.0;
  for (int j = 0; j < pairs.count(); ++j) {
    worst = std::max(worst, (s * pairs.vectors.col(j) - pairs.values(j) * pairs.vectors.col(j)).norm());
  }
  return worst;
}

}  // namespace gtf
