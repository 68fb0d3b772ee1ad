#include <gtest/gtest.h>

#include <cmath>

#include "gtf/eigensolver.hpp"
#include "helpers.hpp"

using namespace gtf;
using gtf::testkit::code_of;

namespace {

double orthonormality_error(const Eigen::MatrixXd& v) {
  return (v.transpose() * v - Eigen::MatrixXd::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(TopEigenpairs, DiagonalLargest) {
  const Eigen::MatrixXd s = Eigen::Vector3d(3, 1, 0).asDiagonal();
  const EigenPairs p = top_eigenpairs(s, 2, Which::largest);
  EXPECT_NEAR(p.values(0), 3.0, 1e-14);
  EXPECT_NEAR(p.values(1), 1.0, 1e-14);
  EXPECT_NEAR(p.vectors(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(p.vectors(1, 1), 1.0, 1e-14);
}

TEST(TopEigenpairs, CompleteGraphLaplacianSpectrum) {
  const EigenPairs p = top_eigenpairs(testkit::complete_graph(3).dense_laplacian(), 3, Which::smallest);
  EXPECT_NEAR(p.values(0), 0.0, 1e-12);
  EXPECT_NEAR(p.values(1), 3.0, 1e-12);
  EXPECT_NEAR(p.values(2), 3.0, 1e-12);
}

TEST(TopEigenpairs, RandomPsdResidualAndSigns) {
  Rng rng(3);
  const Matrix a = testkit::random_matrix(50, 50, rng);
  const Eigen::MatrixXd s = Eigen::MatrixXd(a) * Eigen::MatrixXd(a).transpose();
  for (Which which : {Which::largest, Which::smallest}) {
    const EigenPairs p = top_eigenpairs(s, 10, which);
    EXPECT_LE(max_residual(s, p), 1e-8 * s.norm());
    EXPECT_LE(orthonormality_error(p.vectors), 1e-10);
    for (int j = 0; j < p.count(); ++j) {
      for (int i = 0; i < 50; ++i) {
        if (std::abs(p.vectors(i, j)) > 1e-10) {
          EXPECT_GT(p.vectors(i, j), 0.0);
          break;
        }
      }
      if (j > 0) {
        if (which == Which::largest) EXPECT_GE(p.values(j - 1), p.values(j));
        if (which == Which::smallest) EXPECT_LE(p.values(j - 1), p.values(j));
      }
    }
  }
}

TEST(TopEigenpairs, SymmetryTolerance) {
  Eigen::MatrixXd s = Eigen::Matrix2d{{2.0, 1.0}, {1.0 + 1e-12, 2.0}};
  EXPECT_NO_THROW(top_eigenpairs(s, 1, Which::largest));
  s(1, 0) = 1.1;
  EXPECT_EQ(code_of([&] { top_eigenpairs(s, 1, Which::largest); }), ErrorCode::NonSymmetric);
  EXPECT_EQ(code_of([&] { top_eigenpairs(Eigen::MatrixXd::Identity(2, 2), 3, Which::largest); }),
            ErrorCode::InvalidArgument);
}

TEST(Lanczos, MatchesDenseOnRandomGraphs) {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Graph g = testkit::random_connected_graph(120 + 20 * trial, 0.04, rng);
    const int k = 6;
    const EigenPairs dense = top_eigenpairs(g.dense_laplacian(), k, Which::smallest);
    const double bound = 2.0 * *std::max_element(g.degrees().begin(), g.degrees().end());
    const EigenPairs lz = lanczos_smallest(g.sparse_laplacian(), k, bound);
    ASSERT_EQ(lz.count(), k);
    for (int j = 0; j < k; ++j) EXPECT_NEAR(lz.values(j), dense.values(j), 1e-8);
    EXPECT_LE(max_residual(g.dense_laplacian(), lz), 1e-8 * bound);
    EXPECT_LE(orthonormality_error(lz.vectors), 1e-10);
    EXPECT_NEAR(lz.values(0), 0.0, 1e-8);
  }
}

TEST(Lanczos, SelectedAboveDenseThreshold) {
  Rng rng(9);
  const Graph g = testkit::random_connected_graph(80, 0.05, rng);
  LaplacianEigenOptions opts;
  opts.dense_max_n = 10;
  const EigenPairs lz = laplacian_smallest(g, 4, opts);
  const EigenPairs dense = laplacian_smallest(g, 4);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(lz.values(j), dense.values(j), 1e-8);
}

TEST(SignalEigenpairs, GramRouteMatchesDirect) {
  Rng rng(7);
  for (int d : {1, 3, 10}) {
    const Matrix y = testkit::random_matrix(40, d, rng);
    const Eigen::MatrixXd yyt = Eigen::MatrixXd(y) * Eigen::MatrixXd(y).transpose();
    const EigenPairs gram = signal_top_eigenpairs(y, d);
    const EigenPairs direct = top_eigenpairs(yyt, d, Which::largest);
    ASSERT_EQ(gram.count(), d);
    for (int j = 0; j < d; ++j) EXPECT_NEAR(gram.values(j), direct.values(j), 1e-8 * direct.values(0));
    EXPECT_LE(max_residual(yyt, gram), 1e-8 * yyt.norm());
  }
}

TEST(SignalEigenpairs, RankDeficientDropsZeroDirections) {
  Matrix y(5, 2);
  y.col(0).setConstant(1.0);
  y.col(1).setConstant(2.0);
  const EigenPairs p = signal_top_eigenpairs(y, 2);
  EXPECT_EQ(p.count(), 1);
  EXPECT_NEAR(p.values(0), y.squaredNorm(), 1e-10);
}
