#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gtf/model.hpp"
#include "helpers.hpp"

using namespace gtf;
using gtf::testkit::code_of;

namespace {

Matrix column(std::initializer_list<double> values) {
  Matrix m(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) m(i++, 0) = v;
  return m;
}

}  // namespace

TEST(Assignment, ValidationAndShapes) {
  const Assignment x({0, 2, 2, 0}, 3);
  EXPECT_EQ(x.cluster_sizes(), (std::vector<int>{2, 0, 2}));
  EXPECT_EQ(x.nonempty_clusters(), 2);
  const Eigen::MatrixXd oh = x.one_hot();
  EXPECT_EQ(oh.rowwise().sum(), Eigen::VectorXd::Ones(4));
  EXPECT_EQ(Eigen::MatrixXd(oh.transpose() * oh), Eigen::Vector3d(2, 0, 2).asDiagonal().toDenseMatrix());
  EXPECT_EQ(x.compacted(), Assignment({0, 1, 1, 0}, 2));
  EXPECT_EQ(Assignment({2, 2, 0, 1}, 3).canonical(), Assignment({0, 0, 1, 2}, 3));
  EXPECT_EQ(code_of([] { Assignment({0, 3}, 3); }), ErrorCode::LabelOutOfRange);
  EXPECT_EQ(code_of([] { Assignment({-1, 0}, 2); }), ErrorCode::LabelOutOfRange);
  EXPECT_EQ(Assignment::singletons(3), Assignment({0, 1, 2}, 3));
  EXPECT_EQ(Assignment::single_cluster(3), Assignment({0, 0, 0}, 1));
}

TEST(L20Penalty, Examples) {
  const Graph path = testkit::path_graph(3);
  EXPECT_EQ(l20_penalty(Matrix::Constant(3, 2, 4.0), path), 0);
  EXPECT_EQ(l20_penalty(column({0, 0, 1}), path), 1);
  EXPECT_EQ(l20_penalty(column({1, 2, 3}), testkit::complete_graph(3)), 3);
  EXPECT_EQ(boundary_edges(column({0, 0, 1}), path), (EdgeList{{1, 2}}));
  EXPECT_TRUE(boundary_edges(Matrix::Constant(3, 1, 2.0), path).empty());
  EXPECT_EQ(code_of([&] { l20_penalty(Matrix::Zero(4, 1), path); }), ErrorCode::DimensionMismatch);
}

TEST(L20Penalty, ToleranceSuppressesTinyDifferences) {
  const Graph path = testkit::path_graph(3);
  const Matrix b = column({0, 1e-12, 1});
  EXPECT_EQ(l20_penalty(b, path, 0.0), 2);
  EXPECT_EQ(l20_penalty(b, path, default_tolerance(b)), 1);
}

TEST(BoundaryEdges, PlantedTruthGivesInterCommunityEdges) {
  const std::vector<int> sizes{20, 25, 15};
  const PlantedPartition pp = planted_partition(sizes, 0.3, 0.05, 4);
  Matrix b(pp.graph.n(), 2);
  const double values[] = {1.0, -1.0, 0.0};
  for (int i = 0; i < pp.graph.n(); ++i) b.row(i).setConstant(values[pp.labels[static_cast<std::size_t>(i)]]);
  EdgeList inter;
  for (const auto& e : pp.graph.edges()) {
    if (pp.labels[static_cast<std::size_t>(e.first)] != pp.labels[static_cast<std::size_t>(e.second)]) inter.push_back(e);
  }
  EXPECT_EQ(boundary_edges(b, pp.graph), inter);
}

TEST(CutSize, Examples) {
  EXPECT_EQ(cut_size(Assignment({0, 0, 1}, 2), testkit::path_graph(3)), 1);
  EXPECT_EQ(cut_size(Assignment::single_cluster(5), testkit::complete_graph(5)), 0);
  EXPECT_EQ(cut_size(Assignment({0, 1, 2}, 3), testkit::complete_graph(3)), 3);
}

TEST(CutSize, HalfTraceIdentity) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(5, 100)(rng);
    const Graph g = testkit::random_connected_graph(n, 0.1, rng);
    const int k = std::uniform_int_distribution<int>(1, 6)(rng);
    const Assignment x(testkit::random_labels(n, k, rng), k);
    const Eigen::MatrixXd oh = x.one_hot();
    const double dense = (oh.transpose() * g.dense_laplacian() * oh).trace();
    int crossing = 0;
    for (const auto& e : g.edges()) crossing += x[e.first] != x[e.second];
    EXPECT_EQ(dense / 2.0, crossing);
    EXPECT_EQ(laplacian_quadratic_trace(x, g), 2.0 * crossing);
    EXPECT_EQ(cut_size(x, g), crossing);
  }
}

TEST(Centroids, Examples) {
  const Matrix mu = centroid_closed_form(Assignment({0, 0, 1}, 2), column({1, 1, 3}));
  EXPECT_EQ(mu, column({1, 3}));
  Rng rng(2);
  const Matrix y = testkit::random_matrix(5, 3, rng);
  EXPECT_TRUE(centroid_closed_form(Assignment::singletons(5), y).isApprox(y, 1e-15));
  EXPECT_EQ(code_of([&] { centroid_closed_form(Assignment({0, 0, 0, 2, 2}, 3), y); }), ErrorCode::EmptyCluster);
}

TEST(Centroids, MatchNormalEquations) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix y = testkit::random_matrix(6, 2, rng);
    std::vector<int> labels{0, 1, 2, 0, 1, 2};
    std::shuffle(labels.begin(), labels.end(), rng);
    const Assignment x(labels, 3);
    const Eigen::MatrixXd oh = x.one_hot();
    const Eigen::MatrixXd normal = (oh.transpose() * oh).ldlt().solve(oh.transpose() * Eigen::MatrixXd(y));
    EXPECT_LE((Eigen::MatrixXd(centroid_closed_form(x, y)) - normal).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Objectives, P0Examples) {
  const Graph path = testkit::path_graph(3);
  const Matrix c = Matrix::Constant(3, 2, 1.5);
  EXPECT_EQ(objective_p0(c, c, path, 7.0), 0.0);
  const Matrix y = column({0, 0, 1});
  EXPECT_EQ(objective_p0(y, y, path, 2.5), 2.5);
  EXPECT_EQ(code_of([&] { objective_p0(y, Matrix::Zero(3, 2), path, 1.0); }), ErrorCode::DimensionMismatch);
}

TEST(Objectives, P1Examples) {
  Rng rng(9);
  const Graph g = testkit::random_connected_graph(12, 0.3, rng);
  const Matrix y = testkit::random_matrix(12, 3, rng);
  const Assignment one = Assignment::single_cluster(12);
  const Matrix mean = y.colwise().mean();
  EXPECT_NEAR(objective_p1(y, one, centroid_closed_form(one, y), g, 3.0),
              0.5 * (y.rowwise() - mean.row(0)).squaredNorm(), 1e-12);
}

TEST(Objectives, NoiselessPlantedTruth) {
  const std::vector<int> sizes{10, 12, 8};
  const PlantedPartition pp = planted_partition(sizes, 0.5, 0.1, 3);
  Matrix y(pp.graph.n(), 3);
  const double values[] = {1.0, -1.0, 0.0};
  for (int i = 0; i < y.rows(); ++i) y.row(i).setConstant(values[pp.labels[static_cast<std::size_t>(i)]]);
  const Assignment x(pp.labels, 3);
  int inter = 0;
  for (const auto& e : pp.graph.edges()) inter += pp.labels[static_cast<std::size_t>(e.first)] != pp.labels[static_cast<std::size_t>(e.second)];
  EXPECT_DOUBLE_EQ(objective_p1(y, x, centroid_closed_form(x, y), pp.graph, 0.7), 0.7 * inter);
}

TEST(Objectives, P0EqualsP1WithDistinctCentroids) {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(4, 40)(rng);
    const Graph g = testkit::random_connected_graph(n, 0.15, rng);
    const int k = std::uniform_int_distribution<int>(1, std::min(n, 5))(rng);
    const Assignment x(testkit::random_labels(n, k, rng), k);
    const Matrix y = testkit::random_matrix(n, 2, rng);
    const Matrix mu = testkit::random_matrix(k, 2, rng);  // distinct with probability 1
    const double lambda = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    const double p0 = objective_p0(y, reconstruct(x, mu), g, lambda, 0.0);
    const double p1 = objective_p1(y, x, mu, g, lambda);
    EXPECT_NEAR(p0, p1, 1e-12 * std::max(1.0, std::abs(p1)));
  }
}

TEST(Objectives, DuplicateCentroidsReportPenaltyFromB) {
  const Graph path = testkit::path_graph(3);
  const Assignment x({0, 1, 1}, 2);
  const Matrix mu = column({2, 2});
  const Matrix y = column({2, 2, 2});
  EXPECT_EQ(objective_p0(y, reconstruct(x, mu), path, 1.0), 0.0);
  EXPECT_EQ(objective_p1(y, x, mu, path, 1.0), 1.0);
  const GtfSolution s = make_solution(y, path, x, 1.0);
  EXPECT_EQ(s.p0_objective, 0.0);
  EXPECT_EQ(s.p1_objective, 1.0);
}

TEST(Objectives, Q2Examples) {
  Rng rng(4);
  const Graph k3 = testkit::complete_graph(3);
  const Matrix y = testkit::random_matrix(3, 2, rng);
  const Matrix mean = y.colwise().mean();
  EXPECT_NEAR(objective_q2(y, Assignment::single_cluster(3), k3, 5.0), 3.0 * mean.squaredNorm(), 1e-12);
  EXPECT_NEAR(objective_q2(y, Assignment::singletons(3), k3, 0.5), y.squaredNorm() - 0.5 * 2.0 * 3.0, 1e-12);
  EXPECT_EQ(code_of([&] { objective_q2(y, Assignment({0, 0, 0}, 2), k3, 1.0); }), ErrorCode::EmptyCluster);
}

TEST(Objectives, FidelityQIdentityAndStationarity) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 50)(rng);
    const Graph g = testkit::random_connected_graph(n, 0.2, rng);
    const int k = std::uniform_int_distribution<int>(1, std::min(n, 6))(rng);
    const Assignment x = Assignment(testkit::random_labels(n, k, rng), k).compacted();
    const Matrix y = testkit::random_matrix(n, 3, rng, 2.0);
    const double lambda = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    const Matrix mu = centroid_closed_form(x, y);
    const double lhs = 2.0 * objective_p1(y, x, mu, g, lambda) + objective_q2(y, x, g, lambda);
    EXPECT_NEAR(lhs, y.squaredNorm(), 1e-10 * y.squaredNorm());
    const Eigen::MatrixXd oh = x.one_hot();
    const Eigen::MatrixXd grad = oh.transpose() * (oh * Eigen::MatrixXd(mu) - Eigen::MatrixXd(y));
    EXPECT_LE(grad.cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Objectives, CentroidIsLocalMinimum) {
  Rng rng(6);
  const Graph g = testkit::random_connected_graph(15, 0.2, rng);
  const Matrix y = testkit::random_matrix(15, 2, rng);
  const Assignment x = Assignment(testkit::random_labels(15, 3, rng), 3).compacted();
  const Matrix mu = centroid_closed_form(x, y);
  const double base = objective_p1(y, x, mu, g, 1.0);
  for (Eigen::Index i = 0; i < mu.rows(); ++i) {
    for (Eigen::Index j = 0; j < mu.cols(); ++j) {
      for (double step : {-1e-3, 1e-3}) {
        Matrix m = mu;
        m(i, j) += step;
        EXPECT_GE(objective_p1(y, x, m, g, 1.0), base);
      }
    }
  }
}

TEST(Objectives, BoundaryEdgesSubsetOfCut) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = testkit::random_connected_graph(20, 0.2, rng);
    const Assignment x(testkit::random_labels(20, 4, rng), 4);
    Matrix mu = testkit::random_matrix(4, 1, rng);
    if (trial % 2 == 0) mu(1, 0) = mu(0, 0);  // force a duplicate row
    const EdgeList b = boundary_edges(reconstruct(x, mu), g);
    EdgeList cut;
    for (const auto& e : g.edges()) {
      if (x[e.first] != x[e.second]) cut.push_back(e);
    }
    EXPECT_TRUE(std::includes(cut.begin(), cut.end(), b.begin(), b.end()));
    if (trial % 2 == 1) EXPECT_EQ(b, cut);
  }
}

TEST(Solution, FieldsConsistent) {
  Rng rng(8);
  const Graph g = testkit::random_connected_graph(10, 0.3, rng);
  const Matrix y = testkit::random_matrix(10, 2, rng);
  const GtfSolution s = make_solution(y, g, Assignment(testkit::random_labels(10, 5, rng), 6), 0.4);
  EXPECT_EQ(s.k, s.assignment.k());
  EXPECT_EQ(s.assignment.nonempty_clusters(), s.k);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(s.reconstruction.row(i), s.centroids.row(s.assignment[i]));
  EXPECT_GE(s.p1_objective, 0.0);
  EXPECT_EQ(s.cut, cut_size(s.assignment, g));
}
