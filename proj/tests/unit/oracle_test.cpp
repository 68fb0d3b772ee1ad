#include <gtest/gtest.h>

#include <set>

#include "gtf/oracle.hpp"
#include "helpers.hpp"

using namespace gtf;
using gtf::testkit::code_of;

TEST(Partitions, BellNumbers) {
  // Bell triangle computed independently from the recurrence B(n+1) = sum C(n,k) B(k).
  std::vector<std::uint64_t> bell{1};
  for (int n = 0; n < 12; ++n) {
    std::uint64_t next = 0;
    std::uint64_t binom = 1;
    for (int k = 0; k <= n; ++k) {
      next += binom * bell[static_cast<std::size_t>(k)];
      binom = binom * static_cast<std::uint64_t>(n - k) / static_cast<std::uint64_t>(k + 1);
    }
    bell.push_back(next);
  }
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(bell_number(n), bell[static_cast<std::size_t>(n)]);
  EXPECT_EQ(bell_number(8), 4140u);
  for (int n = 1; n <= 10; ++n) {
    std::uint64_t count = 0;
    enumerate_partitions(n, [&](const Assignment&) { ++count; });
    EXPECT_EQ(count, bell[static_cast<std::size_t>(n)]) << n;
  }
}

TEST(Partitions, SmallCountsCanonicalUnique) {
  EXPECT_EQ(all_partitions(3).size(), 5u);
  EXPECT_EQ(all_partitions(4).size(), 15u);
  std::set<std::vector<int>> seen;
  for (const Assignment& x : all_partitions(7)) {
    EXPECT_EQ(x, x.canonical());
    EXPECT_EQ(x.nonempty_clusters(), x.k());
    EXPECT_TRUE(seen.insert(x.labels()).second);
  }
  EXPECT_EQ(seen.size(), 877u);
}

TEST(Partitions, TooLarge) {
  EXPECT_EQ(code_of([] { PartitionIterator it(13); }), ErrorCode::TooLarge);
  EXPECT_NO_THROW(PartitionIterator(12));
}

TEST(BruteForceP1, Examples) {
  Rng rng(1);
  const Graph g = testkit::random_connected_graph(6, 0.3, rng);
  const Matrix y = testkit::random_matrix(6, 2, rng);
  const GtfSolution free = brute_force_p1(y, g, 0.0);
  EXPECT_NEAR(free.p1_objective, 0.0, 1e-15);
  EXPECT_EQ(brute_force_p1(y, g, 1e9).k, 1);

  Matrix path_y(3, 1);
  path_y << 0, 0, 10;
  const GtfSolution s = brute_force_p1(path_y, testkit::path_graph(3), 1.0);
  EXPECT_EQ(s.assignment.labels(), (std::vector<int>{0, 0, 1}));
  EXPECT_DOUBLE_EQ(s.p1_objective, 1.0);
}

TEST(BruteForceQ1, Examples) {
  Rng rng(2);
  const Graph g = testkit::random_connected_graph(6, 0.3, rng);
  const std::vector<int> labels{0, 1, 0, 1, 1, 0};
  const MapSolution free = brute_force_q1(MapInstance::from_labels(g, labels, 2, 0.0, 0.0));
  EXPECT_NEAR(free.q_objective, 0.0, 1e-15);
  EXPECT_EQ(free.predicted, labels);
  EXPECT_EQ(brute_force_q1(MapInstance::from_labels(g, labels, 2, 1e9, 0.01)).k, 1);

  // Path 0-1-2-3-4 with node 2 unlabelled: cutting either side of node 2
  // costs one edge (2 lambda) and fits all labels exactly; the first such
  // partition in enumeration order is {0,1,2 | 3,4}.
  const Graph path = testkit::path_graph(5);
  const MapInstance hand = MapInstance::from_labels(path, {0, 0, -1, 1, 1}, 2, 0.1, 0.0);
  const MapSolution s = brute_force_q1(hand);
  EXPECT_EQ(s.assignment.labels(), (std::vector<int>{0, 0, 0, 1, 1}));
  EXPECT_NEAR(s.q_objective, 0.2, 1e-15);
  EXPECT_EQ(s.predicted, (std::vector<int>{0, 0, 0, 1, 1}));
}

TEST(NumericGradient, Examples) {
  Rng rng(3);
  const Matrix y = testkit::random_matrix(4, 3, rng);
  const auto f = [&](const Matrix& b) { return 0.5 * (y - b).squaredNorm(); };
  EXPECT_LE(numeric_gradient(f, y).cwiseAbs().maxCoeff(), 1e-9);
  const Matrix at = testkit::random_matrix(4, 3, rng);
  EXPECT_LE((numeric_gradient(f, at) - (at - y)).cwiseAbs().maxCoeff(), 1e-8);
  const auto cubic = [](const Matrix& b) { return b.array().cube().sum(); };
  const Matrix analytic = 3.0 * at.array().square();
  EXPECT_LE((numeric_gradient(cubic, at) - analytic).cwiseAbs().maxCoeff(), 1e-8);
}
