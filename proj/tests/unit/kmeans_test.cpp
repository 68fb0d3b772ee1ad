#include <gtest/gtest.h>

#include <random>

#include "gtf/kernels.hpp"
#include "gtf/kmeans.hpp"
#include "helpers.hpp"

using namespace gtf;

TEST(KMeans, TwoGroupsOneDimension) {
  Matrix p(4, 1);
  p << 0, 0, 10, 10;
  const KMeansResult r = kmeans(p, 2, {});
  EXPECT_EQ(r.inertia, 0.0);
  EXPECT_EQ(r.labels[0], r.labels[1]);
  EXPECT_EQ(r.labels[2], r.labels[3]);
  EXPECT_NE(r.labels[0], r.labels[2]);
}

TEST(KMeans, EveryPointOwnCluster) {
  Rng rng(1);
  const Matrix p = testkit::random_matrix(7, 3, rng);
  const KMeansResult r = kmeans(p, 7, {});
  EXPECT_EQ(r.inertia, 0.0);
  std::vector<int> sorted = r.labels;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<int>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(KMeans, DuplicatePointsFillAllClusters) {
  Matrix p(5, 1);
  p << 1, 1, 1, 1, 2;
  const KMeansResult r = kmeans(p, 3, {});
  EXPECT_EQ(r.centroids.rows(), 3);
  EXPECT_EQ(r.inertia, 0.0);
}

TEST(KMeans, TooFewPoints) {
  EXPECT_EQ(testkit::code_of([] { kmeans(Matrix::Zero(2, 2), 3, {}); }), ErrorCode::TooFewPoints);
}

TEST(KMeans, SeparatedBlobsRecovered) {
  int recovered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    std::normal_distribution<double> noise(0.0, 0.5);
    Matrix p(90, 2);
    std::vector<int> truth(90);
    const double centres[3][2] = {{0, 0}, {8, 0}, {4, 7}};
    for (int i = 0; i < 90; ++i) {
      truth[static_cast<std::size_t>(i)] = i / 30;
      p(i, 0) = centres[i / 30][0] + noise(rng);
      p(i, 1) = centres[i / 30][1] + noise(rng);
    }
    KMeansOptions opts;
    opts.seed = seed;
    recovered += testkit::same_partition(kmeans(p, 3, opts).labels, truth) ? 1 : 0;
  }
  EXPECT_GE(recovered, 95);
}

TEST(KMeans, DeterministicAndIsaIndependent) {
  Rng rng(3);
  const Matrix p = testkit::random_matrix(60, 5, rng);
  KMeansOptions opts;
  opts.seed = 42;
  const KMeansResult a = kmeans(p, 4, opts);
  const KMeansResult b = kmeans(p, 4, opts);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.inertia, b.inertia);
  if (kernels::supported(kernels::Isa::avx2)) {
    KMeansResult s;
    KMeansResult v;
    {
      kernels::ScopedIsa scope(kernels::Isa::scalar);
      s = kmeans(p, 4, opts);
    }
    {
      kernels::ScopedIsa scope(kernels::Isa::avx2);
      v = kmeans(p, 4, opts);
    }
    EXPECT_EQ(s.labels, v.labels);
    EXPECT_NEAR(s.inertia, v.inertia, 1e-9 * s.inertia);
  }
}

TEST(KMeans, InertiaMatchesLabels) {
  Rng rng(10);
  const Matrix p = testkit::random_matrix(40, 3, rng);
  const KMeansResult r = kmeans(p, 5, {});
  double inertia = 0.0;
  for (int i = 0; i < 40; ++i) inertia += (p.row(i) - r.centroids.row(r.labels[static_cast<std::size_t>(i)])).squaredNorm();
  EXPECT_NEAR(r.inertia, inertia, 1e-9 * inertia);
}
