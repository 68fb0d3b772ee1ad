#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gtf/error.hpp"
#include "gtf/kernels.hpp"

using namespace gtf::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double reference_distance(const std::vector<double>& a, const std::vector<double>& b) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<long double>(a[i] - b[i]) * (a[i] - b[i]);
  return static_cast<double>(acc);
}

}  // namespace

TEST(Kernels, ScalarMatchesLongDoubleReference) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 100u}) {
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    EXPECT_NEAR(scalar::squared_distance(a.data(), b.data(), n), reference_distance(a, b), 1e-12 * (1.0 + n));
  }
}

TEST(Kernels, ParseAndNames) {
  EXPECT_EQ(parse_isa("scalar"), Isa::scalar);
  EXPECT_EQ(parse_isa("avx2"), Isa::avx2);
  EXPECT_THROW(parse_isa("neon"), gtf::Error);
  EXPECT_EQ(to_string(Isa::avx2), "avx2");
  EXPECT_TRUE(supported(Isa::scalar));
  EXPECT_TRUE(supported(detected()));
}

TEST(Kernels, ScopedOverrideRestores) {
  const Isa before = active();
  {
    ScopedIsa scope(Isa::scalar);
    EXPECT_EQ(active(), Isa::scalar);
    EXPECT_EQ(table().isa, Isa::scalar);
  }
  EXPECT_EQ(active(), before);
}

class VariantEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!supported(Isa::avx2)) GTEST_SKIP() << "AVX2 not available";
  }
  const Table& s = table(Isa::scalar);
  const Table& v = table(Isa::avx2);
};

TEST_F(VariantEquivalence, DistanceAndDotAllTailLengths) {
  std::mt19937_64 rng(7);
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    const double tol = 1e-13 * (1.0 + static_cast<double>(n)) * 10.0;
    EXPECT_NEAR(s.squared_distance(a.data(), b.data(), n), v.squared_distance(a.data(), b.data(), n), tol) << n;
    EXPECT_NEAR(s.dot(a.data(), b.data(), n), v.dot(a.data(), b.data(), n), tol) << n;
  }
}

TEST_F(VariantEquivalence, AxpyBitwise) {
  std::mt19937_64 rng(9);
  for (std::size_t n = 0; n <= 37; ++n) {
    const auto x = random_vector(n, rng);
    auto y1 = random_vector(n, rng);
    auto y2 = y1;
    s.axpy(0.75, x.data(), y1.data(), n);
    v.axpy(0.75, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-15 * (1.0 + std::abs(y1[i])));
  }
}

TEST_F(VariantEquivalence, NearestRowAgrees) {
  std::mt19937_64 rng(5);
  for (std::size_t dim : {1u, 2u, 4u, 5u, 10u, 19u}) {
    for (std::size_t k : {1u, 2u, 3u, 8u}) {
      const auto centroids = random_vector(k * dim, rng);
      for (int probe = 0; probe < 50; ++probe) {
        const auto p = random_vector(dim, rng);
        double ds = 0.0;
        double dv = 0.0;
        EXPECT_EQ(s.nearest_row(p.data(), centroids.data(), k, dim, &ds),
                  v.nearest_row(p.data(), centroids.data(), k, dim, &dv));
        EXPECT_NEAR(ds, dv, 1e-12 * (1.0 + ds));
      }
    }
  }
}

TEST_F(VariantEquivalence, NearestRowTieGoesToSmallerIndex) {
  const std::vector<double> centroids{1.0, 0.0, -1.0, 0.0, 1.0, 0.0};
  const std::vector<double> point{0.0, 0.0};
  double d = 0.0;
  EXPECT_EQ(s.nearest_row(point.data(), centroids.data(), 3, 2, &d), 0u);
  EXPECT_EQ(v.nearest_row(point.data(), centroids.data(), 3, 2, &d), 0u);
}
