#include <random>

#include <gtest/gtest.h>

#include "bordered/gf2.hpp"
#include "oracles.hpp"

namespace gf2 = bordered::gf2;

TEST(Gf2, NormalizeCancelsPairs) {
  gf2::Column c{5, 1, 5, 3, 1, 1};
  gf2::normalize(c);
  EXPECT_EQ(c, (gf2::Column{1, 3}));
  EXPECT_EQ(gf2::add({1, 2, 4}, {2, 3}), (gf2::Column{1, 3, 4}));
}

TEST(Gf2, RankMatchesDenseOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + rng() % 40, n = 1 + rng() % 40;
    const double density = 0.02 + 0.5 * static_cast<double>(rng() % 100) / 100.0;
    const auto a = oracle::random_matrix(rng, m, n, density);
    const auto cols = oracle::columns_of(a);
    const auto want = oracle::rank(a);
    EXPECT_EQ(gf2::rank_dense(cols, m), want);
    EXPECT_EQ(gf2::rank_sparse(cols, m), want);
    EXPECT_EQ(gf2::rank(cols, m), want);
  }
}

TEST(Gf2, RankOfLowRankProducts) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 30 + rng() % 50, r = 1 + rng() % 10;
    const auto u = oracle::random_matrix(rng, n, r, 0.5), v = oracle::random_matrix(rng, r, n, 0.5);
    const auto a = oracle::multiply(u, v);
    EXPECT_EQ(gf2::rank(oracle::columns_of(a), n), oracle::rank(a));
    EXPECT_LE(oracle::rank(a), r);
  }
}

TEST(Gf2, MultiplyAndTranspose) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 1 + rng() % 20, k = 1 + rng() % 20, n = 1 + rng() % 20;
    const auto a = oracle::random_matrix(rng, m, k, 0.3), b = oracle::random_matrix(rng, k, n, 0.3);
    EXPECT_EQ(gf2::multiply(oracle::columns_of(a), oracle::columns_of(b)), oracle::columns_of(oracle::multiply(a, b)));
    const auto at = gf2::transpose(oracle::columns_of(a), m);
    ASSERT_EQ(at.size(), m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j)
        EXPECT_EQ(std::find(at[i].begin(), at[i].end(), j) != at[i].end(), a.get(i, j));
  }
}

TEST(Gf2, KernelBasisSpansKernel) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + rng() % 25, n = 1 + rng() % 25;
    const auto a = oracle::random_matrix(rng, m, n, 0.25);
    const auto cols = oracle::columns_of(a);
    const auto ker = gf2::kernel_basis(cols, m);
    EXPECT_EQ(ker.size(), n - oracle::rank(a));
    for (const auto& v : ker) EXPECT_TRUE(gf2::apply(cols, v).empty());
    EXPECT_EQ(gf2::rank(ker, n), ker.size());
  }
}

TEST(Gf2, BitRowOperations) {
  gf2::BitRow r(130);
  EXPECT_TRUE(r.none());
  r.set(3);
  r.set(129);
  EXPECT_TRUE(r.test(129));
  EXPECT_EQ(r.find_from(4), 129U);
  r.flip(3);
  EXPECT_FALSE(r.test(3));
}
