#include <random>

#include <gtest/gtest.h>

#include "bordered/algebra_checks.hpp"
#include "oracles.hpp"

using namespace bordered;

TEST(AlgebraChecks, LawsOnDecorations) {
  for (const auto& ds : {standard_decoration(1), standard_decoration(2), double_interval_decoration(1)})
    for (int k = 0; k <= static_cast<int>(ds.arcs.size()); ++k) {
      const auto r = check_algebra(ds, k);
      EXPECT_TRUE(r.pass()) << to_json(r).dump();
      for (const char* law : {"d2", "leibniz", "assoc", "closure", "idempotents", "expansion"}) EXPECT_NE(r.law(law), nullptr);
    }
}

TEST(AlgebraChecks, LawsOnRandomSurfaces) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 40; ++t) {
    const auto ds = random_surface(rng, 1 + static_cast<int>(rng() % 3), 2);
    for (int k = 0; k <= static_cast<int>(ds.arcs.size()); ++k) {
      const auto r = check_algebra(ds, k);
      EXPECT_TRUE(r.pass()) << serialize_surface(ds) << " k=" << k << " " << to_json(r).dump();
      EXPECT_EQ(r.dimension, oracle::dimension(ds, k));
      EXPECT_EQ(dimension_formula(Layout::of(ds), k), r.dimension);
    }
  }
}

TEST(AlgebraChecks, DifferentialSquaresToZeroAsComplex) {
  const auto A = Algebra::of(standard_decoration(2), 2);
  const auto C = algebra_complex(A);
  EXPECT_EQ(C.size(), A.dim());
}

TEST(AlgebraChecks, OppositeAlgebra) {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 30; ++t) {
    const auto ds = random_surface(rng, 1 + static_cast<int>(rng() % 3), 2);
    for (int k = 0; k <= static_cast<int>(ds.arcs.size()); ++k) {
      std::string why;
      EXPECT_TRUE(opposite_check(ds, k, &why)) << why;
    }
  }
}

TEST(AlgebraChecks, ConnectedSumTorusTorus) {
  const auto T = standard_decoration(1);
  // sum over k1 + k2 = 2 of dim A(T, k1) dim A(T, k2) with dims 1, 8, 7
  const std::size_t oracle78 = oracle::dimension(T, 0) * oracle::dimension(T, 2) + oracle::dimension(T, 1) * oracle::dimension(T, 1) +
                               oracle::dimension(T, 2) * oracle::dimension(T, 0);
  EXPECT_EQ(oracle78, 78U);
  const auto c = consum_check(T, 0, T, 0, 2);
  EXPECT_TRUE(c.pass) << c.why;
  EXPECT_EQ(c.dimension, 78U);
  for (int k = 0; k <= 4; ++k) EXPECT_TRUE(consum_check(T, 0, T, 0, k).pass);
}

TEST(AlgebraChecks, ConnectedSumRandom) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_surface(rng, 1 + static_cast<int>(rng() % 2), 2);
    const auto b = random_surface(rng, 1 + static_cast<int>(rng() % 2), 2);
    const auto za = rng() % num_z_marks(a), zb = rng() % num_z_marks(b);
    for (int k = 0; k <= static_cast<int>(a.arcs.size() + b.arcs.size()); ++k) {
      const auto c = consum_check(a, za, b, zb, k);
      EXPECT_TRUE(c.pass) << c.why;
      EXPECT_EQ(c.dimension, c.tensor_dimension);
    }
  }
}

TEST(AlgebraChecks, DirectednessMatchesQuiverOracle) {
  EXPECT_FALSE(directedness_check(standard_decoration(1), 1));
  for (int g = 1; g <= 2; ++g)
    for (int k = 0; k <= 2 * g + 1; ++k) EXPECT_TRUE(directedness_check(double_interval_decoration(g), k));
  std::mt19937_64 rng(54);
  for (int t = 0; t < 60; ++t) {
    const auto ds = random_surface(rng, 1 + static_cast<int>(rng() % 3), 2);
    for (int k = 0; k <= static_cast<int>(ds.arcs.size()); ++k) EXPECT_EQ(directedness_check(ds, k), oracle::directed(ds, k));
  }
}

TEST(AlgebraChecks, ReportJson) {
  const auto r = check_algebra(standard_decoration(1), 1);
  const auto j = to_json(r);
  EXPECT_EQ(j.at("dimension"), 8);
  EXPECT_EQ(j.at("idempotents"), 2);
  EXPECT_TRUE(j.at("laws").at("assoc").at("pass").get<bool>());
}
