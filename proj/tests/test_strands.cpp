#include <random>

#include <gtest/gtest.h>

#include "bordered/strands.hpp"
#include "oracles.hpp"

using namespace bordered;

namespace {

std::uint32_t el(const Algebra& A, std::vector<std::pair<int, int>> chords, std::vector<int> ident = {}) {
  for (auto& [p, q] : chords) {
    --p;
    --q;
  }
  for (auto& a : ident) --a;
  const long b = A.find(chords, ident);
  EXPECT_GE(b, 0);
  return static_cast<std::uint32_t>(b);
}

}  // namespace

TEST(Strands, TorusDimensions) {
  const auto T = standard_decoration(1);
  const std::size_t want[] = {1, 8, 7};
  for (int k = 0; k <= 2; ++k) {
    const auto A = Algebra::of(T, k);
    EXPECT_EQ(A.dim(), want[k]);
    EXPECT_EQ(A.dim(), oracle::dimension(T, k));
    EXPECT_EQ(A.num_idempotents(), oracle::binomial(2, k));
  }
}

TEST(Strands, DimensionsMatchEnumerationOracle) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    const auto ds = random_surface(rng, 1 + static_cast<int>(rng() % 4), 2);
    const int n = static_cast<int>(ds.arcs.size());
    for (int k = 0; k <= n; ++k) {
      const auto A = Algebra::of(ds, k);
      EXPECT_EQ(A.dim(), oracle::dimension(ds, k));
      EXPECT_EQ(A.num_idempotents(), oracle::binomial(n, k));
    }
  }
}

TEST(Strands, InversionsAndDifferential) {
  const auto L = Layout::of(standard_decoration(1));
  const StrandDiagram crossed{{{0, 3}, {1, 2}}};
  EXPECT_EQ(inversions(L, crossed), 1);
  const auto d = diagram_differential(L, crossed);
  ASSERT_EQ(d.size(), 1U);
  EXPECT_EQ(d[0], (StrandDiagram{{{0, 2}, {1, 3}}}));
  EXPECT_TRUE(diagram_differential(L, d[0]).empty());
}

TEST(Strands, ProductRejectsDoubleCrossings) {
  const auto L = Layout::of(standard_decoration(1));
  const StrandDiagram x{{{0, 1}, {1, 2}}};
  const StrandDiagram y{{{1, 3}, {2, 2}}};
  const auto xy = diagram_product(L, x, y);
  ASSERT_TRUE(xy.has_value());
  EXPECT_EQ(*xy, (StrandDiagram{{{0, 3}, {1, 2}}}));
  // one crossing each, resolved in the composite
  const StrandDiagram u{{{0, 2}, {1, 1}}};
  const StrandDiagram v{{{1, 3}, {2, 2}}};
  EXPECT_EQ(inversions(L, u), 1);
  EXPECT_EQ(inversions(L, v), 1);
  EXPECT_FALSE(diagram_product(L, u, v).has_value());
  EXPECT_FALSE(diagram_product(L, x, x).has_value());
}

TEST(Strands, TorusStructureConstants) {
  const auto A1 = Algebra::of(standard_decoration(1), 1);
  EXPECT_EQ(A1.mul(el(A1, {{1, 2}}), el(A1, {{2, 3}})), (Element{el(A1, {{1, 3}})}));
  EXPECT_EQ(A1.mul(el(A1, {{1, 3}}), el(A1, {{3, 4}})), (Element{el(A1, {{1, 4}})}));
  EXPECT_EQ(A1.mul(el(A1, {{2, 3}}), el(A1, {{3, 4}})), (Element{el(A1, {{2, 4}})}));
  EXPECT_TRUE(A1.mul(el(A1, {{2, 3}}), el(A1, {{2, 4}})).empty());
  for (std::uint32_t b = 0; b < A1.dim(); ++b) EXPECT_TRUE(A1.diff(b).empty());

  const auto A2 = Algebra::of(standard_decoration(1), 2);
  EXPECT_EQ(A2.diff(el(A2, {{1, 4}, {2, 3}})), (Element{el(A2, {{1, 3}, {2, 4}})}));
  EXPECT_EQ(A2.diff(el(A2, {{2, 4}}, {1})), (Element{el(A2, {{3, 4}, {2, 3}})}));
  EXPECT_EQ(A2.diff(el(A2, {{1, 3}}, {2})), (Element{el(A2, {{1, 2}, {2, 3}})}));
}

TEST(Strands, DescribeFindRoundTrip) {
  for (int k = 0; k <= 3; ++k) {
    const auto A = Algebra::of(double_interval_decoration(1), k);
    for (std::uint32_t b = 0; b < A.dim(); ++b) {
      const auto j = A.describe_json(b);
      std::vector<std::pair<int, int>> chords;
      std::vector<int> ident;
      for (const auto& c : j.at("chords")) chords.emplace_back(c[0].get<int>() - 1, c[1].get<int>() - 1);
      for (const auto& a : j.at("identity")) ident.push_back(a.get<int>() - 1);
      EXPECT_EQ(A.find(chords, ident), static_cast<long>(b));
    }
  }
}

TEST(Strands, AlgebraDependsOnlyOnIntervals) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    const auto ds = random_surface(rng, 1 + static_cast<int>(rng() % 3), 2);
    const Layout L(oracle::intervals(ds), ds.arcs);
    for (int k = 0; k <= static_cast<int>(ds.arcs.size()); ++k)
      EXPECT_EQ(dump_algebra(Algebra(L, k)), dump_algebra(Algebra::of(ds, k)));
  }
}

TEST(Strands, KOutOfRange) {
  try {
    Algebra::of(standard_decoration(1), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KOutOfRange);
  }
}

TEST(Strands, WeightsAndIdempotents) {
  const auto A = Algebra::of(standard_decoration(1), 1);
  EXPECT_EQ(A.max_weight(), 3);
  for (int s = 0; s < static_cast<int>(A.num_idempotents()); ++s) {
    const auto e = A.idempotent_element(s);
    EXPECT_TRUE(A.is_idempotent(e));
    EXPECT_EQ(A.weight(e), 0);
    EXPECT_EQ(A.mul(e, e), (Element{e}));
  }
}
