#include <random>

#include <gtest/gtest.h>

#include "bordered/homalg.hpp"
#include "oracles.hpp"

using namespace bordered;

namespace {

ChainComplex from_oracle(const oracle::RandomComplex& rc) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rc.d.cols; ++i) labels.push_back("g" + std::to_string(i));
  return ChainComplex(labels, oracle::columns_of(rc.d));
}

}  // namespace

TEST(Homalg, RandomComplexHomology) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const auto rc = oracle::random_complex(rng, rng() % 12, rng() % 6);
    const auto c = from_oracle(rc);
    EXPECT_EQ(c.homology_rank(), rc.homology);
    EXPECT_EQ(c.homology_rank(), c.size() - 2 * oracle::rank(rc.d));
  }
}

TEST(Homalg, RejectsNonComplex) {
  // a -> b -> c
  try {
    ChainComplex({"a", "b", "c"}, {{1}, {2}, {}});
    FAIL() << "expected NotAComplex";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAComplex);
  }
  EXPECT_THROW(ChainComplex({"a"}, {{3}}), Error);
}

TEST(Homalg, ConeOfIdentityIsAcyclic) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    const auto c = from_oracle(oracle::random_complex(rng, rng() % 8, rng() % 5));
    const auto cone = mapping_cone(identity_map(c));
    EXPECT_EQ(cone.size(), 2 * c.size());
    EXPECT_EQ(cone.homology_rank(), 0U);
  }
}

TEST(Homalg, ConeOfZeroMapIsSum) {
  std::mt19937_64 rng(23);
  const auto a = from_oracle(oracle::random_complex(rng, 3, 2));
  const auto b = from_oracle(oracle::random_complex(rng, 2, 3));
  const ChainMap zero(a, b, gf2::Columns(a.size()));
  EXPECT_EQ(zero.induced_rank(), 0U);
  EXPECT_EQ(mapping_cone(zero).homology_rank(), a.homology_rank() + b.homology_rank());
}

TEST(Homalg, InducedRankOfIdentity) {
  std::mt19937_64 rng(24);
  const auto c = from_oracle(oracle::random_complex(rng, 5, 4));
  EXPECT_EQ(identity_map(c).induced_rank(), 4U);
}

TEST(Homalg, ChainMapValidation) {
  // a -> b  to  c (zero differential): b |-> c alone does not commute
  const ChainComplex s({"a", "b"}, {{1}, {}});
  const ChainComplex t({"c"}, {{}});
  EXPECT_THROW(ChainMap(s, t, {{}, {0}}), Error);
  EXPECT_NO_THROW(ChainMap(s, t, {{0}, {}}));
}

TEST(Homalg, JsonRoundTrip) {
  std::mt19937_64 rng(25);
  const auto c = from_oracle(oracle::random_complex(rng, 4, 3));
  const auto back = complex_from_json(to_json(c));
  EXPECT_EQ(back.labels(), c.labels());
  EXPECT_EQ(back.differential(), c.differential());
  EXPECT_EQ(to_json(back), to_json(c));
}
