#include <gtest/gtest.h>

#include <vector>

#include "loopforge/gf2.hpp"
#include "loopforge/mltgroups.hpp"

using namespace loopforge;

TEST(FlipVector, TextRoundTrip) {
  const FlipVector v = parse_flip_vector("0110");
  EXPECT_EQ(v.support(), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(to_string(v), "0110");
  EXPECT_THROW((void)parse_flip_vector("01a0"), ParseError);
}

TEST(FlipVector, Decompose) {
  const CDLoop q(3);
  EXPECT_TRUE(flip_decompose(Permutation::identity(16)).none());
  const FlipVector v = flip_decompose(compose(q.T(1), q.T(4)));
  EXPECT_EQ(v.support(), (std::vector<std::size_t>{1, 4}));
  EXPECT_THROW((void)flip_decompose(q.left(q.generator(1))), NotFlipMap);
  EXPECT_EQ(flip_permutation(v), compose(q.T(1), q.T(4)));
}

TEST(FlipVector, MinusOneFlipsEverything) {
  const CDLoop q(3);
  EXPECT_EQ(flip_decompose(q.left(q.negate(0))).weight(), 8U);
}

TEST(GF2Basis, Rank) {
  const std::vector<FlipVector> two = {parse_flip_vector("1100"), parse_flip_vector("0110")};
  EXPECT_EQ(gf2_rank(two), 2U);
  std::vector<FlipVector> three = two;
  three.push_back(parse_flip_vector("1010"));
  EXPECT_EQ(gf2_rank(three), 2U);
  three.push_back(parse_flip_vector("0001"));
  EXPECT_EQ(gf2_rank(three), 3U);
}

TEST(GF2Basis, ContainsAndSpansSame) {
  GF2Basis a(4);
  a.insert(parse_flip_vector("1100"));
  a.insert(parse_flip_vector("0110"));
  EXPECT_TRUE(a.contains(parse_flip_vector("1010")));
  EXPECT_FALSE(a.contains(parse_flip_vector("1000")));
  GF2Basis b(4);
  b.insert(parse_flip_vector("1010"));
  b.insert(parse_flip_vector("0110"));
  EXPECT_TRUE(a.spans_same(b));
  EXPECT_THROW(a.insert(parse_flip_vector("10")), DimensionMismatch);
}

TEST(GF2Basis, RankAgainstBruteForceSpan) {
  // Oracle: count distinct XOR combinations of all subsets.
  const std::vector<FlipVector> vs = {parse_flip_vector("110010"), parse_flip_vector("011001"),
                                      parse_flip_vector("101011"), parse_flip_vector("000111"),
                                      parse_flip_vector("110010")};
  std::vector<std::string> seen;
  for (unsigned mask = 0; mask < (1U << vs.size()); ++mask) {
    FlipVector acc(6);
    for (unsigned i = 0; i < vs.size(); ++i) {
      if ((mask >> i) & 1U) acc ^= vs[i];
    }
    const std::string s = to_string(acc);
    if (std::find(seen.begin(), seen.end(), s) == seen.end()) seen.push_back(s);
  }
  EXPECT_EQ(std::size_t{1} << gf2_rank(vs), seen.size());
}

TEST(GF2Basis, InnerGeneratorsOfQ5) {
  const CDLoop q(5);
  const InnerGenerators ig = inner_generators(q);
  std::vector<FlipVector> all;
  const std::size_t e = 16;
  for (std::size_t x = 0; x < 32; ++x) all.push_back(ig.T[x] ^ ig.T[e]);
  all.insert(all.end(), ig.Lxy.begin(), ig.Lxy.end());
  EXPECT_EQ(gf2_rank(all), 30U);
}
