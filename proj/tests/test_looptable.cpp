#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "loopforge/looptable.hpp"

using namespace loopforge;

namespace {

// H8 = {1, i, j, k, -1, -i, -j, -k} as indices 0..7, written out by hand.
CayleyTable hand_quaternions() {
  // q[a][b] for a, b in {1, i, j, k}: (unit, negative)
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const bool neg[4][4] = {{false, false, false, false},
                          {false, true, false, true},
                          {false, true, true, false},
                          {false, false, true, true}};
  std::vector<std::vector<std::size_t>> rows(8, std::vector<std::size_t>(8));
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const bool s = neg[a % 4][b % 4] ^ (a >= 4) ^ (b >= 4);
      rows[a][b] = static_cast<std::size_t>(unit[a % 4][b % 4] + (s ? 4 : 0));
    }
  }
  return CayleyTable::from_rows(rows);
}

CayleyTable cyclic(std::size_t m) {
  std::vector<std::vector<std::size_t>> rows(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) rows[a][b] = (a + b) % m;
  }
  return CayleyTable::from_rows(rows);
}

std::size_t idx(unsigned n, const char* s) { return index_of(parse(n, s)); }

}  // namespace

TEST(CdTable, Sizes) {
  EXPECT_EQ(cd_table(0).size(), 2U);
  EXPECT_EQ(cd_table(3).size(), 16U);
  EXPECT_THROW((void)cd_table(13), OutOfRange);
}

TEST(CdTable, ZeroIsSignGroup) {
  const CayleyTable t = cd_table(0);
  EXPECT_EQ(t(1, 1), 0U);
  EXPECT_EQ(t(0, 1), 1U);
}

TEST(CdTable, MatchesMul) {
  const CayleyTable t = cd_table(4);
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = 0; b < t.size(); ++b) {
      ASSERT_EQ(t(a, b), index_of(mul(from_index(4, a), from_index(4, b))));
    }
  }
}

TEST(CdTable, QuaternionOracle) {
  const CayleyTable h = hand_quaternions();
  ASSERT_TRUE(validate_loop(h).valid);
  const auto f = isomorphic(cd_table(2), h);
  ASSERT_TRUE(f.has_value());
  EXPECT_TRUE(is_homomorphism(cd_table(2), h, *f));
}

TEST(Validate, DetectsRepeatedRowEntry) {
  EXPECT_TRUE(validate_loop(cd_table(3)).valid);
  EXPECT_TRUE(validate_loop(cd_table(4)).valid);
  std::vector<std::vector<std::size_t>> rows = {{0, 1, 2}, {1, 1, 0}, {2, 0, 1}};
  const LoopVerdict v = validate_loop(CayleyTable::from_rows(rows));
  EXPECT_FALSE(v.valid);
  ASSERT_TRUE(v.row.has_value());
  EXPECT_EQ(*v.row, 1U);
}

TEST(Subloops, Generate) {
  const CayleyTable t = cd_table(3);
  EXPECT_EQ(generate_subloop(t, std::span<const std::size_t>{}).elements,
            (std::vector<std::size_t>{0}));
  const Subloop s = generate_subloop(t, {idx(3, "i2")});
  EXPECT_EQ(s.elements, (std::vector<std::size_t>{0, 2, 8, 10}));
  EXPECT_EQ(generate_subloop(cd_table(4), {idx(4, "i3"), idx(4, "i1"), idx(4, "i2i4")}).size(),
            16U);
}

TEST(Subloops, SpanTableMatchesGeneratedSubloop) {
  const CayleyTable t = cd_table(4);
  const SignTable s(4);
  const ExpVector a = 0b0100, b = 0b0001, c = 0b1010;
  const CayleyTable spanned = span_table(s, a, b, c);
  const Subloop sub = generate_subloop(t, {a, b, c});
  ASSERT_EQ(sub.size(), 16U);
  EXPECT_TRUE(isomorphic(spanned, subloop_table(t, sub)).has_value());
  EXPECT_THROW((void)span_table(s, a, b, a ^ b), OutOfRange);
}

TEST(Pairs, Classify) {
  EXPECT_EQ(classify_pair(parse(3, "1"), parse(3, "-1")), PairClass::R2);
  EXPECT_EQ(classify_pair(parse(3, "i1"), parse(3, "-i1")), PairClass::C4);
  EXPECT_EQ(classify_pair(parse(3, "i1"), parse(3, "i2")), PairClass::H8);
}

TEST(Subloops, SixteenElementClasses) {
  const CayleyTable t = cd_table(4);
  auto cls = [&](const char* a, const char* b, const char* c) {
    return classify_subloop16(t, generate_subloop(t, {idx(4, a), idx(4, b), idx(4, c)}));
  };
  EXPECT_EQ(cls("i1", "i2", "i3"), Subloop16Class::O16);
  EXPECT_EQ(cls("i1", "i2", "i4"), Subloop16Class::O16);
  EXPECT_EQ(cls("i3", "i1", "i2i4"), Subloop16Class::QuasiO16);
  EXPECT_THROW((void)classify_subloop16(t, generate_subloop(t, {idx(4, "i1")})), OutOfRange);
}

TEST(Isomorphism, Examples) {
  const CayleyTable o = cd_table(3);
  const auto self = isomorphic(o, o);
  ASSERT_TRUE(self.has_value());
  EXPECT_TRUE(is_automorphism(o, *self));
  EXPECT_FALSE(isomorphic(cd_table(2), cyclic(8)).has_value());

  const CayleyTable t = cd_table(4);
  const Subloop quasi = generate_subloop(t, {idx(4, "i3"), idx(4, "i1"), idx(4, "i2i4")});
  EXPECT_FALSE(isomorphic(o, subloop_table(t, quasi)).has_value());
}

TEST(Automorphisms, QuaternionsByBruteForce) {
  // Oracle: all 8! bijections of H8.
  const CayleyTable h = hand_quaternions();
  std::array<std::size_t, 8> p;
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t a = 0; a < 8 && ok; ++a) {
      for (std::size_t b = 0; b < 8 && ok; ++b) ok = p[h(a, b)] == h(p[a], p[b]);
    }
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_EQ(count, 24U);
  EXPECT_EQ(automorphism_group(cd_table(2)).size(), count);
}

TEST(Automorphisms, OctonionsAndSedenions) {
  const auto aut3 = automorphism_group(cd_table(3));
  EXPECT_EQ(aut3.size(), 1344U);
  for (const auto& f : aut3) ASSERT_TRUE(is_automorphism(cd_table(3), f));
  EXPECT_EQ(automorphism_group(cd_table(4)).size(), 2688U);
  EXPECT_THROW((void)automorphism_group(cd_table(5)), CapExceeded);
}

TEST(Normality, Hamiltonian) {
  const CayleyTable t = cd_table(3);
  EXPECT_TRUE(is_normal(t, generate_subloop(t, {idx(3, "i1")})));
  EXPECT_TRUE(is_normal(t, generate_subloop(t, std::span<const std::size_t>{})));
  EXPECT_TRUE(is_hamiltonian(t));
  // S3 has a non-normal subgroup.
  std::vector<std::vector<std::size_t>> s3 = {{0, 1, 2, 3, 4, 5}, {1, 0, 4, 5, 2, 3},
                                              {2, 5, 0, 4, 3, 1}, {3, 4, 5, 0, 1, 2},
                                              {4, 3, 1, 2, 5, 0}, {5, 2, 3, 1, 0, 4}};
  const CayleyTable g = CayleyTable::from_rows(s3);
  ASSERT_TRUE(validate_loop(g).valid);
  EXPECT_FALSE(is_hamiltonian(g));
}

TEST(Center, Examples) {
  EXPECT_EQ(center(cd_table(1)).size(), 4U);
  EXPECT_EQ(center(cd_table(2)).elements, (std::vector<std::size_t>{0, 4}));
  EXPECT_EQ(center(cd_table(4)).elements, (std::vector<std::size_t>{0, 16}));
}

TEST(Quotient, ElementaryAbelian) {
  EXPECT_EQ(quotient_by_signs(cd_table(1)).size(), 2U);
  for (unsigned n : {3U, 4U}) {
    const CayleyTable q = quotient_by_signs(cd_table(n));
    EXPECT_EQ(q.size(), std::size_t{1} << n);
    EXPECT_TRUE(is_elementary_abelian_2_group(q));
  }
  EXPECT_THROW((void)quotient_by_signs(cyclic(3)), Error);
}

TEST(Predicates, MoufangAndDiassociativity) {
  const IdentityPredicates o = identity_predicates(cd_table(3));
  EXPECT_TRUE(o.moufang);
  EXPECT_TRUE(o.diassociative);
  const IdentityPredicates s = identity_predicates(cd_table(4));
  EXPECT_FALSE(s.moufang);
  EXPECT_TRUE(s.diassociative);
  EXPECT_TRUE(s.inverse_property);
  EXPECT_TRUE(s.power_assoc);
  EXPECT_FALSE(is_associative(cd_table(3)));
  EXPECT_TRUE(is_associative(cd_table(2)));
  EXPECT_FALSE(is_commutative(cd_table(2)));
}
