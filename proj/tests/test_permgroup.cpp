#include <gtest/gtest.h>

#include <vector>

#include "loopforge/mltgroups.hpp"
#include "loopforge/permgroup.hpp"

using namespace loopforge;

TEST(Closure, Identity) {
  const GroupClosure g = closure({Permutation::identity(4)});
  EXPECT_EQ(g.size(), 1U);
  EXPECT_FALSE(g.truncated);
}

TEST(Closure, SingleTransposition) {
  EXPECT_EQ(closure({parse_permutation("[1 0 2 3]")}).size(), 2U);
}

TEST(Closure, SymmetricGroup) {
  const GroupClosure s5 = closure({parse_permutation("[1 0 2 3 4]"),
                                   parse_permutation("[1 2 3 4 0]")});
  EXPECT_EQ(s5.size(), 120U);
}

TEST(Closure, MultiplicationGroupOfQuaternions) {
  const CDLoop q(2);
  EXPECT_EQ(closure(mlt_generators(q, true, true)).size(), 32U);
}

TEST(Closure, MultiplicationGroupOfOctonions) {
  const CDLoop q(3);
  EXPECT_EQ(closure(mlt_generators(q, true, true)).size(), 1024U);
}

TEST(Closure, CapTruncates) {
  const CDLoop q(3);
  const GroupClosure g = closure(mlt_generators(q, true, true), 100);
  EXPECT_TRUE(g.truncated);
  EXPECT_EQ(g.size(), 100U);
  EXPECT_THROW((void)stabilizer_of_identity(g), CapExceeded);
}

TEST(Closure, DeterministicOrder) {
  const CDLoop q(3);
  const GroupClosure a = closure(mlt_generators(q, true, false));
  const GroupClosure b = closure(mlt_generators(q, true, false));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a.element(i), b.element(i));
}

TEST(Stabilizer, InnOfQuaternionsAndOctonions) {
  const CDLoop h8(2);
  EXPECT_EQ(stabilizer_of_identity(closure(mlt_generators(h8, true, true))).size(), 4U);
  const CDLoop o16(3);
  EXPECT_EQ(stabilizer_of_identity(closure(mlt_generators(o16, true, true))).size(), 64U);
}

TEST(Normality, TrivialAndN) {
  const CDLoop q(3);
  const GroupClosure G = closure(mlt_generators(q, true, true));
  EXPECT_TRUE(is_normal_in(closure({Permutation::identity(16)}), G));

  const GroupClosure inn = stabilizer_of_identity(G);
  std::vector<Permutation> ngens = inn.generators;
  ngens.push_back(q.left(q.negate(0)));
  const GroupClosure N = closure(ngens);
  EXPECT_EQ(N.size(), 128U);
  EXPECT_TRUE(is_normal_in(N, G));

  const GroupClosure K = closure(build_K(q).generators);
  EXPECT_EQ(intersection(N, K).size(), 1U);
}

TEST(Normality, NonNormalSubgroup) {
  const GroupClosure s3 = closure({parse_permutation("[1 0 2]"), parse_permutation("[1 2 0]")});
  const GroupClosure t = closure({parse_permutation("[1 0 2]")});
  EXPECT_FALSE(is_normal_in(t, s3));
}

TEST(SubgroupFromElements, RejectsNonClosedSubsets) {
  PermutationSet s(3);
  s.insert(Permutation::identity(3));
  s.insert(parse_permutation("[1 2 0]"));
  EXPECT_THROW((void)subgroup_from_elements(s), Error);
  s.insert(parse_permutation("[2 0 1]"));
  EXPECT_EQ(subgroup_from_elements(s).size(), 3U);
}

TEST(ElemAbelian, Examples) {
  EXPECT_TRUE(is_elem_abelian_2(std::vector<Permutation>{Permutation::identity(4)}));
  const CDLoop q(3);
  EXPECT_TRUE(is_elem_abelian_2(build_K(q).generators));
  EXPECT_FALSE(is_elem_abelian_2(std::vector<Permutation>{q.left(q.generator(1))}));
}

TEST(ConjugateBy, MapsLeftGroupToRightGroup) {
  const CDLoop q(3);
  const GroupClosure l = closure(mlt_generators(q, true, false));
  const GroupClosure r = closure(mlt_generators(q, false, true));
  EXPECT_TRUE(same_elements(conjugate_by(q.mirror(), l), r));
  EXPECT_FALSE(same_elements(l, r));
}
