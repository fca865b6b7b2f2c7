#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "loopforge/mltgroups.hpp"
#include "loopforge/permutation.hpp"

using namespace loopforge;

TEST(Permutation, ComposeActsRightFirst) {
  const Permutation p = parse_permutation("[1 2 0]");
  const Permutation q = parse_permutation("[1 0 2]");
  // (p o q)(0) = p(q(0)) = p(1) = 2
  EXPECT_EQ(compose(p, q)[0], 2);
  EXPECT_EQ(compose(p, invert(p)), Permutation::identity(3));
}

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW((void)parse_permutation("[0 0 1]"), ParseError);
  EXPECT_THROW((void)parse_permutation("[0 3 1]"), ParseError);
  EXPECT_THROW((void)parse_permutation("0 1 2"), ParseError);
  EXPECT_THROW((void)parse_permutation("[0 x]"), ParseError);
}

TEST(Permutation, CycleTypeParityOrder) {
  EXPECT_EQ(parity(Permutation::identity(5)), Parity::even);
  const Permutation t = parse_permutation("[1 0 2 3]");
  EXPECT_EQ(parity(t), Parity::odd);
  EXPECT_EQ(perm_order(t), 2U);
  const Permutation c = parse_permutation("[1 2 0 4 3]");
  EXPECT_EQ(cycle_type(c), (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(perm_order(c), 6U);
}

TEST(Permutation, TranslationInQ3) {
  const CDLoop q(3);
  const Permutation l = q.left(q.generator(1));
  EXPECT_EQ(parity(l), Parity::even);
  EXPECT_EQ(perm_order(l), 4U);
  EXPECT_EQ(cycle_type(l), (std::vector<std::size_t>{4, 4, 4, 4}));
}

TEST(Permutation, ConjugateIsPQPinv) {
  const Permutation p = parse_permutation("[1 2 0]");
  const Permutation q = parse_permutation("[1 0 2]");
  EXPECT_EQ(conjugate(p, q), compose(compose(p, q), invert(p)));
}

TEST(Permutation, GeneratorFileRoundTrip) {
  const std::vector<Permutation> gens = {parse_permutation("[1 0 2]"),
                                         parse_permutation("[2 0 1]")};
  std::stringstream ss;
  write_generators(ss, gens);
  EXPECT_EQ(ss.str(), "[1 0 2]\n[2 0 1]\n");
  std::stringstream in("# comment\n\n[1 0 2]\n  [2 0 1]\n");
  EXPECT_EQ(read_generators(in), gens);
}
