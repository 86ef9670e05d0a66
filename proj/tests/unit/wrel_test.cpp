#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "wclone/errors.hpp"
#include "wclone/vcsp.hpp"
#include "wclone/wrel.hpp"

using namespace wclone;
using fx::rel;

TEST(WeightedRelation, ValidatesShape) {
  EXPECT_THROW(rel(2, 2, {"0", "1", "2"}), InvalidArgument);
  EXPECT_EQ(rel(2, 1, {"0", "inf"}).feasible_indices(), std::vector<std::size_t>{0});
  EXPECT_EQ(rel(2, 2, {"0", "1", "inf", "2"}).max_value(), Rational(2));
  EXPECT_FALSE(rel(2, 1, {"inf", "inf"}).min_value().has_value());
  EXPECT_TRUE(rel(2, 1, {"3", "inf"}).is_relation());
  EXPECT_FALSE(rel(2, 1, {"3", "4"}).is_relation());
}

TEST(Feas, Examples) {
  EXPECT_EQ(feas(rel(2, 1, {"0", "inf"})), rel(2, 1, {"0", "inf"}));
  EXPECT_EQ(feas(rel(2, 1, {"1", "3"})), rel(2, 1, {"0", "0"}));
  EXPECT_EQ(feas(rel(2, 2, {"0", "1", "inf", "2"})), rel(2, 2, {"0", "0", "inf", "0"}));
}

TEST(Opt, Examples) {
  EXPECT_EQ(opt(rel(2, 1, {"1", "3"})), rel(2, 1, {"0", "inf"}));
  EXPECT_EQ(opt(WeightedRelation::constant(2, 2, 5)), WeightedRelation::constant(2, 2, 0));
  EXPECT_EQ(opt(WeightedRelation::constant(2, 2, ExtRat::infinity())),
            WeightedRelation::constant(2, 2, ExtRat::infinity()));
}

TEST(Add, Examples) {
  const std::vector<std::size_t> one = {0};
  const std::vector<std::size_t> two = {0, 1};
  const auto u = rel(2, 1, {"0", "1"});
  EXPECT_EQ(add(u, one, u, one, 1), rel(2, 1, {"0", "2"}));
  EXPECT_EQ(add(rel(2, 1, {"0", "inf"}), one, rel(2, 1, {"inf", "0"}), one, 1), rel(2, 1, {"inf", "inf"}));
  EXPECT_EQ(add(equality_relation(2), two, u, one, 2), rel(2, 2, {"0", "inf", "inf", "1"}));
  EXPECT_EQ(add(u, u), rel(2, 1, {"0", "2"}));
}

TEST(Add, RejectsBadMaps) {
  const std::vector<std::size_t> out_of_range = {2};
  const std::vector<std::size_t> one = {0};
  const auto u = rel(2, 1, {"0", "1"});
  EXPECT_THROW(add(u, out_of_range, u, one, 2), InvalidArgument);
  EXPECT_THROW(add(u, one, equality_relation(2), one, 1), InvalidArgument);
  EXPECT_THROW(add(u, rel(3, 1, {"0", "0", "0"})), InvalidArgument);
}

TEST(Minimise, Examples) {
  EXPECT_EQ(minimise(rel(2, 2, {"0", "1", "2", "3"}), 1), rel(2, 1, {"0", "2"}));
  EXPECT_EQ(minimise(equality_relation(2), 1), rel(2, 1, {"0", "0"}));
  EXPECT_EQ(minimise(WeightedRelation::constant(2, 2, ExtRat::infinity()), 1), rel(2, 1, {"inf", "inf"}));
  EXPECT_THROW(minimise(equality_relation(2), 0), InvalidArgument);
  EXPECT_THROW(minimise(equality_relation(2), 3), InvalidArgument);
}

TEST(Minimise, GroupingDoesNotMatter) {
  testgen::Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto g = testgen::relation(rng, 2, 4, 0.3, -3, 3);
    EXPECT_EQ(minimise(minimise(g, 1), 1), minimise(g, 2));
  }
}

TEST(ScaleShift, Examples) {
  const auto g = rel(2, 2, {"0", "1", "inf", "-2"});
  EXPECT_EQ(scale(g, 0), feas(g));
  EXPECT_EQ(feas(scale(g, 0)), scale(g, 0));
  EXPECT_EQ(scale(rel(2, 1, {"0", "1"}), fx::q("3/2")), rel(2, 1, {"0", "3/2"}));
  EXPECT_EQ(shift(rel(2, 1, {"0", "inf"}), -7), rel(2, 1, {"-7", "inf"}));
  EXPECT_THROW(scale(g, -1), InvalidArgument);
}

TEST(OptInvariance, ShiftAndPositiveScale) {
  testgen::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto g = testgen::relation(rng, 3, 2, 0.3, -4, 4, 3);
    EXPECT_EQ(opt(shift(g, testgen::rational(rng, -5, 5, 2))), opt(g));
    EXPECT_EQ(opt(scale(g, testgen::rational(rng, 1, 5, 4))), opt(g));
  }
}

TEST(SpecialRelations, Tables) {
  EXPECT_EQ(equality_relation(2), rel(2, 2, {"0", "inf", "inf", "0"}));
  EXPECT_EQ(empty_relation(2), rel(2, 1, {"inf", "inf"}));
  const auto eq3 = equality_relation(3);
  int zeros = 0;
  for (const ExtRat& x : eq3.table()) zeros += x == ExtRat(0);
  EXPECT_EQ(zeros, 3);
}

TEST(GadgetProject, SingleVariableGivesEquality) {
  for (int d = 2; d <= 4; ++d) {
    const VcspInstance single(1, Language(d));
    const std::vector<std::size_t> vars = {0, 0};
    EXPECT_EQ(gadget_project(single, vars), equality_relation(d));
  }
}

TEST(GadgetProject, IdentityAndMinimisation) {
  Language lang(2);
  const auto g = rel(2, 2, {"0", "1", "2", "3"});
  lang.add("g", g);
  const VcspInstance inst(2, lang, {{"g", {0, 1}}});
  const std::vector<std::size_t> both = {0, 1};
  const std::vector<std::size_t> first = {0};
  EXPECT_EQ(gadget_project(inst, both), g);
  EXPECT_EQ(gadget_project(inst, first), rel(2, 1, {"0", "2"}));
  const std::vector<std::size_t> bad = {2};
  EXPECT_THROW(gadget_project(inst, bad), InvalidArgument);
}

TEST(GadgetProject, RepeatedVariablesForceEquality) {
  Language lang(2);
  lang.add("g", rel(2, 2, {"0", "1", "2", "3"}));
  const VcspInstance inst(2, lang, {{"g", {0, 1}}});
  const std::vector<std::size_t> vars = {1, 0, 1};
  const auto out = gadget_project(inst, vars);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Tuple t = index_tuple(i, 3, 2);
    if (t[0] != t[2]) {
      EXPECT_TRUE(out[i].is_infinite());
    } else {
      EXPECT_EQ(out[i], ExtRat(2 * t[1] + t[0]));
    }
  }
}

TEST(Language, RejectsMixedDomains) {
  Language lang(2);
  lang.add("a", rel(2, 1, {"0", "1"}));
  EXPECT_THROW(lang.add("b", rel(3, 1, {"0", "1", "2"})), InvalidArgument);
  EXPECT_THROW(lang.add("a", rel(2, 1, {"0", "0"})), InvalidArgument);
  EXPECT_THROW(static_cast<void>(lang.at("missing")), InvalidArgument);
}
