#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "wclone/errors.hpp"
#include "wclone/reductions.hpp"

using namespace wclone;
using fx::q;
using fx::rel;

TEST(Normalize, Examples) {
  Language lang(2);
  lang.add("a", rel(2, 1, {"2", "5"}));
  lang.add("b", rel(2, 1, {"0", "inf"}));
  lang.add("c", rel(2, 2, {"-1", "inf", "4", "0"}));
  lang.add("e", empty_relation(2));
  const NormalizedLanguage out = normalize_nonnegative(lang);
  EXPECT_EQ(out.language.at("a"), rel(2, 1, {"0", "3"}));
  EXPECT_EQ(out.shifts.at("a"), -2);
  EXPECT_EQ(out.language.at("b"), lang.at("b"));
  EXPECT_EQ(out.language.at("c"), rel(2, 2, {"0", "inf", "5", "1"}));
  EXPECT_EQ(out.shifts.at("c"), 1);
  EXPECT_EQ(out.language.at("e"), empty_relation(2));
  EXPECT_EQ(out.shifts.at("e"), 0);
}

TEST(Normalize, InstanceOffsetTranslatesValues) {
  Language lang(2);
  lang.add("a", rel(2, 1, {"2", "5"}));
  lang.add("c", rel(2, 2, {"-1", "inf", "4", "0"}));
  const VcspInstance inst(2, lang, {{"a", {0}}, {"c", {0, 1}}, {"a", {1}}});
  const NormalizedInstance n = normalize_instance(inst);
  EXPECT_EQ(n.offset, -3);
  for (const auto& s : oracle::all_assignments(2, 2)) {
    const Assignment a(s.begin(), s.end());
    const ExtRat before = evaluate(inst, a);
    const ExtRat after = evaluate(n.instance, a);
    EXPECT_EQ(after, before.is_infinite() ? before : ExtRat(Rational(before.value() + n.offset)));
  }
}

TEST(ReduceOpt, CopyCounts) {
  Language lang(2);
  lang.add("g", rel(2, 1, {"0", "1"}));
  lang.add("og", opt(rel(2, 1, {"0", "1"})));
  const ReductionReport one = reduce_opt(VcspInstance(1, lang, {{"og", {0}}}), "g", "og");
  EXPECT_EQ(one.opt_copies, 2u);
  EXPECT_EQ(one.instance.constraints().size(), 2u);

  Language lang3(2);
  lang3.add("g", rel(2, 1, {"0", "1/2"}));
  lang3.add("og", opt(lang3.at("g")));
  lang3.add("h", rel(2, 1, {"2", "1"}));
  const ReductionReport three =
      reduce_opt(VcspInstance(2, lang3, {{"og", {0}}, {"h", {1}}, {"og", {1}}}), "g", "og");
  EXPECT_EQ(three.min_positive, q("1/2"));
  EXPECT_EQ(three.max_finite, Rational(2));
  EXPECT_EQ(three.opt_copies, 13u);
  EXPECT_EQ(three.copies, (std::vector<std::size_t>{13, 1, 13}));
  EXPECT_EQ(three.instance.constraints().size(), 27u);
  EXPECT_EQ(three.provenance.front(), 0u);
  EXPECT_EQ(three.provenance.back(), 2u);
}

TEST(ReduceOpt, NoOptConstraintsLeavesConstraints) {
  Language lang(2);
  lang.add("g", rel(2, 1, {"0", "1"}));
  lang.add("og", opt(rel(2, 1, {"0", "1"})));
  const VcspInstance inst(2, lang, {{"g", {0}}, {"g", {1}}});
  const ReductionReport r = reduce_opt(inst, "g", "og");
  EXPECT_EQ(r.instance.constraints(), inst.constraints());
  EXPECT_EQ(r.copies, (std::vector<std::size_t>{1, 1}));
}

TEST(ReduceOpt, Preconditions) {
  Language lang(2);
  lang.add("rel", rel(2, 1, {"0", "inf"}));
  lang.add("orel", rel(2, 1, {"0", "inf"}));
  lang.add("g", rel(2, 1, {"1", "2"}));
  lang.add("og", opt(rel(2, 1, {"1", "2"})));
  const VcspInstance inst(1, lang, {{"orel", {0}}});
  const ReductionReport id = reduce_opt(inst, "rel", "orel");
  EXPECT_TRUE(id.identity);
  EXPECT_EQ(id.instance, inst);
  EXPECT_THROW(reduce_opt(inst, "rel", "orel", false), InvalidArgument);
  // Minimum of g is 1, not 0.
  EXPECT_THROW(reduce_opt(inst, "g", "og"), InvalidArgument);
  EXPECT_THROW(reduce_opt(inst, "g", "orel"), InvalidArgument);

  Language negative(2);
  negative.add("g", rel(2, 1, {"0", "1"}));
  negative.add("og", opt(rel(2, 1, {"0", "1"})));
  negative.add("h", rel(2, 1, {"-1", "0"}));
  EXPECT_THROW(reduce_opt(VcspInstance(1, negative, {{"og", {0}}}), "g", "og"), InvalidArgument);
}

TEST(ReduceScale, CopyCounts) {
  Language base(2);
  base.add("g", rel(2, 1, {"0", "1"}));
  const ScaledInstance inst(1, base, {{"g", {0}, q("3/4")}});
  const ReductionReport r = reduce_scale(inst, q("1/2"));
  EXPECT_EQ(r.b, Rational(2));
  EXPECT_EQ(r.copies, std::vector<std::size_t>{2});

  const ScaledInstance zero(1, base, {{"g", {0}, 0}});
  EXPECT_EQ(reduce_scale(zero, q("1/2")).copies, std::vector<std::size_t>{1});
  EXPECT_THROW(reduce_scale(inst, 0), InvalidArgument);
  EXPECT_THROW(ScaledInstance(1, base, {{"g", {0}, -1}}), InvalidArgument);
}

TEST(ReduceScale, IdentityWhenNoPositiveWeight) {
  Language base(2);
  base.add("f", rel(2, 1, {"0", "inf"}));
  const ScaledInstance inst(2, base, {{"f", {0}, 5}, {"f", {1}, q("1/3")}});
  const ReductionReport r = reduce_scale(inst, 1);
  EXPECT_TRUE(r.identity);
  EXPECT_EQ(r.instance.constraints().size(), 2u);
}

TEST(ReduceScale, FeasibilityAndEpsilonBound) {
  testgen::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = testgen::uniform(rng, 2, 3);
    Language base(d);
    base.add("g0", testgen::relation(rng, d, 1, 0.2, 0, 5, 2));
    base.add("g1", testgen::relation(rng, d, 2, 0.2, 0, 5, 2));
    ScaledInstance inst(3, base);
    for (int i = 0; i < 3; ++i) {
      const std::string name = i % 2 ? "g1" : "g0";
      std::vector<std::size_t> scope;
      for (int j = 0; j < base.at(name).arity(); ++j) scope.push_back(static_cast<std::size_t>(testgen::uniform(rng, 0, 2)));
      inst.add_constraint(name, scope, testgen::rational(rng, 0, 9, 4));
    }
    const Rational eps = trial % 2 ? q("1/10") : Rational(1);
    const ReductionReport r = reduce_scale(inst, eps);
    for (const auto& s : oracle::all_assignments(d, 3)) {
      const Assignment a(s.begin(), s.end());
      EXPECT_EQ(evaluate(inst, a).is_finite(), evaluate(r.instance, a).is_finite());
    }
    const Solution sol = solve(r.instance);
    const auto v = oracle::instance_minimum(inst);
    ASSERT_EQ(v.has_value(), sol.argmin.has_value());
    if (v) {
      EXPECT_LE(*oracle::instance_value(inst, {sol.argmin->begin(), sol.argmin->end()}) - *v, oracle::to_q(eps));
    }
  }
}

TEST(ScaledInstance, MaterializeMatchesEvaluate) {
  Language base(2);
  base.add("g", rel(2, 2, {"0", "1", "inf", "3"}));
  const ScaledInstance inst(2, base, {{"g", {0, 1}, q("2/3")}, {"g", {1, 0}, 0}});
  const VcspInstance plain = inst.materialize();
  for (const auto& s : oracle::all_assignments(2, 2)) {
    const Assignment a(s.begin(), s.end());
    EXPECT_EQ(evaluate(plain, a), evaluate(inst, a));
  }
}
