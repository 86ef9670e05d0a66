#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "wclone/counterexamples.hpp"
#include "wclone/errors.hpp"
#include "wclone/improve.hpp"

using namespace wclone;
using fx::q;
using fx::rel;

namespace {

const BracketedParam kLoose = make_bracket(q("13/10"), q("3/2"));

Weighting unary(std::initializer_list<std::pair<Operation, Rational>> terms) {
  TermMap map;
  for (const auto& [f, c] : terms) map[f] += c;
  return Weighting(3, 1, map);
}

}  // namespace

TEST(Brackets, Validation) {
  EXPECT_THROW(make_bracket(q("3/2"), q("13/10")), InvalidArgument);
  EXPECT_THROW(make_bracket(0, 1), InvalidArgument);
  EXPECT_THROW(make_bracket(1, 1), InvalidArgument);
}

TEST(Brackets, SquareRootOfTwo) {
  EXPECT_EQ(sqrt2_bracket(0).lower, 1);
  EXPECT_EQ(sqrt2_bracket(0).upper, q("3/2"));
  EXPECT_EQ(sqrt2_bracket(1).lower, q("7/5"));
  EXPECT_EQ(sqrt2_bracket(1).upper, q("17/12"));
  EXPECT_EQ(sqrt2_bracket(2).lower, q("41/29"));
  EXPECT_EQ(sqrt2_bracket(2).upper, q("99/70"));
  for (int level = 0; level < 12; ++level) {
    const auto b = sqrt2_bracket(level);
    EXPECT_LT(b.lower * b.lower, 2);
    EXPECT_GT(b.upper * b.upper, 2);
    const auto next = sqrt2_bracket(level + 1);
    EXPECT_GE(next.lower, b.lower);
    EXPECT_LE(next.upper, b.upper);
  }
  EXPECT_THROW(sqrt2_bracket(-1), InvalidArgument);
}

TEST(MuRelations, Tables) {
  EXPECT_EQ(mu_minus(q("13/10")), rel(3, 1, {"0", "-1", "-23/10"}));
  EXPECT_EQ(mu_plus(q("3/2")), rel(3, 1, {"0", "1", "5/2"}));
  EXPECT_TRUE(in_u(mu_minus(q("13/10")), q("13/10")));
  EXPECT_TRUE(in_u(mu_minus(kLoose.lower), kLoose));
  EXPECT_TRUE(in_u(mu_plus(kLoose.upper), kLoose));
  EXPECT_FALSE(in_u(rel(3, 1, {"0", "1", "1"}), kLoose));
  EXPECT_TRUE(in_u(rel(3, 1, {"0", "inf", "1"}), kLoose));
}

TEST(GammaFamily, Examples) {
  const std::vector<WeightedRelation> one = {mu_minus(q("13/10"))};
  EXPECT_EQ(gamma_family_member(one, trivial_equivalence(1), kLoose), mu_minus(q("13/10")));

  const WeightedRelation zero = WeightedRelation::constant(3, 1, 0);
  const std::vector<WeightedRelation> two = {zero, zero};
  std::vector<std::pair<std::size_t, std::size_t>> all = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  EXPECT_EQ(gamma_family_member(two, all, kLoose), equality_relation(3));
}

TEST(GammaFamily, MinimisingLastPositionAddsItsMinimum) {
  const std::vector<WeightedRelation> rhos = {mu_minus(kLoose.lower), mu_plus(kLoose.upper)};
  const auto member = gamma_family_member(rhos, trivial_equivalence(2), kLoose);
  EXPECT_EQ(minimise(member, 1), shift(rhos[0], *rhos[1].min_value()));
  EXPECT_TRUE(in_u(minimise(member, 1), kLoose));
}

TEST(GammaFamily, Preconditions) {
  const std::vector<WeightedRelation> bad = {rel(3, 1, {"0", "1", "1"})};
  EXPECT_THROW(gamma_family_member(bad, trivial_equivalence(1), kLoose), InvalidArgument);
  const WeightedRelation zero = WeightedRelation::constant(3, 1, 0);
  const std::vector<WeightedRelation> three = {zero, zero, zero};
  std::vector<std::pair<std::size_t, std::size_t>> not_transitive = {{0, 0}, {1, 1}, {2, 2}, {0, 1},
                                                                      {1, 0}, {1, 2}, {2, 1}};
  EXPECT_THROW(gamma_family_member(three, not_transitive, kLoose), InvalidArgument);
  std::vector<std::pair<std::size_t, std::size_t>> not_symmetric = {{0, 0}, {1, 1}, {2, 2}, {0, 1}};
  EXPECT_THROW(gamma_family_member(three, not_symmetric, kLoose), InvalidArgument);
}

TEST(Narrowing, AllSidesInfeasible) {
  const NarrowingReport report = narrowing_check(q("13/10"), q("3/2"), 1);
  EXPECT_TRUE(report.all_infeasible);
  EXPECT_EQ(report.basis.size(), 27u);
  ASSERT_EQ(report.certificates.size(), 6u);
  for (const auto& cert : report.certificates) {
    EXPECT_TRUE(oracle::lp_farkas_valid(cert.problem, cert.multipliers));
  }
}

TEST(Narrowing, DegenerateBracket) {
  const lp::Problem cone = improving_weighting_cone(q("7/5"), q("7/5"), 1);
  EXPECT_TRUE(oracle::lp_feasible_point(cone, RatVector(cone.variable_count)));
  EXPECT_TRUE(narrowing_check(q("7/5"), q("7/5"), 1).all_infeasible);
  EXPECT_THROW(narrowing_check(q("3/2"), q("7/5"), 1), InvalidArgument);
}

TEST(Narrowing, AdmittedWeightingsImproveFlatRelation) {
  Language lang(3);
  lang.add("minus", mu_minus(q("13/10")));
  lang.add("plus", mu_plus(q("3/2")));
  const auto flat = rel(3, 1, {"0", "1", "1"});
  const auto any = find_weighted_polymorphism(lang, 1, std::nullopt);
  ASSERT_TRUE(any.weighting.has_value());
  EXPECT_TRUE(oracle::is_weighted_polymorphism(*any.weighting, flat));
  // At k = 1 the bracket already pins every admitted weighting to zero.
  for (const Operation& f : enumerate_ops(3, 1)) {
    if (f.is_projection()) continue;
    const auto r = find_weighted_polymorphism(lang, 1, f);
    EXPECT_FALSE(r.weighting.has_value());
  }
}

TEST(Containment, TighterBracketInsideLooser) {
  const BracketedParam loose = make_bracket(q("7/5"), q("3/2"));
  const BracketedParam tight = sqrt2_bracket(2);
  const ContainmentReport report = bracket_containment(tight, loose, 1);
  EXPECT_TRUE(report.contained);
  ASSERT_EQ(report.certificates.size(), 6u);
  const lp::Problem inner = improving_weighting_cone(tight.lower, tight.upper, 1);
  const lp::Problem outer = improving_weighting_cone(loose.lower, loose.upper, 1);
  for (std::size_t i = 0; i < report.certificates.size(); ++i) {
    lp::Problem p = inner;
    lp::Constraint row = outer.constraints[i + 1];
    row.sense = lp::Sense::GreaterEq;
    row.rhs = 1;
    p.constraints.push_back(row);
    EXPECT_TRUE(oracle::lp_farkas_valid(p, report.certificates[i]));
  }
}

TEST(OmegaFamily, InequalityAtBothEndpoints) {
  const Rational u = q("13/10");
  const Rational v = q("3/2");
  const OmegaFamily fam = omega_family(u, v);
  EXPECT_EQ(fam.c0(Tuple{0}), 0);
  EXPECT_EQ(fam.omega0, unary({{projection(3, 1, 1), -1}, {fam.c0, 1}}));
  EXPECT_EQ(fam.h(Tuple{0, 2}), 1);
  for (const Rational& t : {u, v}) {
    EXPECT_TRUE(satisfies_family_inequality(fam.omega0, t));
    EXPECT_TRUE(satisfies_family_inequality(fam.mu_upper, t));
    EXPECT_TRUE(satisfies_family_inequality(fam.mu_lower, t));
    EXPECT_EQ(family_inequality_violations(fam.outsider, t), std::vector<Tuple>{Tuple{1}});
  }
  EXPECT_TRUE(fam.mu_upper.is_proper());
  EXPECT_TRUE(fam.mu_lower.is_proper());
  EXPECT_THROW(omega_family(v, u), InvalidArgument);
}

TEST(OmegaFamily, ImageWeights) {
  const OmegaFamily fam = omega_family(q("13/10"), q("3/2"));
  // omega0 = -e1 + c0 at x = 2: s0 = 1, s2 = -1.
  EXPECT_EQ(image_weight(fam.omega0, Tuple{2}, 0), 1);
  EXPECT_EQ(image_weight(fam.omega0, Tuple{2}, 2), -1);
  EXPECT_EQ(image_weight(fam.omega0, Tuple{0}, 0), 0);
}
