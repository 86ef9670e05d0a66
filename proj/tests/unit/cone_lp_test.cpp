#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "wclone/cone_lp.hpp"
#include "wclone/errors.hpp"

using namespace wclone;

namespace {

ConeProblem cone(std::vector<RatVector> gens, RatVector target) {
  ConeProblem p;
  p.dimension = target.size();
  p.generators = std::move(gens);
  p.target = std::move(target);
  return p;
}

lp::Problem one_var(std::vector<lp::Constraint> cs, std::optional<RatVector> objective = std::nullopt) {
  lp::Problem p;
  p.variable_count = cs.empty() ? 1 : cs.front().coefficients.size();
  p.constraints = std::move(cs);
  p.maximize = std::move(objective);
  return p;
}

}  // namespace

TEST(ConeMembership, Examples) {
  const auto a = cone({{1, 0}, {0, 1}}, {1, 1});
  const ConeDecision da = cone_membership(a);
  ASSERT_TRUE(std::holds_alternative<ConeMember>(da));
  EXPECT_EQ(std::get<ConeMember>(da).lambda, (RatVector{1, 1}));

  const auto b = cone({{1, 0}, {0, 1}}, {-1, 0});
  const ConeDecision db = cone_membership(b);
  ASSERT_TRUE(std::holds_alternative<ConeSeparated>(db));
  EXPECT_EQ(std::get<ConeSeparated>(db).certificate, (RatVector{-1, 0}));

  const auto c = cone({{1, 1}, {0, 1}}, {2, 3});
  const ConeDecision dc = cone_membership(c);
  ASSERT_TRUE(std::holds_alternative<ConeMember>(dc));
  EXPECT_EQ(std::get<ConeMember>(dc).lambda, (RatVector{2, 1}));
}

TEST(ConeMembership, EmptyGeneratorSet) {
  EXPECT_TRUE(std::holds_alternative<ConeMember>(cone_membership(cone({}, {0, 0, 0}))));
  EXPECT_TRUE(std::holds_alternative<ConeSeparated>(cone_membership(cone({}, {0, 1}))));
}

TEST(ConeMembership, LowerSlackAllowsOvershoot) {
  ConeProblem p = cone({{2, 1}}, {1, 1});
  EXPECT_TRUE(std::holds_alternative<ConeSeparated>(cone_membership(p)));
  p.lower_slack = {true, false};
  const ConeDecision d = cone_membership(p);
  ASSERT_TRUE(std::holds_alternative<ConeMember>(d));
  EXPECT_EQ(std::get<ConeMember>(d).slack, (RatVector{1, 0}));
  EXPECT_TRUE(verify_cone_decision(p, d));
}

TEST(ConeMembership, RejectsBadDimensions) {
  EXPECT_THROW(cone_membership(cone({{1, 0, 0}}, {1, 1})), InvalidArgument);
}

TEST(ConeMembership, RandomDecisionsVerify) {
  testgen::Rng rng(9);
  for (int trial = 0; trial < 150; ++trial) {
    const auto p = testgen::cone_problem(rng, static_cast<std::size_t>(testgen::uniform(rng, 1, 8)),
                                         static_cast<std::size_t>(testgen::uniform(rng, 0, 10)), trial % 2 == 0);
    const ConeDecision d = cone_membership(p);
    EXPECT_TRUE(oracle::cone_decision_valid(p, d));
    EXPECT_TRUE(verify_cone_decision(p, d));
    if (trial % 2 == 0) EXPECT_TRUE(std::holds_alternative<ConeMember>(d));
  }
}

TEST(ConeMembership, Deterministic) {
  testgen::Rng rng(10);
  const auto p = testgen::cone_problem(rng, 12, 20, false);
  const ConeDecision a = cone_membership(p);
  const ConeDecision b = cone_membership(p);
  ASSERT_EQ(a.index(), b.index());
  if (a.index() == 0) {
    EXPECT_EQ(std::get<ConeMember>(a).lambda, std::get<ConeMember>(b).lambda);
  } else {
    EXPECT_EQ(std::get<ConeSeparated>(a).certificate, std::get<ConeSeparated>(b).certificate);
  }
}

TEST(Lp, InfeasibleWithWitness) {
  const lp::Problem p = one_var({{{1}, lp::Sense::LessEq, -1}});
  const lp::Result r = lp::solve(p);
  ASSERT_TRUE(std::holds_alternative<lp::Infeasible>(r));
  EXPECT_TRUE(oracle::lp_farkas_valid(p, std::get<lp::Infeasible>(r).multipliers));
}

TEST(Lp, BoundedOptimum) {
  const lp::Problem p = one_var({{{1}, lp::Sense::LessEq, fx::q("5/3")}}, RatVector{1});
  const lp::Result r = lp::solve(p);
  ASSERT_TRUE(std::holds_alternative<lp::Optimal>(r));
  EXPECT_EQ(std::get<lp::Optimal>(r).value, fx::q("5/3"));
}

TEST(Lp, SegmentVertex) {
  const lp::Problem p = one_var({{{1, 1}, lp::Sense::Equal, 1}}, RatVector{1, -1});
  const lp::Result r = lp::solve(p);
  ASSERT_TRUE(std::holds_alternative<lp::Optimal>(r));
  EXPECT_EQ(std::get<lp::Optimal>(r).value, 1);
  EXPECT_EQ(std::get<lp::Optimal>(r).x, (RatVector{1, 0}));
}

TEST(Lp, UnboundedRay) {
  const lp::Problem p = one_var({{{1, -1}, lp::Sense::LessEq, 2}}, RatVector{1, 0});
  const lp::Result r = lp::solve(p);
  ASSERT_TRUE(std::holds_alternative<lp::Unbounded>(r));
  EXPECT_TRUE(lp::verify_unbounded(p, std::get<lp::Unbounded>(r)));
}

TEST(Lp, FreeVariablesAndGreaterRows) {
  lp::Problem p = one_var({{{1, 1}, lp::Sense::GreaterEq, 3}, {{1, -1}, lp::Sense::Equal, -5}}, RatVector{-1, -1});
  p.free_variables = {true, false};
  const lp::Result r = lp::solve(p);
  ASSERT_TRUE(std::holds_alternative<lp::Optimal>(r));
  const auto& opt = std::get<lp::Optimal>(r);
  EXPECT_TRUE(oracle::lp_feasible_point(p, opt.x));
  EXPECT_EQ(opt.value, -3);
  EXPECT_EQ(opt.x, (RatVector{-1, 4}));
}

TEST(Lp, RandomFeasibilityCertificates) {
  testgen::Rng rng(12);
  int infeasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    lp::Problem p;
    p.variable_count = static_cast<std::size_t>(testgen::uniform(rng, 1, 6));
    for (std::size_t j = 0; j < p.variable_count; ++j) p.free_variables.push_back(testgen::chance(rng, 0.3));
    const int rows = testgen::uniform(rng, 1, 7);
    for (int i = 0; i < rows; ++i) {
      lp::Constraint c;
      for (std::size_t j = 0; j < p.variable_count; ++j) c.coefficients.push_back(testgen::rational(rng, -3, 3, 2));
      c.sense = static_cast<lp::Sense>(testgen::uniform(rng, 0, 2));
      c.rhs = testgen::rational(rng, -4, 4, 3);
      p.constraints.push_back(c);
    }
    const lp::Result r = lp::solve(p);
    if (const auto* opt = std::get_if<lp::Optimal>(&r)) {
      EXPECT_TRUE(oracle::lp_feasible_point(p, opt->x));
    } else {
      ASSERT_TRUE(std::holds_alternative<lp::Infeasible>(r));
      EXPECT_TRUE(oracle::lp_farkas_valid(p, std::get<lp::Infeasible>(r).multipliers));
      ++infeasible;
    }
  }
  EXPECT_GT(infeasible, 0);
}

TEST(Lp, MalformedProblem) {
  lp::Problem p;
  p.variable_count = 2;
  p.constraints.push_back({{1}, lp::Sense::LessEq, 0});
  EXPECT_THROW(lp::validate(p), InvalidArgument);
  EXPECT_THROW(lp::solve(p), InvalidArgument);
}

TEST(PrimitiveDirection, ScalesToIntegers) {
  EXPECT_EQ(primitive_direction({fx::q("1/2"), fx::q("-3/4"), 0}), (RatVector{2, -3, 0}));
  EXPECT_EQ(primitive_direction({0, 0}), (RatVector{0, 0}));
  EXPECT_EQ(primitive_direction({6, 4}), (RatVector{3, 2}));
}

TEST(ConeMembership, WideProblemsGrowRowsOnDemand) {
  testgen::Rng rng(13);
  for (int trial = 0; trial < 12; ++trial) {
    auto p = testgen::cone_problem(rng, 400, 6, trial % 2 == 0);
    p.lower_slack.assign(p.dimension, true);
    for (std::size_t j = 0; j < 3; ++j) p.lower_slack[j] = false;
    const ConeDecision d = cone_membership(p);
    EXPECT_TRUE(oracle::cone_decision_valid(p, d));
    if (trial % 2 == 0) EXPECT_TRUE(std::holds_alternative<ConeMember>(d));
  }
}

TEST(ConeMembership, RepeatedCoordinatesShareOneRow) {
  ConeProblem p = cone({RatVector(600, 1)}, RatVector(600, 2));
  const ConeDecision d = cone_membership(p);
  ASSERT_TRUE(std::holds_alternative<ConeMember>(d));
  EXPECT_EQ(std::get<ConeMember>(d).lambda, (RatVector{2}));
  p.target[599] = 3;
  const ConeDecision s = cone_membership(p);
  ASSERT_TRUE(std::holds_alternative<ConeSeparated>(s));
  EXPECT_TRUE(oracle::cone_decision_valid(p, s));
}
