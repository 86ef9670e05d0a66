#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "random.hpp"
#include "wclone/errors.hpp"
#include "wclone/wops.hpp"

using namespace wclone;

namespace {

const Operation e1 = projection(2, 1, 1);
const Operation c0 = constant_operation(2, 1, 0);
const Operation c1 = constant_operation(2, 1, 1);

}  // namespace

TEST(Weighting, ProperAndImproper) {
  EXPECT_TRUE(Weighting(2, 1, {{e1, -1}, {c0, 1}}).is_proper());
  const Weighting lattice_flip(2, 2, {{fx::min2(), -1}, {fx::max2(), 1}});
  EXPECT_FALSE(lattice_flip.is_proper());
  EXPECT_EQ(check_weighting(2, 2, lattice_flip.terms()).negative_non_projections,
            std::vector<Operation>{fx::min2()});
  EXPECT_THROW(Weighting(2, 1, {{e1, 1}}), InvalidArgument);
  EXPECT_FALSE(check_weighting(2, 1, {{e1, 1}}).valid());
  EXPECT_THROW(Weighting(2, 2, {{e1, -1}, {c0, 1}}), InvalidArgument);
}

TEST(Weighting, DropsZeroTerms) {
  const Weighting w(2, 1, {{e1, 0}, {c0, 0}});
  EXPECT_TRUE(w.is_zero());
  EXPECT_EQ(w, Weighting::zero(2, 1));
}

TEST(Supp, Examples) {
  const OperationSet zero = supp(Weighting::zero(2, 2));
  EXPECT_EQ(zero.size(), 2u);
  const OperationSet sub = supp(fx::submodular());
  EXPECT_EQ(sub.all(), (std::vector<Operation>{fx::min2(), projection(2, 2, 1), projection(2, 2, 2), fx::max2()}));
  const OperationSet two = supp(Weighting(2, 1, {{e1, -2}, {c0, 2}}));
  EXPECT_EQ(two.size(), 2u);
  EXPECT_TRUE(two.contains(c0));
  EXPECT_THROW(supp(Weighting(2, 1, {{c1, -1}, {c0, 1}})), ImproperWeighting);
}

TEST(SuperposeWeighting, Examples) {
  const std::vector<Operation> es = {projection(2, 2, 1), projection(2, 2, 2)};
  EXPECT_EQ(superpose_weighting(fx::submodular(), es), fx::submodular());
  const std::vector<Operation> diag = {e1, e1};
  EXPECT_TRUE(superpose_weighting(fx::submodular(), diag).is_zero());
  const std::vector<Operation> to_c1 = {c1};
  const Weighting w = superpose_weighting(Weighting(2, 1, {{e1, -1}, {c0, 1}}), to_c1);
  EXPECT_EQ(w, Weighting(2, 1, {{c1, -1}, {c0, 1}}));
  EXPECT_FALSE(w.is_proper());
}

TEST(SuperposeWeighting, ZeroSumAndSupportInClone) {
  testgen::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = testgen::uniform(rng, 1, 2);
    const int l = testgen::uniform(rng, 1, 2);
    const Weighting w = testgen::proper_weighting(rng, 2, k, 3);
    std::vector<Operation> gs;
    for (int i = 0; i < k; ++i) gs.push_back(testgen::operation(rng, 2, l));
    const Weighting out = superpose_weighting(w, gs);
    Rational sum = 0;
    for (const auto& [f, c] : out.terms()) sum += c;
    EXPECT_EQ(sum, 0);
    OperationSet gens = supp(w);
    for (const Operation& g : gs) gens.insert(g);
    const OperationSet clone = clone_closure(gens, std::max(k, l));
    for (const auto& [f, c] : out.terms()) {
      if (sgn(c) > 0) EXPECT_TRUE(clone.contains(f));
    }
  }
}

TEST(AddScale, Examples) {
  const Weighting a(2, 1, {{e1, -1}, {c0, 1}});
  const Weighting b(2, 1, {{e1, -1}, {c1, 1}});
  EXPECT_EQ(add_weightings(a, Weighting::zero(2, 1)), a);
  EXPECT_TRUE(scale_weighting(a, 0).is_zero());
  EXPECT_EQ(add_weightings(a, b), Weighting(2, 1, {{e1, -2}, {c0, 1}, {c1, 1}}));
  EXPECT_THROW(add_weightings(a, fx::submodular()), InvalidArgument);
  EXPECT_THROW(scale_weighting(a, -1), InvalidArgument);
}

TEST(ProperSum, SingleTermWithProjections) {
  const std::vector<ProperSumTerm> terms = {
      {Rational(3), fx::submodular(), {projection(2, 2, 1), projection(2, 2, 2)}}};
  const ProperSum out = proper_sum(2, 2, terms);
  EXPECT_EQ(out.result, scale_weighting(fx::submodular(), 3));
  ASSERT_TRUE(out.transcript.combined.has_value());
  EXPECT_TRUE(out.transcript.combined->is_proper());
}

TEST(ProperSum, CancellationOfImproperTerm) {
  const Weighting omega(2, 1, {{e1, -1}, {c0, 1}});
  const Weighting mu_g(2, 1, {{e1, -1}, {c1, 1}});
  const std::vector<ProperSumTerm> terms = {{Rational(1), omega, {c1}}, {Rational(1), mu_g, {e1}}};
  const ProperSum out = proper_sum(2, 1, terms);
  EXPECT_EQ(out.result, omega);
  EXPECT_EQ(out.transcript.combined_arity, 2);
  EXPECT_EQ(out.transcript.offsets, (std::vector<int>{0, 1}));
  ASSERT_TRUE(out.transcript.combined.has_value());
  EXPECT_TRUE(out.transcript.combined->is_proper());
  EXPECT_EQ(superpose_weighting(*out.transcript.combined, out.transcript.arguments), out.result);
}

TEST(ProperSum, EmptyAndImproper) {
  EXPECT_TRUE(proper_sum(2, 2, std::vector<ProperSumTerm>{}).result.is_zero());
  const std::vector<ProperSumTerm> bad = {{Rational(1), Weighting(2, 1, {{e1, -1}, {c0, 1}}), {c1}}};
  try {
    proper_sum(2, 1, bad);
    FAIL() << "expected ImproperWeighting";
  } catch (const ImproperWeighting& e) {
    EXPECT_EQ(e.offending(), std::vector<Operation>{c1});
  }
  const std::vector<ProperSumTerm> negative = {{Rational(-1), fx::submodular(), {e1, e1}}};
  EXPECT_THROW(proper_sum(2, 1, negative), InvalidArgument);
}
