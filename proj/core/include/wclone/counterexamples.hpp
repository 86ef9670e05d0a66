#pragma once

// Constructions on D = {0, 1, 2} around an irrational parameter t, with t
// replaced by a rational bracket u < t < v. Every statement about t is
// checked as a pair of one-sided statements at the two endpoints.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wclone/algebra.hpp"
#include "wclone/cone_lp.hpp"
#include "wclone/rational.hpp"
#include "wclone/wops.hpp"
#include "wclone/wrel.hpp"

namespace wclone {

inline constexpr int kCounterexampleDomain = 3;

struct BracketedParam {
  Rational lower;
  Rational upper;
  std::string description;
};

/// Throws InvalidArgument unless 0 < lower < upper.
BracketedParam make_bracket(Rational lower, Rational upper, std::string description = {});

/// Bracket around sqrt(2) from its continued-fraction convergents:
/// level 0 is (1, 3/2), level 1 is (7/5, 17/12), level 2 is (41/29, 99/70).
BracketedParam sqrt2_bracket(int level);

/// Unary: (0, -1, -1-u).
WeightedRelation mu_minus(const Rational& u);
/// Unary: (0, 1, 1+v).
WeightedRelation mu_plus(const Rational& v);

/// rho(2) - rho(0) >= (1+t)(rho(1) - rho(0)) whenever all three are finite.
bool in_u(const WeightedRelation& rho, const Rational& t);
/// in_u at both endpoints, hence for every t in the bracket.
bool in_u(const WeightedRelation& rho, const BracketedParam& bracket);

/// sum_i rho_i(x_i) + sum_{(i,j) in S} phi_=(x_i, x_j). S is given as 0-based
/// pairs and must be an equivalence relation on {0..r-1}; every rho_i must
/// lie in U across the bracket.
WeightedRelation gamma_family_member(std::span<const WeightedRelation> rhos,
                                     std::span<const std::pair<std::size_t, std::size_t>> s,
                                     const BracketedParam& bracket);

/// The identity relation {(i, i)} on r positions.
std::vector<std::pair<std::size_t, std::size_t>> trivial_equivalence(std::size_t r);

/// LP over weights of all k-ary operations on D: a proper weighting that
/// improves mu_minus(u) and mu_plus(v) at every X.
lp::Problem improving_weighting_cone(const Rational& u, const Rational& v, int k,
                                     const Limits& limits = {});

struct NarrowingCertificate {
  Tuple x;
  enum class Side {
    /// s_0 - u s_2 > 0 is impossible.
    AboveLower,
    /// v s_2 - s_0 > 0 is impossible.
    BelowUpper,
  };
  Side side = Side::AboveLower;
  lp::Problem problem;
  /// Verified Farkas multipliers; empty when the LP turned out feasible.
  RatVector multipliers;
};

struct NarrowingReport {
  Rational u;
  Rational v;
  int k = 1;
  std::vector<Operation> basis;
  std::vector<NarrowingCertificate> certificates;
  bool all_infeasible = false;
};

/// For every x in D^k, certify that no weighting of the cone has
/// s_0 > u s_2 and none has v s_2 > s_0, where s_a sums w(f) over f(x) = a.
/// Requires u <= v.
NarrowingReport narrowing_check(const Rational& u, const Rational& v, int k,
                                const Limits& limits = {});

struct ContainmentReport {
  bool contained = false;
  /// One verified Farkas certificate per constraint of the looser cone.
  std::vector<RatVector> certificates;
};

/// Certifies that every weighting admitted by the tighter bracket is admitted
/// by the looser one.
ContainmentReport bracket_containment(const BracketedParam& tight, const BracketedParam& loose,
                                      int k, const Limits& limits = {});

/// s_a(x) = sum of w(f) over f with f(x) = a.
Rational image_weight(const Weighting& w, std::span<const Label> x, Label a);

/// t * s_2(x) <= s_0(x) for every x in D^k.
bool satisfies_family_inequality(const Weighting& w, const Rational& t);
std::vector<Tuple> family_inequality_violations(const Weighting& w, const Rational& t);

struct OmegaFamily {
  Operation c0;
  Operation f;
  Operation g;
  Operation h;
  /// -e_1 + c_0
  Weighting omega0;
  /// -(1+v) e_1 + v f + g
  Weighting mu_upper;
  /// -u e_1^(2) - e_2^(2) + (1+u) h
  Weighting mu_lower;
  /// -e_1 + g, outside the family.
  Weighting outsider;
};

/// Requires 0 < u < v.
OmegaFamily omega_family(const Rational& u, const Rational& v);

}  // namespace wclone
