#pragma once

// Test-only reference checks. They share no arithmetic with the library:
// values are re-read through their decimal strings into boost cpp_rational
// and every evaluation is done with local loops.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

#include "wclone/cone_lp.hpp"
#include "wclone/reductions.hpp"
#include "wclone/vcsp.hpp"
#include "wclone/wops.hpp"
#include "wclone/wrel.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

Q to_q(const wclone::Rational& r);
/// nullopt for infinity.
std::optional<Q> to_q(const wclone::ExtRat& x);

/// Reads gamma at the tuple with the given labels.
std::optional<Q> value_at(const wclone::WeightedRelation& gamma, const std::vector<int>& tuple);

/// f applied to each row of the k columns.
std::vector<int> apply_rows(const wclone::Operation& f, const std::vector<std::vector<int>>& columns);

bool is_polymorphism(const wclone::Operation& f, const wclone::WeightedRelation& gamma);

/// Brute-force weighted polymorphism check over all X in Feas(gamma)^k.
bool is_weighted_polymorphism(const wclone::Weighting& w, const wclone::WeightedRelation& gamma);

/// Sum over supp(w) of w(f) * gamma(f(X)) with +inf when a positive weight
/// meets an infeasible image; nullopt means +inf.
std::optional<Q> improvement_at(const wclone::Weighting& w, const wclone::WeightedRelation& gamma,
                                const std::vector<std::vector<int>>& columns);

/// Objective value of an assignment; nullopt for infinity.
std::optional<Q> instance_value(const wclone::VcspInstance& instance, const std::vector<int>& s);
std::optional<Q> instance_value(const wclone::ScaledInstance& instance, const std::vector<int>& s);

/// Minimum over all assignments; nullopt when nothing is feasible.
std::optional<Q> instance_minimum(const wclone::VcspInstance& instance);
std::optional<Q> instance_minimum(const wclone::ScaledInstance& instance);

/// Every assignment of n variables over d labels, leftmost slowest.
std::vector<std::vector<int>> all_assignments(int d, std::size_t n);

bool cone_decision_valid(const wclone::ConeProblem& problem, const wclone::ConeDecision& decision);

bool lp_feasible_point(const wclone::lp::Problem& problem, const wclone::RatVector& x);
bool lp_farkas_valid(const wclone::lp::Problem& problem, const wclone::RatVector& y);

}  // namespace oracle
