#pragma once

// Exact rational linear programming and conic-hull membership.
//
// The simplex solver is treated as untrusted: every answer it gives is
// re-checked by the verify_* routines before being returned, and those
// routines are what callers should rely on.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "wclone/rational.hpp"

namespace wclone {

using RatVector = std::vector<Rational>;

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Scales a non-zero direction to the primitive integer vector with the same
/// ray. Zero vectors are returned unchanged.
RatVector primitive_direction(RatVector v);

namespace lp {

enum class Sense { LessEq, GreaterEq, Equal };

struct Constraint {
  RatVector coefficients;
  Sense sense = Sense::LessEq;
  Rational rhs;
};

/// Variables are non-negative unless marked free.
struct Problem {
  std::size_t variable_count = 0;
  std::vector<bool> free_variables;
  std::vector<Constraint> constraints;
  /// Maximised when present; otherwise only feasibility is decided.
  std::optional<RatVector> maximize;

  bool is_free(std::size_t j) const { return j < free_variables.size() && free_variables[j]; }
};

struct Optimal {
  RatVector x;
  /// Objective value; zero for pure feasibility problems.
  Rational value;
};

/// Multipliers y, one per constraint, read in "a.x <= b" orientation:
/// y_i >= 0 on <= rows, y_i <= 0 on >= rows, free on = rows. They satisfy
/// sum_i y_i a_ij >= 0 for non-negative x_j, == 0 for free x_j, and
/// sum_i y_i b_i < 0, which no feasible x can meet.
struct Infeasible {
  RatVector multipliers;
};

/// A feasible x plus a ray r keeping feasibility with objective . r > 0.
struct Unbounded {
  RatVector x;
  RatVector ray;
};

using Result = std::variant<Optimal, Infeasible, Unbounded>;

/// Two-phase dense-tableau simplex with Bland's rule.
Result solve(const Problem& problem);

bool verify_feasible(const Problem& problem, std::span<const Rational> x);
bool verify_infeasible(const Problem& problem, std::span<const Rational> multipliers);
bool verify_unbounded(const Problem& problem, const Unbounded& result);

/// Throws InvalidArgument on inconsistent dimensions.
void validate(const Problem& problem);

}  // namespace lp

/// Is `target` in the cone generated by `generators` (plus -e_j for every j
/// with lower_slack[j])?
struct ConeProblem {
  std::size_t dimension = 0;
  std::vector<RatVector> generators;
  RatVector target;
  /// Optional; coordinates where the combination may exceed the target.
  std::vector<bool> lower_slack;

  bool has_slack(std::size_t j) const { return j < lower_slack.size() && lower_slack[j]; }
};

/// sum_i lambda_i g_i - slack = target with lambda, slack >= 0.
struct ConeMember {
  RatVector lambda;
  /// Per coordinate; zero wherever slack is not allowed.
  RatVector slack;
};

/// <c, g_i> <= 0 for all generators, c_j >= 0 on slack coordinates, and
/// <c, target> > 0.
struct ConeSeparated {
  RatVector certificate;
};

using ConeDecision = std::variant<ConeMember, ConeSeparated>;

ConeDecision cone_membership(const ConeProblem& problem);

bool verify_cone_decision(const ConeProblem& problem, const ConeDecision& decision);

}  // namespace wclone
