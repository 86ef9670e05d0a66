#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wclone/algebra.hpp"
#include "wclone/cone_lp.hpp"
#include "wclone/wops.hpp"
#include "wclone/wrel.hpp"

namespace wclone {

bool is_polymorphism(const Operation& f, const WeightedRelation& gamma);
bool is_polymorphism(const Operation& f, const Language& language);

/// Pol^(k) of the language, canonical order.
OperationSet pol(const Language& language, int k, const Limits& limits = {});

/// All X in Feas(gamma)^k; columns range over Feas(gamma) in tuple-index
/// order and the first column varies slowest.
std::vector<TupleMatrix> feasible_matrices(const WeightedRelation& gamma, int k,
                                           const Limits& limits = {});

/// sum over supp(w) of w(f) * gamma(f(X)). Throws InvalidArgument when X is
/// not in Feas(gamma)^k or some f in supp(w) sends X outside Feas(gamma).
Rational improvement_value(const Weighting& w, const WeightedRelation& gamma,
                           const TupleMatrix& x);

/// Requires a proper weighting.
bool is_weighted_polymorphism(const Weighting& w, const WeightedRelation& gamma);
bool is_weighted_polymorphism(const Weighting& w, const Language& language);

/// gamma[X] over `basis`: the entry for f is gamma(f(X)). Every basis
/// operation must keep X feasible.
RatVector improvement_vector(const WeightedRelation& gamma, const TupleMatrix& x,
                             const std::vector<Operation>& basis);

struct ImprovementRow {
  std::string relation;
  TupleMatrix x;
  RatVector vector;
};

struct ImprovementRows {
  int domain = 2;
  int arity = 1;
  /// Pol^(k) of the language.
  std::vector<Operation> basis;
  std::vector<ImprovementRow> rows;
};

/// One row per (gamma, X) with X in Feas(gamma)^k; gamma by name, X by
/// feasible_matrices order.
ImprovementRows improvement_rows(const Language& language, int k, const Limits& limits = {});

struct WeightedPolymorphismSearch {
  std::optional<Weighting> weighting;
  /// Verified Farkas multipliers when no weighting exists.
  RatVector farkas;
};

/// Finds a k-ary weighted polymorphism of the language over Pol^(k), with
/// weight at least 1 on `require_positive` when given.
WeightedPolymorphismSearch find_weighted_polymorphism(
    const Language& language, int k, const std::optional<Operation>& require_positive,
    const Limits& limits = {});

}  // namespace wclone
