#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wclone/rational.hpp"
#include "wclone/vcsp.hpp"
#include "wclone/wrel.hpp"

namespace wclone {

struct NormalizedLanguage {
  Language language;
  /// Constant added to each relation; zero for all-inf relations.
  std::map<std::string, Rational> shifts;
};

/// Shifts each relation so its minimum finite value is 0.
NormalizedLanguage normalize_nonnegative(const Language& language);

/// Shifts an instance's language and returns the total constant by which
/// every finite objective value moved.
struct NormalizedInstance {
  VcspInstance instance;
  std::map<std::string, Rational> shifts;
  Rational offset;
};
NormalizedInstance normalize_instance(const VcspInstance& instance);

struct ReductionReport {
  VcspInstance instance;
  /// Number of constraints of the input instance.
  std::size_t q = 0;
  /// Opt reduction: smallest positive weight of gamma.
  std::optional<Rational> min_positive = std::nullopt;
  /// Largest finite weight over the relevant language.
  std::optional<Rational> max_finite = std::nullopt;
  /// Scaling reduction: b = ceil(q M / epsilon) and epsilon itself.
  std::optional<Rational> b = std::nullopt;
  std::optional<Rational> epsilon = std::nullopt;
  /// Opt reduction: copies per replaced constraint.
  std::size_t opt_copies = 0;
  /// Copies emitted for each input constraint.
  std::vector<std::size_t> copies = {};
  /// Input constraint index of every output constraint.
  std::vector<std::size_t> provenance = {};
  /// True when the transform degenerated to relabelling.
  bool identity = false;
};

/// Replaces every constraint on `opt_relation` (which must equal
/// Opt(gamma)) with q * ceil(M / m) + 1 copies of gamma on the same scope.
/// The language must be normalised: non-negative, with min(gamma) = 0. M is
/// taken over all relations of the language except the Opt relation.
ReductionReport reduce_opt(const VcspInstance& instance, const std::string& gamma,
                           const std::string& opt_relation, bool allow_identity = true);

struct ScaledConstraint {
  std::string relation;
  std::vector<std::size_t> scope;
  Rational coefficient;

  friend bool operator==(const ScaledConstraint&, const ScaledConstraint&) = default;
};

/// An instance whose constraints are c_i * gamma_i over a base language.
class ScaledInstance {
 public:
  ScaledInstance(std::size_t variables, Language base,
                 std::vector<ScaledConstraint> constraints = {});

  std::size_t variable_count() const { return n_; }
  const Language& base() const { return base_; }
  const std::vector<ScaledConstraint>& constraints() const { return constraints_; }
  void add_constraint(std::string relation, std::vector<std::size_t> scope, Rational coefficient);

  /// Equivalent plain instance; each constraint gets its own scaled relation.
  VcspInstance materialize() const;

  friend bool operator==(const ScaledInstance&, const ScaledInstance&) = default;

 private:
  std::size_t n_;
  Language base_;
  std::vector<ScaledConstraint> constraints_;
};

ExtRat evaluate(const ScaledInstance& instance, std::span<const Label> assignment);

/// floor(b c_i) + 1 copies of gamma_i per constraint, b = ceil(q M / epsilon).
ReductionReport reduce_scale(const ScaledInstance& instance, const Rational& epsilon);

}  // namespace wclone
