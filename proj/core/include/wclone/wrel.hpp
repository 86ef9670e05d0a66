#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wclone/algebra.hpp"
#include "wclone/rational.hpp"

namespace wclone {

class VcspInstance;

/// A map D^m -> Q u {inf}, stored densely by tuple index.
class WeightedRelation {
 public:
  WeightedRelation(int d, int arity, std::vector<ExtRat> table);
  static WeightedRelation constant(int d, int arity, const ExtRat& value);

  int domain() const { return d_; }
  int arity() const { return arity_; }
  std::size_t size() const { return table_.size(); }
  const std::vector<ExtRat>& table() const { return table_; }

  const ExtRat& operator[](std::size_t index) const { return table_[index]; }
  const ExtRat& at(std::span<const Label> t) const;

  /// Indices of finite entries, ascending.
  std::vector<std::size_t> feasible_indices() const;
  bool has_feasible() const;

  /// Minimum / maximum finite value; nullopt when nothing is feasible.
  std::optional<Rational> min_value() const;
  std::optional<Rational> max_value() const;

  /// True when every finite entry has the same value ({c, inf}-valued).
  bool is_relation() const;

  friend bool operator==(const WeightedRelation&, const WeightedRelation&) = default;

 private:
  int d_;
  int arity_;
  std::vector<ExtRat> table_;
};

/// A named collection of weighted relations over one domain, ordered by name.
class Language {
 public:
  explicit Language(int d);

  int domain() const { return d_; }
  void add(std::string name, WeightedRelation relation);
  bool contains(const std::string& name) const { return relations_.count(name) != 0; }
  const WeightedRelation& at(const std::string& name) const;
  std::size_t size() const { return relations_.size(); }
  bool empty() const { return relations_.empty(); }

  auto begin() const { return relations_.begin(); }
  auto end() const { return relations_.end(); }

  friend bool operator==(const Language&, const Language&) = default;

 private:
  int d_;
  std::map<std::string, WeightedRelation> relations_;
};

/// 0 where finite, inf elsewhere.
WeightedRelation feas(const WeightedRelation& gamma);

/// 0 exactly on minimum-value tuples, inf elsewhere.
WeightedRelation opt(const WeightedRelation& gamma);

/// gamma(x_0..x_{r-1}) = g1(x_sigma) + g2(x_tau). Index maps are 0-based
/// positions into the r result coordinates.
WeightedRelation add(const WeightedRelation& g1, std::span<const std::size_t> sigma,
                     const WeightedRelation& g2, std::span<const std::size_t> tau,
                     int arity);

/// Pointwise sum of two relations of equal arity.
WeightedRelation add(const WeightedRelation& g1, const WeightedRelation& g2);

/// Minimum over the last `over_last` coordinates.
WeightedRelation minimise(const WeightedRelation& gamma, int over_last);

/// c * gamma for c >= 0 (0 * inf = inf).
WeightedRelation scale(const WeightedRelation& gamma, const Rational& c);

/// gamma + c; inf stays inf.
WeightedRelation shift(const WeightedRelation& gamma, const Rational& c);

WeightedRelation equality_relation(int d);
WeightedRelation empty_relation(int d);

/// pi_L(I): minimum of I over assignments consistent with L -> x. `vars` may
/// repeat; an empty consistent set yields inf.
WeightedRelation gadget_project(const VcspInstance& instance, std::span<const std::size_t> vars,
                                const Limits& limits = {});

}  // namespace wclone
