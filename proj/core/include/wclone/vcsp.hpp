#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wclone/algebra.hpp"
#include "wclone/rational.hpp"
#include "wclone/wrel.hpp"

namespace wclone {

struct Constraint {
  std::string relation;
  std::vector<std::size_t> scope;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

using Assignment = std::vector<Label>;

/// Variables 0..n-1 and a list of valued constraints over an attached language.
/// Constraints may repeat.
class VcspInstance {
 public:
  VcspInstance(std::size_t variables, Language language, std::vector<Constraint> constraints = {});

  std::size_t variable_count() const { return n_; }
  int domain() const { return language_.domain(); }
  const Language& language() const { return language_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  void add_constraint(std::string relation, std::vector<std::size_t> scope);

  friend bool operator==(const VcspInstance&, const VcspInstance&) = default;

 private:
  void check(const Constraint& c) const;

  std::size_t n_;
  Language language_;
  std::vector<Constraint> constraints_;
};

ExtRat evaluate(const VcspInstance& instance, std::span<const Label> assignment);

/// I(s) for every assignment s, indexed by tuple index of s.
std::vector<ExtRat> value_table(const VcspInstance& instance, const Limits& limits = {});

struct Solution {
  ExtRat optimum;
  /// Lexicographically smallest optimal assignment; empty when optimum is inf.
  std::optional<Assignment> argmin;
};

Solution solve(const VcspInstance& instance, const Limits& limits = {});

/// Smallest gap between two distinct finite objective values; nullopt when
/// fewer than two distinct finite values occur.
std::optional<Rational> delta(const VcspInstance& instance, const Limits& limits = {});

}  // namespace wclone
