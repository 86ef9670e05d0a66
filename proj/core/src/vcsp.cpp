#include "wclone/vcsp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "wclone/errors.hpp"

namespace wclone {

VcspInstance::VcspInstance(std::size_t variables, Language language,
                           std::vector<Constraint> constraints)
    : n_(variables), language_(std::move(language)) {
  for (Constraint& c : constraints) add_constraint(std::move(c.relation), std::move(c.scope));
}

void VcspInstance::add_constraint(std::string relation, std::vector<std::size_t> scope) {
  Constraint c{std::move(relation), std::move(scope)};
  check(c);
  constraints_.push_back(std::move(c));
}

void VcspInstance::check(const Constraint& c) const {
  const WeightedRelation& rel = language_.at(c.relation);
  if (c.scope.size() != static_cast<std::size_t>(rel.arity())) {
    throw InvalidArgument("constraint on '" + c.relation + "' has scope of length " +
                          std::to_string(c.scope.size()) + ", relation arity is " +
                          std::to_string(rel.arity()));
  }
  for (std::size_t v : c.scope) {
    if (v >= n_) {
      throw InvalidArgument("constraint on '" + c.relation + "' uses variable " +
                            std::to_string(v) + " but the instance has " + std::to_string(n_));
    }
  }
}

namespace {

// Identical constraints collapse into one term with a multiplicity.
struct Term {
  const WeightedRelation* relation;
  std::vector<std::size_t> scope;
  long multiplicity;
};

std::vector<Term> compile(const VcspInstance& instance) {
  std::map<std::pair<std::string, std::vector<std::size_t>>, long> counts;
  for (const Constraint& c : instance.constraints()) ++counts[{c.relation, c.scope}];
  std::vector<Term> out;
  out.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    out.push_back(Term{&instance.language().at(key.first), key.second, count});
  }
  return out;
}

ExtRat value_of(const std::vector<Term>& terms, std::span<const Label> s, int d) {
  Rational total = 0;
  for (const Term& t : terms) {
    std::size_t index = 0;
    for (std::size_t v : t.scope) index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(s[v]);
    const ExtRat& x = (*t.relation)[index];
    if (x.is_infinite()) return ExtRat::infinity();
    if (t.multiplicity == 1) {
      total += x.value();
    } else {
      total += x.value() * t.multiplicity;
    }
  }
  return ExtRat(total);
}

std::uint64_t assignment_count(const VcspInstance& instance, const Limits& limits) {
  const int d = instance.domain();
  const auto count = checked_pow(static_cast<std::uint64_t>(d), instance.variable_count());
  const int n = static_cast<int>(instance.variable_count());
  if (!count) throw CapExceeded("assignment enumeration d^n", d, n, 0, limits.assignment_cap, true);
  if (*count > limits.assignment_cap) {
    throw CapExceeded("assignment enumeration d^n", d, n, *count, limits.assignment_cap);
  }
  return *count;
}

template <class Visit>
void for_each_value(const VcspInstance& instance, const Limits& limits, Visit&& visit) {
  const std::uint64_t count = assignment_count(instance, limits);
  const std::vector<Term> terms = compile(instance);
  const int d = instance.domain();
  Assignment s(instance.variable_count(), 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    visit(s, value_of(terms, s, d));
    for (std::size_t j = s.size(); j-- > 0;) {
      if (++s[j] < d) break;
      s[j] = 0;
    }
  }
}

}  // namespace

ExtRat evaluate(const VcspInstance& instance, std::span<const Label> assignment) {
  if (assignment.size() != instance.variable_count()) {
    throw InvalidArgument("assignment has length " + std::to_string(assignment.size()) +
                          ", instance has " + std::to_string(instance.variable_count()) +
                          " variables");
  }
  for (Label x : assignment) {
    if (x < 0 || x >= instance.domain()) throw InvalidArgument("assignment label outside domain");
  }
  return value_of(compile(instance), assignment, instance.domain());
}

std::vector<ExtRat> value_table(const VcspInstance& instance, const Limits& limits) {
  std::vector<ExtRat> out;
  out.reserve(assignment_count(instance, limits));
  for_each_value(instance, limits, [&](const Assignment&, ExtRat v) { out.push_back(std::move(v)); });
  return out;
}

Solution solve(const VcspInstance& instance, const Limits& limits) {
  Solution best{ExtRat::infinity(), std::nullopt};
  for_each_value(instance, limits, [&](const Assignment& s, ExtRat v) {
    if (v.is_finite() && (!best.argmin || v < best.optimum)) {
      best.optimum = std::move(v);
      best.argmin = s;
    }
  });
  return best;
}

std::optional<Rational> delta(const VcspInstance& instance, const Limits& limits) {
  std::set<Rational> values;
  for_each_value(instance, limits, [&](const Assignment&, const ExtRat& v) {
    if (v.is_finite()) values.insert(v.value());
  });
  std::optional<Rational> gap;
  for (auto it = values.begin(); it != values.end() && std::next(it) != values.end(); ++it) {
    const Rational g = *std::next(it) - *it;
    if (!gap || g < *gap) gap = g;
  }
  return gap;
}

}  // namespace wclone
