#include "wclone/wrel.hpp"

#include <algorithm>
#include <string>

#include "wclone/errors.hpp"
#include "wclone/vcsp.hpp"

namespace wclone {

WeightedRelation::WeightedRelation(int d, int arity, std::vector<ExtRat> table)
    : d_(d), arity_(arity), table_(std::move(table)) {
  check_domain(d);
  if (arity < 0) throw InvalidArgument("negative relation arity");
  if (table_.size() != tuple_count(d, arity)) {
    throw InvalidArgument("weighted relation table has length " + std::to_string(table_.size()) +
                          ", expected d^m = " + std::to_string(tuple_count(d, arity)));
  }
}

WeightedRelation WeightedRelation::constant(int d, int arity, const ExtRat& value) {
  return WeightedRelation(d, arity, std::vector<ExtRat>(tuple_count(d, arity), value));
}

const ExtRat& WeightedRelation::at(std::span<const Label> t) const {
  if (t.size() != static_cast<std::size_t>(arity_)) {
    throw InvalidArgument("tuple of length " + std::to_string(t.size()) + " for relation of arity " +
                          std::to_string(arity_));
  }
  return table_[tuple_index(t, d_)];
}

std::vector<std::size_t> WeightedRelation::feasible_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i].is_finite()) out.push_back(i);
  }
  return out;
}

bool WeightedRelation::has_feasible() const {
  return std::any_of(table_.begin(), table_.end(), [](const ExtRat& x) { return x.is_finite(); });
}

std::optional<Rational> WeightedRelation::min_value() const {
  std::optional<Rational> out;
  for (const ExtRat& x : table_) {
    if (x.is_finite() && (!out || x.value() < *out)) out = x.value();
  }
  return out;
}

std::optional<Rational> WeightedRelation::max_value() const {
  std::optional<Rational> out;
  for (const ExtRat& x : table_) {
    if (x.is_finite() && (!out || x.value() > *out)) out = x.value();
  }
  return out;
}

bool WeightedRelation::is_relation() const {
  const auto lo = min_value();
  return !lo || *lo == *max_value();
}

Language::Language(int d) : d_(d) { check_domain(d); }

void Language::add(std::string name, WeightedRelation relation) {
  if (relation.domain() != d_) {
    throw InvalidArgument("relation '" + name + "' has domain " +
                          std::to_string(relation.domain()) + ", language has " +
                          std::to_string(d_));
  }
  if (relations_.count(name)) throw InvalidArgument("duplicate relation name '" + name + "'");
  relations_.emplace(std::move(name), std::move(relation));
}

const WeightedRelation& Language::at(const std::string& name) const {
  const auto it = relations_.find(name);
  if (it == relations_.end()) throw InvalidArgument("unknown relation '" + name + "'");
  return it->second;
}

WeightedRelation feas(const WeightedRelation& gamma) {
  std::vector<ExtRat> table;
  table.reserve(gamma.size());
  for (const ExtRat& x : gamma.table()) table.push_back(x.is_finite() ? ExtRat(0) : ExtRat::infinity());
  return WeightedRelation(gamma.domain(), gamma.arity(), std::move(table));
}

WeightedRelation opt(const WeightedRelation& gamma) {
  const auto lo = gamma.min_value();
  std::vector<ExtRat> table;
  table.reserve(gamma.size());
  for (const ExtRat& x : gamma.table()) {
    table.push_back(lo && x.is_finite() && x.value() == *lo ? ExtRat(0) : ExtRat::infinity());
  }
  return WeightedRelation(gamma.domain(), gamma.arity(), std::move(table));
}

namespace {

void check_index_map(std::span<const std::size_t> map, int source_arity, int arity,
                     const char* name) {
  if (map.size() != static_cast<std::size_t>(source_arity)) {
    throw InvalidArgument(std::string("index map ") + name + " has length " +
                          std::to_string(map.size()) + ", relation arity is " +
                          std::to_string(source_arity));
  }
  for (std::size_t p : map) {
    if (p >= static_cast<std::size_t>(arity)) {
      throw InvalidArgument(std::string("index map ") + name + " entry " + std::to_string(p) +
                            " outside result arity " + std::to_string(arity));
    }
  }
}

std::size_t project_index(const Tuple& x, std::span<const std::size_t> map, int d) {
  std::size_t index = 0;
  for (std::size_t p : map) index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(x[p]);
  return index;
}

}  // namespace

WeightedRelation add(const WeightedRelation& g1, std::span<const std::size_t> sigma,
                     const WeightedRelation& g2, std::span<const std::size_t> tau, int arity) {
  if (g1.domain() != g2.domain()) throw InvalidArgument("add: domain mismatch");
  if (arity < 0) throw InvalidArgument("add: negative arity");
  check_index_map(sigma, g1.arity(), arity, "sigma");
  check_index_map(tau, g2.arity(), arity, "tau");
  const int d = g1.domain();
  const std::size_t n = tuple_count(d, arity);
  std::vector<ExtRat> table;
  table.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Tuple x = index_tuple(i, arity, d);
    table.push_back(g1[project_index(x, sigma, d)] + g2[project_index(x, tau, d)]);
  }
  return WeightedRelation(d, arity, std::move(table));
}

WeightedRelation add(const WeightedRelation& g1, const WeightedRelation& g2) {
  if (g1.domain() != g2.domain() || g1.arity() != g2.arity()) {
    throw InvalidArgument("pointwise add needs equal domain and arity");
  }
  std::vector<ExtRat> table;
  table.reserve(g1.size());
  for (std::size_t i = 0; i < g1.size(); ++i) table.push_back(g1[i] + g2[i]);
  return WeightedRelation(g1.domain(), g1.arity(), std::move(table));
}

WeightedRelation minimise(const WeightedRelation& gamma, int over_last) {
  if (over_last < 1 || over_last >= gamma.arity()) {
    throw InvalidArgument("minimise: cannot minimise over " + std::to_string(over_last) +
                          " of " + std::to_string(gamma.arity()) + " coordinates");
  }
  const int r = gamma.arity() - over_last;
  const std::size_t block = tuple_count(gamma.domain(), over_last);
  const std::size_t n = tuple_count(gamma.domain(), r);
  std::vector<ExtRat> table;
  table.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ExtRat best = gamma[i * block];
    for (std::size_t j = 1; j < block; ++j) best = std::min(best, gamma[i * block + j]);
    table.push_back(best);
  }
  return WeightedRelation(gamma.domain(), r, std::move(table));
}

WeightedRelation scale(const WeightedRelation& gamma, const Rational& c) {
  if (sgn(c) < 0) throw InvalidArgument("scale: negative factor " + to_string(c));
  std::vector<ExtRat> table;
  table.reserve(gamma.size());
  for (const ExtRat& x : gamma.table()) table.push_back(scale(c, x));
  return WeightedRelation(gamma.domain(), gamma.arity(), std::move(table));
}

WeightedRelation shift(const WeightedRelation& gamma, const Rational& c) {
  std::vector<ExtRat> table;
  table.reserve(gamma.size());
  for (const ExtRat& x : gamma.table()) table.push_back(x + ExtRat(c));
  return WeightedRelation(gamma.domain(), gamma.arity(), std::move(table));
}

WeightedRelation equality_relation(int d) {
  std::vector<ExtRat> table(tuple_count(d, 2), ExtRat::infinity());
  for (int x = 0; x < d; ++x) table[static_cast<std::size_t>(x * d + x)] = ExtRat(0);
  return WeightedRelation(d, 2, std::move(table));
}

WeightedRelation empty_relation(int d) {
  return WeightedRelation::constant(d, 1, ExtRat::infinity());
}

WeightedRelation gadget_project(const VcspInstance& instance, std::span<const std::size_t> vars,
                                const Limits& limits) {
  for (std::size_t v : vars) {
    if (v >= instance.variable_count()) {
      throw InvalidArgument("gadget variable " + std::to_string(v) + " outside 0.." +
                            std::to_string(instance.variable_count()) + "-1");
    }
  }
  const int d = instance.domain();
  const int r = static_cast<int>(vars.size());
  std::vector<ExtRat> table(tuple_count(d, r), ExtRat::infinity());
  const std::vector<ExtRat> values = value_table(instance, limits);
  const std::size_t n = instance.variable_count();
  for (std::size_t s = 0; s < values.size(); ++s) {
    if (values[s].is_infinite()) continue;
    const Tuple assignment = index_tuple(s, static_cast<int>(n), d);
    std::size_t x = 0;
    for (std::size_t v : vars) x = x * static_cast<std::size_t>(d) + static_cast<std::size_t>(assignment[v]);
    if (values[s] < table[x]) table[x] = values[s];
  }
  return WeightedRelation(d, r, std::move(table));
}

}  // namespace wclone
