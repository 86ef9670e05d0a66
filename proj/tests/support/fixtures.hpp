#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "wclone/algebra.hpp"
#include "wclone/rational.hpp"
#include "wclone/wops.hpp"
#include "wclone/wrel.hpp"

namespace wclone {

// Readable gtest output for tables.
inline void PrintTo(const Operation& f, std::ostream* os) {
  *os << "op(d=" << f.domain() << ",k=" << f.arity() << ",[";
  for (std::size_t i = 0; i < f.table().size(); ++i) *os << (i ? "," : "") << f.table()[i];
  *os << "])";
}

inline void PrintTo(const ExtRat& x, std::ostream* os) { *os << to_string(x); }

inline void PrintTo(const WeightedRelation& g, std::ostream* os) {
  *os << "rel(d=" << g.domain() << ",m=" << g.arity() << ",[";
  for (std::size_t i = 0; i < g.size(); ++i) *os << (i ? "," : "") << to_string(g[i]);
  *os << "])";
}

}  // namespace wclone

namespace fx {

inline wclone::Rational q(const char* text) { return wclone::parse_rational(text); }

/// Relation from a list of value strings ("inf" allowed) in tuple-index order.
inline wclone::WeightedRelation rel(int d, int m, std::initializer_list<const char*> values) {
  std::vector<wclone::ExtRat> table;
  for (const char* v : values) table.push_back(wclone::parse_ext_rat(v));
  return wclone::WeightedRelation(d, m, std::move(table));
}

inline wclone::Operation op(int d, int k, std::vector<wclone::Label> table) {
  return wclone::Operation(d, k, std::move(table));
}

inline wclone::Operation min2() { return op(2, 2, {0, 0, 0, 1}); }
inline wclone::Operation max2() { return op(2, 2, {0, 1, 1, 1}); }
inline wclone::Operation neg() { return op(2, 1, {1, 0}); }

/// -e_1 - e_2 + min + max on {0, 1}.
inline wclone::Weighting submodular() {
  return wclone::Weighting(2, 2,
                           {{wclone::projection(2, 2, 1), -1},
                            {wclone::projection(2, 2, 2), -1},
                            {min2(), 1},
                            {max2(), 1}});
}

}  // namespace fx
