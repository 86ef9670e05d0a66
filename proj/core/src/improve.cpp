#include "wclone/improve.hpp"

#include <map>
#include <string>

#include "wclone/errors.hpp"

namespace wclone {

namespace {

std::vector<Tuple> feasible_tuples(const WeightedRelation& gamma) {
  std::vector<Tuple> out;
  for (std::size_t i : gamma.feasible_indices()) out.push_back(index_tuple(i, gamma.arity(), gamma.domain()));
  return out;
}

bool advance(std::vector<std::size_t>& pick, std::size_t bound) {
  for (std::size_t j = pick.size(); j-- > 0;) {
    if (++pick[j] < bound) return true;
    pick[j] = 0;
  }
  return false;
}

// Index of f(x_{pick[0]}, ..., x_{pick[k-1]}) in the relation's table.
std::size_t image_index(const Operation& f, const std::vector<Tuple>& tuples,
                        const std::vector<std::size_t>& pick, int arity) {
  const std::size_t d = static_cast<std::size_t>(f.domain());
  std::size_t out = 0;
  for (int i = 0; i < arity; ++i) {
    std::size_t args = 0;
    for (std::size_t p : pick) args = args * d + static_cast<std::size_t>(tuples[p][static_cast<std::size_t>(i)]);
    out = out * d + static_cast<std::size_t>(f.at(args));
  }
  return out;
}

void check_same_domain(int a, int b, const char* what) {
  if (a != b) throw InvalidArgument(std::string(what) + ": domain mismatch");
}

void check_x(const WeightedRelation& gamma, const TupleMatrix& x) {
  check_same_domain(gamma.domain(), x.domain(), "improvement");
  if (x.height() != static_cast<std::size_t>(gamma.arity())) {
    throw InvalidArgument("X has tuples of length " + std::to_string(x.height()) +
                          ", relation arity is " + std::to_string(gamma.arity()));
  }
  for (const Tuple& col : x.columns()) {
    if (gamma.at(col).is_infinite()) throw InvalidArgument("X has a column outside Feas(gamma)");
  }
}

}  // namespace

bool is_polymorphism(const Operation& f, const WeightedRelation& gamma) {
  check_same_domain(f.domain(), gamma.domain(), "is_polymorphism");
  const std::vector<Tuple> tuples = feasible_tuples(gamma);
  if (tuples.empty()) return true;
  std::vector<std::size_t> pick(static_cast<std::size_t>(f.arity()), 0);
  do {
    if (gamma[image_index(f, tuples, pick, gamma.arity())].is_infinite()) return false;
  } while (advance(pick, tuples.size()));
  return true;
}

bool is_polymorphism(const Operation& f, const Language& language) {
  for (const auto& [name, gamma] : language) {
    if (!is_polymorphism(f, gamma)) return false;
  }
  return true;
}

OperationSet pol(const Language& language, int k, const Limits& limits) {
  OperationSet out(language.domain());
  for_each_operation(language.domain(), k, limits, [&](const Operation& f) {
    if (is_polymorphism(f, language)) out.insert(f);
  });
  return out;
}

std::vector<TupleMatrix> feasible_matrices(const WeightedRelation& gamma, int k,
                                           const Limits& limits) {
  if (k < 1) throw InvalidArgument("feasible_matrices: k must be at least 1");
  const std::vector<Tuple> tuples = feasible_tuples(gamma);
  if (tuples.empty()) return {};
  const auto count = checked_pow(tuples.size(), static_cast<std::uint64_t>(k));
  if (!count || *count > limits.assignment_cap) {
    throw CapExceeded("feasible matrices |Feas|^k", gamma.domain(), k, count.value_or(0),
                      limits.assignment_cap, !count);
  }
  std::vector<TupleMatrix> out;
  out.reserve(static_cast<std::size_t>(*count));
  std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
  do {
    std::vector<Tuple> cols;
    for (std::size_t p : pick) cols.push_back(tuples[p]);
    out.emplace_back(gamma.domain(), std::move(cols));
  } while (advance(pick, tuples.size()));
  return out;
}

Rational improvement_value(const Weighting& w, const WeightedRelation& gamma,
                           const TupleMatrix& x) {
  check_x(gamma, x);
  if (x.width() != static_cast<std::size_t>(w.arity())) {
    throw InvalidArgument("X has " + std::to_string(x.width()) + " columns, weighting arity is " +
                          std::to_string(w.arity()));
  }
  Rational total = 0;
  for (const auto& [f, c] : w.terms()) {
    const ExtRat& v = gamma.at(apply(f, x));
    if (v.is_infinite()) {
      throw InvalidArgument("an operation in supp(w) is not a polymorphism: f(X) is infeasible");
    }
    total += c * v.value();
  }
  return total;
}

bool is_weighted_polymorphism(const Weighting& w, const WeightedRelation& gamma) {
  check_same_domain(w.domain(), gamma.domain(), "is_weighted_polymorphism");
  if (!w.is_proper()) {
    std::vector<Operation> bad;
    for (const auto& [f, c] : w.terms()) {
      if (sgn(c) < 0 && !f.is_projection()) bad.push_back(f);
    }
    throw ImproperWeighting("weighted polymorphism check needs a proper weighting", bad);
  }
  for (const auto& [f, c] : w.terms()) {
    if (sgn(c) > 0 && !is_polymorphism(f, gamma)) return false;
  }
  const std::vector<Tuple> tuples = feasible_tuples(gamma);
  if (tuples.empty() || w.is_zero()) return true;
  std::vector<std::pair<const Operation*, const Rational*>> terms;
  for (const auto& [f, c] : w.terms()) terms.emplace_back(&f, &c);
  std::vector<std::size_t> pick(static_cast<std::size_t>(w.arity()), 0);
  do {
    Rational total = 0;
    for (const auto& [f, c] : terms) {
      total += *c * gamma[image_index(*f, tuples, pick, gamma.arity())].value();
    }
    if (sgn(total) > 0) return false;
  } while (advance(pick, tuples.size()));
  return true;
}

bool is_weighted_polymorphism(const Weighting& w, const Language& language) {
  for (const auto& [name, gamma] : language) {
    if (!is_weighted_polymorphism(w, gamma)) return false;
  }
  return true;
}

RatVector improvement_vector(const WeightedRelation& gamma, const TupleMatrix& x,
                             const std::vector<Operation>& basis) {
  check_x(gamma, x);
  RatVector out;
  out.reserve(basis.size());
  for (const Operation& f : basis) {
    const ExtRat& v = gamma.at(apply(f, x));
    if (v.is_infinite()) throw InvalidArgument("basis operation sends X outside Feas(gamma)");
    out.push_back(v.value());
  }
  return out;
}

ImprovementRows improvement_rows(const Language& language, int k, const Limits& limits) {
  ImprovementRows out;
  out.domain = language.domain();
  out.arity = k;
  out.basis = pol(language, k, limits).of_arity(k);
  for (const auto& [name, gamma] : language) {
    for (TupleMatrix& x : feasible_matrices(gamma, k, limits)) {
      RatVector v = improvement_vector(gamma, x, out.basis);
      out.rows.push_back(ImprovementRow{name, std::move(x), std::move(v)});
    }
  }
  return out;
}

WeightedPolymorphismSearch find_weighted_polymorphism(
    const Language& language, int k, const std::optional<Operation>& require_positive,
    const Limits& limits) {
  const ImprovementRows rows = improvement_rows(language, k, limits);
  const std::vector<Operation>& basis = rows.basis;
  const std::size_t n = basis.size();
  std::optional<std::size_t> required;
  if (require_positive) {
    for (std::size_t j = 0; j < n; ++j) {
      if (basis[j] == *require_positive) required = j;
    }
    if (!required) {
      throw InvalidArgument("require_positive is not a " + std::to_string(k) +
                            "-ary polymorphism of the language");
    }
  }

  lp::Problem p;
  p.variable_count = n;
  p.free_variables.assign(n, false);
  for (std::size_t j = 0; j < n; ++j) p.free_variables[j] = basis[j].is_projection();
  p.constraints.push_back({RatVector(n, Rational(1)), lp::Sense::Equal, 0});
  std::set<RatVector> seen;
  for (const ImprovementRow& row : rows.rows) {
    if (seen.insert(row.vector).second) {
      p.constraints.push_back({row.vector, lp::Sense::LessEq, 0});
    }
  }
  if (required) {
    RatVector e(n);
    e[*required] = 1;
    p.constraints.push_back({std::move(e), lp::Sense::GreaterEq, 1});
  }

  WeightedPolymorphismSearch out;
  const lp::Result result = lp::solve(p);
  if (const auto* inf = std::get_if<lp::Infeasible>(&result)) {
    out.farkas = inf->multipliers;
    return out;
  }
  const RatVector& x = std::get<lp::Optimal>(result).x;
  TermMap terms;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(x[j]) != 0) terms.emplace(basis[j], x[j]);
  }
  Weighting w(language.domain(), k, std::move(terms));
  if (!is_weighted_polymorphism(w, language)) {
    throw VerificationFailure("LP weighting is not a weighted polymorphism");
  }
  out.weighting = std::move(w);
  return out;
}

}  // namespace wclone
