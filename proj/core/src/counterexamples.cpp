#include "wclone/counterexamples.hpp"

#include <string>

#include "wclone/errors.hpp"
#include "wclone/improve.hpp"

namespace wclone {

namespace {

constexpr int kD = kCounterexampleDomain;

WeightedRelation unary(const Rational& a, const Rational& b, const Rational& c) {
  return WeightedRelation(kD, 1, {ExtRat(a), ExtRat(b), ExtRat(c)});
}

Operation unary_op(Label a, Label b, Label c) { return Operation(kD, 1, {a, b, c}); }

}  // namespace

BracketedParam make_bracket(Rational lower, Rational upper, std::string description) {
  if (sgn(lower) <= 0 || lower >= upper) {
    throw InvalidArgument("bracket needs 0 < lower < upper, got (" + to_string(lower) + ", " +
                          to_string(upper) + ")");
  }
  return BracketedParam{std::move(lower), std::move(upper), std::move(description)};
}

BracketedParam sqrt2_bracket(int level) {
  if (level < 0 || level > 40) throw InvalidArgument("sqrt2 bracket level must be in 0..40");
  // Convergents p/q of sqrt(2): even-indexed ones lie below, odd ones above.
  mpz_class p = 1, q = 1;
  for (int i = 0; i < 2 * level; ++i) {
    mpz_class next_p = p + 2 * q;
    q = p + q;
    p = next_p;
  }
  Rational lower(p, q);
  Rational upper(p + 2 * q, p + q);
  lower.canonicalize();
  upper.canonicalize();
  return make_bracket(lower, upper, "sqrt(2), convergent level " + std::to_string(level));
}

WeightedRelation mu_minus(const Rational& u) { return unary(0, -1, -1 - u); }

WeightedRelation mu_plus(const Rational& v) { return unary(0, 1, 1 + v); }

bool in_u(const WeightedRelation& rho, const Rational& t) {
  if (rho.domain() != kD || rho.arity() != 1) {
    throw InvalidArgument("in_u expects a unary relation on {0,1,2}");
  }
  for (const ExtRat& x : rho.table()) {
    if (x.is_infinite()) return true;
  }
  const Rational& r0 = rho[0].value();
  return rho[2].value() - r0 >= (1 + t) * (rho[1].value() - r0);
}

bool in_u(const WeightedRelation& rho, const BracketedParam& bracket) {
  return in_u(rho, bracket.lower) && in_u(rho, bracket.upper);
}

WeightedRelation gamma_family_member(std::span<const WeightedRelation> rhos,
                                     std::span<const std::pair<std::size_t, std::size_t>> s,
                                     const BracketedParam& bracket) {
  const std::size_t r = rhos.size();
  if (r == 0) throw InvalidArgument("gamma family member needs at least one position");
  std::vector<std::vector<bool>> rel(r, std::vector<bool>(r, false));
  for (const auto& [i, j] : s) {
    if (i >= r || j >= r) throw InvalidArgument("equivalence pair outside 0..r-1");
    rel[i][j] = true;
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (!rel[i][i]) throw InvalidArgument("S is not reflexive at " + std::to_string(i));
    for (std::size_t j = 0; j < r; ++j) {
      if (rel[i][j] != rel[j][i]) throw InvalidArgument("S is not symmetric");
      for (std::size_t l = 0; l < r; ++l) {
        if (rel[i][j] && rel[j][l] && !rel[i][l]) throw InvalidArgument("S is not transitive");
      }
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (!in_u(rhos[i], bracket)) {
      throw InvalidArgument("rho_" + std::to_string(i) + " violates the U inequality on the bracket");
    }
  }
  const int arity = static_cast<int>(r);
  const std::size_t n = tuple_count(kD, arity);
  std::vector<ExtRat> table;
  table.reserve(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Tuple x = index_tuple(idx, arity, kD);
    ExtRat total = 0;
    for (std::size_t i = 0; i < r; ++i) total += rhos[i][static_cast<std::size_t>(x[i])];
    for (const auto& [i, j] : s) {
      if (x[i] != x[j]) total = ExtRat::infinity();
    }
    table.push_back(total);
  }
  return WeightedRelation(kD, arity, std::move(table));
}

std::vector<std::pair<std::size_t, std::size_t>> trivial_equivalence(std::size_t r) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < r; ++i) out.emplace_back(i, i);
  return out;
}

namespace {

struct Cone {
  std::vector<Operation> basis;
  lp::Problem problem;
  /// Indices of the improvement rows, per x, for mu_minus then mu_plus.
  std::vector<std::pair<std::size_t, std::size_t>> rows;
};

Cone build_cone(const Rational& u, const Rational& v, int k, const Limits& limits) {
  Cone cone;
  cone.basis = enumerate_ops(kD, k, limits);
  const std::size_t n = cone.basis.size();
  lp::Problem& p = cone.problem;
  p.variable_count = n;
  p.free_variables.assign(n, false);
  for (std::size_t j = 0; j < n; ++j) p.free_variables[j] = cone.basis[j].is_projection();
  p.constraints.push_back({RatVector(n, Rational(1)), lp::Sense::Equal, 0});
  const WeightedRelation minus = mu_minus(u);
  const WeightedRelation plus = mu_plus(v);
  const std::size_t points = tuple_count(kD, k);
  for (std::size_t x = 0; x < points; ++x) {
    RatVector a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t image = static_cast<std::size_t>(cone.basis[j].at(x));
      a[j] = minus[image].value();
      b[j] = plus[image].value();
    }
    cone.rows.emplace_back(p.constraints.size(), p.constraints.size() + 1);
    p.constraints.push_back({std::move(a), lp::Sense::LessEq, 0});
    p.constraints.push_back({std::move(b), lp::Sense::LessEq, 0});
  }
  return cone;
}

// Coefficients of s_a(x) over the basis.
RatVector image_indicator(const std::vector<Operation>& basis, std::size_t x, Label a) {
  RatVector out(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].at(x) == a) out[j] = 1;
  }
  return out;
}

}  // namespace

lp::Problem improving_weighting_cone(const Rational& u, const Rational& v, int k,
                                     const Limits& limits) {
  return build_cone(u, v, k, limits).problem;
}

NarrowingReport narrowing_check(const Rational& u, const Rational& v, int k,
                                const Limits& limits) {
  if (u > v) throw InvalidArgument("narrowing_check needs u <= v");
  const Cone cone = build_cone(u, v, k, limits);
  NarrowingReport report{u, v, k, cone.basis, {}, true};
  const std::size_t points = tuple_count(kD, k);
  for (std::size_t x = 0; x < points; ++x) {
    const RatVector s0 = image_indicator(cone.basis, x, 0);
    const RatVector s2 = image_indicator(cone.basis, x, 2);
    for (const auto side : {NarrowingCertificate::Side::AboveLower,
                            NarrowingCertificate::Side::BelowUpper}) {
      RatVector c(cone.basis.size());
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (side == NarrowingCertificate::Side::AboveLower) {
          c[j] = s0[j] - u * s2[j];
        } else {
          c[j] = v * s2[j] - s0[j];
        }
      }
      NarrowingCertificate cert{index_tuple(x, k, kD), side, cone.problem, {}};
      cert.problem.constraints.push_back({std::move(c), lp::Sense::GreaterEq, 1});
      const lp::Result result = lp::solve(cert.problem);
      if (const auto* inf = std::get_if<lp::Infeasible>(&result)) {
        cert.multipliers = inf->multipliers;
      } else {
        report.all_infeasible = false;
      }
      report.certificates.push_back(std::move(cert));
    }
  }
  return report;
}

ContainmentReport bracket_containment(const BracketedParam& tight, const BracketedParam& loose,
                                      int k, const Limits& limits) {
  const Cone inner = build_cone(tight.lower, tight.upper, k, limits);
  const Cone outer = build_cone(loose.lower, loose.upper, k, limits);
  ContainmentReport report{true, {}};
  for (const auto& [a, b] : outer.rows) {
    for (const std::size_t row : {a, b}) {
      lp::Problem p = inner.problem;
      lp::Constraint c = outer.problem.constraints[row];
      c.sense = lp::Sense::GreaterEq;
      c.rhs = 1;
      p.constraints.push_back(std::move(c));
      const lp::Result result = lp::solve(p);
      if (const auto* inf = std::get_if<lp::Infeasible>(&result)) {
        report.certificates.push_back(inf->multipliers);
      } else {
        report.contained = false;
        report.certificates.emplace_back();
      }
    }
  }
  return report;
}

Rational image_weight(const Weighting& w, std::span<const Label> x, Label a) {
  Rational out = 0;
  for (const auto& [f, c] : w.terms()) {
    if (f(x) == a) out += c;
  }
  return out;
}

std::vector<Tuple> family_inequality_violations(const Weighting& w, const Rational& t) {
  if (w.domain() != kD) throw InvalidArgument("family inequality is defined on {0,1,2}");
  std::vector<Tuple> out;
  const std::size_t points = tuple_count(kD, w.arity());
  for (std::size_t i = 0; i < points; ++i) {
    const Tuple x = index_tuple(i, w.arity(), kD);
    if (t * image_weight(w, x, 2) > image_weight(w, x, 0)) out.push_back(x);
  }
  return out;
}

bool satisfies_family_inequality(const Weighting& w, const Rational& t) {
  return family_inequality_violations(w, t).empty();
}

OmegaFamily omega_family(const Rational& u, const Rational& v) {
  if (sgn(u) <= 0 || u >= v) throw InvalidArgument("omega_family needs 0 < u < v");
  const Operation c0 = constant_operation(kD, 1, 0);
  const Operation f = unary_op(0, 0, 2);
  const Operation g = unary_op(0, 2, 2);
  std::vector<Label> h_table(9, 0);
  h_table[0 * 3 + 2] = 1;
  h_table[2 * 3 + 2] = 2;
  const Operation h(kD, 2, std::move(h_table));
  const Operation e1 = projection(kD, 1, 1);
  const Operation e1b = projection(kD, 2, 1);
  const Operation e2b = projection(kD, 2, 2);
  return OmegaFamily{
      c0,
      f,
      g,
      h,
      Weighting(kD, 1, {{e1, -1}, {c0, 1}}),
      Weighting(kD, 1, {{e1, -(1 + v)}, {f, v}, {g, 1}}),
      Weighting(kD, 2, {{e1b, -u}, {e2b, -1}, {h, 1 + u}}),
      Weighting(kD, 1, {{e1, -1}, {g, 1}}),
  };
}

}  // namespace wclone
