#include "wclone/reductions.hpp"

#include <string>

#include "wclone/errors.hpp"

namespace wclone {

NormalizedLanguage normalize_nonnegative(const Language& language) {
  NormalizedLanguage out{Language(language.domain()), {}};
  for (const auto& [name, gamma] : language) {
    const Rational delta = gamma.min_value() ? Rational(-*gamma.min_value()) : Rational(0);
    out.language.add(name, shift(gamma, delta));
    out.shifts.emplace(name, delta);
  }
  return out;
}

NormalizedInstance normalize_instance(const VcspInstance& instance) {
  NormalizedLanguage lang = normalize_nonnegative(instance.language());
  Rational offset = 0;
  for (const Constraint& c : instance.constraints()) offset += lang.shifts.at(c.relation);
  VcspInstance shifted(instance.variable_count(), std::move(lang.language),
                       instance.constraints());
  return NormalizedInstance{std::move(shifted), std::move(lang.shifts), std::move(offset)};
}

namespace {

Rational ceil_rational(const Rational& x) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(out);
}

Rational floor_rational(const Rational& x) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(out);
}

std::size_t to_count(const Rational& x) {
  const mpz_class n = x.get_num();
  if (!n.fits_ulong_p()) throw InvalidArgument("copy count " + to_string(x) + " does not fit");
  return static_cast<std::size_t>(n.get_ui());
}

void require_nonnegative(const std::string& name, const WeightedRelation& gamma) {
  const auto lo = gamma.min_value();
  if (lo && sgn(*lo) < 0) {
    throw InvalidArgument("relation '" + name + "' has negative weight " + to_string(*lo) +
                          "; normalise the language first");
  }
}

}  // namespace

ReductionReport reduce_opt(const VcspInstance& instance, const std::string& gamma,
                           const std::string& opt_relation, bool allow_identity) {
  const Language& lang = instance.language();
  const WeightedRelation& g = lang.at(gamma);
  if (lang.at(opt_relation) != opt(g)) {
    throw InvalidArgument("relation '" + opt_relation + "' is not Opt('" + gamma + "')");
  }
  for (const auto& [name, rel] : lang) require_nonnegative(name, rel);
  if (g.min_value() && *g.min_value() != 0) {
    throw InvalidArgument("relation '" + gamma + "' must have minimum weight 0");
  }

  ReductionReport report{.instance = instance, .q = instance.constraints().size()};
  std::optional<Rational> max_finite;
  for (const auto& [name, rel] : lang) {
    if (name == opt_relation) continue;
    const auto hi = rel.max_value();
    if (hi && (!max_finite || *hi > *max_finite)) max_finite = hi;
  }
  report.max_finite = max_finite;

  if (g.is_relation()) {
    if (!allow_identity) {
      throw InvalidArgument("relation '" + gamma + "' is {0,inf}-valued; the reduction is the identity");
    }
    report.identity = true;
    report.opt_copies = 1;
    report.copies.assign(report.q, 1);
    for (std::size_t i = 0; i < report.q; ++i) report.provenance.push_back(i);
    return report;
  }

  std::optional<Rational> min_positive;
  for (const ExtRat& x : g.table()) {
    if (x.is_finite() && sgn(x.value()) > 0 && (!min_positive || x.value() < *min_positive)) {
      min_positive = x.value();
    }
  }
  report.min_positive = min_positive;
  const Rational copies =
      Rational(static_cast<unsigned long>(report.q)) * ceil_rational(*max_finite / *min_positive) + 1;
  report.opt_copies = to_count(copies);

  Language out_lang(lang.domain());
  for (const auto& [name, rel] : lang) {
    if (name != opt_relation) out_lang.add(name, rel);
  }
  VcspInstance out(instance.variable_count(), std::move(out_lang));
  for (std::size_t i = 0; i < report.q; ++i) {
    const Constraint& c = instance.constraints()[i];
    if (c.relation == opt_relation) {
      for (std::size_t j = 0; j < report.opt_copies; ++j) {
        out.add_constraint(gamma, c.scope);
        report.provenance.push_back(i);
      }
      report.copies.push_back(report.opt_copies);
    } else {
      out.add_constraint(c.relation, c.scope);
      report.provenance.push_back(i);
      report.copies.push_back(1);
    }
  }
  report.instance = std::move(out);
  return report;
}

ScaledInstance::ScaledInstance(std::size_t variables, Language base,
                               std::vector<ScaledConstraint> constraints)
    : n_(variables), base_(std::move(base)) {
  for (ScaledConstraint& c : constraints) {
    add_constraint(std::move(c.relation), std::move(c.scope), std::move(c.coefficient));
  }
}

void ScaledInstance::add_constraint(std::string relation, std::vector<std::size_t> scope,
                                    Rational coefficient) {
  if (sgn(coefficient) < 0) {
    throw InvalidArgument("scaled constraint on '" + relation + "' has negative coefficient");
  }
  // Reuse the plain-instance checks on relation name, arity and variables.
  VcspInstance(n_, base_, {Constraint{relation, scope}});
  constraints_.push_back(ScaledConstraint{std::move(relation), std::move(scope), std::move(coefficient)});
}

VcspInstance ScaledInstance::materialize() const {
  Language lang(base_.domain());
  std::vector<Constraint> constraints;
  for (const ScaledConstraint& c : constraints_) {
    const std::string name = c.relation + "*" + to_string(c.coefficient);
    if (!lang.contains(name)) lang.add(name, scale(base_.at(c.relation), c.coefficient));
    constraints.push_back(Constraint{name, c.scope});
  }
  return VcspInstance(n_, std::move(lang), std::move(constraints));
}

ExtRat evaluate(const ScaledInstance& instance, std::span<const Label> assignment) {
  if (assignment.size() != instance.variable_count()) {
    throw InvalidArgument("assignment length differs from the variable count");
  }
  ExtRat total = 0;
  for (const ScaledConstraint& c : instance.constraints()) {
    const WeightedRelation& g = instance.base().at(c.relation);
    Tuple x;
    for (std::size_t v : c.scope) x.push_back(assignment[v]);
    total += scale(c.coefficient, g.at(x));
    if (total.is_infinite()) return total;
  }
  return total;
}

ReductionReport reduce_scale(const ScaledInstance& instance, const Rational& epsilon) {
  if (sgn(epsilon) <= 0) throw InvalidArgument("epsilon must be positive, got " + to_string(epsilon));
  const Language& base = instance.base();
  std::optional<Rational> max_finite;
  for (const auto& [name, rel] : base) {
    require_nonnegative(name, rel);
    const auto hi = rel.max_value();
    if (hi && (!max_finite || *hi > *max_finite)) max_finite = hi;
  }

  ReductionReport report{.instance = VcspInstance(instance.variable_count(), base),
                         .q = instance.constraints().size()};
  report.max_finite = max_finite;
  report.epsilon = epsilon;
  const bool identity = !max_finite || sgn(*max_finite) == 0;
  report.identity = identity;
  Rational b = 0;
  if (!identity) {
    b = ceil_rational(Rational(static_cast<unsigned long>(report.q)) * *max_finite / epsilon);
    report.b = b;
  }
  for (std::size_t i = 0; i < report.q; ++i) {
    const ScaledConstraint& c = instance.constraints()[i];
    const std::size_t copies = identity ? 1 : to_count(floor_rational(b * c.coefficient) + 1);
    for (std::size_t j = 0; j < copies; ++j) {
      report.instance.add_constraint(c.relation, c.scope);
      report.provenance.push_back(i);
    }
    report.copies.push_back(copies);
  }
  return report;
}

}  // namespace wclone
