#include "wclone/galois.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "wclone/errors.hpp"
#include "wclone/vcsp.hpp"

namespace wclone {

namespace {

std::vector<Tuple> projection_columns(int d, int k) {
  std::vector<Tuple> cols;
  for (int i = 1; i <= k; ++i) cols.push_back(projection(d, k, i).table());
  return cols;
}

std::size_t image_index(const Operation& f) { return tuple_index(f.table(), f.domain()); }

}  // namespace

GaloisWorkspace::GaloisWorkspace(Language language, int k, const Limits& limits)
    : language_(std::move(language)), k_(k) {
  if (k < 1) throw InvalidArgument("workspace arity must be at least 1");
  const int d = language_.domain();
  operation_count(d, k, limits);
  m_ = tuple_count(d, k);
  basis_ = pol(language_, k, limits).of_arity(k);
  in_image_.assign(tuple_count(d, static_cast<int>(m_)), false);
  for (const Operation& f : basis_) in_image_[image_index(f)] = true;
  z_ = TupleMatrix(d, projection_columns(d, k));
  for (const auto& [name, gamma] : language_) {
    for (TupleMatrix& x : feasible_matrices(gamma, k, limits)) {
      RatVector v = improvement_vector(gamma, x, basis_);
      rows_.push_back(ImprovementRow{name, std::move(x), std::move(v)});
    }
  }
}

GaloisWorkspace GaloisWorkspace::for_target(Language language, const WeightedRelation& rho,
                                            const Limits& limits) {
  if (rho.domain() != language.domain()) throw InvalidArgument("target domain mismatch");
  const std::vector<std::size_t> feasible = rho.feasible_indices();
  if (feasible.empty()) throw InvalidArgument("target has no feasible tuple");
  GaloisWorkspace ws(std::move(language), static_cast<int>(feasible.size()), limits);
  std::vector<Tuple> cols;
  for (std::size_t i : feasible) cols.push_back(index_tuple(i, rho.arity(), rho.domain()));
  ws.r_ = TupleMatrix(rho.domain(), std::move(cols));
  ws.in_q_.assign(ws.basis_.size(), false);
  for (std::size_t j = 0; j < ws.basis_.size(); ++j) {
    if (rho.at(apply(ws.basis_[j], ws.r_)).is_infinite()) {
      ws.q_.push_back(j);
      ws.in_q_[j] = true;
    }
  }
  ws.target_ = rho;
  return ws;
}

std::optional<std::size_t> GaloisWorkspace::basis_position(const Operation& f) const {
  const auto it = std::lower_bound(basis_.begin(), basis_.end(), f);
  if (it == basis_.end() || *it != f) return std::nullopt;
  return static_cast<std::size_t>(it - basis_.begin());
}

std::vector<Tuple> GaloisWorkspace::image() const {
  std::vector<Tuple> out;
  for (const Operation& f : basis_) out.push_back(f.table());
  std::sort(out.begin(), out.end());
  return out;
}

WeightedRelation construct_mu(const WeightedRelation& gamma, const TupleMatrix& x,
                              const GaloisWorkspace& workspace) {
  const RatVector values = improvement_vector(gamma, x, workspace.basis());
  const int d = workspace.domain();
  const int m = static_cast<int>(workspace.image_arity());
  std::vector<ExtRat> table(tuple_count(d, m), ExtRat::infinity());
  for (std::size_t j = 0; j < values.size(); ++j) {
    table[image_index(workspace.basis()[j])] = values[j];
  }
  return WeightedRelation(d, m, std::move(table));
}

std::pair<WeightedRelation, WeightedRelation> construct_iota(const GaloisWorkspace& workspace) {
  const int d = workspace.domain();
  const int m = static_cast<int>(workspace.image_arity());
  std::vector<ExtRat> plus(tuple_count(d, m), ExtRat::infinity());
  std::vector<ExtRat> minus = plus;
  for (const Operation& f : workspace.basis()) {
    plus[image_index(f)] = ExtRat(1);
    minus[image_index(f)] = ExtRat(-1);
  }
  return {WeightedRelation(d, m, std::move(plus)), WeightedRelation(d, m, std::move(minus))};
}

WeightedRelation materialize(const ExpressionRecipe& recipe, const GaloisWorkspace& workspace) {
  const std::vector<Operation>& basis = workspace.basis();
  RatVector values(basis.size(), recipe.iota);
  for (const MuTerm& term : recipe.terms) {
    if (sgn(term.coefficient) < 0) throw InvalidArgument("recipe coefficient is negative");
    const RatVector v =
        improvement_vector(workspace.language().at(term.relation), term.x, basis);
    for (std::size_t j = 0; j < v.size(); ++j) values[j] += term.coefficient * v[j];
  }
  const int d = workspace.domain();
  const int m = static_cast<int>(workspace.image_arity());
  std::vector<ExtRat> table(tuple_count(d, m), ExtRat::infinity());
  for (std::size_t j = 0; j < basis.size(); ++j) table[image_index(basis[j])] = values[j];
  return WeightedRelation(d, m, std::move(table));
}

namespace {

WeightedRelation empty_expression(int d, int arity, const Limits& limits) {
  Language lang(d);
  lang.add("empty", empty_relation(d));
  VcspInstance inst(static_cast<std::size_t>(std::max(arity, 1)), std::move(lang));
  inst.add_constraint("empty", {0});
  std::vector<std::size_t> scope(static_cast<std::size_t>(arity));
  std::iota(scope.begin(), scope.end(), std::size_t{0});
  return gadget_project(inst, scope, limits);
}

WeightedRelation project_psi(const WeightedRelation& psi, std::span<const std::size_t> scope,
                             const Limits& limits) {
  Language lang(psi.domain());
  lang.add("psi", psi);
  const std::size_t m = static_cast<std::size_t>(psi.arity());
  VcspInstance inst(m, std::move(lang));
  std::vector<std::size_t> all(m);
  std::iota(all.begin(), all.end(), std::size_t{0});
  inst.add_constraint("psi", std::move(all));
  return gadget_project(inst, scope, limits);
}

// Cone generators: the distinct non-zero improvement vectors followed by
// iota and -iota. Returns the row index behind each improvement generator.
struct Generators {
  std::vector<RatVector> vectors;
  std::vector<std::size_t> rows;
};

Generators cone_generators(const GaloisWorkspace& ws) {
  Generators g;
  std::set<RatVector> seen;
  for (std::size_t i = 0; i < ws.rows().size(); ++i) {
    const RatVector& v = ws.rows()[i].vector;
    if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; })) continue;
    if (!seen.insert(v).second) continue;
    g.vectors.push_back(v);
    g.rows.push_back(i);
  }
  const std::size_t n = ws.basis().size();
  g.vectors.emplace_back(n, Rational(1));
  g.vectors.emplace_back(n, Rational(-1));
  return g;
}

ExpressionRecipe recipe_from(const ConeMember& member, const Generators& g,
                             const GaloisWorkspace& ws) {
  ExpressionRecipe recipe;
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    if (sgn(member.lambda[i]) == 0) continue;
    const ImprovementRow& row = ws.rows()[g.rows[i]];
    recipe.terms.push_back(MuTerm{row.relation, row.x, member.lambda[i]});
  }
  const std::size_t iota = g.rows.size();
  recipe.iota = member.lambda[iota] - member.lambda[iota + 1];
  return recipe;
}

Weighting weighting_from(const RatVector& omega, const GaloisWorkspace& ws) {
  TermMap terms;
  for (std::size_t j = 0; j < omega.size(); ++j) {
    if (sgn(omega[j]) != 0) terms.emplace(ws.basis()[j], omega[j]);
  }
  return Weighting(ws.domain(), ws.arity(), std::move(terms));
}

}  // namespace

MembershipVerdict imp_membership(const Language& language, const WeightedRelation& rho,
                                 const Limits& limits) {
  if (rho.domain() != language.domain()) throw InvalidArgument("target domain mismatch");
  if (!rho.has_feasible()) {
    MemberCertificate cert;
    cert.relation_arity = rho.arity();
    cert.empty = true;
    if (express_from_certificate(cert, language, limits) != rho) {
      throw VerificationFailure("empty-relation expression does not reproduce the target");
    }
    return cert;
  }

  const GaloisWorkspace ws = GaloisWorkspace::for_target(language, rho, limits);
  const std::vector<Operation>& basis = ws.basis();
  const std::size_t n = basis.size();
  const Generators gens = cone_generators(ws);

  ConeProblem problem;
  problem.dimension = n;
  problem.generators = gens.vectors;
  problem.lower_slack.assign(n, false);
  for (std::size_t j = 0; j < n; ++j) problem.lower_slack[j] = !basis[j].is_projection();

  auto separated = [&](const ConeDecision& decision, SeparatedCertificate::Stage stage) {
    SeparatedCertificate cert{stage,
                              weighting_from(std::get<ConeSeparated>(decision).certificate, ws)};
    if (!verify_separation(cert, language, rho)) {
      throw VerificationFailure("separating weighting failed its re-check");
    }
    return cert;
  };

  // Stage (a): no weighted polymorphism may put weight on Q.
  problem.target.assign(n, Rational(0));
  for (std::size_t j : ws.q()) problem.target[j] = 1;
  const ConeDecision support = cone_membership(problem);
  if (std::holds_alternative<ConeSeparated>(support)) {
    return separated(support, SeparatedCertificate::Stage::Support);
  }

  // Stage (b): the improvement inequality of rho at X = R.
  for (std::size_t j = 0; j < n; ++j) {
    problem.target[j] =
        ws.in_q(j) ? Rational(0) : ws.target().at(apply(basis[j], ws.r())).value();
  }
  const ConeDecision improvement = cone_membership(problem);
  if (std::holds_alternative<ConeSeparated>(improvement)) {
    return separated(improvement, SeparatedCertificate::Stage::Improvement);
  }

  MemberCertificate cert;
  cert.relation_arity = rho.arity();
  cert.k = ws.arity();
  cert.psi = recipe_from(std::get<ConeMember>(improvement), gens, ws);
  cert.psi0 = recipe_from(std::get<ConeMember>(support), gens, ws);
  for (const Tuple& row : ws.r().rows()) cert.scope.push_back(tuple_index(row, ws.domain()));
  if (express_from_certificate(cert, ws, limits) != rho) {
    throw VerificationFailure("membership recipe does not reproduce the target");
  }
  return cert;
}

WeightedRelation express_from_certificate(const MemberCertificate& certificate,
                                          const GaloisWorkspace& workspace,
                                          const Limits& limits) {
  if (certificate.empty) {
    return empty_expression(workspace.domain(), certificate.relation_arity, limits);
  }
  if (certificate.k != workspace.arity()) {
    throw InvalidArgument("certificate arity differs from the workspace arity");
  }
  if (certificate.scope.size() != static_cast<std::size_t>(certificate.relation_arity)) {
    throw InvalidArgument("certificate scope length differs from the relation arity");
  }
  const WeightedRelation main = project_psi(materialize(certificate.psi, workspace),
                                            certificate.scope, limits);
  const WeightedRelation mask = project_psi(materialize(certificate.psi0, workspace),
                                            certificate.scope, limits);
  return add(main, opt(mask));
}

WeightedRelation express_from_certificate(const MemberCertificate& certificate,
                                          const Language& language, const Limits& limits) {
  if (certificate.empty) {
    return empty_expression(language.domain(), certificate.relation_arity, limits);
  }
  return express_from_certificate(certificate, GaloisWorkspace(language, certificate.k, limits),
                                  limits);
}

bool verify_separation(const SeparatedCertificate& certificate, const Language& language,
                       const WeightedRelation& rho) {
  const Weighting& w = certificate.omega;
  if (!w.is_proper() || w.domain() != language.domain()) return false;
  return is_weighted_polymorphism(w, language) && !is_weighted_polymorphism(w, rho);
}

WcloneVerdict wclone_membership(std::span<const Weighting> weightings, const Weighting& mu,
                                int clone_arity_cap, const Limits& limits) {
  const int d = mu.domain();
  const int k = mu.arity();
  if (clone_arity_cap < 0) throw InvalidArgument("clone arity cap must be non-negative");
  if (!mu.is_proper()) {
    std::vector<Operation> bad;
    for (const auto& [f, c] : mu.terms()) {
      if (sgn(c) < 0 && !f.is_projection()) bad.push_back(f);
    }
    throw ImproperWeighting("wclone_membership: the candidate weighting is improper", bad);
  }
  const OperationSet generators = supp(weightings, d);

  // The k-ary part is generated exactly, so the clone is not truncated
  // at any arity that matters for the k-ary slice.
  const std::vector<Operation> part = clone_part(generators, k, limits);
  const std::size_t n = part.size();
  auto position = [&](const Operation& f) -> std::optional<std::size_t> {
    const auto it = std::lower_bound(part.begin(), part.end(), f);
    if (it == part.end() || *it != f) return std::nullopt;
    return static_cast<std::size_t>(it - part.begin());
  };

  // gamma: Feas = F = {f(Z) : f in C^(k)}, valued by `values` over the part.
  auto relation_over_image = [&](const RatVector& values) {
    const int m = static_cast<int>(tuple_count(d, k));
    std::vector<ExtRat> table(tuple_count(d, m), ExtRat::infinity());
    for (std::size_t j = 0; j < n; ++j) table[image_index(part[j])] = values[j];
    return WeightedRelation(d, m, std::move(table));
  };
  auto check_gamma = [&](const WeightedRelation& gamma) {
    for (const Weighting& w : weightings) {
      if (!is_weighted_polymorphism(w, gamma)) return false;
    }
    return !is_weighted_polymorphism(mu, gamma);
  };

  for (const auto& [f, c] : mu.terms()) {
    if (sgn(c) > 0 && !position(f)) {
      WcloneSeparated out{WcloneSeparated::Reason::SupportEscapesClone,
                          relation_over_image(RatVector(n)), 0};
      if (!check_gamma(out.gamma)) {
        throw VerificationFailure("support-escape relation failed its re-check");
      }
      return out;
    }
  }

  std::uint64_t total = 0;
  for (const Weighting& w : weightings) {
    const auto count = checked_pow(n, static_cast<std::uint64_t>(w.arity()));
    if (!count || total + *count > limits.op_cap) {
      throw CapExceeded("superposed weighting generators |C^(k)|^l", d, k,
                        count ? total + *count : 0, limits.op_cap, !count);
    }
    total += *count;
  }

  struct Source {
    std::size_t weighting;
    std::vector<Operation> arguments;
  };
  std::vector<RatVector> vectors;
  std::vector<Source> sources;
  std::set<RatVector> seen;
  for (std::size_t wi = 0; wi < weightings.size(); ++wi) {
    const Weighting& w = weightings[wi];
    if (w.is_zero()) continue;
    std::vector<std::size_t> pick(static_cast<std::size_t>(w.arity()), 0);
    while (true) {
      std::vector<Operation> args;
      for (std::size_t p : pick) args.push_back(part[p]);
      RatVector v(n);
      for (const auto& [f, c] : w.terms()) v[*position(superpose(f, args))] += c;
      if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; }) &&
          seen.insert(v).second) {
        vectors.push_back(std::move(v));
        sources.push_back(Source{wi, std::move(args)});
      }
      std::size_t j = pick.size();
      while (j > 0 && ++pick[j - 1] == n) pick[--j] = 0;
      if (j == 0) break;
    }
  }

  ConeProblem problem;
  problem.dimension = n;
  problem.generators = vectors;
  problem.target.assign(n, Rational(0));
  for (const auto& [f, c] : mu.terms()) problem.target[*position(f)] = c;

  const ConeDecision decision = cone_membership(problem);
  if (const auto* member = std::get_if<ConeMember>(&decision)) {
    WcloneMember out{{}, {}, Weighting::zero(d, k), vectors.size()};
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (sgn(member->lambda[i]) == 0) continue;
      out.recipe.push_back(ProperSumTerm{member->lambda[i], weightings[sources[i].weighting],
                                         sources[i].arguments});
      out.sources.push_back(sources[i].weighting);
    }
    out.reconstructed = proper_sum(d, k, out.recipe, limits).result;
    if (out.reconstructed != mu) {
      throw VerificationFailure("proper-sum recipe does not reproduce the candidate");
    }
    return out;
  }
  WcloneSeparated out{WcloneSeparated::Reason::ConeSeparated,
                      relation_over_image(std::get<ConeSeparated>(decision).certificate),
                      vectors.size()};
  if (!check_gamma(out.gamma)) {
    throw VerificationFailure("separating relation failed its re-check");
  }
  return out;
}

}  // namespace wclone
