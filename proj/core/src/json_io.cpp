#include "wclone/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "wclone/errors.hpp"

namespace wclone::io {

namespace {

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string child(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(where.empty() ? "/" : where, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  return j;
}

long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  return j.get<long>();
}

std::size_t index(const Json& j, const std::string& where) {
  const long v = integer(j, where);
  if (v < 0) throw ParseError(where, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "expected a string");
  return j.get<std::string>();
}

bool boolean(const Json& j, const std::string& where) {
  if (!j.is_boolean()) throw ParseError(where, "expected a boolean");
  return j.get<bool>();
}

template <class F>
auto rethrow(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    if (!e.where().empty()) throw;
    throw ParseError(where.empty() ? "/" : where, e.what());
  } catch (const Error& e) {
    throw ParseError(where.empty() ? "/" : where, e.what());
  }
}

int domain_from(const Json& j, const std::string& where) {
  const long d = integer(member(j, "d", where), child(where, "d"));
  if (d < 2 || d > 1000) throw ParseError(child(where, "d"), "domain size must be in 2..1000");
  return static_cast<int>(d);
}

Tuple labels(const Json& j, const std::string& where) {
  Tuple out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) {
    out.push_back(static_cast<Label>(integer(j[i], child(where, i))));
  }
  return out;
}

std::vector<std::size_t> indices(const Json& j, const std::string& where) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(index(j[i], child(where, i)));
  return out;
}

Json scope_json(const std::vector<std::size_t>& scope) {
  Json out = Json::array();
  for (std::size_t v : scope) out.push_back(v);
  return out;
}

Language resolve_language(const Json& j, const std::filesystem::path& base, const std::string& where) {
  if (j.is_string()) {
    std::filesystem::path path = j.get<std::string>();
    if (path.is_relative() && !base.empty()) path = base / path;
    return language_from_json(read_json_file(path), path.string() + ":");
  }
  return language_from_json(j, where);
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path.string());
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(column),
                     "malformed JSON");
  }
}

// ---------------------------------------------------------------------------
// Encoding

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const ExtRat& x) { return to_string(x); }

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const Rational& q : v) out.push_back(to_json(q));
  return out;
}

Json to_json(const Operation& f) {
  return Json{{"d", f.domain()}, {"k", f.arity()}, {"table", f.table()}};
}

Json to_json(const TupleMatrix& x) {
  Json out = Json::array();
  for (const Tuple& c : x.columns()) out.push_back(c);
  return out;
}

Json to_json(const WeightedRelation& gamma) {
  // The most frequent value becomes the default; ties prefer inf, then the
  // largest value.
  std::map<ExtRat, std::size_t, std::greater<>> counts;
  for (const ExtRat& x : gamma.table()) ++counts[x];
  ExtRat fallback = ExtRat::infinity();
  std::size_t best = 0;
  for (const auto& [value, count] : counts) {
    if (count > best) {
      fallback = value;
      best = count;
    }
  }
  Json entries = Json::array();
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i] == fallback) continue;
    entries.push_back(
        Json{{"tuple", index_tuple(i, gamma.arity(), gamma.domain())}, {"value", to_json(gamma[i])}});
  }
  return Json{{"d", gamma.domain()}, {"m", gamma.arity()}, {"entries", entries},
              {"default", to_json(fallback)}};
}

Json to_json(const Language& language) {
  Json rels = Json::object();
  for (const auto& [name, gamma] : language) rels[name] = to_json(gamma);
  return Json{{"d", language.domain()}, {"relations", rels}};
}

Json to_json(const Weighting& w) {
  Json terms = Json::array();
  for (const auto& [f, c] : w.terms()) {
    terms.push_back(Json{{"op", Json{{"table", f.table()}}}, {"weight", to_json(c)}});
  }
  return Json{{"d", w.domain()}, {"k", w.arity()}, {"terms", terms}};
}

Json to_json(const VcspInstance& instance) {
  Json constraints = Json::array();
  for (const Constraint& c : instance.constraints()) {
    constraints.push_back(Json{{"rel", c.relation}, {"scope", scope_json(c.scope)}});
  }
  return Json{{"n", instance.variable_count()}, {"language", to_json(instance.language())},
              {"constraints", constraints}};
}

Json to_json(const ScaledInstance& instance) {
  Json constraints = Json::array();
  for (const ScaledConstraint& c : instance.constraints()) {
    constraints.push_back(
        Json{{"rel", c.relation}, {"scope", scope_json(c.scope)}, {"coef", to_json(c.coefficient)}});
  }
  return Json{{"n", instance.variable_count()}, {"language", to_json(instance.base())},
              {"constraints", constraints}};
}

Json to_json(const Solution& solution) {
  Json out{{"optimum", to_json(solution.optimum)}};
  out["argmin"] = solution.argmin ? Json(*solution.argmin) : Json(nullptr);
  return out;
}

Json to_json(const ConeDecision& decision) {
  if (const auto* m = std::get_if<ConeMember>(&decision)) {
    Json out{{"kind", "member"}, {"lambda", to_json(m->lambda)}};
    if (std::any_of(m->slack.begin(), m->slack.end(), [](const Rational& x) { return sgn(x) != 0; })) {
      out["slack"] = to_json(m->slack);
    }
    return out;
  }
  return Json{{"kind", "separated"},
              {"certificate", to_json(std::get<ConeSeparated>(decision).certificate)}};
}

Json to_json(const ExpressionRecipe& recipe) {
  Json terms = Json::array();
  for (const MuTerm& t : recipe.terms) {
    terms.push_back(Json{{"relation", t.relation}, {"x", to_json(t.x)}, {"coefficient", to_json(t.coefficient)}});
  }
  return Json{{"terms", terms}, {"iota", to_json(recipe.iota)}};
}

Json to_json(const MemberCertificate& c) {
  return Json{{"relation_arity", c.relation_arity}, {"k", c.k},        {"empty", c.empty},
              {"psi", to_json(c.psi)},              {"psi0", to_json(c.psi0)}, {"scope", scope_json(c.scope)}};
}

Json to_json(const SeparatedCertificate& c) {
  return Json{{"stage", c.stage == SeparatedCertificate::Stage::Support ? "support" : "improvement"},
              {"omega", to_json(c.omega)}};
}

Json to_json(const MembershipVerdict& verdict) {
  if (const auto* m = std::get_if<MemberCertificate>(&verdict)) {
    return Json{{"verdict", "member"}, {"certificate", to_json(*m)}};
  }
  Json out = to_json(std::get<SeparatedCertificate>(verdict));
  out["verdict"] = "separated";
  return out;
}

Json to_json(const WcloneVerdict& verdict) {
  if (const auto* m = std::get_if<WcloneMember>(&verdict)) {
    Json recipe = Json::array();
    for (std::size_t i = 0; i < m->recipe.size(); ++i) {
      Json args = Json::array();
      for (const Operation& g : m->recipe[i].arguments) args.push_back(to_json(g));
      recipe.push_back(Json{{"coefficient", to_json(m->recipe[i].coefficient)},
                            {"source", m->sources[i]},
                            {"arguments", args}});
    }
    return Json{{"verdict", "member"},
                {"recipe", recipe},
                {"reconstructed", to_json(m->reconstructed)},
                {"generators", m->generator_count}};
  }
  const auto& s = std::get<WcloneSeparated>(verdict);
  return Json{{"verdict", "separated"},
              {"reason", s.reason == WcloneSeparated::Reason::SupportEscapesClone ? "support_escapes_clone"
                                                                                  : "cone_separated"},
              {"gamma", to_json(s.gamma)},
              {"generators", s.generator_count}};
}

Json to_json(const ImprovementRows& rows) {
  Json basis = Json::array();
  for (const Operation& f : rows.basis) basis.push_back(f.table());
  Json out_rows = Json::array();
  for (const ImprovementRow& r : rows.rows) {
    out_rows.push_back(Json{{"relation", r.relation}, {"x", to_json(r.x)}, {"vector", to_json(r.vector)}});
  }
  return Json{{"d", rows.domain}, {"k", rows.arity}, {"basis", basis}, {"rows", out_rows}};
}

Json to_json(const ReductionReport& report) {
  auto opt = [](const std::optional<Rational>& q) { return q ? to_json(*q) : Json(nullptr); };
  Json meta{{"q", report.q},
            {"min_positive", opt(report.min_positive)},
            {"max_finite", opt(report.max_finite)},
            {"b", opt(report.b)},
            {"epsilon", opt(report.epsilon)},
            {"opt_copies", report.opt_copies},
            {"copies", report.copies},
            {"provenance", report.provenance},
            {"identity", report.identity}};
  Json out = to_json(report.instance);
  out["meta"] = meta;
  return out;
}

Json to_json(const lp::Problem& problem) {
  Json constraints = Json::array();
  for (const lp::Constraint& c : problem.constraints) {
    const char* sense = c.sense == lp::Sense::LessEq ? "<=" : c.sense == lp::Sense::GreaterEq ? ">=" : "=";
    constraints.push_back(Json{{"coefficients", to_json(c.coefficients)}, {"sense", sense}, {"rhs", to_json(c.rhs)}});
  }
  Json free = Json::array();
  for (std::size_t j = 0; j < problem.variable_count; ++j) {
    if (problem.is_free(j)) free.push_back(j);
  }
  Json out{{"variables", problem.variable_count}, {"free", free}, {"constraints", constraints}};
  if (problem.maximize) out["maximize"] = to_json(*problem.maximize);
  return out;
}

Json to_json(const NarrowingReport& report) {
  Json certs = Json::array();
  for (const NarrowingCertificate& c : report.certificates) {
    certs.push_back(Json{{"x", c.x},
                         {"side", c.side == NarrowingCertificate::Side::AboveLower ? "s0 - u*s2 > 0"
                                                                                   : "v*s2 - s0 > 0"},
                         {"infeasible", !c.multipliers.empty()},
                         {"multipliers", to_json(c.multipliers)}});
  }
  Json basis = Json::array();
  for (const Operation& f : report.basis) basis.push_back(f.table());
  return Json{{"u", to_json(report.u)},         {"v", to_json(report.v)},
              {"k", report.k},                  {"basis", basis},
              {"certificates", certs},          {"all_infeasible", report.all_infeasible}};
}

Json to_json(const ContainmentReport& report) {
  Json certs = Json::array();
  for (const RatVector& c : report.certificates) certs.push_back(to_json(c));
  return Json{{"contained", report.contained}, {"certificates", certs}};
}

Json to_json(const OmegaFamily& family) {
  return Json{{"c0", to_json(family.c0)},
              {"f", to_json(family.f)},
              {"g", to_json(family.g)},
              {"h", to_json(family.h)},
              {"omega0", to_json(family.omega0)},
              {"mu_upper", to_json(family.mu_upper)},
              {"mu_lower", to_json(family.mu_lower)},
              {"outsider", to_json(family.outsider)}};
}

// ---------------------------------------------------------------------------
// Decoding

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  const std::string s = text(j, where);
  return rethrow(where, [&] { return parse_rational(s); });
}

ExtRat ext_rat_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return ExtRat(j.get<long>());
  const std::string s = text(j, where);
  return rethrow(where, [&] { return parse_ext_rat(s); });
}

RatVector rat_vector_from_json(const Json& j, const std::string& where) {
  RatVector out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(rational_from_json(j[i], child(where, i)));
  return out;
}

Operation operation_from_json(const Json& j, const std::string& where, int d, int k) {
  if (!j.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an operation object");
  if (j.contains("d")) d = domain_from(j, where);
  if (j.contains("k")) k = static_cast<int>(integer(j["k"], child(where, "k")));
  if (d == 0) throw ParseError(where, "operation needs \"d\"");
  if (k == 0) throw ParseError(where, "operation needs \"k\"");
  Tuple table = labels(member(j, "table", where), child(where, "table"));
  return rethrow(where, [&] { return Operation(d, k, std::move(table)); });
}

TupleMatrix tuple_matrix_from_json(const Json& j, int d, const std::string& where) {
  std::vector<Tuple> cols;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) cols.push_back(labels(j[i], child(where, i)));
  return rethrow(where, [&] { return TupleMatrix(d, std::move(cols)); });
}

WeightedRelation relation_from_json(const Json& j, const std::string& where) {
  const int d = domain_from(j, where);
  const long m = integer(member(j, "m", where), child(where, "m"));
  if (m < 0 || m > 64) throw ParseError(child(where, "m"), "arity must be in 0..64");
  const ExtRat fallback = j.contains("default") ? ext_rat_from_json(j["default"], child(where, "default"))
                                                : ExtRat::infinity();
  const std::size_t size = rethrow(where, [&] { return tuple_count(d, static_cast<int>(m)); });
  if (size > (std::size_t{1} << 26)) throw ParseError(where, "relation table too large");
  std::vector<ExtRat> table(size, fallback);
  std::vector<bool> seen(size, false);
  const std::string ew = child(where, "entries");
  const Json& entries = j.contains("entries") ? array(j["entries"], ew) : Json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string w = child(ew, i);
    const Tuple t = labels(member(entries[i], "tuple", w), child(w, "tuple"));
    if (t.size() != static_cast<std::size_t>(m)) throw ParseError(child(w, "tuple"), "tuple length differs from m");
    const std::size_t idx = rethrow(child(w, "tuple"), [&] { return tuple_index(t, d); });
    if (seen[idx]) throw ParseError(child(w, "tuple"), "duplicate tuple");
    seen[idx] = true;
    table[idx] = ext_rat_from_json(member(entries[i], "value", w), child(w, "value"));
  }
  return WeightedRelation(d, static_cast<int>(m), std::move(table));
}

Language language_from_json(const Json& j, const std::string& where) {
  Language out(domain_from(j, where));
  const Json& rels = member(j, "relations", where);
  if (!rels.is_object()) throw ParseError(child(where, "relations"), "expected an object");
  for (const auto& [name, rel] : rels.items()) {
    const std::string w = child(child(where, "relations"), name);
    WeightedRelation gamma = relation_from_json(rel, w);
    rethrow(w, [&] {
      out.add(name, std::move(gamma));
      return 0;
    });
  }
  return out;
}

Weighting weighting_from_json(const Json& j, const std::string& where) {
  const int d = domain_from(j, where);
  const long k = integer(member(j, "k", where), child(where, "k"));
  if (k < 1 || k > 16) throw ParseError(child(where, "k"), "arity must be in 1..16");
  const std::string tw = child(where, "terms");
  const Json& terms = array(member(j, "terms", where), tw);
  TermMap map;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string w = child(tw, i);
    Operation f = operation_from_json(member(terms[i], "op", w), child(w, "op"), d, static_cast<int>(k));
    if (f.domain() != d || f.arity() != k) throw ParseError(child(w, "op"), "operation shape differs from the weighting");
    Rational c = rational_from_json(member(terms[i], "weight", w), child(w, "weight"));
    if (map.count(f)) throw ParseError(child(w, "op"), "duplicate operation");
    map.emplace(std::move(f), std::move(c));
  }
  return rethrow(where, [&] { return Weighting(d, static_cast<int>(k), std::move(map)); });
}

VcspInstance instance_from_json(const Json& j, const std::filesystem::path& base, const std::string& where) {
  const std::size_t n = index(member(j, "n", where), child(where, "n"));
  Language lang = resolve_language(member(j, "language", where), base, child(where, "language"));
  VcspInstance out(n, std::move(lang));
  const std::string cw = child(where, "constraints");
  const Json& cs = array(member(j, "constraints", where), cw);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string w = child(cw, i);
    std::string rel = text(member(cs[i], "rel", w), child(w, "rel"));
    std::vector<std::size_t> scope = indices(member(cs[i], "scope", w), child(w, "scope"));
    rethrow(w, [&] {
      out.add_constraint(std::move(rel), std::move(scope));
      return 0;
    });
  }
  return out;
}

ScaledInstance scaled_instance_from_json(const Json& j, const std::filesystem::path& base,
                                         const std::string& where) {
  const std::size_t n = index(member(j, "n", where), child(where, "n"));
  Language lang = resolve_language(member(j, "language", where), base, child(where, "language"));
  ScaledInstance out(n, std::move(lang));
  const std::string cw = child(where, "constraints");
  const Json& cs = array(member(j, "constraints", where), cw);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string w = child(cw, i);
    std::string rel = text(member(cs[i], "rel", w), child(w, "rel"));
    std::vector<std::size_t> scope = indices(member(cs[i], "scope", w), child(w, "scope"));
    Rational coef = cs[i].contains("coef") ? rational_from_json(cs[i]["coef"], child(w, "coef")) : Rational(1);
    rethrow(w, [&] {
      out.add_constraint(std::move(rel), std::move(scope), std::move(coef));
      return 0;
    });
  }
  return out;
}

Solution solution_from_json(const Json& j, const std::string& where) {
  Solution out{ext_rat_from_json(member(j, "optimum", where), child(where, "optimum")), std::nullopt};
  const Json& a = member(j, "argmin", where);
  if (!a.is_null()) out.argmin = labels(a, child(where, "argmin"));
  return out;
}

ConeDecision cone_decision_from_json(const Json& j, const std::string& where) {
  const std::string kind = text(member(j, "kind", where), child(where, "kind"));
  if (kind == "member") {
    ConeMember m{rat_vector_from_json(member(j, "lambda", where), child(where, "lambda")), {}};
    if (j.contains("slack")) m.slack = rat_vector_from_json(j["slack"], child(where, "slack"));
    return m;
  }
  if (kind == "separated") {
    return ConeSeparated{rat_vector_from_json(member(j, "certificate", where), child(where, "certificate"))};
  }
  throw ParseError(child(where, "kind"), "expected \"member\" or \"separated\"");
}

ExpressionRecipe recipe_from_json(const Json& j, int d, const std::string& where) {
  ExpressionRecipe out;
  out.iota = rational_from_json(member(j, "iota", where), child(where, "iota"));
  const std::string tw = child(where, "terms");
  const Json& terms = array(member(j, "terms", where), tw);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string w = child(tw, i);
    out.terms.push_back(MuTerm{text(member(terms[i], "relation", w), child(w, "relation")),
                               tuple_matrix_from_json(member(terms[i], "x", w), d, child(w, "x")),
                               rational_from_json(member(terms[i], "coefficient", w), child(w, "coefficient"))});
  }
  return out;
}

MemberCertificate member_certificate_from_json(const Json& j, int d, const std::string& where) {
  MemberCertificate out;
  out.relation_arity = static_cast<int>(integer(member(j, "relation_arity", where), child(where, "relation_arity")));
  out.k = static_cast<int>(integer(member(j, "k", where), child(where, "k")));
  out.empty = boolean(member(j, "empty", where), child(where, "empty"));
  out.psi = recipe_from_json(member(j, "psi", where), d, child(where, "psi"));
  out.psi0 = recipe_from_json(member(j, "psi0", where), d, child(where, "psi0"));
  out.scope = indices(member(j, "scope", where), child(where, "scope"));
  return out;
}

}  // namespace wclone::io
