#include "wclone/wops.hpp"

#include <string>

namespace wclone {

WeightingReport check_weighting(int d, int k, const TermMap& terms) {
  WeightingReport report;
  report.weight_sum = 0;
  for (const auto& [f, w] : terms) {
    if (f.domain() != d || f.arity() != k) {
      report.shapes_ok = false;
      report.problems.push_back("operation of domain " + std::to_string(f.domain()) +
                                " and arity " + std::to_string(f.arity()) +
                                " in a weighting over d=" + std::to_string(d) +
                                ", k=" + std::to_string(k));
      continue;
    }
    report.weight_sum += w;
    if (sgn(w) < 0 && !f.is_projection()) report.negative_non_projections.push_back(f);
  }
  if (report.weight_sum != 0) {
    report.zero_sum = false;
    report.problems.push_back("weights sum to " + to_string(report.weight_sum) + ", not 0");
  }
  if (!report.negative_non_projections.empty()) {
    report.problems.push_back(std::to_string(report.negative_non_projections.size()) +
                              " non-projection(s) carry negative weight");
  }
  return report;
}

Weighting::Weighting(int d, int arity, TermMap terms) : d_(d), arity_(arity) {
  check_domain(d);
  if (arity < 1) throw InvalidArgument("weighting arity must be at least 1");
  const WeightingReport report = check_weighting(d, arity, terms);
  if (!report.valid()) throw InvalidArgument("invalid weighting: " + report.problems.front());
  for (auto& [f, w] : terms) {
    w.canonicalize();
    if (w != 0) terms_.emplace(f, w);
  }
}

Weighting Weighting::zero(int d, int arity) { return Weighting(d, arity, {}); }

Rational Weighting::weight(const Operation& f) const {
  const auto it = terms_.find(f);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Weighting::is_proper() const {
  for (const auto& [f, w] : terms_) {
    if (sgn(w) < 0 && !f.is_projection()) return false;
  }
  return true;
}

bool is_proper(const Weighting& w) { return w.is_proper(); }

namespace {

std::vector<Operation> offending(const Weighting& w) {
  std::vector<Operation> out;
  for (const auto& [f, c] : w.terms()) {
    if (sgn(c) < 0 && !f.is_projection()) out.push_back(f);
  }
  return out;
}

void add_support(OperationSet& out, const Weighting& w) {
  if (!w.is_proper()) {
    throw ImproperWeighting("support is defined for proper weightings only", offending(w));
  }
  for (int i = 1; i <= w.arity(); ++i) out.insert(projection(w.domain(), w.arity(), i));
  for (const auto& [f, c] : w.terms()) {
    if (sgn(c) > 0) out.insert(f);
  }
}

}  // namespace

OperationSet supp(const Weighting& w) {
  OperationSet out(w.domain());
  add_support(out, w);
  return out;
}

OperationSet supp(std::span<const Weighting> ws, int d) {
  OperationSet out(d);
  for (const Weighting& w : ws) {
    if (w.domain() != d) throw InvalidArgument("weighting set mixes domains");
    add_support(out, w);
  }
  return out;
}

Weighting superpose_weighting(const Weighting& w, std::span<const Operation> gs) {
  if (gs.size() != static_cast<std::size_t>(w.arity())) {
    throw InvalidArgument("superpose_weighting: weighting has arity " + std::to_string(w.arity()) +
                          " but " + std::to_string(gs.size()) + " operations were given");
  }
  const int ell = gs.front().arity();
  for (const Operation& g : gs) {
    if (g.domain() != w.domain()) throw InvalidArgument("superpose_weighting: domain mismatch");
    if (g.arity() != ell) throw InvalidArgument("superpose_weighting: arguments differ in arity");
  }
  TermMap terms;
  for (const auto& [f, c] : w.terms()) terms[superpose(f, gs)] += c;
  return Weighting(w.domain(), ell, std::move(terms));
}

Weighting add_weightings(const Weighting& a, const Weighting& b) {
  if (a.domain() != b.domain() || a.arity() != b.arity()) {
    throw InvalidArgument("add_weightings: domain or arity mismatch");
  }
  TermMap terms = a.terms();
  for (const auto& [f, c] : b.terms()) terms[f] += c;
  return Weighting(a.domain(), a.arity(), std::move(terms));
}

Weighting scale_weighting(const Weighting& w, const Rational& c) {
  if (sgn(c) < 0) throw InvalidArgument("scale_weighting: negative factor " + to_string(c));
  TermMap terms;
  for (const auto& [f, x] : w.terms()) terms.emplace(f, x * c);
  return Weighting(w.domain(), w.arity(), std::move(terms));
}

ProperSum proper_sum(int d, int k, std::span<const ProperSumTerm> terms, const Limits& limits) {
  check_domain(d);
  if (k < 1) throw InvalidArgument("proper_sum: arity must be at least 1");
  ProperSum out{Weighting::zero(d, k), {}};
  ProperSumTranscript& tr = out.transcript;
  for (const ProperSumTerm& term : terms) {
    if (sgn(term.coefficient) < 0) throw InvalidArgument("proper_sum: negative coefficient");
    if (term.weighting.domain() != d) throw InvalidArgument("proper_sum: domain mismatch");
    if (!term.weighting.is_proper()) {
      throw ImproperWeighting("proper_sum: summand weighting is improper",
                              offending(term.weighting));
    }
    for (const Operation& g : term.arguments) {
      if (g.arity() != k) throw InvalidArgument("proper_sum: argument arity differs from k");
    }
    out.result = add_weightings(
        out.result,
        scale_weighting(superpose_weighting(term.weighting, term.arguments), term.coefficient));
    tr.offsets.push_back(tr.combined_arity);
    tr.combined_arity += term.weighting.arity();
    tr.arguments.insert(tr.arguments.end(), term.arguments.begin(), term.arguments.end());
  }
  if (!out.result.is_proper()) {
    throw ImproperWeighting("proper_sum: the sum is improper", offending(out.result));
  }

  const int t = tr.combined_arity;
  const auto width = t > 0 ? checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(t))
                           : std::nullopt;
  if (width && *width <= limits.op_cap) {
    // mu' = sum c_i w_i[e_{o_i+1}, ..., e_{o_i+l_i}] over t variables; it is a
    // sum of proper weightings, and mu'[all arguments] must equal the result.
    Weighting combined = Weighting::zero(d, t);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      std::vector<Operation> block;
      for (int j = 1; j <= terms[i].weighting.arity(); ++j) {
        block.push_back(projection(d, t, tr.offsets[i] + j));
      }
      combined = add_weightings(
          combined,
          scale_weighting(superpose_weighting(terms[i].weighting, block), terms[i].coefficient));
    }
    if (!combined.is_proper() || superpose_weighting(combined, tr.arguments) != out.result) {
      throw VerificationFailure("proper_sum: block weighting does not reproduce the sum");
    }
    tr.combined = std::move(combined);
  }
  return out;
}

}  // namespace wclone
