#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wclone/algebra.hpp"
#include "wclone/errors.hpp"
#include "wclone/rational.hpp"

namespace wclone {

using TermMap = std::map<Operation, Rational>;

struct WeightingReport {
  bool shapes_ok = true;
  bool zero_sum = true;
  Rational weight_sum;
  /// Non-projections carrying negative weight.
  std::vector<Operation> negative_non_projections;
  std::vector<std::string> problems;

  bool valid() const { return shapes_ok && zero_sum; }
  bool proper() const { return valid() && negative_non_projections.empty(); }
};

WeightingReport check_weighting(int d, int k, const TermMap& terms);

/// A zero-sum rational weighting of k-ary operations, stored sparsely.
/// Improper weightings (negative weight off the projections) are valid values.
class Weighting {
 public:
  /// Drops zero terms. Throws InvalidArgument unless the terms share the
  /// domain and arity and sum to zero.
  Weighting(int d, int arity, TermMap terms);
  static Weighting zero(int d, int arity);

  int domain() const { return d_; }
  int arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  Rational weight(const Operation& f) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_proper() const;

  friend bool operator==(const Weighting&, const Weighting&) = default;

 private:
  int d_;
  int arity_;
  TermMap terms_;
};

/// Raised when a result that must be proper is not.
class ImproperWeighting : public Error {
 public:
  ImproperWeighting(const std::string& message, std::vector<Operation> offending)
      : Error(message), offending_(std::move(offending)) {}
  const std::vector<Operation>& offending() const { return offending_; }

 private:
  std::vector<Operation> offending_;
};

bool is_proper(const Weighting& w);

/// Projections plus positively weighted operations. Throws ImproperWeighting.
OperationSet supp(const Weighting& w);

/// Union of supports together with projections of every member arity.
OperationSet supp(std::span<const Weighting> ws, int d);

/// w[g_1..g_k]; the result may be improper.
Weighting superpose_weighting(const Weighting& w, std::span<const Operation> gs);

Weighting add_weightings(const Weighting& a, const Weighting& b);
Weighting scale_weighting(const Weighting& w, const Rational& c);

struct ProperSumTerm {
  Rational coefficient;
  Weighting weighting;
  std::vector<Operation> arguments;
};

/// The witness of building a sum of improper superpositions from proper
/// superpositions only: a t-ary weighting mu' that places each term on its own
/// block of projections, followed by one superposition with all arguments.
struct ProperSumTranscript {
  int combined_arity = 0;
  /// First projection position (0-based) of each term's block.
  std::vector<int> offsets;
  /// All arguments concatenated in term order.
  std::vector<Operation> arguments;
  /// mu' itself, materialised when d^t stays below the operation cap.
  std::optional<Weighting> combined;
};

struct ProperSum {
  Weighting result;
  ProperSumTranscript transcript;
};

/// sum_i c_i * w_i[g_i]; throws ImproperWeighting when the sum is improper.
ProperSum proper_sum(int d, int k, std::span<const ProperSumTerm> terms,
                     const Limits& limits = {});

}  // namespace wclone
