#pragma once

// Membership in weighted relational clones and weighted clones.
//
// imp_membership decides whether rho lies in the weighted relational clone
// generated by a finite language and returns either an expression recipe that
// rebuilds rho from the language or a weighted polymorphism of the language
// that fails to improve rho. wclone_membership is the dual check for
// weightings. Both run over a single arity-k slice and are exact.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wclone/algebra.hpp"
#include "wclone/cone_lp.hpp"
#include "wclone/improve.hpp"
#include "wclone/wops.hpp"
#include "wclone/wrel.hpp"

namespace wclone {

/// The arity-k machinery shared by the constructions: the basis Pol^(k),
/// the sequence Z of all k-tuples in tuple-index order, the image set
/// F = {f(Z)} of m-tuples (m = d^k) and, for a target rho, the matrix R of
/// Feas(rho) and the operations Q that send R outside Feas(rho).
class GaloisWorkspace {
 public:
  GaloisWorkspace(Language language, int k, const Limits& limits = {});

  /// k = |Feas(rho)|; rho must have at least one feasible tuple.
  static GaloisWorkspace for_target(Language language, const WeightedRelation& rho,
                                    const Limits& limits = {});

  const Language& language() const { return language_; }
  int domain() const { return language_.domain(); }
  int arity() const { return k_; }
  std::size_t image_arity() const { return m_; }

  const std::vector<Operation>& basis() const { return basis_; }
  std::optional<std::size_t> basis_position(const Operation& f) const;
  const TupleMatrix& z() const { return z_; }
  /// Whether the m-tuple with this index lies in F.
  bool in_image(std::size_t index) const { return in_image_[index]; }
  std::vector<Tuple> image() const;

  const std::vector<ImprovementRow>& rows() const { return rows_; }

  bool has_target() const { return target_.has_value(); }
  const WeightedRelation& target() const { return *target_; }
  const TupleMatrix& r() const { return r_; }
  /// Basis positions of Q, ascending.
  const std::vector<std::size_t>& q() const { return q_; }
  bool in_q(std::size_t basis_position) const { return in_q_[basis_position]; }

 private:
  Language language_;
  int k_;
  std::size_t m_;
  std::vector<Operation> basis_;
  std::vector<bool> in_image_;
  TupleMatrix z_;
  std::vector<ImprovementRow> rows_;
  std::optional<WeightedRelation> target_;
  TupleMatrix r_;
  std::vector<std::size_t> q_;
  std::vector<bool> in_q_;
};

/// m-ary relation with Feas = F and mu(f(Z)) = gamma(f(X)) on Pol^(k).
WeightedRelation construct_mu(const WeightedRelation& gamma, const TupleMatrix& x,
                              const GaloisWorkspace& workspace);

/// (mu_iota, mu_-iota): constant +1 / -1 on F, inf elsewhere.
std::pair<WeightedRelation, WeightedRelation> construct_iota(const GaloisWorkspace& workspace);

struct MuTerm {
  std::string relation;
  TupleMatrix x;
  Rational coefficient;

  friend bool operator==(const MuTerm&, const MuTerm&) = default;
};

/// psi = sum coefficient * mu_{gamma,X} + iota * mu_iota, where a negative
/// iota means |iota| * mu_-iota. Always includes 0 * mu_iota so Feas(psi) = F.
struct ExpressionRecipe {
  std::vector<MuTerm> terms;
  Rational iota;

  friend bool operator==(const ExpressionRecipe&, const ExpressionRecipe&) = default;
};

WeightedRelation materialize(const ExpressionRecipe& recipe, const GaloisWorkspace& workspace);

/// rho = pi_L(psi) + Opt(pi_L(psi0)) with L = scope over the m variables
/// y_z. When `empty` is set rho is all-inf and is rebuilt from phi_empty.
struct MemberCertificate {
  int relation_arity = 1;
  int k = 0;
  bool empty = false;
  ExpressionRecipe psi;
  ExpressionRecipe psi0;
  std::vector<std::size_t> scope;

  friend bool operator==(const MemberCertificate&, const MemberCertificate&) = default;
};

struct SeparatedCertificate {
  enum class Stage {
    /// omega puts positive weight on an operation that is not a polymorphism of rho.
    Support,
    /// omega violates the improvement inequality of rho at X = R.
    Improvement,
  };
  Stage stage = Stage::Improvement;
  Weighting omega;
};

using MembershipVerdict = std::variant<MemberCertificate, SeparatedCertificate>;

/// Exact membership of rho in the weighted relational clone of `language`.
/// Every verdict is re-verified before it is returned.
MembershipVerdict imp_membership(const Language& language, const WeightedRelation& rho,
                                 const Limits& limits = {});

WeightedRelation express_from_certificate(const MemberCertificate& certificate,
                                          const GaloisWorkspace& workspace,
                                          const Limits& limits = {});
WeightedRelation express_from_certificate(const MemberCertificate& certificate,
                                          const Language& language, const Limits& limits = {});

/// True iff omega improves every relation of the language and fails to improve rho.
bool verify_separation(const SeparatedCertificate& certificate, const Language& language,
                       const WeightedRelation& rho);

struct WcloneMember {
  std::vector<ProperSumTerm> recipe;
  /// Index into the weighting set for each recipe term.
  std::vector<std::size_t> sources;
  Weighting reconstructed;
  std::size_t generator_count = 0;
};

struct WcloneSeparated {
  enum class Reason {
    /// supp(mu) has an operation outside the k-ary part of the clone.
    SupportEscapesClone,
    /// mu lies outside the cone of superposed weightings.
    ConeSeparated,
  };
  Reason reason = Reason::ConeSeparated;
  /// Improved by every member of the set, not improved by mu.
  WeightedRelation gamma;
  std::size_t generator_count = 0;
};

using WcloneVerdict = std::variant<WcloneMember, WcloneSeparated>;

/// Membership of the proper weighting mu in the weighted clone generated by
/// `weightings`. The support clone is generated up to
/// max(arity(mu), member arities, clone_arity_cap).
WcloneVerdict wclone_membership(std::span<const Weighting> weightings, const Weighting& mu,
                                int clone_arity_cap = 0, const Limits& limits = {});

}  // namespace wclone
