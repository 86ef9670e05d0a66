#include "wclone/cone_lp.hpp"

#include <map>
#include <string>
#include <tuple>
#include <type_traits>
#include <variant>

#include "wclone/errors.hpp"

namespace wclone {

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw InvalidArgument("dot: length mismatch");
  Rational out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) out += a[i] * b[i];
  }
  return out;
}

RatVector primitive_direction(RatVector v) {
  mpz_class den_lcm = 1;
  mpz_class num_gcd = 0;
  for (const Rational& x : v) {
    if (sgn(x) == 0) continue;
    den_lcm = lcm(den_lcm, x.get_den());
    num_gcd = gcd(num_gcd, x.get_num());
  }
  if (num_gcd == 0) return v;
  const Rational factor(den_lcm, num_gcd);
  for (Rational& x : v) {
    x *= factor;
    x.canonicalize();
  }
  return v;
}

namespace lp {

void validate(const Problem& problem) {
  const std::size_t n = problem.variable_count;
  if (problem.free_variables.size() > n) {
    throw InvalidArgument("free-variable mask longer than the variable count");
  }
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    if (problem.constraints[i].coefficients.size() != n) {
      throw InvalidArgument("constraint " + std::to_string(i) + " has " +
                            std::to_string(problem.constraints[i].coefficients.size()) +
                            " coefficients for " + std::to_string(n) + " variables");
    }
  }
  if (problem.maximize && problem.maximize->size() != n) {
    throw InvalidArgument("objective length differs from the variable count");
  }
}

namespace {

bool satisfies(Sense sense, const Rational& lhs, const Rational& rhs) {
  switch (sense) {
    case Sense::LessEq:
      return lhs <= rhs;
    case Sense::GreaterEq:
      return lhs >= rhs;
    case Sense::Equal:
      return lhs == rhs;
  }
  return false;
}

// Dual multipliers in "a.x <= b" orientation, tested for sign and for
// y^T A against a lower bound (per column) that must be met with equality
// on free columns.
bool dual_feasible(const Problem& problem, std::span<const Rational> y,
                   std::span<const Rational> lower) {
  const std::size_t m = problem.constraints.size();
  if (y.size() != m) return false;
  for (std::size_t i = 0; i < m; ++i) {
    const Sense s = problem.constraints[i].sense;
    if (s == Sense::LessEq && sgn(y[i]) < 0) return false;
    if (s == Sense::GreaterEq && sgn(y[i]) > 0) return false;
  }
  for (std::size_t j = 0; j < problem.variable_count; ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Rational& a = problem.constraints[i].coefficients[j];
      if (sgn(a) != 0 && sgn(y[i]) != 0) col += y[i] * a;
    }
    if (problem.is_free(j) ? col != lower[j] : col < lower[j]) return false;
  }
  return true;
}

Rational dual_value(const Problem& problem, std::span<const Rational> y) {
  Rational out = 0;
  for (std::size_t i = 0; i < y.size(); ++i) out += y[i] * problem.constraints[i].rhs;
  return out;
}

// Dense tableau over columns: structural (with a negative twin for each free
// variable), then one slack or surplus per inequality row, then one
// artificial per row that needs it. The last entry of each row is the rhs.
class Tableau {
 public:
  explicit Tableau(const Problem& p) : p_(p), m_(p.constraints.size()) {
    const std::size_t n = p.variable_count;
    for (std::size_t j = 0; j < n; ++j) {
      plus_.push_back(columns_++);
    }
    minus_.assign(n, kNone);
    for (std::size_t j = 0; j < n; ++j) {
      if (p.is_free(j)) minus_[j] = columns_++;
    }
    flip_.assign(m_, 1);
    slack_.assign(m_, kNone);
    artificial_.assign(m_, kNone);
    for (std::size_t i = 0; i < m_; ++i) {
      Sense s = p.constraints[i].sense;
      if (sgn(p.constraints[i].rhs) < 0) {
        flip_[i] = -1;
        if (s == Sense::LessEq) {
          s = Sense::GreaterEq;
        } else if (s == Sense::GreaterEq) {
          s = Sense::LessEq;
        }
      }
      sense_.push_back(s);
      if (s != Sense::Equal) slack_[i] = columns_++;
    }
    first_artificial_ = columns_;
    for (std::size_t i = 0; i < m_; ++i) {
      if (sense_[i] != Sense::LessEq) artificial_[i] = columns_++;
    }

    rows_.assign(m_, RatVector(columns_ + 1));
    basis_.assign(m_, 0);
    initial_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      const Constraint& c = p.constraints[i];
      RatVector& row = rows_[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(c.coefficients[j]) == 0) continue;
        row[plus_[j]] = flip_[i] * c.coefficients[j];
        if (minus_[j] != kNone) row[minus_[j]] = -row[plus_[j]];
      }
      row[columns_] = flip_[i] * c.rhs;
      if (slack_[i] != kNone) row[slack_[i]] = sense_[i] == Sense::LessEq ? 1 : -1;
      if (artificial_[i] != kNone) row[artificial_[i]] = 1;
      basis_[i] = artificial_[i] != kNone ? artificial_[i] : slack_[i];
      initial_[i] = basis_[i];
    }
  }

  Result run() {
    // Phase 1: maximise minus the sum of artificials.
    RatVector cost(columns_);
    for (std::size_t j = first_artificial_; j < columns_; ++j) cost[j] = -1;
    price(cost);
    iterate(columns_);
    if (sgn(objective_[columns_]) != 0) {
      // Optimal phase-1 value is -objective_[rhs] < 0.
      RatVector y(m_);
      for (std::size_t i = 0; i < m_; ++i) {
        y[i] = flip_[i] * (cost[initial_[i]] - objective_[initial_[i]]);
      }
      return Infeasible{std::move(y)};
    }
    drive_out_artificials();

    if (!p_.maximize) return Optimal{solution(), 0};
    RatVector c(columns_);
    for (std::size_t j = 0; j < p_.variable_count; ++j) {
      c[plus_[j]] = (*p_.maximize)[j];
      if (minus_[j] != kNone) c[minus_[j]] = -(*p_.maximize)[j];
    }
    price(c);
    if (!iterate(first_artificial_)) {
      RatVector full(columns_);
      full[entering_] = 1;
      for (std::size_t i = 0; i < m_; ++i) full[basis_[i]] = -rows_[i][entering_];
      return Unbounded{solution(), collapse(full)};
    }
    RatVector x = solution();
    Rational value = dot(*p_.maximize, x);
    RatVector y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      y[i] = flip_[i] * (c[initial_[i]] - objective_[initial_[i]]);
    }
    if (!dual_feasible(p_, y, *p_.maximize) || dual_value(p_, y) != value) {
      throw VerificationFailure("simplex optimum failed its duality check");
    }
    return Optimal{std::move(x), std::move(value)};
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void price(const RatVector& cost) {
    objective_ = cost;
    objective_.push_back(0);
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      const RatVector& row = rows_[i];
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (sgn(row[j]) != 0) objective_[j] -= cb * row[j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    RatVector& prow = rows_[r];
    const Rational inv = 1 / prow[col];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= columns_; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](RatVector& row) {
      if (sgn(row[col]) == 0) return;
      const Rational factor = row[col];
      for (std::size_t j : nz) row[j] -= factor * prow[j];
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(objective_);
    basis_[r] = col;
  }

  // Bland's rule over columns below `limit`. False when unbounded, with the
  // offending column left in entering_.
  bool iterate(std::size_t limit) {
    while (true) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < limit; ++j) {
        if (sgn(objective_[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(rows_[i][enter]) <= 0) continue;
        Rational ratio = rows_[i][columns_] / rows_[i][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == kNone) {
        entering_ = enter;
        return false;
      }
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (sgn(rows_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      }
      // Otherwise the row is redundant and its artificial stays basic at zero.
    }
  }

  RatVector collapse(const RatVector& full) const {
    RatVector x(p_.variable_count);
    for (std::size_t j = 0; j < p_.variable_count; ++j) {
      x[j] = full[plus_[j]];
      if (minus_[j] != kNone) x[j] -= full[minus_[j]];
    }
    return x;
  }

  RatVector solution() const {
    RatVector full(columns_);
    for (std::size_t i = 0; i < m_; ++i) full[basis_[i]] = rows_[i][columns_];
    return collapse(full);
  }

  const Problem& p_;
  std::size_t m_;
  std::size_t columns_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::size_t> plus_, minus_, slack_, artificial_, basis_, initial_;
  std::vector<int> flip_;
  std::vector<Sense> sense_;
  std::vector<RatVector> rows_;
  RatVector objective_;
  std::size_t entering_ = kNone;
};

}  // namespace

Result solve(const Problem& problem) {
  validate(problem);
  Result result = Tableau(problem).run();
  const bool ok = std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Optimal>) {
          return verify_feasible(problem, r.x);
        } else if constexpr (std::is_same_v<T, Infeasible>) {
          return verify_infeasible(problem, r.multipliers);
        } else {
          return verify_unbounded(problem, r);
        }
      },
      result);
  if (!ok) throw VerificationFailure("simplex result failed verification");
  return result;
}

bool verify_feasible(const Problem& problem, std::span<const Rational> x) {
  if (x.size() != problem.variable_count) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!problem.is_free(j) && sgn(x[j]) < 0) return false;
  }
  for (const Constraint& c : problem.constraints) {
    if (!satisfies(c.sense, dot(c.coefficients, x), c.rhs)) return false;
  }
  return true;
}

bool verify_infeasible(const Problem& problem, std::span<const Rational> multipliers) {
  const RatVector zero(problem.variable_count);
  return dual_feasible(problem, multipliers, zero) && sgn(dual_value(problem, multipliers)) < 0;
}

bool verify_unbounded(const Problem& problem, const Unbounded& result) {
  if (!problem.maximize || !verify_feasible(problem, result.x)) return false;
  const RatVector& r = result.ray;
  if (r.size() != problem.variable_count) return false;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (!problem.is_free(j) && sgn(r[j]) < 0) return false;
  }
  for (const Constraint& c : problem.constraints) {
    if (!satisfies(c.sense, dot(c.coefficients, r), 0)) return false;
  }
  return sgn(dot(*problem.maximize, r)) > 0;
}

}  // namespace lp

namespace {

// Rows of sum_i lambda_i g_i - slack = target for the coordinates in `rows`.
// Returns lambda, or a certificate supported on those coordinates.
std::variant<RatVector, RatVector> solve_rows(const ConeProblem& problem, const std::vector<std::size_t>& rows) {
  const std::size_t g = problem.generators.size();
  std::size_t vars = g;
  for (std::size_t j : rows) vars += problem.has_slack(j) ? 1 : 0;
  lp::Problem p;
  p.variable_count = vars;
  p.constraints.reserve(rows.size());
  std::size_t next_slack = g;
  for (std::size_t j : rows) {
    lp::Constraint c{RatVector(vars), lp::Sense::Equal, problem.target[j]};
    for (std::size_t i = 0; i < g; ++i) c.coefficients[i] = problem.generators[i][j];
    if (problem.has_slack(j)) c.coefficients[next_slack++] = -1;
    p.constraints.push_back(std::move(c));
  }
  const lp::Result result = lp::solve(p);
  if (const auto* opt = std::get_if<lp::Optimal>(&result)) {
    return std::variant<RatVector, RatVector>(std::in_place_index<0>,
                                              opt->x.begin(), opt->x.begin() + static_cast<std::ptrdiff_t>(g));
  }
  const auto& inf = std::get<lp::Infeasible>(result);
  RatVector cert(problem.dimension);
  for (std::size_t r = 0; r < rows.size(); ++r) cert[rows[r]] = -inf.multipliers[r];
  return std::variant<RatVector, RatVector>(std::in_place_index<1>, std::move(cert));
}

Rational combination_at(const ConeProblem& problem, const RatVector& lambda, std::size_t j) {
  Rational sum = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (sgn(lambda[i]) != 0) sum += lambda[i] * problem.generators[i][j];
  }
  return sum;
}

// Above this many distinct rows the LP is grown from the equality rows by
// adding violated inequality rows until lambda satisfies them all.
constexpr std::size_t kDirectRows = 256;
constexpr std::size_t kRowsPerRound = 64;

}  // namespace

ConeDecision cone_membership(const ConeProblem& problem) {
  const std::size_t n = problem.dimension;
  if (problem.target.size() != n) throw InvalidArgument("cone target has the wrong dimension");
  if (problem.lower_slack.size() > n) throw InvalidArgument("slack mask longer than dimension");
  for (const RatVector& g : problem.generators) {
    if (g.size() != n) throw InvalidArgument("cone generator has the wrong dimension");
  }
  const std::size_t g = problem.generators.size();
  // Coordinates with identical constraint rows are solved once; the
  // representative is the first occurrence.
  std::map<std::tuple<bool, Rational, RatVector>, std::size_t> row_of;
  std::vector<std::size_t> reps;
  for (std::size_t j = 0; j < n; ++j) {
    RatVector column(g);
    for (std::size_t i = 0; i < g; ++i) column[i] = problem.generators[i][j];
    if (row_of.try_emplace({problem.has_slack(j), problem.target[j], std::move(column)}, reps.size()).second) {
      reps.push_back(j);
    }
  }
  std::vector<std::size_t> active;
  std::vector<bool> in_active(reps.size(), false);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    if (reps.size() <= kDirectRows || !problem.has_slack(reps[r]) || active.size() < g + 1) {
      active.push_back(reps[r]);
      in_active[r] = true;
    }
  }
  ConeDecision decision;
  while (true) {
    auto solved = solve_rows(problem, active);
    if (solved.index() == 1) {
      decision = ConeSeparated{primitive_direction(std::move(std::get<1>(solved)))};
      break;
    }
    RatVector lambda = std::move(std::get<0>(solved));
    std::size_t added = 0;
    for (std::size_t r = 0; r < reps.size() && added < kRowsPerRound; ++r) {
      if (in_active[r] || combination_at(problem, lambda, reps[r]) >= problem.target[reps[r]]) continue;
      active.push_back(reps[r]);
      in_active[r] = true;
      ++added;
    }
    if (added > 0) continue;
    ConeMember member{std::move(lambda), RatVector(n)};
    for (std::size_t j = 0; j < n; ++j) {
      if (problem.has_slack(j)) member.slack[j] = combination_at(problem, member.lambda, j) - problem.target[j];
    }
    decision = std::move(member);
    break;
  }
  if (!verify_cone_decision(problem, decision)) {
    throw VerificationFailure("cone decision failed verification");
  }
  return decision;
}

bool verify_cone_decision(const ConeProblem& problem, const ConeDecision& decision) {
  const std::size_t n = problem.dimension;
  if (problem.target.size() != n) return false;
  if (const auto* member = std::get_if<ConeMember>(&decision)) {
    if (member->lambda.size() != problem.generators.size() || member->slack.size() != n) {
      return false;
    }
    RatVector sum(n);
    for (std::size_t i = 0; i < member->lambda.size(); ++i) {
      const Rational& l = member->lambda[i];
      if (sgn(l) < 0) return false;
      if (sgn(l) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) sum[j] += l * problem.generators[i][j];
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& s = member->slack[j];
      if (sgn(s) < 0 || (sgn(s) > 0 && !problem.has_slack(j))) return false;
      if (sum[j] - s != problem.target[j]) return false;
    }
    return true;
  }
  const RatVector& c = std::get<ConeSeparated>(decision).certificate;
  if (c.size() != n) return false;
  for (std::size_t j = 0; j < n; ++j) {
    if (problem.has_slack(j) && sgn(c[j]) < 0) return false;
  }
  for (const RatVector& g : problem.generators) {
    if (sgn(dot(c, g)) > 0) return false;
  }
  return sgn(dot(c, problem.target)) > 0;
}

}  // namespace wclone
