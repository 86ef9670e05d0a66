#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace wclone {

using Rational = mpq_class;

/// Canonical num/den. Throws InvalidArgument on a zero denominator.
Rational make_rational(long num, long den = 1);

/// Accepts "p", "-p" and "p/q" with decimal integers. No decimals, no exponents.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Rationals extended with positive infinity.
///
/// Addition absorbs into infinity and multiplication by a non-negative
/// rational keeps infinity infinite, including 0 * inf = inf.
class ExtRat {
 public:
  ExtRat() = default;
  ExtRat(const Rational& q) : value_(q) {}  // NOLINT: implicit by design of the value domain
  ExtRat(long v) : value_(v) {}             // NOLINT

  static ExtRat infinity() {
    ExtRat out;
    out.infinite_ = true;
    return out;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Throws InvalidArgument when infinite.
  const Rational& value() const;

  ExtRat& operator+=(const ExtRat& other);
  friend ExtRat operator+(ExtRat lhs, const ExtRat& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

 private:
  bool infinite_ = false;
  Rational value_;
};

/// c * x for c >= 0 with 0 * inf = inf. Throws InvalidArgument for c < 0.
ExtRat scale(const Rational& c, const ExtRat& x);

std::string to_string(const ExtRat& x);

/// Accepts "inf" in addition to the rational syntax.
ExtRat parse_ext_rat(std::string_view text);

}  // namespace wclone
