#include "wclone/rational.hpp"

#include <cctype>

#include "wclone/errors.hpp"

namespace wclone {

namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-') {
    throw ParseError("", "malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("", "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

const Rational& ExtRat::value() const {
  if (infinite_) throw InvalidArgument("value() of infinite ExtRat");
  return value_;
}

ExtRat& ExtRat::operator+=(const ExtRat& other) {
  if (infinite_) return *this;
  if (other.infinite_) {
    infinite_ = true;
    value_ = 0;
    return *this;
  }
  value_ += other.value_;
  return *this;
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  const int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtRat scale(const Rational& c, const ExtRat& x) {
  if (sgn(c) < 0) throw InvalidArgument("negative scale factor " + to_string(c));
  if (x.is_infinite()) return x;
  return ExtRat(Rational(c * x.value()));
}

std::string to_string(const ExtRat& x) { return x.is_infinite() ? "inf" : to_string(x.value()); }

ExtRat parse_ext_rat(std::string_view text) {
  if (text == "inf") return ExtRat::infinity();
  return ExtRat(parse_rational(text));
}

}  // namespace wclone
