#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wclone {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on shapes, indices or parameters was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input. `where` names the offending location.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& message)
      : Error(where.empty() ? message : where + ": " + message), where_(where) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// An enumeration would exceed its configured resource cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string what, int domain, int arity, std::uint64_t required,
              std::uint64_t cap, bool overflow = false)
      : Error(describe(what, domain, arity, required, cap, overflow)),
        what_(std::move(what)),
        domain_(domain),
        arity_(arity),
        required_(required),
        cap_(cap),
        overflow_(overflow) {}

  const std::string& quantity() const { return what_; }
  int domain() const { return domain_; }
  int arity() const { return arity_; }
  /// Meaningless when overflowed() is true.
  std::uint64_t required() const { return required_; }
  std::uint64_t cap() const { return cap_; }
  bool overflowed() const { return overflow_; }

 private:
  static std::string describe(const std::string& what, int d, int k, std::uint64_t required,
                              std::uint64_t cap, bool overflow) {
    std::string out = what + " exceeds cap (d=" + std::to_string(d) + ", k=" + std::to_string(k) +
                      ", required=";
    out += overflow ? std::string("> 2^64") : std::to_string(required);
    out += ", cap=" + std::to_string(cap) + ")";
    return out;
  }

  std::string what_;
  int domain_;
  int arity_;
  std::uint64_t required_;
  std::uint64_t cap_;
  bool overflow_;
};

/// A certificate produced internally failed its independent re-check.
/// Indicates a solver bug; never expected in normal operation.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace wclone
