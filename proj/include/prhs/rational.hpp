#pragma once

// Exact rational scalars backed by GMP. Every value is kept in lowest terms
// with a positive denominator, so textual forms are canonical.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace prhs {

using Scalar = mpq_class;

/// Thrown on malformed textual input or shape mismatches at API boundaries.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a documented precondition of an operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Scalar make_scalar(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw InputError("zero denominator");
  Scalar q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

/// Parses "p", "-p" or "p/q". Whitespace is not accepted.
inline Scalar parse_scalar(std::string_view text) {
  if (text.empty()) throw InputError("empty rational literal");
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_int(num) || (slash != std::string_view::npos && (!valid_int(den) || den.front() == '-' || den.front() == '+')))
    throw InputError("malformed rational literal '" + std::string(text) + "'");
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) d = mpz_class(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

/// Canonical text: "p" for integers, "p/q" otherwise.
inline std::string format_scalar(const Scalar& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_integer(const Scalar& q) { return q.get_den() == 1; }

inline Scalar abs_value(const Scalar& q) { return q < 0 ? Scalar(-q) : q; }

}  // namespace prhs
