#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "matopt/error.hpp"

namespace matopt {

/// Exact arbitrary-precision rational. All weights and derived quantities in
/// this library are values of this type; no floating point is used anywhere.
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

/// cpp_int's string constructor takes "-4" but not "+4"; drop the plus.
inline boost::multiprecision::cpp_int integer_from_token(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return boost::multiprecision::cpp_int(std::string(s));
}

}  // namespace detail

/// Parses "p" or "p/q" with optional leading sign on p. Anything else,
/// including decimal notation and a zero denominator, raises ParseError.
inline Rational parse_rational(std::string_view text) {
  const auto fail = [&](const char* why) -> Rational {
    throw ParseError("invalid rational '" + std::string(text) + "': " + why);
  };
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!detail::is_integer_token(text)) return fail("expected 'p' or 'p/q'");
    return Rational(detail::integer_from_token(text));
  }
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = text.substr(slash + 1);
  if (!detail::is_integer_token(num)) return fail("bad numerator");
  // The denominator is unsigned; put any sign on the numerator.
  if (den.empty() || den[0] == '+' || den[0] == '-' || !detail::is_integer_token(den)) {
    return fail("bad denominator");
  }
  const boost::multiprecision::cpp_int d{std::string(den)};
  if (d == 0) return fail("zero denominator");
  return Rational(detail::integer_from_token(num), d);
}

/// Canonical text form: lowest terms, "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& value) {
  return value.str();
}

inline Rational rational_abs(const Rational& value) {
  return value < 0 ? Rational(-value) : value;
}

}  // namespace matopt
