#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace mlext {

/// Arbitrary-precision rational, always kept in canonical (reduced, positive
/// denominator) form by the helpers in this library.
using Rational = mpq_class;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Parses "p", "-p" or "p/q" (no whitespace, q != 0). Non-reduced input is
/// accepted and canonicalized. Throws ParseError with the offending offset.
Rational parse_rational(std::string_view text);

/// Parses a comma separated list of rationals. ParseError offsets refer to
/// the whole string.
std::vector<Rational> parse_rational_list(std::string_view text);

/// |value| as a new rational.
inline Rational abs(const Rational& value) {
  Rational out(value);
  if (sgn(out) < 0) out = -out;
  return out;
}

}  // namespace mlext
