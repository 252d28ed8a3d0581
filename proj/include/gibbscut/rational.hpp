#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gibbscut {

/// Exact rational number; every coefficient in the solver path uses it.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", "p" or a decimal literal such as "2.5" exactly.
Rational parse_rational(std::string_view text);

/// Canonical fraction text: "p/q" with q > 1, or "p" for integers.
std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace gibbscut
