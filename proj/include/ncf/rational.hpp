#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncf {

using Rational = mpq_class;

/// Canonical text form: "p" or "p/q" with q > 0 and gcd(p, q) = 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p", "-p" or "p/q". Throws InvalidArgument on anything else.
Rational parse_rational(std::string_view text);

/// Binomial coefficient C(n, k) for integers n >= 0 (0 if k out of range).
Rational binomial(long n, long k);

}  // namespace ncf
