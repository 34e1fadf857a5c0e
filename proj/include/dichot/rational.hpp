#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dichot {

/// Arbitrary-precision rational in canonical form (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// 2^e for any integer e.
Rational pow2(int e);

/// Least p >= 0 with 2^-p <= tol. Requires tol > 0.
int precision_for(const Rational& tol);

/// Parses `int` or `int/posint`; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Number of bits in the denominator.
std::size_t denominator_bits(const Rational& q);

Rational floor_dyadic(const Rational& q, int bits);
Rational ceil_dyadic(const Rational& q, int bits);
/// floor(q); throws std::overflow_error outside the range of long.
long floor_long(const Rational& q);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace dichot
