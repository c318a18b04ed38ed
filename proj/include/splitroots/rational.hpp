#ifndef SPLITROOTS_RATIONAL_HPP
#define SPLITROOTS_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace splitroots {

// Canonical arbitrary-precision rational (gcd 1, positive denominator).
using BigRational = mpq_class;

/// Parse "p/q" or an integer. Decimals are rejected so inputs stay exact.
BigRational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const BigRational& q);

/// Fixed-notation decimal with `significant` significant digits, rounded
/// half-to-even from the exact value (no floating point involved).
std::string to_decimal(const BigRational& q, int significant = 12);

BigRational binomial(int n, int k);
BigRational factorial(int n);

} // namespace splitroots

#endif
