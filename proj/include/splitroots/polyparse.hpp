#ifndef SPLITROOTS_POLYPARSE_HPP
#define SPLITROOTS_POLYPARSE_HPP

#include <splitroots/modpoly.hpp>

#include <string_view>

namespace splitroots {

/// Parse an integer polynomial in x such as "x^4+3x+1" or "x^2 - 2*x + 1".
///
/// Terms are c, x, c*x, x^k and c*x^k joined by + and -; the '*' is
/// optional and whitespace is ignored. Like terms are combined. Throws
/// SyntaxError (with byte offset), CoefficientOverflow, NotMonic or
/// DegreeTooSmall; a zero discriminant surfaces as InputError.
MonicIntPolynomial parse_poly(std::string_view src);

} // namespace splitroots

#endif
