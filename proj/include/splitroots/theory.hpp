#ifndef SPLITROOTS_THEORY_HPP
#define SPLITROOTS_THEORY_HPP

// Exact conjectural densities for the sorted normalized roots
// (r_1/p, ..., r_n/p) of fully split primes. Every value is a BigRational.

#include <splitroots/rational.hpp>

#include <span>
#include <vector>

namespace splitroots::theory {

/// Irwin-Hall CDF: volume of {x_1 + ... + x_n <= x} in [0,1)^n.
BigRational irwin_hall_cdf(int n, const BigRational& x);

/// Density of primes whose smallest normalized root is >= a.
/// Requires n >= 2 and 0 <= a < 1.
BigRational v_upper(int n, const BigRational& a);

/// Density of primes whose smallest normalized root is <= a; 1 - v_upper.
BigRational v_lower(int n, const BigRational& a);

/// Density of primes whose largest normalized root is <= a, by its own
/// alternating sum (not by mirroring v_upper).
BigRational e_density(int n, const BigRational& a);

/// Checks sum_{i=0}^{n} (-1)^i C(n,i) P(i) == c_n (-1)^n n! for P given by
/// ascending coefficients. Throws InputError when deg P > n.
bool alternating_identity_check(std::span<const BigRational> coeffs, int n);

/// Evaluate an ascending-coefficient polynomial.
BigRational eval_poly(std::span<const BigRational> coeffs, const BigRational& x);

struct PolyPiece {
    BigRational left;
    BigRational right;
    std::vector<BigRational> coeffs;  // ascending degree, no trailing zeros

    BigRational operator()(const BigRational& x) const { return eval_poly(coeffs, x); }
};

/// Pieces tile [0, 1), adjacent pieces share their breakpoint.
struct PiecewisePolynomial {
    std::vector<PolyPiece> pieces;

    const PolyPiece& piece_at(const BigRational& x) const;
    BigRational operator()(const BigRational& x) const { return piece_at(x)(x); }
};

/// Sorted distinct k/i for 2 <= i <= n, 1 <= k < i, with 0 and 1 added.
std::vector<BigRational> breakpoints(int n);

/// Exact piecewise form of a -> v_lower(n, a), 2 <= n <= 12, recovered by
/// interpolation on each breakpoint interval and then checked at extra
/// points. Adjacent pieces with equal coefficients are merged.
PiecewisePolynomial piecewise_v_lower(int n);

/// Slope of v_upper(n, .) at a = 0 from its first piece.
BigRational derivative_at_zero(int n);

} // namespace splitroots::theory

#endif
