"""Sorted roots of integer polynomials modulo fully split primes.

Thin wrapper over the compiled ``_core`` module: exact densities come back
as :class:`fractions.Fraction`, and rational arguments may be given as
Fractions, ints or ``"p/q"`` strings.
"""

from fractions import Fraction

from . import _core
from ._core import (
    CorruptCache,
    EmptySample,
    MonicIntPolynomial,
    NotFound,
    NotFullySplit,
    ScanCursor,
    cache_read,
    cache_write,
    cycle_type,
    deviation_row,
    empirical_pr,
    least_split_prime_above,
    mc_volume_ratio,
    parse_poly,
    roots_mod_p,
    scan,
    sn_evidence,
    splits_completely,
)

__all__ = [
    "CorruptCache",
    "EmptySample",
    "MonicIntPolynomial",
    "NotFound",
    "NotFullySplit",
    "ScanCursor",
    "cache_read",
    "cache_write",
    "cycle_type",
    "derivative_at_zero",
    "deviation_row",
    "e_density",
    "empirical_pr",
    "irwin_hall_cdf",
    "least_split_prime_above",
    "mc_volume_ratio",
    "parse_poly",
    "piecewise_v_lower",
    "roots_mod_p",
    "scan",
    "sn_evidence",
    "splits_completely",
    "v_lower",
    "v_upper",
]


def _rational_arg(value):
    if isinstance(value, float):
        raise TypeError("pass an exact rational (Fraction, int or 'p/q'), not a float")
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def irwin_hall_cdf(n, x):
    return Fraction(_core.irwin_hall_cdf(n, _rational_arg(x)))


def v_upper(n, a):
    return Fraction(_core.v_upper(n, _rational_arg(a)))


def v_lower(n, a):
    return Fraction(_core.v_lower(n, _rational_arg(a)))


def e_density(n, a):
    return Fraction(_core.e_density(n, _rational_arg(a)))


def derivative_at_zero(n):
    return Fraction(_core.derivative_at_zero(n))


def piecewise_v_lower(n):
    """List of (left, right, coeffs) with ascending Fraction coefficients."""
    return [
        (Fraction(left), Fraction(right), [Fraction(c) for c in coeffs])
        for left, right, coeffs in _core.piecewise_v_lower(n)
    ]
