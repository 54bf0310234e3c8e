"""Exact real-root counting for Laurent polynomials on open intervals."""
import logging
from fractions import Fraction

import sympy as sp

from exactnum.numbers import QuadraticNumber

from .exceptions import IntervalContainsZero, ZeroPolynomial

logger = logging.getLogger(__name__)


def _fraction(coefficient):
    coefficient = sp.Rational(coefficient)
    return Fraction(int(coefficient.p), int(coefficient.q))


def _sign_at(poly, point):
    """Sign of a sympy Poly at a QuadraticNumber (Horner in Q(sqrt c)) or at -inf/+inf."""
    coeffs = [_fraction(c) for c in poly.all_coeffs()]
    if point in ('-inf', '+inf'):
        lead = coeffs[0]
        sign = (lead > 0) - (lead < 0)
        if point == '-inf' and poly.degree() % 2:
            sign = -sign
        return sign
    value = QuadraticNumber(0)
    for c in coeffs:
        value = value * point + c
    return value.sign()


def _variations(sequence, point):
    signs = [s for s in (_sign_at(poly, point) for poly in sequence) if s != 0]
    return sum(1 for left, right in zip(signs, signs[1:]) if left != right)


def count_roots(poly, interval):
    """
    Number of distinct real roots of a Laurent polynomial inside an open interval.

    The polynomial ``u**N * F`` is reduced to its square-free part and a Sturm
    sequence is evaluated exactly at the endpoints. With V the number of sign
    variations, ``V(lo) - V(hi)`` counts the roots in ``]lo, hi]``; a root at
    ``hi`` is subtracted.

    Args:
        poly (LaurentPoly): F.
        interval (OpenInterval): I, possibly unbounded.

    Raises:
        IntervalContainsZero: If F has negative exponents and 0 is in I.
        ZeroPolynomial: If F is identically zero.

    Returns:
        int: The root count.
    """
    if poly.is_zero:
        raise ZeroPolynomial('the zero polynomial vanishes everywhere')
    if poly.has_negative_exponents and interval.contains_zero():
        raise IntervalContainsZero(f'{interval} contains 0 but {poly} has negative exponents')
    _, cleared = poly.cleared()
    square_free = cleared.sqf_part()
    if square_free.degree() <= 0:
        return 0
    sequence = square_free.sturm()
    lo = '-inf' if interval.lo is None else interval.lo
    hi = '+inf' if interval.hi is None else interval.hi
    count = _variations(sequence, lo) - _variations(sequence, hi)
    if interval.hi is not None and _sign_at(square_free, hi) == 0:
        count -= 1
    logger.debug('%s has %d root(s) in %s', poly, count, interval)
    return count


def nonvanishing_on(poly, interval):
    """
    Whether F has no real root in I.

    Raises:
        IntervalContainsZero: If F has negative exponents and 0 is in I.
    """
    if poly.is_zero:
        if poly.has_negative_exponents and interval.contains_zero():
            raise IntervalContainsZero(f'{interval} contains 0')
        return False
    return count_roots(poly, interval) == 0
