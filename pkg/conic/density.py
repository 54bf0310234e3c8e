"""
Density certificates for the three sets of rational points on unit conics.

    U = {x : x and sqrt(1 + x^2) rational}
    V = {x : |x| > 1, x and sqrt(x^2 - 1) rational}
    W = {x : |x| < 1, x and sqrt(1 - x^2) rational}

Each set is the image of the rationals under a rational parametrization.
Given a target x and a tolerance eps, ``witness_interval`` returns the exact
preimage of ]x - eps, x + eps[ (endpoints are quadratic surds) and
``dense_point`` picks its simplest rational r and certifies the point.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from exactnum.numbers import (
    OpenInterval, QuadraticNumber, format_rational, is_rational_square,
    smallest_denominator_rational,
)

from .exceptions import DegenerateParameter, PreconditionViolated

logger = logging.getLogger(__name__)


class ConicSet(str, Enum):
    U = 'U'
    V = 'V'
    W = 'W'

    def __str__(self):
        return self.value


# The printed density argument labels the (1-r^2)/(1+r^2) block as U and the
# 2r/(1-r^2) block as W; the algebra certifies the opposite sets.
CITATIONS = {
    ConicSet.U: 'ratio lemma, density block printed for W: s = 2r/(1-r^2), sqrt(1+s^2) = (n^2+m^2)/|n^2-m^2|',
    ConicSet.V: 'ratio lemma, density block for V: s = (1+r^2)/(1-r^2), sqrt(s^2-1) = 2nm/|n^2-m^2|',
    ConicSet.W: 'ratio lemma, density block printed for U: s = (1-r^2)/(1+r^2), sqrt(1-s^2) = 2nm/(n^2+m^2)',
}


@dataclass(frozen=True)
class DensePointCert:
    """
    A certified rational point of a conic set near a target.

    Attributes:
        conic_set (ConicSet): U, V or W.
        x (Fraction): The target.
        eps (Fraction): The tolerance actually used (after clamping).
        r (Fraction): The rational parameter.
        s (Fraction): The point, ``|s - x| < eps``.
        companion (Fraction): The rational square root certifying membership.
        witness_interval (OpenInterval): Every rational in it maps within eps of x.
    """

    conic_set: ConicSet
    x: Fraction
    eps: Fraction
    r: Fraction
    s: Fraction
    companion: Fraction
    witness_interval: OpenInterval

    @property
    def citation(self):
        return CITATIONS[self.conic_set]


def radicand(conic_set, s):
    """The quantity whose square root must be rational for s to belong to the set."""
    s = Fraction(s)
    if conic_set is ConicSet.U:
        return 1 + s * s
    if conic_set is ConicSet.V:
        return s * s - 1
    return 1 - s * s


def parametrize(conic_set, r):
    """
    Image of a rational parameter.

    Raises:
        DegenerateParameter: If r is 1 or -1 for U or V.
    """
    r = Fraction(r)
    if conic_set is ConicSet.W:
        return (1 - r * r) / (1 + r * r)
    if r * r == 1:
        raise DegenerateParameter(f'r = {format_rational(r)} has no image in {conic_set}')
    if conic_set is ConicSet.V:
        return (1 + r * r) / (1 - r * r)
    return 2 * r / (1 - r * r)


def companion_closed_form(conic_set, r):
    """The square root of the radicand written in the lowest-terms parts of r = m/n."""
    r = Fraction(r)
    m, n = r.numerator, r.denominator
    if conic_set is ConicSet.W:
        return Fraction(abs(2 * n * m), n * n + m * m)
    if n * n == m * m:
        raise DegenerateParameter(f'r = {format_rational(r)} makes n^2 - m^2 vanish')
    if conic_set is ConicSet.V:
        return Fraction(abs(2 * n * m), abs(n * n - m * m))
    return Fraction(n * n + m * m, abs(n * n - m * m))


def _ambient_failure(conic_set, x):
    if conic_set is ConicSet.W and not -1 < x < 1:
        return '-1<x<1'
    if conic_set is ConicSet.V and not abs(x) > 1:
        return '|x|>1'
    return None


def admissible_bound(conic_set, x):
    """
    Supremum of the tolerances the interval construction accepts at x.

    Returns:
        Fraction: min(1+x, 1-x) for W, |x|-1 for V, |x| for U.
    """
    if conic_set is ConicSet.W:
        return min(1 + x, 1 - x)
    if conic_set is ConicSet.V:
        return abs(x) - 1
    return abs(x)


def _w_root(t):
    """r >= 0 with (1-r^2)/(1+r^2) = t, for -1 < t <= 1."""
    return QuadraticNumber.sqrt((1 - t) / (1 + t))


def _v_root(t):
    """r >= 0 with (1+r^2)/(1-r^2) = t, for |t| > 1."""
    return QuadraticNumber.sqrt((t - 1) / (t + 1))


def _u_root(t):
    """The r in ]-1, 1[ with 2r/(1-r^2) = t, that is (sqrt(1+t^2) - 1)/t."""
    if t == 0:
        return QuadraticNumber(0)
    return QuadraticNumber(-1 / t, 1 / t, 1 + t * t)


def witness_interval(conic_set, x, eps):
    """
    Parameters whose image lies within eps of x.

    Args:
        conic_set (ConicSet): U, V or W.
        x (Fraction): The target.
        eps (Fraction): The tolerance.

    Raises:
        PreconditionViolated: If x is outside the ambient domain of the set,
            eps <= 0, eps is not below ``admissible_bound`` or, for U, x = 0.

    Returns:
        OpenInterval: Exact preimage of ]x - eps, x + eps[ on the chosen branch.
    """
    conic_set, x, eps = ConicSet(conic_set), Fraction(x), Fraction(eps)
    failed = _ambient_failure(conic_set, x)
    if failed is None and eps <= 0:
        failed = '0<eps'
    if failed is None and conic_set is ConicSet.U and x == 0:
        failed = 'x!=0'
    if failed is None and not eps < admissible_bound(conic_set, x):
        failed = {
            ConicSet.W: 'eps<min(1+x,1-x)',
            ConicSet.V: 'eps<|x|-1',
            ConicSet.U: 'eps<|x|',
        }[conic_set]
    if failed is not None:
        raise PreconditionViolated(conic_set.value, x, eps, failed)

    lo, hi = x - eps, x + eps
    if conic_set is ConicSet.W:
        # r -> s decreases on r > 0
        return OpenInterval(_w_root(hi), _w_root(lo))
    if conic_set is ConicSet.V:
        # r -> s increases on both branches, r < 1 (x > 1) and r > 1 (x < -1)
        return OpenInterval(_v_root(lo), _v_root(hi))
    return OpenInterval(_u_root(lo), _u_root(hi))


def _certify(conic_set, x, eps, r, interval):
    s = parametrize(conic_set, r)
    companion = companion_closed_form(conic_set, r)
    if not abs(s - x) < eps:
        raise AssertionError(f'{format_rational(s)} is not within {format_rational(eps)} of {format_rational(x)}')
    if companion * companion != radicand(conic_set, s) or companion <= 0:
        raise AssertionError(f'companion {format_rational(companion)} does not certify {format_rational(s)}')
    if not interval.contains(r):
        raise AssertionError(f'r = {format_rational(r)} is outside {interval}')
    return DensePointCert(conic_set, x, eps, r, s, companion, interval)


def dense_point(conic_set, x, eps):
    """
    A point of the set strictly within eps of x, with its certificate.

    Tolerances at or beyond the admissible bound are clamped to half of it.
    For U the target 0 is answered directly by r = 0.

    Raises:
        PreconditionViolated: If x is outside the ambient domain or eps <= 0.
        DegenerateParameter: If the chosen r is 1 or -1 where excluded.

    Returns:
        DensePointCert: The certificate, every invariant checked exactly.
    """
    conic_set, x, eps = ConicSet(conic_set), Fraction(x), Fraction(eps)
    failed = _ambient_failure(conic_set, x) or ('0<eps' if eps <= 0 else None)
    if failed is not None:
        raise PreconditionViolated(conic_set.value, x, eps, failed)

    if conic_set is ConicSet.U and x == 0:
        return _certify(conic_set, x, eps, Fraction(0), OpenInterval(-1, 1))

    bound = admissible_bound(conic_set, x)
    if eps >= bound:
        logger.debug('eps %s clamped to %s for %s at %s', eps, bound / 2, conic_set, x)
        eps = bound / 2
    interval = witness_interval(conic_set, x, eps)
    r = smallest_denominator_rational(interval)
    cert = _certify(conic_set, x, eps, r, interval)
    logger.debug('dense point of %s near %s: r=%s s=%s', conic_set, x, r, cert.s)
    return cert


def membership(conic_set, s):
    """Whether s lies in the set: ambient domain plus a rational square radicand."""
    conic_set, s = ConicSet(conic_set), Fraction(s)
    if _ambient_failure(conic_set, s) is not None:
        return False
    return is_rational_square(radicand(conic_set, s)) is not None


def _rational_inside(lo, hi):
    return smallest_denominator_rational(OpenInterval(lo, hi))


def _ambient_pieces(conic_set):
    if conic_set is ConicSet.U:
        return [(None, None)]
    if conic_set is ConicSet.W:
        return [(QuadraticNumber(-1), QuadraticNumber(1))]
    return [(QuadraticNumber(1), None), (None, QuadraticNumber(-1))]


def _clip(interval, piece):
    lo, hi = interval.lo, interval.hi
    if piece[0] is not None and (lo is None or lo < piece[0]):
        lo = piece[0]
    if piece[1] is not None and (hi is None or hi > piece[1]):
        hi = piece[1]
    if lo is not None and hi is not None and not lo < hi:
        return None
    return OpenInterval(lo, hi)


def dense_rational_point(conic_set, lo, hi):
    """
    A certified point of the set strictly inside ]lo, hi[.

    Args:
        conic_set (ConicSet): U, V or W.
        lo (QuadraticNumber | Fraction | None): Lower endpoint, None for -inf.
        hi (QuadraticNumber | Fraction | None): Upper endpoint, None for +inf.

    Raises:
        PreconditionViolated: If ]lo, hi[ misses the ambient domain of the set.

    Returns:
        DensePointCert: A certificate whose point s satisfies lo < s < hi.
    """
    conic_set = ConicSet(conic_set)
    requested = OpenInterval(lo, hi)
    for piece in _ambient_pieces(conic_set):
        window = _clip(requested, piece)
        if window is None:
            continue
        x = smallest_denominator_rational(window)
        inner_lo = x - 1 if window.lo is None else _rational_inside(window.lo, x)
        inner_hi = x + 1 if window.hi is None else _rational_inside(x, window.hi)
        eps = min(x - inner_lo, inner_hi - x)
        if conic_set is ConicSet.U and x == 0:
            return _certify(conic_set, x, eps, Fraction(0), OpenInterval(-1, 1))
        return dense_point(conic_set, x, eps)
    raise PreconditionViolated(conic_set.value, str(requested), '-', f'{requested} meets the domain of {conic_set}')
