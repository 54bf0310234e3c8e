"""
Exact scalars: rationals, single-radicand quadratic surds and open intervals.

Rationals are plain ``fractions.Fraction`` values. ``QuadraticNumber`` holds
``a + b*sqrt(c)`` and is compared exactly by sign analysis and squaring, so no
floating point ever decides an order.
"""
import logging
import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction

from .exceptions import BadRational, EmptyInterval, IncompatibleRadicands, NegativeRadicand

logger = logging.getLogger(__name__)

BigRational = Fraction


class Order(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _sign(q):
    return (q > 0) - (q < 0)


def parse_rational(value):
    """
    Parse an exact rational from its textual or integer form.

    Args:
        value (str | int | Fraction): "num/den", "-3", "0.25" or an int.

    Raises:
        BadRational: If the value is a float, a bool, malformed, or has a zero
            denominator.

    Returns:
        Fraction: The parsed rational in lowest terms.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise BadRational(f'Expected an exact rational, got {value!r}')
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str):
        raise BadRational(f'Expected a "num/den" string, got {type(value).__name__}')
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise BadRational(f'Not a rational: {value!r}') from exc


def format_rational(q):
    """Canonical "num/den" text, with the denominator omitted when it is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f'{q.numerator}/{q.denominator}'


def is_rational_square(q):
    """
    Exact rational square root.

    Args:
        q (Fraction): A non-negative rational.

    Raises:
        NegativeRadicand: If ``q < 0``.

    Returns:
        Fraction | None: ``sqrt(q)`` when numerator and denominator are both
        perfect squares, otherwise None.
    """
    q = Fraction(q)
    if q < 0:
        raise NegativeRadicand(f'Radicand {format_rational(q)} is negative')
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _surd_sign(a, b, c):
    """Exact sign of a + b*sqrt(c)."""
    if b == 0 or c == 0:
        return _sign(a)
    sa, sb = _sign(a), _sign(b)
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    lhs, rhs = a * a, b * b * c
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


@dataclass(frozen=True)
class QuadraticNumber:
    """
    The real number ``a + b*sqrt(c)`` with rational a, b, c and c >= 0.

    Values whose surd part vanishes (b = 0, c = 0, or c a rational square)
    are normalized to pure-rational form ``(a, 0, 0)``.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        a, b, c = Fraction(self.a), Fraction(self.b), Fraction(self.c)
        if c < 0:
            raise NegativeRadicand(f'Radicand {format_rational(c)} is negative')
        if b == 0 or c == 0:
            b, c = Fraction(0), Fraction(0)
        else:
            root = is_rational_square(c)
            if root is not None:
                a, b, c = a + b * root, Fraction(0), Fraction(0)
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)
        object.__setattr__(self, 'c', c)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, QuadraticNumber):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(Fraction(value))
        return NotImplemented

    @classmethod
    def sqrt(cls, q):
        """sqrt(q) for a non-negative rational q."""
        return cls(Fraction(0), Fraction(1), Fraction(q))

    @property
    def is_rational(self):
        return self.b == 0

    def to_rational(self):
        if not self.is_rational:
            raise ValueError(f'{self} is irrational')
        return self.a

    def sign(self):
        return _surd_sign(self.a, self.b, self.c)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.c)

    def __str__(self):
        if self.is_rational:
            return format_rational(self.a)
        return f'{format_rational(self.a)}+{format_rational(self.b)}*sqrt({format_rational(self.c)})'

    # arithmetic

    def _radicand_with(self, other):
        if self.is_rational:
            return other.c
        if other.is_rational or other.c == self.c:
            return self.c
        raise IncompatibleRadicands(f'Cannot combine sqrt({self.c}) and sqrt({other.c})')

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.c)

    def __add__(self, other):
        other = QuadraticNumber.coerce(other)
        if other is NotImplemented:
            return other
        c = self._radicand_with(other)
        return QuadraticNumber(self.a + other.a, self.b + other.b, c)

    __radd__ = __add__

    def __sub__(self, other):
        other = QuadraticNumber.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = QuadraticNumber.coerce(other)
        if other is NotImplemented:
            return other
        c = self._radicand_with(other)
        return QuadraticNumber(
            self.a * other.a + self.b * other.b * c,
            self.a * other.b + self.b * other.a,
            c,
        )

    __rmul__ = __mul__

    def reciprocal(self):
        """1/(a + b*sqrt(c)) = (a - b*sqrt(c)) / (a^2 - b^2 c)."""
        if self.sign() == 0:
            raise ZeroDivisionError('reciprocal of zero')
        norm = self.a * self.a - self.b * self.b * self.c
        return QuadraticNumber(self.a / norm, -self.b / norm, self.c)

    def __truediv__(self, other):
        other = QuadraticNumber.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def floor(self):
        """Exact floor, seeded by a float guess and corrected by exact comparison."""
        if self.is_rational:
            return Fraction(math.floor(self.a))
        guess = Fraction(math.floor(float(self)))
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    # ordering

    def _cmp(self, other):
        other = QuadraticNumber.coerce(other)
        if other is NotImplemented:
            return other
        return cmp_quadratic(self, other)

    def __eq__(self, other):
        order = self._cmp(other)
        return order if order is NotImplemented else order == Order.EQUAL

    def __hash__(self):
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.b, self.c))

    def __lt__(self, other):
        order = self._cmp(other)
        return order if order is NotImplemented else order == Order.LESS

    def __le__(self, other):
        order = self._cmp(other)
        return order if order is NotImplemented else order != Order.GREATER

    def __gt__(self, other):
        order = self._cmp(other)
        return order if order is NotImplemented else order == Order.GREATER

    def __ge__(self, other):
        order = self._cmp(other)
        return order if order is NotImplemented else order != Order.LESS


def cmp_quadratic(x, y):
    """
    Exact order of ``a1 + b1*sqrt(c1)`` against ``a2 + b2*sqrt(c2)``.

    With a shared radicand the difference is a single surd. Otherwise the
    difference is split as ``L - R`` with ``L = (a1-a2) + b1*sqrt(c1)`` and
    ``R = b2*sqrt(c2)``; when L and R share a sign, ``L^2 - R^2`` is again a
    single surd in ``sqrt(c1)``.

    Args:
        x (QuadraticNumber): Left operand.
        y (QuadraticNumber): Right operand.

    Returns:
        Order: LESS, EQUAL or GREATER.
    """
    x, y = QuadraticNumber.coerce(x), QuadraticNumber.coerce(y)
    if x.is_rational or y.is_rational or x.c == y.c:
        c = x.c if not x.is_rational else y.c
        return Order(_surd_sign(x.a - y.a, x.b - y.b, c))

    da = x.a - y.a
    left = _surd_sign(da, x.b, x.c)
    right = _sign(y.b)
    if left != right:
        return Order(_sign(left - right))
    if left == 0:
        return Order.EQUAL
    squared = _surd_sign(da * da + x.b * x.b * x.c - y.b * y.b * y.c, 2 * da * x.b, x.c)
    return Order(squared if left > 0 else -squared)


@dataclass(frozen=True)
class OpenInterval:
    """
    The open interval ]lo, hi[; a None endpoint stands for -inf / +inf.

    Endpoints given as ints or Fractions are lifted to QuadraticNumber.
    """

    lo: QuadraticNumber = None
    hi: QuadraticNumber = None

    def __post_init__(self):
        lo = None if self.lo is None else QuadraticNumber.coerce(self.lo)
        hi = None if self.hi is None else QuadraticNumber.coerce(self.hi)
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)
        if lo is not None and hi is not None and not lo < hi:
            raise EmptyInterval(f'Interval ]{lo}, {hi}[ is empty')

    @classmethod
    def from_bounds(cls, first, second):
        """Interval between two finite endpoints given in either order."""
        first, second = QuadraticNumber.coerce(first), QuadraticNumber.coerce(second)
        return cls(first, second) if first < second else cls(second, first)

    @property
    def is_bounded(self):
        return self.lo is not None and self.hi is not None

    def contains(self, value):
        value = QuadraticNumber.coerce(value)
        return (self.lo is None or self.lo < value) and (self.hi is None or value < self.hi)

    def contains_zero(self):
        return self.contains(0)

    def __contains__(self, value):
        return self.contains(value)

    def __str__(self):
        lo = '-inf' if self.lo is None else str(self.lo)
        hi = '+inf' if self.hi is None else str(self.hi)
        return f']{lo}, {hi}['


def _simplest_positive(lo, hi):
    """
    Simplest rational in ]lo, hi[ for 0 <= lo < hi (hi may be None).

    Walks the continued-fraction expansion shared by both endpoints, which is
    the Stern-Brocot descent; the result has both the least denominator and
    the least numerator among the rationals of the interval.
    """
    terms = []
    while True:
        n = lo.floor()
        if hi is None or n + 1 < hi:
            terms.append(n + 1)
            break
        terms.append(n)
        lo, hi = (hi - n).reciprocal(), None if lo == n else (lo - n).reciprocal()
    value = Fraction(terms[-1])
    for term in reversed(terms[:-1]):
        value = term + 1 / value
    return value


def smallest_denominator_rational(interval):
    """
    Deterministic rational inside an open interval.

    Args:
        interval (OpenInterval): A nonempty open interval.

    Raises:
        EmptyInterval: If the interval is empty.

    Returns:
        Fraction: The rational of least denominator in the interval, ties
        broken by smaller absolute numerator. Zero wins whenever it is inside.
    """
    if not isinstance(interval, OpenInterval):
        raise EmptyInterval('Expected an OpenInterval')
    if interval.contains(0):
        return Fraction(0)
    if interval.lo is not None and interval.lo >= 0:
        result = _simplest_positive(interval.lo, interval.hi)
    else:
        result = -_simplest_positive(-interval.hi, None if interval.lo is None else -interval.lo)
    logger.debug('simplest rational in %s is %s', interval, format_rational(result))
    return result
