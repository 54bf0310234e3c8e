"""
Symbolic interval endpoints and their certified comparison.

Endpoints are exact quadratic surds whenever possible. The rest (e**gamma,
sinh(lambda), pi/2 - lambda, ...) stay symbolic as ``Sym`` trees and are
compared by evaluating both sides with outward-rounded mpmath intervals,
doubling the working precision until the enclosures separate. Two distinct
symbolic trees are never assumed equal.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import finf, fninf, to_float, to_rational

from derivation_closure.conf import closure_setting
from exactnum.exceptions import IncompatibleRadicands
from exactnum.numbers import (
    OpenInterval, Order, QuadraticNumber, cmp_quadratic, format_rational,
    smallest_denominator_rational,
)

from .catalog import exact_value, iv_eval, iv_number
from .exceptions import UndecidableComparison

logger = logging.getLogger(__name__)

# f(f^-1(x)) = x on the domain of f^-1, and the listed f^-1(f(x)) = x hold everywhere
_CANCELLING = {
    ('log', 'exp'), ('exp', 'log'), ('sinh', 'asinh'), ('asinh', 'sinh'),
    ('cosh', 'acosh'), ('tanh', 'atanh'), ('atanh', 'tanh'), ('coth', 'acoth'),
    ('acoth', 'coth'), ('sin', 'asin'), ('cos', 'acos'), ('tan', 'atan'), ('cot', 'acot'),
}
_ODD = ('sinh', 'tanh', 'coth', 'sin', 'tan', 'cot', 'asinh', 'atanh', 'acoth', 'asin', 'atan')
_EVEN = ('cosh', 'cos')


@dataclass(frozen=True)
class Sym:
    """
    An endpoint value.

    Attributes:
        kind (str): 'q' (exact QuadraticNumber), 'inf' (value is +1 or -1),
            'pi' (value is ``(coef, offset)`` for coef*pi + offset), 'fn'
            (catalog function ``value`` applied to ``arg``), 'neg' or 'add'.
        value: Payload of the kind.
        arg: The argument Sym of 'fn'/'neg', the pair of summands of 'add'.
    """

    kind: str
    value: object = None
    arg: object = None

    # constructors

    @classmethod
    def exact(cls, value):
        return cls('q', QuadraticNumber.coerce(value))

    @classmethod
    def infinity(cls, sign):
        return cls('inf', 1 if sign > 0 else -1)

    @classmethod
    def pi(cls, coef, offset=0):
        coef, offset = Fraction(coef), Fraction(offset)
        if coef == 0:
            return cls.exact(offset)
        return cls('pi', (coef, offset))

    @classmethod
    def coerce(cls, value, infinite_sign=None):
        if isinstance(value, Sym):
            return value
        if value is None:
            return cls.infinity(infinite_sign)
        return cls.exact(value)

    @classmethod
    def apply(cls, func, arg):
        """``func(arg)``, folded to an exact value or simplified when possible."""
        if func.is_identity:
            return arg
        if func.head == 'compose':
            inner, outer = func.args
            return cls.apply(outer, cls.apply(inner, arg))
        if arg.kind == 'q':
            value = exact_value(func, arg.value)
            if value is not None:
                return cls.exact(value)
        if func.head in _ODD + _EVEN and _is_negative(arg):
            folded = cls.apply(func, -arg)
            return -folded if func.head in _ODD else folded
        if arg.kind == 'pi' and func.head in ('sin', 'cos'):
            folded = _shifted_trig(func, arg)
            if folded is not None:
                return folded
        if arg.kind == 'fn' and (func.head, arg.value.head) in _CANCELLING:
            return arg.arg
        return cls('fn', func, arg)

    # structure

    @property
    def is_exact(self):
        return self.kind == 'q'

    @property
    def is_infinite(self):
        return self.kind == 'inf'

    @property
    def rational(self):
        """The value as a Fraction when it is an exact rational, else None."""
        if self.kind == 'q' and self.value.is_rational:
            return self.value.a
        return None

    def __neg__(self):
        if self.kind == 'q':
            return Sym.exact(-self.value)
        if self.kind == 'inf':
            return Sym.infinity(-self.value)
        if self.kind == 'pi':
            return Sym.pi(-self.value[0], -self.value[1])
        if self.kind == 'neg':
            return self.arg
        return Sym('neg', None, self)

    def __add__(self, other):
        other = Sym.coerce(other)
        if self.kind == 'inf' or other.kind == 'inf':
            if self.kind == 'inf' and other.kind == 'inf' and self.value != other.value:
                raise ValueError('+inf + -inf is undefined')
            return self if self.kind == 'inf' else other
        if self.kind == 'q' and other.kind == 'q':
            try:
                return Sym.exact(self.value + other.value)
            except IncompatibleRadicands:
                pass
        if self.kind == 'pi' and other.rational is not None:
            return Sym.pi(self.value[0], self.value[1] + other.rational)
        if other.kind == 'pi' and self.rational is not None:
            return other + self
        if self.kind == 'pi' and other.kind == 'pi':
            return Sym.pi(self.value[0] + other.value[0], self.value[1] + other.value[1])
        return Sym('add', None, (self, other))

    def __sub__(self, other):
        return self + (-Sym.coerce(other))

    def __str__(self):
        if self.kind == 'q':
            return str(self.value)
        if self.kind == 'inf':
            return '+inf' if self.value > 0 else '-inf'
        if self.kind == 'pi':
            return _pi_str(*self.value)
        if self.kind == 'fn':
            return _call_str(self.value, str(self.arg))
        if self.kind == 'neg':
            inner = str(self.arg)
            return f'-({inner})' if self.arg.kind in ('add', 'pi') else f'-{inner}'
        left, right = self.arg
        return f'{left}+{right}'


def _is_negative(sym):
    return sym.kind == 'neg' or sym.kind == 'q' and sym.value.sign() < 0


def _shifted_trig(func, arg):
    from .catalog import unary

    coef, offset = arg.value
    shifted = Sym.exact(offset)
    if coef in (Fraction(1, 2), Fraction(-1, 2)):
        other = Sym.apply(unary('sin' if func.head == 'cos' else 'cos'), shifted)
        # cos(pi/2 + t) = -sin t, cos(-pi/2 + t) = sin t, sin(pi/2 + t) = cos t, sin(-pi/2 + t) = -cos t
        negate = (func.head == 'cos') == (coef > 0)
        return -other if negate else other
    if coef in (1, -1):
        return -Sym.apply(func, shifted)
    return None


def _pi_str(coef, offset):
    num, den = coef.numerator, coef.denominator
    head = 'pi' if abs(num) == 1 else f'{abs(num)}*pi'
    if den != 1:
        head = f'{head}/{den}'
    text = f'-{head}' if num < 0 else head
    if offset > 0:
        text += f'+{format_rational(offset)}'
    elif offset < 0:
        text += f'-{format_rational(-offset)}'
    return text


def _call_str(func, argument):
    if func.head == 'compose':
        inner, outer = func.args
        return _call_str(outer, _call_str(inner, argument))
    return f'{func}({argument})'


# certified evaluation

def enclose(sym, ctx):
    """An mpmath interval containing the value of ``sym`` at ``ctx.prec`` bits."""
    if sym.kind == 'q':
        return iv_number(ctx, sym.value)
    if sym.kind == 'inf':
        return ctx.inf if sym.value > 0 else ctx.ninf
    if sym.kind == 'pi':
        coef, offset = sym.value
        return ctx.mpf(coef.numerator) / coef.denominator * ctx.pi + ctx.mpf(offset.numerator) / offset.denominator
    if sym.kind == 'fn':
        return iv_eval(sym.value, ctx, enclose(sym.arg, ctx))
    if sym.kind == 'neg':
        return -enclose(sym.arg, ctx)
    left, right = sym.arg
    return enclose(left, ctx) + enclose(right, ctx)


def _contexts():
    prec = closure_setting('PRECISION')
    ceiling = closure_setting('MAX_PRECISION')
    while prec <= ceiling:
        ctx = MPIntervalContext()
        ctx.prec = prec
        yield ctx
        prec *= 2


def _enclosures(ctx, *syms):
    try:
        return [enclose(sym, ctx) for sym in syms]
    except (ValueError, ZeroDivisionError, AssertionError):
        return None


def compare(a, b):
    """
    Certified order of two endpoint values.

    Raises:
        UndecidableComparison: If the enclosures still overlap at
            ``MAX_PRECISION`` bits.

    Returns:
        Order: LESS, EQUAL or GREATER.
    """
    a, b = Sym.coerce(a), Sym.coerce(b)
    if a == b:
        return Order.EQUAL
    if a.kind == 'q' and b.kind == 'q':
        return cmp_quadratic(a.value, b.value)
    if a.kind == 'inf':
        return Order.LESS if a.value < 0 else Order.GREATER
    if b.kind == 'inf':
        return Order.GREATER if b.value < 0 else Order.LESS
    for ctx in _contexts():
        pair = _enclosures(ctx, a, b)
        if pair is not None:
            x, y = pair
            if (x < y) is True:
                return Order.LESS
            if (y < x) is True:
                return Order.GREATER
        logger.debug('escalating precision beyond %d bits to compare %s and %s', ctx.prec, a, b)
    raise UndecidableComparison(f'cannot separate {a} and {b}', left=str(a), right=str(b))


def less(a, b):
    return compare(a, b) is Order.LESS


def less_equal(a, b):
    return compare(a, b) is not Order.GREATER


def sym_min(*syms):
    best = syms[0]
    for sym in syms[1:]:
        if less(sym, best):
            best = sym
    return best


def sym_max(*syms):
    best = syms[0]
    for sym in syms[1:]:
        if less(best, sym):
            best = sym
    return best


def _endpoint_rational(raw):
    if raw in (finf, fninf):
        return None
    p, q = to_rational(raw)
    return Fraction(p, q)


def inner_bounds(lo, hi):
    """
    Exact endpoints of a nonempty subinterval of ]lo, hi[.

    Exact endpoints are kept, infinite ones become None and symbolic ones are
    replaced by certified rational bounds on the inner side.

    Returns:
        tuple: ``(lo', hi')`` as QuadraticNumber or None, with
        ``lo <= lo' < hi' <= hi``.
    """
    lo, hi = Sym.coerce(lo, -1), Sym.coerce(hi, +1)
    if lo.kind in ('q', 'inf') and hi.kind in ('q', 'inf'):
        return (lo.value if lo.kind == 'q' else None), (hi.value if hi.kind == 'q' else None)
    for ctx in _contexts():
        pair = _enclosures(ctx, lo, hi)
        if pair is None:
            continue
        x, y = pair
        inner_lo = lo.value if lo.kind == 'q' else (None if lo.kind == 'inf' else _endpoint_rational(x._mpi_[1]))
        inner_hi = hi.value if hi.kind == 'q' else (None if hi.kind == 'inf' else _endpoint_rational(y._mpi_[0]))
        if inner_lo is None and lo.kind != 'inf' or inner_hi is None and hi.kind != 'inf':
            continue
        if inner_lo is None or inner_hi is None or QuadraticNumber.coerce(inner_lo) < QuadraticNumber.coerce(inner_hi):
            return (None if inner_lo is None else QuadraticNumber.coerce(inner_lo),
                    None if inner_hi is None else QuadraticNumber.coerce(inner_hi))
    raise UndecidableComparison(f'cannot find a subinterval of ]{lo}, {hi}[', left=str(lo), right=str(hi))


def rational_between(lo, hi):
    """The simplest rational q with lo < q < hi, certified."""
    inner_lo, inner_hi = inner_bounds(lo, hi)
    return smallest_denominator_rational(OpenInterval(inner_lo, inner_hi))


def approx(sym):
    """A float near the value, for picking candidates that are then certified."""
    if sym.kind == 'inf':
        return float('inf') if sym.value > 0 else float('-inf')
    if sym.kind == 'q':
        return float(sym.value)
    ctx = MPIntervalContext()
    ctx.prec = 64
    x = enclose(sym, ctx)
    return float(to_float(x._mpi_[0]) + to_float(x._mpi_[1])) / 2


def outer_bounds(lo, hi):
    """Exact endpoints (QuadraticNumber or None) of an interval containing ]lo, hi[."""
    lo, hi = Sym.coerce(lo, -1), Sym.coerce(hi, +1)
    for ctx in _contexts():
        pair = _enclosures(ctx, lo, hi)
        if pair is None:
            continue
        x, y = pair
        outer_lo = lo.value if lo.kind == 'q' else _endpoint_rational(x._mpi_[0])
        outer_hi = hi.value if hi.kind == 'q' else _endpoint_rational(y._mpi_[1])
        if lo.kind == 'inf':
            outer_lo = None
        if hi.kind == 'inf':
            outer_hi = None
        return (None if outer_lo is None else QuadraticNumber.coerce(outer_lo),
                None if outer_hi is None else QuadraticNumber.coerce(outer_hi))
    raise UndecidableComparison(f'cannot enclose ]{lo}, {hi}[', left=str(lo), right=str(hi))
