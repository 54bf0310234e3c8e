"""
Monotonicity, images and preimages of unary catalog maps on spans.

Everything here is decided from catalog metadata plus certified
comparisons: the sign of the derivative is fixed per monotone piece, and the
image of a span is the span between the (one-sided) endpoint values.
"""
import logging
import math
from fractions import Fraction

from mpmath.ctx_iv import MPIntervalContext

from derivation_closure.conf import closure_setting
from exactnum.numbers import OpenInterval, QuadraticNumber
from laurent.exceptions import IntervalContainsZero
from laurent.polynomials import formal_derivative
from laurent.sturm import nonvanishing_on

from .bounds import Sym, approx, enclose, less_equal, outer_bounds
from .catalog import inverse_of
from .domains import DomainSet, Span, power_domain_set
from .exceptions import DomainNotCovered, EmptyDomain, NotMonotone

logger = logging.getLogger(__name__)

_INCREASING = ('exp', 'log', 'sinh', 'tanh', 'asinh', 'acosh', 'atanh', 'asin', 'atan', 'sqrt')
_DECREASING = ('acos', 'acot')


def _parity(m):
    return 1 if m % 2 == 0 else -1


def trig_piece(func, span):
    """
    The monotone piece ``[k*pi/2, (k+2)*pi/2]`` of sin/cos/tan/cot holding the span.

    sin and tan break at odd multiples of pi/2, cos and cot at multiples of pi.

    Returns:
        int: k, with the span inside the piece.
    """
    if not span.is_bounded:
        raise NotMonotone(f'{func.head} is not monotone on {span}')
    guess = math.floor(approx(span.lo) / (math.pi / 2))
    odd_breaks = func.head in ('sin', 'tan')
    if (guess % 2 == 1) != odd_breaks:
        guess -= 1
    for k in (guess, guess + 2, guess - 2):
        start, end = Sym.pi(Fraction(k, 2)), Sym.pi(Fraction(k + 2, 2))
        if less_equal(start, span.lo) and less_equal(span.hi, end):
            if func.head in ('tan', 'cot'):
                # poles: the piece is open
                if span.lo == start and span.lo_closed or span.hi == end and span.hi_closed:
                    break
            return k
    raise NotMonotone(f'{func.head} is not monotone on {span}')


def side_of_zero(span):
    """+1 if the span lies in [0, inf[, -1 if in ]-inf, 0], 0 if 0 is inside."""
    zero = Sym.exact(0)
    if less_equal(zero, span.lo):
        return 1
    if less_equal(span.hi, zero):
        return -1
    return 0


def monotone_sign(func, span):
    """
    +1 or -1 when the unary map is strictly monotone on the span.

    Raises:
        NotMonotone: If the map is constant or changes direction on the span.
    """
    head = func.head
    if func.is_identity or head in _INCREASING:
        return 1
    if head in _DECREASING:
        return -1
    if head in ('coth', 'acoth', 'cot'):
        if head == 'cot':
            trig_piece(func, span)
        elif side_of_zero(span) == 0:
            raise NotMonotone(f'{head} is not monotone on {span}')
        return -1
    if head == 'tan':
        trig_piece(func, span)
        return 1
    if head == 'cosh':
        side = side_of_zero(span)
        if side == 0:
            raise NotMonotone(f'cosh is not monotone on {span}')
        return side
    if head in ('sin', 'cos'):
        k = trig_piece(func, span)
        if head == 'sin':
            return 1 if k % 4 == 3 else -1
        return -1 if k % 4 == 0 else 1
    if head == 'power':
        return _power_sign(func.params[0], span)
    if head == 'laurent':
        return _laurent_sign(func.params[0], span)
    if head == 'compose':
        inner, outer = func.args
        return monotone_sign(inner, span) * monotone_sign(outer, image_span(inner, span))
    if head == 'inverse':
        return func.params[2]
    raise NotMonotone(f'{func} is not a strictly monotone unary map')


def _power_sign(r, span):
    if r == 0:
        raise NotMonotone('power(0) is constant')
    positive_side = 1 if r > 0 else -1
    negative_side = positive_side * _parity(r.numerator + 1)
    side = side_of_zero(span)
    if side > 0:
        return positive_side
    if side < 0:
        return negative_side
    if positive_side == negative_side == 1 and r.denominator % 2 == 1:
        return 1
    raise NotMonotone(f'power({r}) is not monotone on {span}')


def _laurent_sign(poly, span):
    if poly.degree <= 0 and poly.valuation >= 0:
        raise NotMonotone(f'{poly} is constant')
    lo, hi = outer_bounds(span.lo, span.hi)
    derivative = formal_derivative(poly)
    try:
        steady = nonvanishing_on(derivative, OpenInterval(lo, hi))
    except IntervalContainsZero as e:
        raise NotMonotone(f'{poly} has a pole in {span}') from e
    if not steady:
        raise NotMonotone(f'the derivative of {poly} vanishes on {span}')
    point = span.rational_inside()
    return 1 if derivative(point) > 0 else -1


# one-sided endpoint values

def _limit_at_infinity(func, sign):
    head = func.head
    inf = Sym.infinity
    if head == 'exp':
        return inf(1) if sign > 0 else Sym.exact(0)
    if head in ('log', 'cosh', 'acosh', 'sqrt'):
        return inf(1)
    if head in ('sinh', 'asinh'):
        return inf(sign)
    if head in ('tanh', 'coth'):
        return Sym.exact(sign)
    if head == 'atan':
        return Sym.pi(Fraction(sign, 2))
    if head == 'acot':
        return Sym.exact(0) if sign > 0 else Sym.pi(1)
    if head == 'acoth':
        return Sym.exact(0)
    if head == 'power':
        r = func.params[0]
        if r < 0:
            return Sym.exact(0)
        return inf(1 if sign > 0 else _parity(r.numerator))
    if head == 'laurent':
        poly = func.params[0]
        if poly.degree <= 0:
            return Sym.exact(poly.coeff(0))
        lead = poly.coeff(poly.degree)
        direction = (1 if lead > 0 else -1) * (1 if sign > 0 else _parity(poly.degree))
        return inf(direction)
    if head == 'inverse':
        lo, hi, branch_sign = func.params
        end = hi if sign * branch_sign > 0 else lo
        return Sym.coerce(end, sign * branch_sign)
    if head == 'const':
        return Sym.exact(func.params[0])
    raise NotMonotone(f'{func} has no limit at {"+" if sign > 0 else "-"}inf')


def _pi_multiple(point):
    if point.kind == 'q' and point.value == 0:
        return Fraction(0)
    if point.kind == 'pi' and point.value[1] == 0:
        return point.value[0]
    return None


def _pole_limit(func, point, side):
    """The one-sided limit at a pole of the map, or None if the point is regular."""
    head = func.head
    inf = Sym.infinity
    zero = point.kind == 'q' and point.value == 0
    if head == 'log' and zero:
        return inf(-1)
    if head == 'coth' and zero:
        return inf(side)
    if head == 'cot':
        multiple = _pi_multiple(point)
        if multiple is not None and multiple.denominator == 1:
            return inf(side)
    if head == 'tan':
        multiple = _pi_multiple(point)
        if multiple is not None and multiple.denominator == 2:
            return inf(-side)
    if head in ('acoth', 'atanh') and point.kind == 'q' and point.value in (QuadraticNumber(1), QuadraticNumber(-1)):
        return inf(point.value.sign())
    if head == 'power' and zero and func.params[0] < 0:
        return inf(1 if side > 0 else _parity(func.params[0].numerator))
    if head == 'laurent' and zero and func.params[0].has_negative_exponents:
        poly = func.params[0]
        v = poly.valuation
        sign = 1 if poly.coeff(v) > 0 else -1
        return inf(sign if side > 0 else sign * _parity(v))
    return None


def endpoint_value(func, point, side):
    """
    Value of the map at an edge of a span, approached from inside.

    Args:
        func (FuncExpr): A unary non-compose map.
        point (Sym): The edge.
        side (int): +1 for a lower edge (approach from the right), -1 for an
            upper edge.
    """
    if point.is_infinite:
        return _limit_at_infinity(func, point.value)
    pole = _pole_limit(func, point, side)
    if pole is not None:
        return pole
    return Sym.apply(func, point)


def image_span(func, span):
    """
    ``func(span)`` for a unary map strictly monotone on the span.

    Raises:
        NotMonotone: If the map is not strictly monotone there.
    """
    if func.is_identity:
        return span
    if func.head == 'compose':
        inner, outer = func.args
        return image_span(outer, image_span(inner, span))
    sign = monotone_sign(func, span)
    at_lo = endpoint_value(func, span.lo, +1)
    at_hi = endpoint_value(func, span.hi, -1)
    if sign > 0:
        return Span(at_lo, at_hi, span.lo_closed and not at_lo.is_infinite, span.hi_closed and not at_hi.is_infinite)
    return Span(at_hi, at_lo, span.hi_closed and not at_hi.is_infinite, span.lo_closed and not at_lo.is_infinite)


def branch_of(func, span):
    """``(lo, hi, sign)`` describing the span as an inversion branch of the map."""
    sign = monotone_sign(func, span)
    ends = []
    for end in (span.lo, span.hi):
        if end.is_infinite:
            ends.append(None)
        elif end.rational is not None:
            ends.append(QuadraticNumber(end.rational))
        else:
            return None
    return ends[0], ends[1], sign


def preimage_span(func, span, target):
    """
    ``{x in span : func(x) in target}`` for a map strictly monotone on the span.

    Raises:
        EmptyDomain: If the image misses the target.
        NotInvertible: If a cut point needs an inverse the catalog lacks.
    """
    if func.is_identity:
        common = span.intersect(target)
        if common is None:
            raise EmptyDomain(f'{span} and {target} are disjoint')
        return common
    if func.head == 'compose':
        inner, outer = func.args
        middle = preimage_span(outer, image_span(inner, span), target)
        return preimage_span(inner, span, middle)
    image = image_span(func, span)
    common = image.intersect(target)
    if common is None:
        raise EmptyDomain(f'{func} maps {span} to {image}, which misses {target}')
    sign = monotone_sign(func, span)

    def pull(value, at_image_lo):
        if value == (image.lo if at_image_lo else image.hi):
            return span.lo if (sign > 0) == at_image_lo else span.hi
        return Sym.apply(inverse_of(func, branch_of(func, span)), value)

    lo, hi = pull(common.lo, True), pull(common.hi, False)
    if sign > 0:
        return Span(lo, hi, common.lo_closed, common.hi_closed)
    return Span(hi, lo, common.hi_closed, common.lo_closed)


# declared domains

def _within(span, lo=None, hi=None, lo_closed=False, hi_closed=False):
    return Span(lo, hi, lo_closed, hi_closed).covers(span)


def _unary_natural(func, span):
    head = func.head
    if head in ('exp', 'sinh', 'cosh', 'tanh', 'sin', 'cos', 'asinh', 'atan', 'acot', 'const') or func.is_identity:
        return True
    if head == 'log':
        return _within(span, 0)
    if head == 'sqrt':
        return _within(span, 0, lo_closed=True)
    if head == 'acosh':
        return _within(span, 1, lo_closed=True)
    if head == 'atanh':
        return _within(span, -1, 1)
    if head in ('asin', 'acos'):
        return _within(span, -1, 1, True, True)
    if head == 'coth':
        return _within(span, 0) or _within(span, None, 0)
    if head == 'acoth':
        return _within(span, 1) or _within(span, None, -1)
    if head in ('tan', 'cot'):
        try:
            trig_piece(func, span)
        except NotMonotone:
            return False
        return True
    if head == 'power':
        return power_domain_set(func.params[0]).covers(span)
    if head == 'laurent':
        return not func.params[0].has_negative_exponents or _within(span, 0) or _within(span, None, 0)
    if head == 'compose':
        inner, outer = func.args
        if not _unary_natural(inner, span):
            return False
        try:
            middle = image_span(inner, span)
        except NotMonotone:
            return True
        return _unary_natural(outer, middle)
    return True


# zero sets and sign conditions of the binary laws, as (function of the box enclosures, must be certified True)
_LAW_GUARDS = {
    'div': lambda u, v: [(v > 0) is True or (v < 0) is True],
    'g_tanh': lambda u, v: [(1 + u * v > 0) is True or (1 + u * v < 0) is True],
    'g_tan': lambda u, v: [(1 - u * v > 0) is True or (1 - u * v < 0) is True],
    'g_coth': lambda u, v: [(u + v > 0) is True or (u + v < 0) is True],
    'g_cot': lambda u, v: [(u + v > 0) is True or (u + v < 0) is True],
    'g_cosh': lambda u, v: [(u ** 2 >= 1) is True, (v ** 2 >= 1) is True],
    'g_sin': lambda u, v: [(u ** 2 <= 1) is True, (v ** 2 <= 1) is True],
    'g_cos': lambda u, v: [(u ** 2 <= 1) is True, (v ** 2 <= 1) is True],
    'h_sin': lambda u, v: [(v ** 2 <= 1) is True],
}


def _box_enclosure(ctx, span):
    lo, hi = enclose(span.lo, ctx), enclose(span.hi, ctx)
    return ctx.mpf([lo.a, hi.b])


def _law_natural(func, box):
    guard = _LAW_GUARDS.get(func.head)
    if guard is None:
        return True
    ctx = MPIntervalContext()
    ctx.prec = closure_setting('PRECISION')
    u, v = (_box_enclosure(ctx, span) for span in box.spans)
    return all(guard(u, v))


def check_declared(func, domain):
    """
    Check that the map is defined and differentiable on the domain.

    Raises:
        DomainNotCovered: If some box leaves the natural domain of the map.
    """
    for box in domain.boxes:
        if func.is_unary:
            ok = _unary_natural(func, box.spans[0])
        elif func.head in _LAW_GUARDS or func.arity == (2, 1):
            ok = _law_natural(func, box)
        else:
            ok = True
        if not ok:
            raise DomainNotCovered(f'{func} is not defined on {box}', func=str(func), domain=str(box))
    logger.debug('%s is defined on %s', func, domain)


def image_domain(func, domain):
    """Image of a one-dimensional domain under a unary map, span by span."""
    spans = [image_span(func, box.spans[0]) for box in domain.boxes]
    return DomainSet.of(*spans)
