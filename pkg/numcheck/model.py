"""
A computable derivation: d = d/dt on the rational functions Q(t).

d/dt is additive and satisfies the product rule exactly, so every fact the
rule engine derives from facts that hold here must hold here too. That is
what the soundness tests check, through ``model_check_fact``.
"""
import logging
from fractions import Fraction

import sympy as sp

from deduction.exceptions import ArityMismatch

from .exceptions import DomainViolation, NonAlgebraicFunction

logger = logging.getLogger(__name__)

T = sp.Symbol('t')


def _poly(value):
    if isinstance(value, sp.Poly):
        return value
    if isinstance(value, Fraction):
        value = sp.Rational(value.numerator, value.denominator)
    return sp.Poly(value, T, domain='QQ')


class RatFunc:
    """
    A reduced element of Q(t).

    Numerator and denominator are coprime and the denominator is monic, so
    two equal rational functions have equal parts.

    Attributes:
        num (sympy.Poly): Numerator over QQ.
        den (sympy.Poly): Monic denominator over QQ.
    """

    __slots__ = ('num', 'den')

    def __init__(self, num, den=1):
        num, den = _poly(num), _poly(den)
        if den.is_zero:
            raise ZeroDivisionError('zero denominator in Q(t)')
        if num.is_zero:
            num, den = num, _poly(1)
        else:
            common = num.gcd(den)
            num, den = num.exquo(common), den.exquo(common)
            lead = den.LC()
            num, den = num.quo_ground(lead), den.monic()
        self.num = num
        self.den = den

    @classmethod
    def from_expr(cls, expr):
        """
        Raises:
            NonAlgebraicFunction: If ``expr`` is not a rational function of t.
        """
        expr = sp.sympify(expr)
        if expr.has(sp.zoo, sp.nan, sp.oo, -sp.oo):
            raise DomainViolation(f'{expr} is undefined in Q(t)')
        if not expr.free_symbols <= {T} or not expr.is_rational_function(T):
            raise NonAlgebraicFunction(f'{expr} is not a rational function of t')
        try:
            num, den = sp.fraction(sp.cancel(sp.together(expr)))
            return cls(num, den)
        except ZeroDivisionError as e:
            raise DomainViolation(f'{expr} has a zero denominator') from e

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        return cls.from_expr(value)

    def as_expr(self):
        return self.num.as_expr() / self.den.as_expr()

    @property
    def is_zero(self):
        return self.num.is_zero

    def __add__(self, other):
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc.coerce(other)
        if other.is_zero:
            raise ZeroDivisionError('division by zero in Q(t)')
        return RatFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        try:
            other = RatFunc.coerce(other)
        except (NonAlgebraicFunction, DomainViolation, sp.SympifyError, TypeError):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num.all_coeffs()), tuple(self.den.all_coeffs())))

    def __repr__(self):
        return f'RatFunc({self.as_expr()})'

    def __str__(self):
        return str(self.as_expr())


def model_derivate(value):
    """d/dt of an element of Q(t), reduced."""
    value = RatFunc.coerce(value)
    num, den = value.num, value.den
    return RatFunc(num.diff(T) * den - num * den.diff(T), den * den)


def _at(expr, substitution):
    return RatFunc.from_expr(expr.subs(substitution, simultaneous=True))


def model_check_fact(func, witness, derivation=model_derivate):
    """
    Whether ``d(f_j(w)) = sum_i (d_i f_j)(w) d(w_i)`` holds exactly in Q(t).

    Args:
        func (FuncExpr): A map that is rational over Q.
        witness (Sequence[RatFunc | int | Fraction | sympy.Expr]): One point
            of Q(t) per input.
        derivation (Callable): The additive map playing d; ``model_derivate``
            unless a test wants a map that is not a derivation.

    Raises:
        NonAlgebraicFunction: If ``func`` has a transcendental part.
        ArityMismatch: If the witness has the wrong length.
        DomainViolation: If ``func`` is undefined at the witness.

    Returns:
        bool
    """
    if not func.is_algebraic:
        raise NonAlgebraicFunction(f'{func} is not rational over Q', func=str(func))
    witness = tuple(RatFunc.coerce(w) for w in witness)
    n = func.arity[0]
    if len(witness) != n:
        raise ArityMismatch(f'{func} takes {n} input(s), the witness has {len(witness)}')
    slots = sp.symbols(f'_w0:{n}')
    substitution = {slot: w.as_expr() for slot, w in zip(slots, witness)}
    for output in func.to_sympy(slots):
        lhs = derivation(_at(output, substitution))
        rhs = RatFunc(0)
        for slot, w in zip(slots, witness):
            rhs = rhs + _at(sp.diff(output, slot), substitution) * derivation(w)
        if lhs != rhs:
            logger.debug('%s fails at %s: %s != %s', func, witness, lhs, rhs)
            return False
    return True
