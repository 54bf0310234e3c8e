"""
Sparse Laurent polynomials over the rationals.

A ``LaurentPoly`` maps integer exponents to nonzero ``Fraction`` coefficients.
Values are immutable; every operation returns a new normalized polynomial.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import sympy as sp

from exactnum.numbers import QuadraticNumber, format_rational

from .exceptions import DependentTails

U = sp.Symbol('u')


def _normalize(terms):
    if isinstance(terms, dict):
        items = terms.items()
    else:
        items = terms
    merged = {}
    for k, c in items:
        k, c = int(k), Fraction(c)
        merged[k] = merged.get(k, Fraction(0)) + c
    return tuple(sorted((k, c) for k, c in merged.items() if c != 0))


@dataclass(frozen=True)
class LaurentPoly:
    """
    ``sum(c * u**k)`` over a finite support.

    Attributes:
        terms (tuple): ``(k, c)`` pairs sorted by exponent, no zero ``c``.
            The constructor also accepts a dict or any iterable of pairs.
    """

    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'terms', _normalize(self.terms))

    @classmethod
    def monomial(cls, k, c=1):
        return cls({k: c})

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def from_expr(cls, expr, symbol=U):
        """Build from a sympy expression that is a Laurent polynomial in ``symbol``."""
        num, den = sp.fraction(sp.cancel(sp.sympify(expr)))
        den_poly = sp.Poly(den, symbol)
        if len(den_poly.terms()) != 1:
            raise ValueError(f'{expr} is not a Laurent polynomial in {symbol}')
        (shift,), lead = den_poly.terms()[0]
        coeffs = {}
        for (k,), c in sp.Poly(num, symbol).terms():
            value = sp.Rational(c) / lead
            coeffs[k - shift] = Fraction(int(value.p), int(value.q))
        return cls(coeffs)

    # structure

    def coeff(self, k):
        for exponent, c in self.terms:
            if exponent == k:
                return c
        return Fraction(0)

    @property
    def support(self):
        return tuple(k for k, _ in self.terms)

    @property
    def is_zero(self):
        return not self.terms

    @property
    def constant_term(self):
        return self.coeff(0)

    @property
    def degree(self):
        return self.terms[-1][0] if self.terms else None

    @property
    def valuation(self):
        return self.terms[0][0] if self.terms else None

    @property
    def has_negative_exponents(self):
        return bool(self.terms) and self.terms[0][0] < 0

    def tail(self):
        """The polynomial with its constant term removed (P - p0)."""
        return LaurentPoly(tuple((k, c) for k, c in self.terms if k != 0))

    # arithmetic

    def __neg__(self):
        return LaurentPoly(tuple((k, -c) for k, c in self.terms))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return LaurentPoly(self.terms + other.terms)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            scalar = Fraction(other)
            return LaurentPoly(tuple((k, c * scalar) for k, c in self.terms))
        return LaurentPoly(tuple(
            (k1 + k2, c1 * c2) for k1, c1 in self.terms for k2, c2 in other.terms))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError('negative powers of a Laurent polynomial are not Laurent')
        result = LaurentPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, x):
        """Exact value at a rational or a QuadraticNumber."""
        if isinstance(x, QuadraticNumber):
            if x.is_rational:
                return QuadraticNumber(self(x.a))
            total = QuadraticNumber(0)
            for k, c in self.terms:
                base = x if k >= 0 else x.reciprocal()
                power = QuadraticNumber(1)
                for _ in range(abs(k)):
                    power = power * base
                total = total + power * c
            return total
        x = Fraction(x)
        return sum((c * x ** k for k, c in self.terms), Fraction(0))

    # conversions

    def as_expr(self, symbol=U):
        return sp.Add(*[sp.Rational(c.numerator, c.denominator) * symbol ** k for k, c in self.terms])

    def cleared(self, symbol=U):
        """
        Clear negative exponents.

        Returns:
            tuple: ``(N, poly)`` with ``N = max(0, -valuation)`` and ``poly`` the
            sympy ``Poly`` of ``u**N * F`` over QQ.
        """
        shift = max(0, -(self.valuation or 0))
        expr = sp.Add(*[sp.Rational(c.numerator, c.denominator) * symbol ** (k + shift)
                        for k, c in self.terms])
        return shift, sp.Poly(expr, symbol, domain='QQ')

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for k, c in self.terms:
            if k == 0:
                parts.append(format_rational(c))
            else:
                monomial = 'u' if k == 1 else f'u^{k}'
                parts.append(monomial if c == 1 else f'{format_rational(c)}*{monomial}')
        return ' + '.join(parts)


def formal_derivative(poly):
    """Coefficientwise ``k * u**(k-1)``; the constant term vanishes."""
    return LaurentPoly(tuple((k - 1, k * c) for k, c in poly.terms if k != 0))


def wronskian(p, q):
    """``P'Q - PQ'``, identically zero exactly when P and Q are dependent."""
    return formal_derivative(p) * q - p * formal_derivative(q)


def linearly_dependent(p, q):
    """
    Whether ``a*P + b*Q = 0`` for some rational ``(a, b) != (0, 0)``.

    Decided on the coefficient vectors: every 2x2 minor
    ``p_i*q_j - p_j*q_i`` over the joint support must vanish.
    """
    support = sorted(set(p.support) | set(q.support))
    return all(
        p.coeff(i) * q.coeff(j) == p.coeff(j) * q.coeff(i)
        for i, j in combinations(support, 2)
    )


def _parallel(first, second):
    return first[0] * second[1] == first[1] * second[0]


def find_pivot_indices(p, q):
    """
    Pivot exponents of a pair with independent tails.

    Args:
        p (LaurentPoly): P.
        q (LaurentPoly): Q.

    Raises:
        DependentTails: If ``P - p0`` and ``Q - q0`` are linearly dependent.

    Returns:
        tuple: ``(k0, ell)`` where k0 is the least nonzero exponent with
        ``(p_k, q_k) != (0, 0)`` and ell the least nonzero exponent whose
        vector is not parallel to ``(p_k0, q_k0)``.
    """
    p_tail, q_tail = p.tail(), q.tail()
    if linearly_dependent(p_tail, q_tail):
        raise DependentTails('P - p0 and Q - q0 are linearly dependent')
    support = sorted(set(p_tail.support) | set(q_tail.support))
    k0 = support[0]
    base = (p.coeff(k0), q.coeff(k0))
    for ell in support[1:]:
        if not _parallel(base, (p.coeff(ell), q.coeff(ell))):
            return k0, ell
    # unreachable: independent tails always contain a non-parallel vector
    raise DependentTails('no pivot found')
