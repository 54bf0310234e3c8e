"""
The function catalog facts are stated over.

A ``FuncExpr`` is a small immutable AST: unary catalog entries (exp, sinh,
sin, their inverses, power(r), sqrt, Laurent polynomials, constants), the
binary maps (add, mul, div and the two-variable addition laws), projections,
tuples and composition. Each node knows its arity, its sympy form and how to
evaluate itself on mpmath intervals.
"""
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from exactnum.numbers import QuadraticNumber
from laurent.polynomials import LaurentPoly

from .exceptions import ArityMismatch, NotInvertible

TRANSCENDENTAL = (
    'exp', 'log', 'sinh', 'cosh', 'tanh', 'coth', 'sin', 'cos', 'tan', 'cot',
    'asinh', 'acosh', 'atanh', 'acoth', 'asin', 'acos', 'atan', 'acot',
)
UNARY = TRANSCENDENTAL + ('sqrt',)

# f, with f(x + y) = law(f(x), f(y)); keys are the case ids of the dispatcher.
ADDITION_LAWS = {
    'i': ('exp', 'g_exp'),
    'ii': ('sinh', 'g_sinh'),
    'iii': ('cosh', 'g_cosh'),
    'iv': ('tanh', 'g_tanh'),
    'v': ('coth', 'g_coth'),
    'vi': ('sin', 'g_sin'),
    'vii': ('cos', 'g_cos'),
    'viii': ('tan', 'g_tan'),
    'ix': ('cot', 'g_cot'),
}

_LAW_FORMS = {
    'g_exp': lambda u, v: u * v,
    'g_sinh': lambda u, v: u * sp.sqrt(1 + v ** 2) + v * sp.sqrt(1 + u ** 2),
    'g_cosh': lambda u, v: u * v + sp.sqrt(u ** 2 - 1) * sp.sqrt(v ** 2 - 1),
    'g_tanh': lambda u, v: (u + v) / (1 + u * v),
    'g_coth': lambda u, v: (u * v + 1) / (u + v),
    'g_sin': lambda u, v: u * sp.sqrt(1 - v ** 2) + v * sp.sqrt(1 - u ** 2),
    'g_cos': lambda u, v: u * v - sp.sqrt(1 - u ** 2) * sp.sqrt(1 - v ** 2),
    'g_tan': lambda u, v: (u + v) / (1 - u * v),
    'g_cot': lambda u, v: (u * v - 1) / (u + v),
    # symmetrized halves of g_sinh and g_sin
    'h_sinh': lambda u, v: u * sp.sqrt(1 + v ** 2),
    'h_sin': lambda u, v: u * sp.sqrt(1 - v ** 2),
    'add': lambda u, v: u + v,
    'mul': lambda u, v: u * v,
    'div': lambda u, v: u / v,
}
BINARY = tuple(_LAW_FORMS)
ALGEBRAIC_BINARY = ('add', 'mul', 'div', 'g_exp', 'g_tanh', 'g_coth', 'g_tan', 'g_cot')

_SYMPY_UNARY = {
    'exp': sp.exp, 'log': sp.log, 'sinh': sp.sinh, 'cosh': sp.cosh, 'tanh': sp.tanh,
    'coth': sp.coth, 'sin': sp.sin, 'cos': sp.cos, 'tan': sp.tan, 'cot': sp.cot,
    'asinh': sp.asinh, 'acosh': sp.acosh, 'atanh': sp.atanh, 'acoth': sp.acoth,
    'asin': sp.asin, 'acos': sp.acos, 'atan': sp.atan, 'acot': sp.acot, 'sqrt': sp.sqrt,
}

_INVERSES = {
    'exp': 'log', 'log': 'exp', 'sinh': 'asinh', 'asinh': 'sinh', 'cosh': 'acosh',
    'acosh': 'cosh', 'tanh': 'atanh', 'atanh': 'tanh', 'coth': 'acoth', 'acoth': 'coth',
    'sin': 'asin', 'asin': 'sin', 'cos': 'acos', 'acos': 'cos', 'tan': 'atan',
    'atan': 'tan', 'cot': 'acot', 'acot': 'cot',
}

_ZERO_AT_ZERO = ('sinh', 'tanh', 'sin', 'tan', 'asinh', 'atanh', 'asin', 'atan')


@dataclass(frozen=True)
class FuncExpr:
    """
    A catalog function.

    Attributes:
        head (str): The catalog entry or combinator name.
        params (tuple): Exact parameters (the exponent of power, the
            polynomial of laurent, the value of const, ...).
        args (tuple[FuncExpr]): Sub-expressions of compose, tuple and inverse.
    """

    head: str
    params: tuple = ()
    args: tuple = ()

    @property
    def arity(self):
        """``(n, m)``: n inputs and m outputs."""
        if self.head in UNARY or self.head in ('const', 'power', 'laurent', 'inverse'):
            return 1, 1
        if self.head in BINARY:
            return 2, 1
        if self.head == 'var':
            return self.params[1], 1
        if self.head == 'tuple':
            return self.args[0].arity[0], len(self.args)
        inner, outer = self.args
        return inner.arity[0], outer.arity[1]

    @property
    def is_unary(self):
        return self.arity == (1, 1)

    @property
    def is_identity(self):
        return self.head == 'var' and self.params == (0, 1)

    @property
    def is_algebraic(self):
        """Whether the map is rational over Q, so it can be checked in Q(t)."""
        if self.head in ('const', 'laurent', 'var') or self.head in ALGEBRAIC_BINARY:
            return True
        if self.head == 'power':
            return self.params[0].denominator == 1
        if self.head in ('compose', 'tuple'):
            return all(arg.is_algebraic for arg in self.args)
        return False

    def to_sympy(self, symbols):
        """
        The map as sympy expressions.

        Args:
            symbols (Sequence[sympy.Symbol]): One symbol per input.

        Returns:
            tuple: One sympy expression per output.
        """
        head = self.head
        if head == 'var':
            return (symbols[self.params[0]],)
        if head == 'const':
            return (sp.Rational(self.params[0].numerator, self.params[0].denominator),)
        if head in _SYMPY_UNARY:
            return (_SYMPY_UNARY[head](symbols[0]),)
        if head == 'power':
            r = self.params[0]
            return (symbols[0] ** sp.Rational(r.numerator, r.denominator),)
        if head == 'laurent':
            return (self.params[0].as_expr(symbols[0]),)
        if head in _LAW_FORMS:
            return (_LAW_FORMS[head](symbols[0], symbols[1]),)
        if head == 'tuple':
            return tuple(part.to_sympy(symbols)[0] for part in self.args)
        if head == 'compose':
            inner, outer = self.args
            values = inner.to_sympy(symbols)
            slots = sp.symbols(f'_k0:{len(values)}')
            return tuple(
                expr.subs(dict(zip(slots, values)), simultaneous=True)
                for expr in outer.to_sympy(slots)
            )
        raise ValueError(f'{self} has no closed form')

    def __str__(self):
        head = self.head
        if head == 'var':
            return 'id' if self.params == (0, 1) else f'x{self.params[0]}'
        if head == 'const':
            return f'const({_fmt(self.params[0])})'
        if head == 'power':
            return f'power({_fmt(self.params[0])})'
        if head == 'laurent':
            return f'laurent({self.params[0]})'
        if head == 'inverse':
            return f'inverse({self.args[0]})'
        if head == 'tuple':
            return '(' + ', '.join(str(part) for part in self.args) + ')'
        if head == 'compose':
            inner, outer = self.args
            return f'{outer} o {inner}'
        return head


def _fmt(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f'{q.numerator}/{q.denominator}'


# constructors

def unary(name):
    if name not in UNARY:
        raise ValueError(f'Unknown unary catalog entry {name!r}')
    return FuncExpr(name)


def law(name):
    if name not in BINARY:
        raise ValueError(f'Unknown binary catalog entry {name!r}')
    return FuncExpr(name)


def const(c):
    return FuncExpr('const', (Fraction(c),))


def power(r):
    r = Fraction(r)
    if r == 1:
        return identity()
    return FuncExpr('power', (r,))


def laurent(p):
    if p == LaurentPoly.monomial(1):
        return identity()
    return FuncExpr('laurent', (p,))


def var(i, n):
    if not 0 <= i < n:
        raise ArityMismatch(f'x{i} is not an input of a map with {n} inputs')
    return FuncExpr('var', (i, n))


def identity():
    return var(0, 1)


def tuple_of(*parts):
    if not parts:
        raise ArityMismatch('a tuple needs at least one component')
    n = parts[0].arity[0]
    for part in parts:
        if part.arity != (n, 1):
            raise ArityMismatch(f'tuple components must all map R^{n} to R, got {part}')
    return FuncExpr('tuple', (), tuple(parts))


def compose(inner, outer):
    """
    ``outer o inner``, simplified.

    Raises:
        ArityMismatch: If the outputs of ``inner`` do not feed ``outer``.
    """
    if inner.arity[1] != outer.arity[0]:
        raise ArityMismatch(f'{inner} has {inner.arity[1]} output(s) but {outer} takes {outer.arity[0]}')
    if inner.is_identity:
        return outer
    if outer.is_identity:
        return inner
    if inner.head == 'power' and outer.head == 'power':
        a, b = inner.params[0], outer.params[0]
        if a.denominator == 1 and b.denominator == 1:
            return power(a * b)
    if _INVERSES.get(inner.head) == outer.head and inner.head in ('exp', 'log'):
        return identity()
    return FuncExpr('compose', (), (inner, outer))


def inverse_of(func, branch=None):
    """
    The inverse of a unary map on one of its monotone branches.

    Args:
        func (FuncExpr): A unary catalog map.
        branch (tuple | None): ``(lo, hi, sign)`` with exact rational endpoints
            (None for infinite), used when no closed-form inverse exists.

    Raises:
        NotInvertible: For constants, non-unary maps and maps without a
            closed-form inverse when no branch is given.
    """
    if not func.is_unary:
        raise NotInvertible(f'{func} is not a map from R to R')
    if func.head == 'const':
        raise NotInvertible('a constant map is not invertible')
    if func.is_identity:
        return func
    if func.head in _INVERSES:
        return FuncExpr(_INVERSES[func.head])
    if func.head == 'sqrt':
        return power(2)
    if func.head == 'power':
        r = func.params[0]
        if r == 0:
            raise NotInvertible('power(0) is constant')
        return power(1 / r)
    if func.head == 'compose':
        inner, outer = func.args
        return compose(inverse_of(outer), inverse_of(inner))
    if func.head == 'laurent':
        p = func.params[0]
        if p.support and set(p.support) <= {0, 1} and p.coeff(1) != 0:
            a, b = p.coeff(1), p.coeff(0)
            return laurent(LaurentPoly({1: 1 / a, 0: -b / a}))
    if func.head == 'inverse':
        return func.args[0]
    if branch is None:
        raise NotInvertible(f'no closed-form inverse for {func}')
    return FuncExpr('inverse', tuple(branch), (func,))


# exact values

def _rational_root(q, n):
    """The exact n-th root of a rational, or None."""
    q = Fraction(q)
    if q < 0:
        if n % 2 == 0:
            return None
        root = _rational_root(-q, n)
        return None if root is None else -root
    num, num_exact = sp.integer_nthroot(q.numerator, n)
    den, den_exact = sp.integer_nthroot(q.denominator, n)
    if not (num_exact and den_exact):
        return None
    return Fraction(int(num), int(den))


def _int_power(x, k):
    result = QuadraticNumber(1)
    base = x if k >= 0 else x.reciprocal()
    for _ in range(abs(k)):
        result = result * base
    return result


def exact_value(func, x):
    """
    ``func(x)`` as a QuadraticNumber when it is exactly representable.

    Args:
        func (FuncExpr): A unary map.
        x (QuadraticNumber): The argument.

    Returns:
        QuadraticNumber | None: The value, or None if it is not a quadratic
        surd this module can certify (e.g. exp(1)).
    """
    x = QuadraticNumber.coerce(x)
    head = func.head
    if func.is_identity:
        return x
    if head == 'const':
        return QuadraticNumber(func.params[0])
    if x == 0 and head in _ZERO_AT_ZERO:
        return QuadraticNumber(0)
    if head in ('cosh', 'cos') and x == 0:
        return QuadraticNumber(1)
    if head in ('exp',) and x == 0:
        return QuadraticNumber(1)
    if head in ('log', 'acosh') and x == 1:
        return QuadraticNumber(0)
    if head == 'sqrt':
        if x.is_rational and x.a >= 0:
            return QuadraticNumber.sqrt(x.a)
        return None
    if head == 'power':
        r = func.params[0]
        if r.denominator == 1:
            if x == 0 and r < 0:
                return None
            return _int_power(x, r.numerator)
        if not x.is_rational or (x.a == 0 and r < 0):
            return None
        if r.denominator == 2 and x.a >= 0:
            return QuadraticNumber.sqrt(x.a ** r.numerator)
        root = _rational_root(x.a, r.denominator)
        return None if root is None else QuadraticNumber(root ** r.numerator)
    if head == 'laurent':
        p = func.params[0]
        if x == 0 and p.has_negative_exponents:
            return None
        return p(x)
    if head == 'compose':
        inner, outer = func.args
        middle = exact_value(inner, x)
        return None if middle is None else exact_value(outer, middle)
    return None


# interval evaluation

def iv_number(ctx, value):
    """A rational or QuadraticNumber as a certified mpmath interval."""
    value = QuadraticNumber.coerce(value)
    a = ctx.mpf(value.a.numerator) / value.a.denominator
    if value.is_rational:
        return a
    b = ctx.mpf(value.b.numerator) / value.b.denominator
    c = ctx.mpf(value.c.numerator) / value.c.denominator
    return a + b * ctx.sqrt(c)


def _iv_power(ctx, x, r):
    if r.denominator == 1:
        return x ** r.numerator
    exponent = ctx.mpf(r.numerator) / r.denominator
    if x > 0:
        return ctx.exp(exponent * ctx.ln(x))
    if x < 0 and r.denominator % 2 == 1:
        magnitude = ctx.exp(exponent * ctx.ln(-x))
        return -magnitude if r.numerator % 2 else magnitude
    return ctx.mpf(['-inf', '+inf'])


def _iv_inverse(ctx, func, x):
    """Certified bisection for the inverse of ``func`` on its recorded branch."""
    lo, hi, sign = func.params
    inner = func.args[0]

    def below(t, target):
        value = iv_eval(inner, ctx, ctx.mpf(t.numerator) / t.denominator)
        return (value < target) is True if sign > 0 else (value > target) is True

    def above(t, target):
        value = iv_eval(inner, ctx, ctx.mpf(t.numerator) / t.denominator)
        return (value > target) is True if sign > 0 else (value < target) is True

    def bracket(target, inside):
        left = Fraction(lo.a) if lo is not None else None
        right = Fraction(hi.a) if hi is not None else None
        if left is None:
            left = -1 if right is None else min(Fraction(-1), right - 1)
            while not below(left, target):
                left *= 2
        if right is None:
            right = max(Fraction(1), left + 1)
            while not above(right, target):
                right *= 2
        for _ in range(ctx.prec):
            mid = (left + right) / 2
            if inside(mid, target):
                if inside is below:
                    left = mid
                else:
                    right = mid
            elif inside is below:
                right = mid
            else:
                left = mid
        return left if inside is below else right

    target_lo = ctx.mpf(x.a) if sign > 0 else ctx.mpf(x.b)
    target_hi = ctx.mpf(x.b) if sign > 0 else ctx.mpf(x.a)
    left = bracket(target_lo, below)
    right = bracket(target_hi, above)
    return ctx.mpf([ctx.mpf(left.numerator) / left.denominator, ctx.mpf(right.numerator) / right.denominator])


def iv_eval(func, ctx, x):
    """
    Certified enclosure of ``func(x)``.

    Args:
        func (FuncExpr): A unary map.
        ctx (MPIntervalContext): The interval context (its precision applies).
        x (ivmpf): An enclosure of the argument.

    Returns:
        ivmpf: An interval containing ``func(t)`` for every t in x.
    """
    head = func.head
    if func.is_identity:
        return x
    if head == 'const':
        return iv_number(ctx, func.params[0])
    if head == 'exp':
        return ctx.exp(x)
    if head == 'log':
        return ctx.ln(x)
    if head in ('sinh', 'cosh'):
        e = ctx.exp(x)
        return (e - 1 / e) / 2 if head == 'sinh' else (e + 1 / e) / 2
    if head in ('tanh', 'coth'):
        e = ctx.exp(2 * x)
        return (e - 1) / (e + 1) if head == 'tanh' else (e + 1) / (e - 1)
    if head == 'sin':
        return ctx.sin(x)
    if head == 'cos':
        return ctx.cos(x)
    if head == 'tan':
        return ctx.tan(x)
    if head == 'cot':
        return ctx.cos(x) / ctx.sin(x)
    if head == 'asinh':
        return ctx.ln(x + ctx.sqrt(x ** 2 + 1))
    if head == 'acosh':
        return ctx.ln(x + ctx.sqrt(x ** 2 - 1))
    if head == 'atanh':
        return ctx.ln((1 + x) / (1 - x)) / 2
    if head == 'acoth':
        return ctx.ln((x + 1) / (x - 1)) / 2
    if head == 'asin':
        return ctx.atan2(x, ctx.sqrt(1 - x ** 2))
    if head == 'acos':
        return ctx.atan2(ctx.sqrt(1 - x ** 2), x)
    if head == 'atan':
        return ctx.atan2(x, ctx.one)
    if head == 'acot':
        return ctx.atan2(ctx.one, x)
    if head == 'sqrt':
        return ctx.sqrt(x)
    if head == 'power':
        return _iv_power(ctx, x, func.params[0])
    if head == 'laurent':
        total = ctx.zero
        for k, c in func.params[0].terms:
            total = total + (ctx.mpf(c.numerator) / c.denominator) * x ** k
        return total
    if head == 'compose':
        inner, outer = func.args
        return iv_eval(outer, ctx, iv_eval(inner, ctx, x))
    if head == 'inverse':
        return _iv_inverse(ctx, func, x)
    raise ValueError(f'{func} is not a unary map')
