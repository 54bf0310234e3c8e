"""
Differentiable expressions for the floating-point oracle.

An ``Expr`` holds sympy outputs over named inputs; partial derivatives are
built symbolically and everything is evaluated through ``sympy.lambdify`` on
numpy arrays, so a whole sample grid is one call.
"""
import logging

import numpy as np
import sympy as sp

from .exceptions import DomainViolation

logger = logging.getLogger(__name__)

# numpy has no cot/coth/acot/acoth
_NUMPY_FORMS = (
    (sp.cot, lambda a: 1 / sp.tan(a)),
    (sp.coth, lambda a: 1 / sp.tanh(a)),
    (sp.acot, lambda a: sp.atan(1 / a)),
    (sp.acoth, lambda a: sp.atanh(1 / a)),
)


def numeric_form(expr):
    """``expr`` rewritten with functions numpy knows."""
    for cls, form in _NUMPY_FORMS:
        expr = expr.replace(cls, form)
    return expr


def compile_outputs(symbols, outputs):
    """
    Vectorised evaluator for a list of sympy expressions.

    Returns:
        Callable: Takes one array per symbol and returns a float array of
        shape ``(len(outputs), *broadcast shape)``; undefined values are nan.
    """
    fn = sp.lambdify(symbols, [numeric_form(sp.sympify(out)) for out in outputs], modules='numpy')

    def evaluate(*points):
        arrays = [np.asarray(p, dtype=float) for p in points]
        shape = np.broadcast(*arrays).shape if arrays else ()
        with np.errstate(all='ignore'):
            values = fn(*arrays)
        return np.array([np.broadcast_to(np.asarray(v, dtype=float), shape) for v in values])

    return evaluate


class Expr:
    """
    A map from R^n to R^m given by sympy expressions.

    Attributes:
        outputs (tuple[sympy.Expr]): One expression per output.
        symbols (tuple[sympy.Symbol]): The inputs, in order.
        name (str): Label used in reports.
    """

    def __init__(self, outputs, symbols, name=None):
        if isinstance(outputs, (sp.Basic, int, float)):
            outputs = (outputs,)
        self.outputs = tuple(sp.sympify(out) for out in outputs)
        self.symbols = tuple(symbols)
        self.name = name or ', '.join(str(out) for out in self.outputs)
        self._values = compile_outputs(self.symbols, self.outputs)
        self._jacobian = None

    @classmethod
    def from_func(cls, func):
        """The sympy form of a catalog map (see ``FuncExpr.to_sympy``)."""
        symbols = sp.symbols(f'x0:{func.arity[0]}')
        return cls(func.to_sympy(symbols), symbols, str(func))

    @classmethod
    def parse(cls, text, names=('x',)):
        """
        A free-form arithmetic expression.

        Args:
            text (str): sympy syntax, e.g. ``"u*sqrt(1 - v**2)"``.
            names (Sequence[str]): The input names, in order.

        Raises:
            ValueError: If the text does not parse or mentions other names.
        """
        symbols = tuple(sp.Symbol(name) for name in names)
        try:
            expr = sp.sympify(text, locals={s.name: s for s in symbols})
        except (sp.SympifyError, SyntaxError, TypeError) as e:
            raise ValueError(f'cannot parse {text!r}: {e}') from e
        stray = expr.free_symbols - set(symbols)
        if stray:
            raise ValueError(f'{text!r} uses unknown names {sorted(str(s) for s in stray)}')
        return cls(expr, symbols, text)

    @property
    def arity(self):
        return len(self.symbols), len(self.outputs)

    def partial(self, output, wrt):
        return sp.diff(self.outputs[output], self.symbols[wrt])

    @property
    def jacobian(self):
        """Evaluator of all partials, row-major: output j, input i at ``j * n + i``."""
        if self._jacobian is None:
            n, m = self.arity
            partials = [self.partial(j, i) for j in range(m) for i in range(n)]
            self._jacobian = compile_outputs(self.symbols, partials)
        return self._jacobian

    def __call__(self, *points):
        return self._values(*points)

    def at(self, point):
        """
        Values at one point.

        Raises:
            DomainViolation: If some output is undefined or infinite there.
        """
        values = self._values(*point)
        if not np.all(np.isfinite(values)):
            raise DomainViolation(f'{self.name} is undefined at {list(point)}', point=[float(x) for x in point])
        return values

    def __str__(self):
        return self.name
