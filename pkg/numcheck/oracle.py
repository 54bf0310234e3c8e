"""
The floating-point identity oracle.

Every analytic identity the addition-law proofs lean on is checked here on a
deterministic Halton grid: the nine addition formulas, the partial
derivatives of each two-variable law against the coefficient functions
written out by hand, the symmetrized and subtracted coefficients, and the
substitutions that reduce a law to a power identity. Identities that mention
the unknown d are checked at the level of their coefficient functions.

Residuals are relative to ``max(1, |value|)``.
"""
import logging
import re
import zlib
from dataclasses import dataclass

import numpy as np
import sympy as sp
from scipy.stats import qmc

from derivation_closure.conf import closure_setting
from deduction.catalog import ADDITION_LAWS, BINARY, UNARY, law, unary

from .exceptions import DomainViolation, UnknownCase
from .expressions import Expr, compile_outputs

logger = logging.getLogger(__name__)

x, y, u, v, r = sp.symbols('x y u v r')


@dataclass(frozen=True)
class IdentityReport:
    """
    Attributes:
        identity (str): What was checked, e.g. ``"Mak-(iv)"`` or ``"bor"``.
        samples (int): Sample points per check.
        max_abs (float): Largest absolute residual.
        max_rel (float): Largest residual relative to ``max(1, |value|)``.
        passed (bool): ``max_rel < tol``.
        worst (dict | None): The check and point where ``max_rel`` occurred.
    """

    identity: str
    samples: int
    max_abs: float
    max_rel: float
    passed: bool
    worst: dict = None

    def as_json(self):
        return {
            'identity': self.identity,
            'samples': self.samples,
            'max_abs': self.max_abs,
            'max_rel': self.max_rel,
            'passed': self.passed,
            'worst': self.worst,
        }


@dataclass(frozen=True)
class Check:
    """``lhs == rhs`` on ``box`` (one ``(lo, hi)`` per symbol, before the margin)."""

    name: str
    symbols: tuple
    lhs: object
    rhs: object
    box: tuple


def halton_grid(identity, samples, box, margin=None):
    """
    A scrambled Halton sample of ``box`` shrunk by ``margin`` of its width.

    The scrambling seed is the CRC-32 of ``identity``, so reports are
    reproducible.
    """
    margin = float(closure_setting('SAMPLE_MARGIN') if margin is None else margin)
    lo = np.array([a for a, _ in box], dtype=float)
    hi = np.array([b for _, b in box], dtype=float)
    width = hi - lo
    sampler = qmc.Halton(d=len(box), scramble=True, seed=zlib.crc32(identity.encode()))
    return qmc.scale(sampler.random(samples), lo + margin * width, hi - margin * width)


def _residuals(check, points):
    evaluate = compile_outputs(check.symbols, (check.lhs, check.rhs))
    lhs, rhs = evaluate(*points.T)
    if not (np.all(np.isfinite(lhs)) and np.all(np.isfinite(rhs))):
        bad = int(np.argmin(np.isfinite(lhs) & np.isfinite(rhs)))
        raise DomainViolation(f'{check.name} is undefined at {points[bad].tolist()}', check=check.name)
    absolute = np.abs(lhs - rhs)
    return absolute, absolute / np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))


def run_checks(identity, checks, samples, tol):
    """Evaluate every check of one identity and fold the residuals into a report."""
    max_abs, max_rel, worst = 0.0, 0.0, None
    for check in checks:
        points = halton_grid(identity, samples, check.box)
        absolute, relative = _residuals(check, points)
        logger.debug('%s / %s: max_rel %.3g', identity, check.name, relative.max())
        max_abs = max(max_abs, float(absolute.max()))
        at = int(np.argmax(relative))
        if worst is None or relative[at] > max_rel:
            max_rel = float(relative[at])
            worst = {'check': check.name, 'point': [float(c) for c in points[at]]}
    report = IdentityReport(identity, samples, max_abs, max_rel, max_rel < tol, worst)
    if not report.passed:
        logger.info('%s failed: max_rel %.3g at %s', identity, max_rel, worst)
    return report


# the nine cases

def _coefficients(law_name, b, c, box):
    """The partials of a law against the coefficients written out by hand."""
    g = law(law_name).to_sympy((u, v))[0]
    return [
        Check(f'{law_name}: d/du', (u, v), b, sp.diff(g, u), box),
        Check(f'{law_name}: d/dv', (u, v), c, sp.diff(g, v), box),
    ]


def _addition(fn, law_name, box):
    f = unary(fn).to_sympy((x,))[0]
    g = law(law_name).to_sympy((f, f.subs(x, y)))[0]
    return Check(f'{fn}(x + y) = {law_name}({fn}(x), {fn}(y))', (x, y), f.subs(x, x + y), g, box)


def _symmetrized(law_name, half, b, c, box):
    """``G(u, v) + G(u, -v) = 2 h(u, v)`` and its coefficients (d(-v) = -d(v))."""
    g = law(law_name).to_sympy((u, v))[0]
    h = law(half).to_sympy((u, v))[0]
    mirrored = {v: -v}
    return [
        Check(f'{law_name}(u, v) + {law_name}(u, -v) = 2 {half}', (u, v), g + g.subs(mirrored), 2 * h, box),
        Check(f'{half}: d/du', (u, v), (b + b.subs(mirrored)) / 2, sp.diff(h, u), box),
        Check(f'{half}: d/dv', (u, v), (c - c.subs(mirrored)) / 2, sp.diff(h, v), box),
    ]


def _section(radicand, box):
    """d(sqrt(radicand(v))) at fixed u, as the coefficient of d(v)."""
    w = sp.sqrt(radicand)
    coefficient = sp.diff(radicand, v) / (2 * w)
    return Check(f'd(sqrt({radicand})) / d(v)', (v,), coefficient, sp.diff(w, v), (box,))


def _substitution(law_name, b, c, v_of_u, box):
    """``d/du G(u, V(u)) = B + C V'(u)`` along a substitution."""
    g = law(law_name).to_sympy((u, v))[0]
    along = {v: v_of_u}
    lhs = b.subs(along) + c.subs(along) * sp.diff(v_of_u, u)
    return Check(f'{law_name} along v = {v_of_u}', (u, r), lhs, sp.diff(g.subs(along), u), box)


def _case_checks():
    sq1pu, sq1pv = sp.sqrt(1 + u ** 2), sp.sqrt(1 + v ** 2)
    sq1mu, sq1mv = sp.sqrt(1 - u ** 2), sp.sqrt(1 - v ** 2)
    squm1, sqvm1 = sp.sqrt(u ** 2 - 1), sp.sqrt(v ** 2 - 1)
    checks = {
        'i': [
            _addition('exp', 'g_exp', ((-2, 2), (-2, 2))),
            *_coefficients('g_exp', v, u, ((0.2, 4), (0.2, 4))),
        ],
        'ii': [
            _addition('sinh', 'g_sinh', ((-2, 2), (-2, 2))),
            *_coefficients('g_sinh', sq1pv + u * v / sq1pu, u * v / sq1pv + sq1pu, ((-3, 3), (-3, 3))),
            *_symmetrized('g_sinh', 'h_sinh', sq1pv + u * v / sq1pu, u * v / sq1pv + sq1pu, ((-3, 3), (-3, 3))),
            _section(1 + v ** 2, (-3, 3)),
        ],
        'iii': [
            _addition('cosh', 'g_cosh', ((0.1, 2), (0.1, 2))),
            *_coefficients('g_cosh', v + u * sqvm1 / squm1, u + v * squm1 / sqvm1, ((1.1, 4), (1.1, 4))),
            # on the diagonal G(u, u) = 2u^2 - 1
            Check('g_cosh on the diagonal', (u,), (v + u * sqvm1 / squm1 + u + v * squm1 / sqvm1).subs(v, u),
                  sp.diff(2 * u ** 2 - 1, u), ((1.1, 4),)),
        ],
        'iv': [
            _addition('tanh', 'g_tanh', ((-2, 2), (-2, 2))),
            *_coefficients('g_tanh', (1 - v ** 2) / (1 + u * v) ** 2, (1 - u ** 2) / (1 + u * v) ** 2,
                           ((-0.9, 0.9), (-0.9, 0.9))),
            _substitution('g_tanh', (1 - v ** 2) / (1 + u * v) ** 2, (1 - u ** 2) / (1 + u * v) ** 2, r / u,
                          ((0.2, 0.9), (0.05, 0.15))),
        ],
        'v': [
            _addition('coth', 'g_coth', ((0.2, 2), (0.2, 2))),
            *_coefficients('g_coth', (v ** 2 - 1) / (u + v) ** 2, (u ** 2 - 1) / (u + v) ** 2,
                           ((1.1, 3), (1.1, 3))),
            _substitution('g_coth', (v ** 2 - 1) / (u + v) ** 2, (u ** 2 - 1) / (u + v) ** 2, r - u,
                          ((1.1, 2), (3.2, 4))),
        ],
        'vi': [
            _addition('sin', 'g_sin', ((-0.75, 0.75), (-0.75, 0.75))),
            *_coefficients('g_sin', sq1mv - u * v / sq1mu, -u * v / sq1mv + sq1mu, ((-0.9, 0.9), (-0.9, 0.9))),
            *_symmetrized('g_sin', 'h_sin', sq1mv - u * v / sq1mu, -u * v / sq1mv + sq1mu,
                          ((-0.9, 0.9), (-0.9, 0.9))),
            _section(1 - v ** 2, (-0.9, 0.9)),
        ],
        'vii': [
            _addition('cos', 'g_cos', ((0.1, 3), (0.1, 3))),
            *_coefficients('g_cos', v + u * sq1mv / sq1mu, u + v * sq1mu / sq1mv, ((-0.9, 0.9), (-0.9, 0.9))),
        ],
        'viii': [
            _addition('tan', 'g_tan', ((-0.75, 0.75), (-0.75, 0.75))),
            *_coefficients('g_tan', (1 + v ** 2) / (1 - u * v) ** 2, (1 + u ** 2) / (1 - u * v) ** 2,
                           ((-0.9, 0.9), (-0.9, 0.9))),
            _substitution('g_tan', (1 + v ** 2) / (1 - u * v) ** 2, (1 + u ** 2) / (1 - u * v) ** 2, r / u,
                          ((0.2, 0.9), (0.05, 0.15))),
        ],
        'ix': [
            _addition('cot', 'g_cot', ((0.1, 1.5), (0.1, 1.5))),
            *_coefficients('g_cot', (v ** 2 + 1) / (u + v) ** 2, (u ** 2 + 1) / (u + v) ** 2, ((0.1, 3), (0.1, 3))),
            _substitution('g_cot', (v ** 2 + 1) / (u + v) ** 2, (u ** 2 + 1) / (u + v) ** 2, r - u,
                          ((0.5, 2), (3, 4))),
        ],
    }
    # subtracting the identities at (u, v) and (u, -v) leaves the product rule
    b, c = v + u * sq1mv / sq1mu, u + v * sq1mu / sq1mv
    g = law('g_cos').to_sympy((u, v))[0]
    box = ((-0.9, 0.9), (-0.9, 0.9))
    checks['vii'] += [
        Check('g_cos(u, v) - g_cos(u, -v) = 2uv', (u, v), g - g.subs(v, -v), 2 * u * v, box),
        Check('mul: d/du', (u, v), (b - b.subs(v, -v)) / 2, v, box),
        Check('mul: d/dv', (u, v), (c + c.subs(v, -v)) / 2, u, box),
    ]
    return checks


CASE_CHECKS = _case_checks()
CASES = tuple(ADDITION_LAWS)

_CASE_ID = re.compile(r'^(?:Mak-)?\(?(?P<case>[ivx]+)\)?$')


def case_key(case_id):
    """
    ``"Mak-(iv)"``, ``"Mak-iv"`` and ``"iv"`` all name case iv.

    Raises:
        UnknownCase: For anything else.
    """
    match = _CASE_ID.match(str(case_id).strip())
    if match is None or match['case'] not in CASE_CHECKS:
        raise UnknownCase(case_id)
    return match['case']


def verify_addition_identity(case_id, samples=None, tol=None):
    """
    Check the addition formula of one case and every coefficient identity its
    proof uses.

    Args:
        case_id (str): ``"Mak-(i)"`` .. ``"Mak-(ix)"`` (or the short forms).
        samples (int | None): Points per check; defaults to ``IDENTITY_SAMPLES``.
        tol (float | None): Relative tolerance; defaults to ``IDENTITY_TOL``.

    Raises:
        UnknownCase: If ``case_id`` names no case.
        ValueError: If ``samples`` < 1.

    Returns:
        IdentityReport
    """
    case = case_key(case_id)
    samples, tol = _defaults(samples, tol)
    return run_checks(f'Mak-({case})', CASE_CHECKS[case], samples, tol)


def verify_bor_identity(samples=None, tol=None):
    """d(sqrt(1 - x^2)) = -x / sqrt(1 - x^2) d(x) on ]-1, 1[, as coefficients."""
    samples, tol = _defaults(samples, tol)
    w = sp.sqrt(1 - x ** 2)
    check = Check('d(sqrt(1 - x^2)) / d(x)', (x,), -x / w, sp.diff(w, x), ((-1, 1),))
    return run_checks('bor', [check], samples, tol)


def _defaults(samples, tol):
    samples = closure_setting('IDENTITY_SAMPLES') if samples is None else int(samples)
    if samples < 1:
        raise ValueError('at least one sample is needed')
    return samples, closure_setting('IDENTITY_TOL') if tol is None else float(tol)


# finite differences

def grad_check(expr, point, h=None, tol=None):
    """
    Compare every symbolic partial of ``expr`` with a central difference.

    Args:
        expr (Expr | FuncExpr): The map.
        point (Sequence[float]): Where to differentiate.
        h (float | None): Base step, scaled by ``max(1, |x_i|)`` per
            coordinate; defaults to ``FD_STEP``.
        tol (float | None): Relative tolerance; defaults to ``GRAD_TOL``.

    Raises:
        DomainViolation: If ``expr`` or a partial is undefined at the point or
            at one of the shifted points.

    Returns:
        IdentityReport: One sample; ``worst`` names the output and input.
    """
    if not isinstance(expr, Expr):
        expr = Expr.from_func(expr)
    h = closure_setting('FD_STEP') if h is None else float(h)
    tol = closure_setting('GRAD_TOL') if tol is None else float(tol)
    point = np.asarray(point, dtype=float)
    n, m = expr.arity
    if point.shape != (n,):
        raise ValueError(f'{expr} takes {n} input(s), got a point of shape {point.shape}')

    expr.at(point)
    symbolic = expr.jacobian(*point)
    if not np.all(np.isfinite(symbolic)):
        raise DomainViolation(f'a partial of {expr} is undefined at {point.tolist()}', point=point.tolist())
    max_abs, max_rel, worst = 0.0, 0.0, None
    for i in range(n):
        step = h * max(1.0, abs(point[i]))
        shift = np.zeros(n)
        shift[i] = step
        difference = (expr.at(point + shift) - expr.at(point - shift)) / (2 * step)
        for j in range(m):
            exact = float(symbolic[j * n + i])
            absolute = abs(exact - float(difference[j]))
            relative = absolute / max(1.0, abs(exact))
            max_abs = max(max_abs, absolute)
            if worst is None or relative > max_rel:
                max_rel = relative
                worst = {'check': f'output {j}, input {i}', 'point': point.tolist()}
    return IdentityReport(f'grad {expr}', 1, max_abs, max_rel, max_rel < tol, worst)


# interiors on which every catalog entry is smooth
CATALOG_BOXES = {
    'exp': ((-2, 2),), 'log': ((0.2, 4),), 'sinh': ((-2, 2),), 'cosh': ((-2, 2),),
    'tanh': ((-2, 2),), 'coth': ((0.2, 2),), 'sin': ((-3, 3),), 'cos': ((-3, 3),),
    'tan': ((-1.2, 1.2),), 'cot': ((0.2, 2.9),), 'asinh': ((-3, 3),), 'acosh': ((1.2, 4),),
    'atanh': ((-0.9, 0.9),), 'acoth': ((1.2, 4),), 'asin': ((-0.9, 0.9),), 'acos': ((-0.9, 0.9),),
    'atan': ((-3, 3),), 'acot': ((0.2, 3),), 'sqrt': ((0.2, 4),),
    'g_exp': ((0.2, 4), (0.2, 4)), 'g_sinh': ((-3, 3), (-3, 3)), 'g_cosh': ((1.1, 4), (1.1, 4)),
    'g_tanh': ((-0.9, 0.9), (-0.9, 0.9)), 'g_coth': ((1.1, 3), (1.1, 3)),
    'g_sin': ((-0.9, 0.9), (-0.9, 0.9)), 'g_cos': ((-0.9, 0.9), (-0.9, 0.9)),
    'g_tan': ((-0.9, 0.9), (-0.9, 0.9)), 'g_cot': ((0.1, 3), (0.1, 3)),
    'h_sinh': ((-3, 3), (-3, 3)), 'h_sin': ((-3, 3), (-0.9, 0.9)),
    'add': ((-3, 3), (-3, 3)), 'mul': ((-3, 3), (-3, 3)), 'div': ((-3, 3), (0.2, 3)),
}


def grad_check_catalog(samples=100, tol=None, names=None):
    """
    ``grad_check`` at ``samples`` interior points of every catalog entry.

    Returns:
        list[IdentityReport]: One report per entry, folded over its points.
    """
    tol = closure_setting('GRAD_TOL') if tol is None else tol
    reports = []
    for name in names or UNARY + BINARY:
        expr = Expr.from_func(unary(name) if name in UNARY else law(name))
        identity = f'grad {name}'
        max_abs, max_rel, worst = 0.0, 0.0, None
        for point in halton_grid(identity, samples, CATALOG_BOXES[name]):
            report = grad_check(expr, point, tol=tol)
            max_abs = max(max_abs, report.max_abs)
            if worst is None or report.max_rel > max_rel:
                max_rel, worst = report.max_rel, report.worst
        reports.append(IdentityReport(identity, samples, max_abs, max_rel, max_rel < tol, worst))
    return reports
