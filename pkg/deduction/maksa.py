"""
The addition-law dispatcher.

For each of exp, sinh, cosh, tanh, coth, sin, cos, tan and cot, an interval
hypothesis on ]alpha, beta[ is checked against the function's row and then
replayed into a standard derivation: the addition law is transferred to a
two-variable map, d(1) = 0 is extracted at a rational point, and the
two-variable identity is reduced to the product rule or to a power identity.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy as sp

from conic.density import ConicSet, dense_rational_point
from exactnum.numbers import OpenInterval, QuadraticNumber, format_rational
from laurent.exceptions import IntervalContainsZero
from laurent.polynomials import LaurentPoly
from laurent.sturm import nonvanishing_on

from .bounds import Sym, inner_bounds, less, outer_bounds, rational_between, sym_min
from .catalog import compose, laurent, law, power, unary
from .domains import DomainSet, Span
from .exceptions import DomainNotCovered, HypothesisFailed, ShapeMismatch, UndecidableComparison
from .images import image_span
from .rules import (
    CASE_OF, LAW_OF, add_hypothesis, apply_addition_theorem, conclude_from_leibniz,
    conclude_from_power, localize_leibniz,
)
from .store import U, Fact, FactStore, Relation, StepResult, d1_fact, step
from .verdicts import Verdict

logger = logging.getLogger(__name__)

V = sp.Symbol('v')

ROW_CITATION = 'addition-law theorem: interval hypotheses under which derivating f forces a standard derivation'
SYMMETRIZE = 'adding the identities at (u, v) and (u, -v): d(u h(v)) with h(v) = sqrt(1 +- v^2)'
SUBTRACT = 'subtracting the identities at (u, v) and (u, -v): d(uv) = v d(u) + u d(v)'
D1_AT = 'at a rational point with rational square roots every term is a multiple of d(1)'
SECTION = 'fixing u = u0 != 0 with d(1) = 0: d(sqrt(1 +- v^2)) = +-v / sqrt(1 +- v^2) d(v)'
SUBSTITUTE_W = 'writing w = sqrt(1 +- v^2) turns the symmetrized identity into the product rule'
SUBSTITUTE = 'substituting v = V(u) and expanding d(V(u)) by additivity'
RELATION_D1 = 'at rational u every d(u^k) is u^k d(1)'
DROP_D1 = 'with d(1) = 0 the d(1) term vanishes'
RELATION_POWER = 'a d(u^k) + b d(u) = 0 with b = -a k u^(k-1) and a != 0 is d(u^k) = k u^(k-1) d(u)'

PI = Sym.pi(1)

_INEQUALITIES = {
    '2*alpha<beta': lambda a, b: (2 * a, b),
    'alpha<2*beta': lambda a, b: (a, 2 * b),
    'alpha<0': lambda a, b: (a, 0),
    '0<beta': lambda a, b: (0, b),
    '0<2*alpha': lambda a, b: (0, 2 * a),
    '2*beta<0': lambda a, b: (2 * b, 0),
    '2*alpha<pi': lambda a, b: (2 * a, PI),
    'pi<beta': lambda a, b: (PI, b),
    'alpha<-pi': lambda a, b: (a, -PI),
    '-pi<2*beta': lambda a, b: (-PI, 2 * b),
    '-pi<2*alpha': lambda a, b: (-PI, 2 * a),
    '2*beta<pi': lambda a, b: (2 * b, PI),
    'beta<pi': lambda a, b: (b, PI),
    '-pi<alpha': lambda a, b: (-PI, a),
}

# alternatives; each is a chain of strict inequalities that must all hold
ROWS = {
    'exp': (('2*alpha<beta', 'alpha<2*beta'),),
    'sinh': (('alpha<0', '0<beta'),),
    'cosh': (('0<2*alpha', '2*alpha<beta'), ('alpha<2*beta', '2*beta<0')),
    'tanh': (('alpha<0', '0<beta'),),
    'coth': (('0<2*alpha', '2*alpha<beta'), ('alpha<2*beta', '2*beta<0')),
    'sin': (('alpha<0', '0<beta'),),
    'cos': (('0<2*alpha', '2*alpha<pi', 'pi<beta'), ('alpha<-pi', '-pi<2*beta', '2*beta<0')),
    'tan': (('-pi<2*alpha', '2*alpha<beta', 'alpha<2*beta', '2*beta<pi'),),
    'cot': (('0<2*alpha', '2*alpha<beta', 'beta<pi'), ('-pi<alpha', 'alpha<2*beta', '2*beta<0')),
}

SYMMETRIZED = {'g_sinh': 'h_sinh', 'g_sin': 'h_sin'}
SECTION_POLY = {'h_sinh': LaurentPoly({0: 1, 2: 1}), 'h_sin': LaurentPoly({0: 1, 2: -1})}


def check_row(fn, alpha, beta):
    """
    Test the interval hypothesis of a catalog function.

    Returns:
        tuple: ``(index, failed)``: the alternative that holds (failed is '')
        or, when none does, the one with the most satisfied inequalities and
        its first violated inequality.
    """
    closest = None
    for index, alternative in enumerate(ROWS[fn]):
        failed = [name for name in alternative if not less(*_INEQUALITIES[name](alpha, beta))]
        if not failed:
            return index, ''
        satisfied = len(alternative) - len(failed)
        if closest is None or satisfied > closest[0]:
            closest = (satisfied, index, failed[0])
    return closest[1], closest[2]


def gamma_delta(alpha, beta):
    """
    The window ]gamma, delta[ with ]gamma, delta[ + ]gamma, delta[ inside ]alpha, beta[.

    Raises:
        HypothesisFailed: If 2*alpha < beta or alpha < 2*beta fails.

    Returns:
        tuple[Fraction, Fraction]: ``(max(alpha, 2 alpha) / 2, min(beta, 2 beta) / 2)``.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not 2 * alpha < beta:
        raise HypothesisFailed('2*alpha<beta')
    if not alpha < 2 * beta:
        raise HypothesisFailed('alpha<2*beta')
    return max(alpha, 2 * alpha) / 2, min(beta, 2 * beta) / 2


def _law_parts(func):
    g = func.to_sympy((U, V))[0]
    return g, sp.diff(g, U), sp.diff(g, V)


def _law_box(fact, heads):
    if fact.func.head not in heads or fact.domain.dim != 2 or len(fact.domain.boxes) != 1:
        raise ShapeMismatch(f'need one of {", ".join(heads)} on a single box, got {fact}')
    return fact.domain.boxes[0]


def _symmetric(span):
    return span.lo == -span.hi


def _rational(value):
    return Fraction(int(value.p), int(value.q))


@step('mak-row', 'Mak', ROW_CITATION)
def row_step(fact, fn, alpha, beta):
    if fact.func != unary(fn) or not fact.domain.covers(Span(alpha, beta)):
        raise ShapeMismatch(f'the row of {fn} needs d to derivate {fn} on ]{alpha}, {beta}[')
    index, failed = check_row(fn, alpha, beta)
    if failed:
        return StepResult(verdict=Verdict.inapplicable('HypothesisFailed', failed),
                          note=f'{failed} fails for alpha = {format_rational(alpha)}, beta = {format_rational(beta)}')
    return StepResult(note=' and '.join(ROWS[fn][index]) + ' hold')


@step('symmetrize', 'Mak', SYMMETRIZE)
def symmetrize_step(fact):
    box = _law_box(fact, tuple(SYMMETRIZED))
    if not _symmetric(box.spans[1]):
        raise ShapeMismatch(f'{box.spans[1]} is not symmetric about 0')
    return StepResult(Fact(law(SYMMETRIZED[fact.func.head]), fact.domain),
                      note='G(u, v) + G(u, -v) = 2 u sqrt(1 +- v^2)')


@step('subtract', 'Mak', SUBTRACT)
def subtract_step(fact):
    box = _law_box(fact, ('g_cos',))
    if not _symmetric(box.spans[1]):
        raise ShapeMismatch(f'{box.spans[1]} is not symmetric about 0')
    return StepResult(Fact(law('mul'), fact.domain), note='G(u, v) - G(u, -v) = 2uv')


@step('d1-zero-at', 'Mak', D1_AT)
def d1_zero_at_step(fact, s, t):
    box = _law_box(fact, ('g_cosh', 'h_sinh', 'h_sin', 'g_coth', 'g_cot', 'g_tanh', 'g_tan', 'g_exp'))
    if not (box.spans[0].contains(s) and box.spans[1].contains(t)):
        raise ShapeMismatch(f'({s}, {t}) is not in {box}')
    values = [part.subs({U: sp.Rational(s), V: sp.Rational(t)}) for part in _law_parts(fact.func)]
    if not all(value.is_Rational for value in values):
        raise ShapeMismatch(f'({s}, {t}) is not a rational point of {fact.func}')
    g, b, c = values
    coefficient = g - sp.Rational(s) * b - sp.Rational(t) * c
    if coefficient == 0:
        raise ShapeMismatch(f'the d(1) coefficient vanishes at ({s}, {t})')
    note = f'at (u, v) = ({format_rational(s)}, {format_rational(t)}): ({coefficient}) d(1) = 0'
    return StepResult(d1_fact(), Verdict.d1_zero(), note)


@step('section', 'Mak', SECTION)
def section_step(fact, d1, u0):
    box = _law_box(fact, tuple(SECTION_POLY))
    if d1 != d1_fact():
        raise ShapeMismatch(f'{d1} is not d(1) = 0')
    if u0 == 0 or not box.spans[0].contains(u0):
        raise ShapeMismatch(f'u0 = {u0} must be a nonzero point of {box.spans[0]}')
    section = compose(laurent(SECTION_POLY[fact.func.head]), unary('sqrt'))
    return StepResult(Fact(section, DomainSet.of(box.spans[1])), note=f'u0 = {format_rational(u0)}')


@step('substitute-w', 'Mak', SUBSTITUTE_W)
def substitute_w_step(fact, section):
    box = _law_box(fact, tuple(SECTION_POLY))
    expected = compose(laurent(SECTION_POLY[fact.func.head]), unary('sqrt'))
    v_span = box.spans[1]
    if section.func != expected or not section.domain.covers(v_span) or not _symmetric(v_span):
        raise ShapeMismatch(f'{section} is not the section of {fact.func} on {v_span}')
    w_span = image_span(expected, Span(0, v_span.hi))
    return StepResult(Fact(law('mul'), DomainSet.product(box.spans[0], w_span)),
                      note=f'v in ]0, {v_span.hi}[ gives w in {w_span}')


@step('substitute', 'Mak', SUBSTITUTE)
def substitute_step(fact, span, v_of_u):
    box = _law_box(fact, ('g_cosh', 'g_tanh', 'g_coth', 'g_tan', 'g_cot', 'g_exp', 'mul'))
    if not box.spans[0].covers(span):
        raise ShapeMismatch(f'{span} is not inside {box.spans[0]}')
    if not box.spans[1].covers(image_span(laurent(v_of_u), span)):
        raise ShapeMismatch(f'v = {v_of_u} leaves {box.spans[1]} on {span}')
    v_expr = v_of_u.as_expr(U)
    g, b, c = (sp.cancel(part.subs(V, v_expr)) for part in _law_parts(fact.func))
    try:
        g_poly = LaurentPoly.from_expr(g)
    except (ValueError, TypeError, sp.PolynomialError) as e:
        raise ShapeMismatch(f'G(u, {v_of_u}) = {g} is not a Laurent polynomial') from e
    coeffs = {k: sp.Rational(q.numerator, q.denominator) for k, q in g_poly.terms}
    coeffs[1] = coeffs.get(1, 0) - b
    for k, q in v_of_u.terms:
        coeffs[k] = coeffs.get(k, 0) - c * sp.Rational(q.numerator, q.denominator)
    return StepResult(Relation.build(coeffs, span), note=f'v = {v_of_u}, G(u, v) = {g_poly}')


@step('relation-d1-zero', 'Mak', RELATION_D1)
def relation_d1_zero_step(relation, u0):
    if not relation.span.contains(u0):
        raise ShapeMismatch(f'u0 = {u0} is not in {relation.span}')
    point = sp.Rational(u0)
    total = sp.nsimplify(sum(c.subs(U, point) * point ** k for k, c in relation.coeffs))
    if not total.is_Rational or total == 0:
        raise ShapeMismatch(f'the d(1) coefficient at u0 = {u0} is {total}')
    return StepResult(d1_fact(), Verdict.d1_zero(), f'at u0 = {format_rational(u0)}: ({total}) d(1) = 0')


@step('drop-d1', 'Mak', DROP_D1)
def drop_d1_step(relation, d1):
    if d1 != d1_fact():
        raise ShapeMismatch(f'{d1} is not d(1) = 0')
    coeffs = {k: c for k, c in relation.coeffs if k != 0}
    return StepResult(Relation.build(coeffs, relation.span))


def _nonvanishing(expr, span):
    num, den = sp.fraction(sp.cancel(expr))
    hull = OpenInterval(*outer_bounds(span.lo, span.hi))
    for part in (num, den):
        try:
            poly = LaurentPoly.from_expr(part)
            if not nonvanishing_on(poly, hull):
                return False
        except (ValueError, TypeError, sp.PolynomialError, IntervalContainsZero):
            return False
    return True


@step('relation-to-power', 'Mak', RELATION_POWER)
def relation_to_power_step(relation):
    coeffs = relation.coeff_dict
    others = [k for k in coeffs if k != 1]
    if 1 not in coeffs or len(others) != 1 or others[0] == 0:
        raise ShapeMismatch(f'{relation} is not of the form a d(u^k) + b d(u) = 0')
    k = others[0]
    a, b = coeffs[k], coeffs[1]
    if sp.cancel(b + k * U ** (k - 1) * a) != 0:
        raise ShapeMismatch(f'{relation} is not a multiple of d(u^{k}) = {k} u^{k - 1} d(u)')
    if not _nonvanishing(a, relation.span):
        raise ShapeMismatch(f'{a} may vanish on {relation.span}')
    return StepResult(Fact(power(k), DomainSet.of(relation.span)), note=f'divided by {sp.sstr(a)}')


# window and box choices

def _scaled(sym, q):
    if sym.rational is not None:
        return Sym.exact(sym.rational * q)
    if sym.kind == 'pi':
        coef, offset = sym.value
        return Sym.pi(coef * q, offset * q)
    raise ValueError(f'cannot scale {sym}')


def half_window(bound):
    """A rational lambda with bound/4 < lambda <= bound/2 (bound/2 when that is rational)."""
    if bound.rational is not None:
        return bound.rational / 2
    return rational_between(_scaled(bound, Fraction(1, 4)), _scaled(bound, Fraction(1, 2)))


def rational_box(span, accept, max_denominator=10_000):
    """
    Rationals lambda < mu inside the span, the first pair in denominator order that ``accept``s.

    Raises:
        UndecidableComparison: If no pair turns up below ``max_denominator``.
    """
    lo, hi = inner_bounds(span.lo, span.hi)
    if lo is None or hi is None:
        raise ShapeMismatch(f'{span} is unbounded')
    found = []
    for den in range(1, max_denominator + 1):
        num = int((lo * den).floor()) + 1
        while QuadraticNumber(Fraction(num, den)) < hi:
            if gcd(num, den) == 1:
                candidate = Fraction(num, den)
                for earlier in found:
                    pair = (min(earlier, candidate), max(earlier, candidate))
                    if accept(*pair):
                        logger.debug('rational box ]%s, %s[ inside %s', *pair, span)
                        return pair
                found.append(candidate)
            num += 1
    raise UndecidableComparison(f'no admissible rational box inside {span}', span=str(span))


# case flows

def _exp_flow(store, h, fn, rule, gamma, delta, alpha):
    omega = Span(gamma, delta)
    store, added = apply_addition_theorem(store, h, LAW_OF[fn], omega, omega, rule)
    store, whole = localize_leibniz(store, added, rule)
    return conclude_from_leibniz(store, whole, rule)


def _symmetric_flow(store, h, fn, rule, gamma, delta, alpha):
    bounds = [Sym.exact(-gamma), Sym.exact(delta)]
    if fn == 'sin':
        bounds.append(Sym.pi(Fraction(1, 2)))
    lam = half_window(sym_min(*bounds))
    omega = Span(-lam, lam)
    store, added = apply_addition_theorem(store, h, LAW_OF[fn], omega, omega, rule)
    store, halved = store.apply('symmetrize', (added,), rule=rule)
    top = store.entry(halved).domain.boxes[0].spans[1].hi
    q = rational_between(0, top)
    cert = dense_rational_point(ConicSet.U if fn == 'sinh' else ConicSet.W, q / 2, q)
    store, d1 = store.apply('d1-zero-at', (halved,), rule=rule, s=cert.s, t=cert.s)
    store, section = store.apply('section', (halved, d1), rule=rule, u0=cert.s)
    store, product = store.apply('substitute-w', (halved, section), rule=rule)
    store, whole = localize_leibniz(store, product, rule)
    return conclude_from_leibniz(store, whole, rule)


def _cosh_flow(store, h, fn, rule, gamma, delta, alpha):
    omega = Span(gamma, delta)
    store, added = apply_addition_theorem(store, h, LAW_OF[fn], omega, omega, rule)
    span = store.entry(added).domain.boxes[0].spans[0]
    cert = dense_rational_point(ConicSet.V, *inner_bounds(span.lo, span.hi))
    store, d1 = store.apply('d1-zero-at', (added,), rule=rule, s=cert.s, t=cert.s)
    store, diagonal = store.apply('substitute', (added,), rule=rule, span=span, v_of_u=LaurentPoly.monomial(1))
    store, reduced = store.apply('drop-d1', (diagonal, d1), rule=rule)
    store, squared = store.apply('relation-to-power', (reduced,), rule=rule)
    return conclude_from_power(store, squared, rule)


def _reciprocal_flow(store, h, fn, rule, gamma, delta, alpha):
    omega = Span(gamma, delta)
    store, added = apply_addition_theorem(store, h, LAW_OF[fn], omega, omega, rule)
    span = store.entry(added).domain.boxes[0].spans[0]
    if fn == 'tan':
        lam, mu = rational_box(span, lambda x, y: x * y > 0 and x * y != 1)
    else:
        lam, mu = rational_box(span, lambda x, y: x * y > 0)
    box = Span(lam, mu)
    store, relation = store.apply('substitute', (added,), rule=rule, span=box,
                                  v_of_u=LaurentPoly.monomial(-1, lam * mu))
    store, reciprocal = store.apply('relation-to-power', (relation,), rule=rule)
    return conclude_from_power(store, reciprocal, rule)


def _shift_flow(store, h, fn, rule, gamma, delta, alpha):
    omega = Span(gamma, delta)
    store, added = apply_addition_theorem(store, h, LAW_OF[fn], omega, omega, rule)
    span = store.entry(added).domain.boxes[0].spans[0]
    lam, mu = rational_box(span, lambda x, y: x + y != 0)
    box = Span(lam, mu)
    store, relation = store.apply('substitute', (added,), rule=rule, span=box,
                                  v_of_u=LaurentPoly({0: lam + mu, 1: -1}))
    store, d1 = store.apply('relation-d1-zero', (relation,), rule=rule, u0=box.rational_inside())
    store, reduced = store.apply('drop-d1', (relation, d1), rule=rule)
    store, squared = store.apply('relation-to-power', (reduced,), rule=rule)
    return conclude_from_power(store, squared, rule)


def _cos_flow(store, h, fn, rule, gamma, delta, alpha):
    c = Fraction(1, 2) if alpha > 0 else Fraction(-1, 2)
    center = Sym.pi(c)
    lam = half_window(sym_min(center - Sym.exact(gamma), Sym.exact(delta) - center))
    omega = Span(Sym.pi(c, -lam), Sym.pi(c, lam))
    store, added = apply_addition_theorem(store, h, LAW_OF[fn], omega, omega, rule)
    store, product = store.apply('subtract', (added,), rule=rule)
    store, whole = localize_leibniz(store, product, rule)
    return conclude_from_leibniz(store, whole, rule)


FLOWS = {
    'exp': _exp_flow,
    'sinh': _symmetric_flow,
    'cosh': _cosh_flow,
    'tanh': _reciprocal_flow,
    'coth': _shift_flow,
    'sin': _symmetric_flow,
    'cos': _cos_flow,
    'tan': _reciprocal_flow,
    'cot': _shift_flow,
}


def run_case(store, hypothesis_id, fn, alpha, beta):
    """
    Check the row of ``fn`` and, if it holds, replay its elimination in ``store``.

    Returns:
        tuple: ``(store, node_id)`` of the node carrying the verdict.
    """
    case = CASE_OF[fn]
    rule = f'Mak-({case})'
    store, row = store.apply('mak-row', (hypothesis_id,), rule=rule, fn=fn, alpha=alpha, beta=beta)
    if store.node(row).verdict is not None:
        return store, row
    gamma, delta = gamma_delta(alpha, beta)
    logger.debug('case %s on ]%s, %s[: gamma = %s, delta = %s', case, alpha, beta, gamma, delta)
    return FLOWS[fn](store, hypothesis_id, fn, rule, gamma, delta, alpha)


@dataclass(frozen=True)
class MaksaResult:
    case: str
    verdict: Verdict
    trace: tuple


def maksa_verdict(fn, alpha, beta):
    """
    What derivating one of the nine addition-law functions on ]alpha, beta[ forces.

    Args:
        fn (str): exp, sinh, cosh, tanh, coth, sin, cos, tan or cot.
        alpha (Fraction): Left end.
        beta (Fraction): Right end.

    Raises:
        HypothesisFailed: If alpha >= beta.

    Returns:
        MaksaResult: StandardDerivation with the full trace, or Inapplicable
        naming the violated inequality of the row.
    """
    if fn not in CASE_OF:
        raise ShapeMismatch(f'{fn!r} has no addition law in the catalog')
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha >= beta:
        raise HypothesisFailed('alpha<beta', row=fn)
    try:
        store, hypothesis_id = add_hypothesis(FactStore(), Fact(unary(fn), DomainSet.of(Span(alpha, beta))))
    except DomainNotCovered:
        # ]alpha, beta[ leaves the natural domain of fn
        _, failed = check_row(fn, alpha, beta)
        if not failed:
            raise
        return MaksaResult(CASE_OF[fn], Verdict.inapplicable('HypothesisFailed', failed), ())
    store, last = run_case(store, hypothesis_id, fn, alpha, beta)
    return MaksaResult(CASE_OF[fn], store.node(last).verdict, store.nodes)
