"""
Decision procedures for identities ``Q'(u) d(P(u)) = P'(u) d(Q(u))``.

``classify_pq`` sorts a pair of Laurent polynomials into the three cases of
the trichotomy, ``classify_polynomial`` specializes it to ``Q(u) = u``, and
``check_cor_pq`` decides the ``P o Q^-1`` form on an interval.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from deduction.verdicts import TraceNode, Verdict
from exactnum.numbers import format_rational

from .exceptions import DependentTails, IntervalContainsZero, NotAPolynomial, ZeroPolynomial
from .polynomials import (
    LaurentPoly, find_pivot_indices, formal_derivative, linearly_dependent, wronskian,
)
from .sturm import nonvanishing_on

logger = logging.getLogger(__name__)

PQ_CITATION = 'Laurent pair theorem: trichotomy for Q\'(u)d(P(u)) = P\'(u)d(Q(u))'
POWER_CITATION = 'power lemma: d(x^r) = r x^(r-1) d(x) on an interval forces a standard derivation'


class PQTag(str, Enum):
    CASE_I = 'i'
    CASE_II = 'ii'
    CASE_III = 'iii'


@dataclass(frozen=True)
class Pivot:
    k0: int
    ell: int

    @property
    def r(self):
        return Fraction(self.k0, self.ell)


@dataclass(frozen=True)
class PQCase:
    """
    Outcome of ``classify_pq``.

    Attributes:
        tag (PQTag): Which case of the trichotomy applies.
        verdict (Verdict): Unconstrained, D1Zero or StandardDerivation.
        pivot (Pivot | None): Present exactly for case iii.
        steps (tuple[TraceNode]): The argument, one node per step.
    """

    tag: PQTag
    verdict: Verdict
    pivot: Pivot = None
    steps: tuple = ()


class DomainKind(str, Enum):
    REALS = 'R'
    NONZERO = 'R\\{0}'
    NONNEGATIVE = '[0,+inf['
    POSITIVE = ']0,+inf['


@dataclass(frozen=True)
class PowerDomain:
    """Natural domain of ``x -> x**r`` for rational ``r = m/n`` in lowest terms."""

    r: Fraction
    kind: DomainKind


def power_domain(r):
    """
    Domain of the power map from the parity of n and the sign of m.

    Args:
        r (Fraction): The exponent m/n.

    Returns:
        PowerDomain: R (n odd, m >= 0), R minus 0 (n odd, m < 0),
        [0, inf[ (n even, m >= 0) or ]0, inf[ (n even, m < 0).
    """
    r = Fraction(r)
    odd = r.denominator % 2 == 1
    if odd:
        kind = DomainKind.REALS if r.numerator >= 0 else DomainKind.NONZERO
    else:
        kind = DomainKind.NONNEGATIVE if r.numerator >= 0 else DomainKind.POSITIVE
    return PowerDomain(r, kind)


class _Steps:
    """Accumulates trace nodes, each citing the previous one."""

    def __init__(self):
        self.nodes = []

    def add(self, step, note, verdict=None, citation=PQ_CITATION):
        premises = (self.nodes[-1].node_id,) if self.nodes else ()
        node = TraceNode(
            node_id=len(self.nodes) + 1,
            rule='PQ-case',
            step=step,
            premises=premises,
            verdict=verdict,
            citation=citation,
            note=note,
        )
        self.nodes.append(node)
        return node

    def freeze(self):
        return tuple(self.nodes)


def _rational_candidates():
    """1, -1, 2, -2, 1/2, -1/2, 3, ... ordered by height."""
    height = 1
    while True:
        for den in range(1, height + 1):
            num = height
            for candidate in (Fraction(num, den), Fraction(den, num)):
                for signed in (candidate, -candidate):
                    yield signed
        height += 1


def _nonzero_point(poly):
    seen = set()
    for candidate in _rational_candidates():
        if candidate in seen:
            continue
        seen.add(candidate)
        value = poly(candidate)
        if value != 0:
            return candidate, value


def classify_pq(p, q):
    """
    Classify the identity ``Q'(u) d(P(u)) = P'(u) d(Q(u))``.

    Args:
        p (LaurentPoly): P.
        q (LaurentPoly): Q.

    Returns:
        PQCase: Case i (P, Q dependent, unconstrained), case ii (tails
        dependent, d(1) = 0) or case iii (tails independent, standard
        derivation, with the pivot exponents).
    """
    steps = _Steps()
    w = wronskian(p, q)
    if w.is_zero:
        steps.add('wronskian', 'P\'Q - PQ\' vanishes identically: P and Q are linearly dependent')
        verdict = Verdict.unconstrained()
        steps.add('case-i', 'the identity holds for every additive d', verdict)
        return PQCase(PQTag.CASE_I, verdict, steps=steps.freeze())

    u0, value = _nonzero_point(w)
    steps.add('wronskian', f'P\'Q - PQ\' = {w}; at u0 = {format_rational(u0)} it equals '
                           f'{format_rational(value)} != 0')
    steps.add('d1-zero', 'at rational u the identity reads Q\'(u)P(u)d(1) = P\'(u)Q(u)u d(1); '
                         'by continuity it holds at u0 too, so d(1) = 0', Verdict.d1_zero())

    p_tail, q_tail = p.tail(), q.tail()
    if linearly_dependent(p_tail, q_tail):
        if p_tail.is_zero or q_tail.is_zero:
            degenerate = 'P' if p_tail.is_zero else 'Q'
            note = f'{degenerate} - {degenerate.lower()}0 vanishes identically (constant {degenerate}); ' \
                   'tails are trivially dependent'
        else:
            note = f'tails {p_tail} and {q_tail} are linearly dependent'
        verdict = Verdict.d1_zero()
        steps.add('tails-dependent', note, verdict)
        return PQCase(PQTag.CASE_II, verdict, steps=steps.freeze())

    k0, ell = find_pivot_indices(p, q)
    pivot = Pivot(k0, ell)
    steps.add('pivot', f'k0 = {k0}, ell = {ell}: p_k0 q_ell - p_ell q_k0 = '
                       f'{format_rational(p.coeff(k0) * q.coeff(ell) - p.coeff(ell) * q.coeff(k0))} != 0')
    steps.add('reduce-to-power',
              f'ell d(v^{k0}) = {k0} v^({k0 - ell}) d(v^{ell}); with u = v^{ell}: '
              f'd(u^r) = r u^(r-1) d(u) for r = {format_rational(pivot.r)} '
              f'(equivalently exponent {format_rational(1 / pivot.r)} in v^{k0})')
    verdict = Verdict.standard()
    steps.add('nis', f'r = {format_rational(pivot.r)} is not 0 or 1', verdict, citation=POWER_CITATION)
    logger.debug('classify_pq(%s, %s): case iii with pivot %s', p, q, pivot)
    return PQCase(PQTag.CASE_III, verdict, pivot, steps.freeze())


def classify_polynomial(p, interval=None):
    """
    Decide what ``d`` derivating a polynomial P over an interval forces.

    Args:
        p (LaurentPoly): A nonzero polynomial (no negative exponents).
        interval (OpenInterval | None): The interval; any nonempty open
            interval is allowed.

    Raises:
        ZeroPolynomial: If P is zero.
        NotAPolynomial: If P has a negative exponent.

    Returns:
        Verdict: D1Zero for degree 0, degree 1 with P(0) != 0; Unconstrained
        for degree 1 with P(0) = 0; StandardDerivation for degree >= 2.
    """
    if p.is_zero:
        raise ZeroPolynomial('P must be nonzero')
    if p.has_negative_exponents:
        raise NotAPolynomial(f'{p} has negative exponents')
    if p.degree == 0:
        return Verdict.d1_zero()
    if p.degree == 1:
        return Verdict.d1_zero() if p.constant_term != 0 else Verdict.unconstrained()
    return Verdict.standard()


def check_cor_pq(p, q, interval):
    """
    Decide whether derivating ``P o Q^-1`` on ``Q(I)`` forces a standard derivation.

    Args:
        p (LaurentPoly): P.
        q (LaurentPoly): Q.
        interval (OpenInterval): I, which must not contain 0.

    Raises:
        IntervalContainsZero: If 0 lies in I.

    Returns:
        Verdict: StandardDerivation when the tails of P and Q are independent
        and Q' has no root in I, otherwise Inapplicable with reason
        ``DependentTails`` or ``QPrimeVanishes``.
    """
    if interval.contains_zero():
        raise IntervalContainsZero(f'{interval} contains 0')
    if linearly_dependent(p.tail(), q.tail()):
        return Verdict.inapplicable(DependentTails.__name__)
    if not nonvanishing_on(formal_derivative(q), interval):
        return Verdict.inapplicable('QPrimeVanishes')
    return Verdict.standard()
