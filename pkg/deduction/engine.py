"""
The saturating driver.

``run_deduction`` seeds a store with the hypotheses and applies the rules in
a fixed order, round after round, until the goal verdict is reached, a round
adds nothing, or the depth limit is hit. Every candidate application is tried
once; rules whose preconditions fail are skipped.
"""
import logging
from dataclasses import dataclass

from derivation_closure.conf import closure_setting
from exactnum.exceptions import ClosureError

from .maksa import run_case
from .rules import CASE_OF, add_hypothesis
from .store import FactStore
from .verdicts import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeductionResult:
    """
    Attributes:
        verdict (Verdict): The strongest verdict reached (Unconstrained if none).
        trace (tuple[TraceNode]): The nodes the verdict rests on.
        store (FactStore): Everything derived.
        depth_exceeded (bool): Whether the depth limit cut saturation short.
    """

    verdict: Verdict
    trace: tuple
    store: FactStore
    depth_exceeded: bool = False


def _is_hypothesis(store, node_id):
    return store.node(node_id).step == 'hypothesis'


def _compose_candidates(store):
    if len(store.facts()) >= closure_setting('MAX_FACTS'):
        logger.warning('fact limit reached, composition is no longer tried')
        return
    hypotheses = [(i, fact) for i, fact in store.facts() if _is_hypothesis(store, i) and fact.func.head != 'const']
    for f_id, f in hypotheses:
        for g_id, g in hypotheses:
            if f.func.arity[1] == g.func.arity[0]:
                yield 'compose', (f_id, g_id), {}


def _descend_candidates(store):
    facts = store.facts()
    for gf_id, gf in facts:
        if gf.func.head != 'compose':
            continue
        inner, outer = gf.func.args
        for f_id, f in facts:
            if f.func == inner:
                yield 'descend', (f_id, gf_id), {'g': outer}


def _inverse_candidates(store):
    for fact_id, fact in store.facts():
        if fact.func.is_unary and fact.func.head != 'const':
            yield 'inverse', (fact_id,), {}


def _head_candidates(key, heads):
    def candidates(store):
        for fact_id, fact in store.facts():
            if fact.func.head in heads:
                yield key, (fact_id,), {}
    return candidates


def _conclude_power_candidates(store):
    # localized facts first, so the verdict rests on the widened domain
    facts = [(i, fact) for i, fact in store.facts() if fact.func.head == 'power']
    widened = [i for i, _ in facts if store.node(i).step == 'localize-power']
    rest = [i for i, _ in facts if store.node(i).step != 'localize-power']
    for fact_id in widened + rest:
        yield 'conclude-power', (fact_id,), {}


def _maksa_candidates(store):
    for fact_id, fact in store.facts():
        span = fact.domain.span
        if fact.func.head not in CASE_OF or span is None:
            continue
        if span.lo.rational is None or span.hi.rational is None:
            continue
        yield 'maksa', (fact_id,), {'fn': fact.func.head, 'alpha': span.lo.rational, 'beta': span.hi.rational}


def _cor_pq_candidates(store):
    for fact_id, fact in store.facts():
        func = fact.func
        if func.head == 'compose' and func.args[0].head == 'inverse' and func.args[1].head == 'laurent':
            yield 'cor-pq', (fact_id,), {}


RULES = (
    _compose_candidates,
    _descend_candidates,
    _inverse_candidates,
    _head_candidates('localize-power', ('power',)),
    _head_candidates('localize-leibniz', ('mul', 'g_exp')),
    _conclude_power_candidates,
    _head_candidates('conclude-leibniz', ('mul', 'g_exp')),
    _maksa_candidates,
    _head_candidates('pq-case', ('laurent',)),
    _cor_pq_candidates,
    _head_candidates('constant', ('const',)),
)


def _attempt(store, key, premises, params):
    if key == 'maksa':
        return run_case(store, premises[0], params['fn'], params['alpha'], params['beta'])
    return store.apply(key, premises, **params)


def _reached(store, goal):
    best = store.best()
    return best is not None and best.verdict.at_least(goal)


def run_deduction(hypotheses, goal=None, depth=None):
    """
    Saturate the rules over ``hypotheses``.

    Args:
        hypotheses (Iterable[Fact]): User-supplied facts, checked against the
            natural domains of their maps.
        goal (Verdict | None): Stop as soon as a verdict at least this strong
            is derived; defaults to a standard derivation.
        depth (int | None): Maximum number of rounds; defaults to ``MAX_DEPTH``.

    Raises:
        DomainNotCovered: If a hypothesis is declared outside its map's domain.

    Returns:
        DeductionResult: The strongest verdict with its trace.
    """
    goal = goal or Verdict.standard()
    depth = closure_setting('MAX_DEPTH') if depth is None else depth
    store = FactStore()
    for fact in hypotheses:
        store, _ = add_hypothesis(store, fact)

    attempted = set()
    exceeded = False
    for round_number in range(depth + 1):
        if _reached(store, goal):
            break
        if round_number == depth:
            exceeded = True
            logger.warning('deduction stopped after %d rounds without reaching %s', depth, goal)
            break
        size = len(store.nodes)
        for rule in RULES:
            for key, premises, params in list(rule(store)):
                marker = (key, premises, tuple(sorted(params.items(), key=lambda item: item[0])))
                if marker in attempted:
                    continue
                attempted.add(marker)
                try:
                    store, _ = _attempt(store, key, premises, params)
                except ClosureError as e:
                    logger.debug('%s on %s skipped: %s', key, premises, e)
                    continue
                if _reached(store, goal):
                    break
            if _reached(store, goal):
                break
        if len(store.nodes) == size:
            break

    best = store.best()
    if best is None:
        return DeductionResult(Verdict.unconstrained(), (), store, exceeded)
    return DeductionResult(best.verdict, store.ancestry(best.node_id), store, exceeded)
