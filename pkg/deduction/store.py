"""
The fact store and the step registry.

A ``FactStore`` is an immutable value: ``apply`` runs one registered step
against premises already in the store and returns a new store with one more
trace node. Nothing else can add a fact, so every trace can be replayed.
"""
import logging
from dataclasses import dataclass, field

import sympy as sp

from .catalog import const
from .domains import DomainSet
from .exceptions import ReplayMismatch, UnknownPremise, UnknownStep
from .verdicts import TraceNode

logger = logging.getLogger(__name__)

U = sp.Symbol('u')


@dataclass(frozen=True)
class Fact:
    """
    "d derivates func on domain": d(f(x)) = f'(x) d(x) for every x in the domain.

    ``additive`` is always set: the unknown d is additive throughout.
    """

    func: object
    domain: DomainSet
    additive: bool = True

    def __str__(self):
        return f'd derivates {self.func} on {self.domain}'


def d1_fact():
    """d(1) = 0, written as "d derivates the constant map 1 everywhere"."""
    return Fact(const(1), DomainSet.real_line())


@dataclass(frozen=True)
class Relation:
    """
    ``sum_k c_k(u) d(u**k) = 0`` for every u in ``span`` (k = 0 is d(1)).

    Attributes:
        coeffs (tuple): Sorted ``(k, c_k)`` pairs, c_k a sympy expression in u.
        span (Span): Where the relation holds.
    """

    coeffs: tuple
    span: object

    @classmethod
    def build(cls, coeffs, span):
        cleaned = []
        for k in sorted(coeffs):
            c = sp.cancel(sp.sympify(coeffs[k]))
            if c != 0:
                cleaned.append((k, c))
        return cls(tuple(cleaned), span)

    @property
    def coeff_dict(self):
        return dict(self.coeffs)

    def __str__(self):
        terms = ' + '.join(f'({sp.sstr(c)})*d(u^{k})' for k, c in self.coeffs) or '0'
        return f'{terms} = 0 on {self.span}'


@dataclass(frozen=True)
class StepResult:
    entry: object = None
    verdict: object = None
    note: str = ''


@dataclass(frozen=True)
class StepSpec:
    key: str
    rule: str
    citation: str
    run: object = field(compare=False)


STEPS = {}


def step(key, rule, citation):
    """Register a step function under ``key``; its trace nodes carry ``rule`` and ``citation``."""
    def register(fn):
        STEPS[key] = StepSpec(key, rule, citation, fn)
        return fn
    return register


@dataclass(frozen=True)
class FactStore:
    nodes: tuple = ()

    def node(self, node_id):
        if not 1 <= node_id <= len(self.nodes):
            raise UnknownPremise(f'no node {node_id} in the store', premise=node_id)
        return self.nodes[node_id - 1]

    def entry(self, node_id):
        return self.node(node_id).conclusion

    def facts(self):
        """``(node_id, Fact)`` pairs in insertion order."""
        return [(node.node_id, node.conclusion) for node in self.nodes if isinstance(node.conclusion, Fact)]

    def find(self, entry, verdict=None):
        for node in self.nodes:
            if node.conclusion == entry and node.verdict == verdict:
                return node.node_id
        return None

    def apply(self, key, premises=(), rule=None, **params):
        """
        Run a registered step.

        Args:
            key (str): The step key.
            premises (Sequence[int]): Node ids whose conclusions the step consumes.
            rule (str | None): Overrides the rule id recorded in the node.
            **params: Keyword arguments of the step.

        Raises:
            UnknownStep: If no step is registered under ``key``.
            UnknownPremise: If a premise id is not in the store.
            ClosureError: Whatever the step raises when its preconditions fail.

        Returns:
            tuple: ``(store, node_id)``. Re-deriving an existing conclusion with
            the same verdict returns the existing node and the same store.
        """
        spec = STEPS.get(key)
        if spec is None:
            raise UnknownStep(f'no step named {key!r}', step=key)
        premises = tuple(premises)
        result = spec.run(*(self.entry(p) for p in premises), **params)
        if result.entry is not None:
            existing = self.find(result.entry, result.verdict)
            if existing is not None:
                return self, existing
        node = TraceNode(
            node_id=len(self.nodes) + 1,
            rule=rule or spec.rule,
            step=key,
            premises=premises,
            params=tuple(sorted(params.items())),
            conclusion=result.entry,
            verdict=result.verdict,
            citation=spec.citation,
            note=result.note,
        )
        logger.debug('node %d: %s via %s from %s', node.node_id, result.entry or result.verdict, key, premises)
        return FactStore(self.nodes + (node,)), node.node_id

    def ancestry(self, node_id):
        """The node and everything it rests on, in insertion order."""
        keep = set()
        pending = [node_id]
        while pending:
            current = pending.pop()
            if current in keep:
                continue
            keep.add(current)
            pending.extend(self.node(current).premises)
        return tuple(node for node in self.nodes if node.node_id in keep)

    def best(self):
        """The earliest node carrying the strongest non-inapplicable verdict, or None."""
        best = None
        for node in self.nodes:
            if node.verdict is None or node.verdict.is_inapplicable:
                continue
            if best is None or node.verdict.rank > best.verdict.rank:
                best = node
        return best


def replay(nodes):
    """
    Re-execute a trace against a fresh store.

    Raises:
        ReplayMismatch: If some step concludes something else than recorded.

    Returns:
        FactStore: The rebuilt store.
    """
    store = FactStore()
    renamed = {}
    for node in nodes:
        missing = [p for p in node.premises if p not in renamed]
        if missing:
            raise ReplayMismatch(f'node {node.node_id} rests on nodes {missing} that are not in the trace',
                                 node=node.node_id)
        premises = [renamed[p] for p in node.premises]
        store, new_id = store.apply(node.step, premises, rule=node.rule, **node.param_dict)
        fresh = store.node(new_id)
        if fresh.conclusion != node.conclusion or fresh.verdict != node.verdict:
            raise ReplayMismatch(f'node {node.node_id} ({node.step}) replays to {fresh.conclusion or fresh.verdict}',
                                 node=node.node_id)
        renamed[node.node_id] = new_id
    return store
