"""Verdicts and proof-trace nodes shared by the classifiers and the rule engine."""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from exactnum.numbers import format_rational


class VerdictTag(str, Enum):
    UNCONSTRAINED = 'unconstrained'
    D1_ZERO = 'd1-zero'
    STANDARD = 'standard-derivation'
    INAPPLICABLE = 'inapplicable'


_RANK = {
    VerdictTag.INAPPLICABLE: -1,
    VerdictTag.UNCONSTRAINED: 0,
    VerdictTag.D1_ZERO: 1,
    VerdictTag.STANDARD: 2,
}


@dataclass(frozen=True)
class Verdict:
    """
    What the hypotheses force on the additive function d.

    Attributes:
        tag (VerdictTag): The conclusion.
        reason (str): Machine code explaining an inapplicable verdict.
        failed (str): The violated inequality, e.g. "pi<beta".
    """

    tag: VerdictTag
    reason: str = ''
    failed: str = ''

    @classmethod
    def unconstrained(cls):
        return cls(VerdictTag.UNCONSTRAINED)

    @classmethod
    def d1_zero(cls):
        return cls(VerdictTag.D1_ZERO)

    @classmethod
    def standard(cls):
        return cls(VerdictTag.STANDARD)

    @classmethod
    def inapplicable(cls, reason, failed=''):
        return cls(VerdictTag.INAPPLICABLE, reason, failed)

    @property
    def rank(self):
        return _RANK[self.tag]

    @property
    def is_inapplicable(self):
        return self.tag is VerdictTag.INAPPLICABLE

    def at_least(self, other):
        """A standard derivation satisfies d(1)=0, so the tags form a chain."""
        return self.rank >= other.rank

    def as_json(self):
        payload = {'verdict': self.tag.value}
        if self.reason:
            payload['reason'] = self.reason
        if self.failed:
            payload['failed'] = self.failed
        return payload

    def __str__(self):
        return self.tag.value


@dataclass(frozen=True)
class TraceNode:
    """
    One rule application.

    ``step`` names the registered step function that produced the node and
    ``params`` holds its keyword arguments as sorted ``(name, value)`` pairs,
    so the node can be re-executed. ``conclusion`` is the derived fact or
    relation (None for pure verdict steps).
    """

    node_id: int
    rule: str
    step: str
    premises: tuple = ()
    params: tuple = ()
    conclusion: object = None
    verdict: Verdict = None
    citation: str = ''
    note: str = ''

    @property
    def param_dict(self):
        return dict(self.params)


def describe(value):
    """JSON-friendly rendering of a trace parameter or conclusion."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (tuple, list)):
        return [describe(item) for item in value]
    return str(value)


def prune_trace(nodes, depth=None):
    """
    Keep the nodes within ``depth`` premise links of the last node.

    Args:
        nodes (Sequence[TraceNode]): A trace in creation order.
        depth (int | None): None keeps everything, 0 keeps nothing.

    Returns:
        list[TraceNode]: The kept nodes, order preserved.
    """
    nodes = list(nodes)
    if depth is None or not nodes:
        return nodes
    if depth <= 0:
        return []
    by_id = {node.node_id: node for node in nodes}
    keep = set()
    frontier = [nodes[-1].node_id]
    for _ in range(depth):
        next_frontier = []
        for node_id in frontier:
            if node_id in keep or node_id not in by_id:
                continue
            keep.add(node_id)
            next_frontier.extend(by_id[node_id].premises)
        frontier = next_frontier
    return [node for node in nodes if node.node_id in keep]


def trace_to_json(nodes, depth=None):
    rendered = []
    for node in prune_trace(nodes, depth):
        entry = {
            'id': node.node_id,
            'rule': node.rule,
            'step': node.step,
            'premises': list(node.premises),
            'citation': node.citation,
        }
        if node.params:
            entry['params'] = {key: describe(value) for key, value in node.params}
        if node.conclusion is not None:
            entry['conclusion'] = str(node.conclusion)
        if node.verdict is not None:
            entry['verdict'] = node.verdict.tag.value
        if node.note:
            entry['note'] = node.note
        rendered.append(entry)
    return rendered
