"""
Fact domains: spans, boxes and finite unions of boxes.

Endpoints are ``Sym`` values, so ]e**gamma, e**delta[ and ]-sinh(l), sinh(l)[
are represented exactly and compared with certified interval evaluation.
"""
import logging
from dataclasses import dataclass

from exactnum.numbers import OpenInterval, Order
from laurent.classify import DomainKind, power_domain

from .bounds import Sym, compare, less, less_equal, rational_between
from .exceptions import EmptyDomain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Span:
    """
    A nonempty interval with per-edge open/closed flags.

    Infinite edges are always open. Degenerate (single point) spans are
    rejected with EmptyDomain.
    """

    lo: Sym
    hi: Sym
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        lo, hi = Sym.coerce(self.lo, -1), Sym.coerce(self.hi, +1)
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)
        object.__setattr__(self, 'lo_closed', bool(self.lo_closed) and not lo.is_infinite)
        object.__setattr__(self, 'hi_closed', bool(self.hi_closed) and not hi.is_infinite)
        if not less(lo, hi):
            raise EmptyDomain(f'{self._text()} is empty')

    @classmethod
    def open(cls, lo=None, hi=None):
        return cls(lo, hi)

    @classmethod
    def real_line(cls):
        return cls(None, None)

    @classmethod
    def from_interval(cls, interval):
        return cls(interval.lo, interval.hi)

    @property
    def is_open(self):
        return not (self.lo_closed or self.hi_closed)

    @property
    def is_bounded(self):
        return not (self.lo.is_infinite or self.hi.is_infinite)

    @property
    def is_real_line(self):
        return self.lo.is_infinite and self.hi.is_infinite

    def interior(self):
        return Span(self.lo, self.hi)

    def as_interval(self):
        """The span as an exact OpenInterval, or None if an endpoint is symbolic."""
        if not self.is_open:
            return None
        ends = []
        for end in (self.lo, self.hi):
            if end.is_infinite:
                ends.append(None)
            elif end.is_exact:
                ends.append(end.value)
            else:
                return None
        return OpenInterval(*ends)

    def contains(self, value):
        value = Sym.coerce(value)
        above = less_equal(self.lo, value) if self.lo_closed else less(self.lo, value)
        below = less_equal(value, self.hi) if self.hi_closed else less(value, self.hi)
        return above and below

    def contains_zero(self):
        return self.contains(Sym.exact(0))

    def covers(self, other):
        """Whether ``other`` is a subset of this span."""
        order = compare(self.lo, other.lo)
        if order is Order.GREATER or (order is Order.EQUAL and other.lo_closed and not self.lo_closed):
            return False
        order = compare(other.hi, self.hi)
        if order is Order.GREATER or (order is Order.EQUAL and other.hi_closed and not self.hi_closed):
            return False
        return True

    def intersect(self, other):
        """The intersection, or None when it is empty or a single point."""
        order = compare(self.lo, other.lo)
        if order is Order.EQUAL:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        elif order is Order.GREATER:
            lo, lo_closed = self.lo, self.lo_closed
        else:
            lo, lo_closed = other.lo, other.lo_closed
        order = compare(self.hi, other.hi)
        if order is Order.EQUAL:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        elif order is Order.LESS:
            hi, hi_closed = self.hi, self.hi_closed
        else:
            hi, hi_closed = other.hi, other.hi_closed
        if not less(lo, hi):
            return None
        return Span(lo, hi, lo_closed, hi_closed)

    def __add__(self, other):
        """Minkowski sum."""
        return Span(self.lo + other.lo, self.hi + other.hi,
                    self.lo_closed and other.lo_closed, self.hi_closed and other.hi_closed)

    def __neg__(self):
        return Span(-self.hi, -self.lo, self.hi_closed, self.lo_closed)

    def rational_inside(self):
        return rational_between(self.lo, self.hi)

    def _text(self):
        left = '[' if self.lo_closed else ']'
        right = ']' if self.hi_closed else '['
        return f'{left}{self.lo}, {self.hi}{right}'

    def __str__(self):
        return self._text()


@dataclass(frozen=True)
class Box:
    """A product of spans, one per input coordinate."""

    spans: tuple

    def __post_init__(self):
        object.__setattr__(self, 'spans', tuple(self.spans))
        if not self.spans:
            raise EmptyDomain('a box needs at least one coordinate')

    @property
    def dim(self):
        return len(self.spans)

    @property
    def is_open(self):
        return all(span.is_open for span in self.spans)

    def interior(self):
        return Box(span.interior() for span in self.spans)

    def covers(self, other):
        return self.dim == other.dim and all(
            mine.covers(theirs) for mine, theirs in zip(self.spans, other.spans)
        )

    def intersect(self, other):
        if self.dim != other.dim:
            return None
        spans = []
        for mine, theirs in zip(self.spans, other.spans):
            common = mine.intersect(theirs)
            if common is None:
                return None
            spans.append(common)
        return Box(spans)

    def __str__(self):
        return ' x '.join(str(span) for span in self.spans)


@dataclass(frozen=True)
class DomainSet:
    """
    A finite union of boxes of one dimension.

    ``covers`` is box-wise: every box of the other set must sit inside a
    single box of this one.
    """

    boxes: tuple

    def __post_init__(self):
        boxes = tuple(self.boxes)
        if not boxes:
            raise EmptyDomain('a domain needs at least one box')
        if len({box.dim for box in boxes}) != 1:
            raise EmptyDomain('all boxes of a domain must have the same dimension')
        object.__setattr__(self, 'boxes', boxes)

    @classmethod
    def of(cls, *parts):
        """Build from spans (1-D boxes), boxes, or domain sets."""
        boxes = []
        for part in parts:
            if isinstance(part, Span):
                boxes.append(Box((part,)))
            elif isinstance(part, Box):
                boxes.append(part)
            else:
                boxes.extend(part.boxes)
        return cls(tuple(boxes))

    @classmethod
    def real_line(cls):
        return cls.of(Span.real_line())

    @classmethod
    def product(cls, *spans):
        return cls.of(Box(spans))

    @property
    def dim(self):
        return self.boxes[0].dim

    @property
    def is_open(self):
        return all(box.is_open for box in self.boxes)

    @property
    def span(self):
        """The single span of a one-box, one-dimensional domain, else None."""
        if len(self.boxes) == 1 and self.dim == 1:
            return self.boxes[0].spans[0]
        return None

    def interior(self):
        return DomainSet(tuple(box.interior() for box in self.boxes))

    def covers(self, other):
        if isinstance(other, Span):
            other = DomainSet.of(other)
        if isinstance(other, Box):
            other = DomainSet.of(other)
        return all(any(mine.covers(theirs) for mine in self.boxes) for theirs in other.boxes)

    def intersect(self, other):
        """The pairwise box intersections, or None when all are empty."""
        pieces = []
        for mine in self.boxes:
            for theirs in other.boxes:
                common = mine.intersect(theirs)
                if common is not None:
                    pieces.append(common)
        return DomainSet(tuple(pieces)) if pieces else None

    def __str__(self):
        return ' u '.join(str(box) for box in self.boxes)


def from_power_domain(domain):
    """The natural domain of x -> x**r as a DomainSet."""
    zero = Sym.exact(0)
    if domain.kind is DomainKind.REALS:
        return DomainSet.real_line()
    if domain.kind is DomainKind.NONZERO:
        return DomainSet.of(Span(None, zero), Span(zero, None))
    if domain.kind is DomainKind.NONNEGATIVE:
        return DomainSet.of(Span(zero, None, lo_closed=True))
    return DomainSet.of(Span(zero, None))


def power_domain_set(r):
    return from_power_domain(power_domain(r))
