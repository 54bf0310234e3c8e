from exactnum.exceptions import ClosureError


class HypothesisFailed(ClosureError):
    """An interval hypothesis of the addition-law theorem does not hold."""

    def __init__(self, inequality, row=''):
        message = f'{inequality} fails' if not row else f'{row}: {inequality} fails'
        super().__init__(message, failed=inequality, row=row)


class ArityMismatch(ClosureError):
    pass


class EmptyDomain(ClosureError):
    pass


class ImageNotOpen(ClosureError):
    """The image of an open set could not be certified open (constant or non-monotone map)."""


class ShapeMismatch(ClosureError):
    """A premise does not have the form the rule needs."""


class NotInvertible(ClosureError):
    pass


class SingularDerivative(ClosureError):
    """The derivative vanishes somewhere on the domain."""


class NotMonotone(ClosureError):
    pass


class DomainNotCovered(ClosureError):
    pass


class UnverifiedLaw(ClosureError):
    """The addition law has no passing record in the identity oracle."""


class BadExponent(ClosureError):
    pass


class UndecidableComparison(ClosureError):
    """Certified interval evaluation did not separate two values up to the precision ceiling."""


class UnknownStep(ClosureError):
    pass


class ReplayMismatch(ClosureError):
    """Re-executing a trace produced a different conclusion or verdict."""


class UnknownPremise(ClosureError):
    """A premise id that is not in the store."""
