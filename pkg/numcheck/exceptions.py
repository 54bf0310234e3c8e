from exactnum.exceptions import ClosureError


class UnknownCase(ClosureError):
    """An identity id the oracle has no checks for."""

    def __init__(self, case_id):
        super().__init__(f'no identity checks for {case_id!r}', case=case_id)


class DomainViolation(ClosureError):
    """An expression was evaluated outside the set where it is defined."""


class NonAlgebraicFunction(ClosureError):
    """A transcendental map was handed to the Q(t) model."""
