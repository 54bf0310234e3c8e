from exactnum.exceptions import ClosureError


class PreconditionViolated(ClosureError):
    """The target or tolerance lies outside what the interval construction allows."""

    def __init__(self, conic_set, x, eps, failed):
        super().__init__(
            f'{conic_set}: {failed} does not hold for x={x}, eps={eps}',
            set=conic_set, x=x, eps=eps, failed=failed,
        )


class DegenerateParameter(ClosureError):
    """The chosen parameter makes the parametrization blow up (r = 1 or r = -1)."""
