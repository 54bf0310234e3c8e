from exactnum.exceptions import ClosureError


class DependentTails(ClosureError):
    """P - p0 and Q - q0 are linearly dependent."""


class IntervalContainsZero(ClosureError):
    """A Laurent polynomial with negative exponents was asked about an interval around 0."""


class ZeroPolynomial(ClosureError):
    pass


class NotAPolynomial(ClosureError):
    """A negative exponent where only an ordinary polynomial is allowed."""
