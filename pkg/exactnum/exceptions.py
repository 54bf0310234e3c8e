"""
Error hierarchy shared by every app of the project.

Each error carries a stable machine ``code`` (the class name unless
overridden) and optional structured ``details`` that the views and the
``derive`` command echo back next to the message.
"""


class ClosureError(Exception):
    """Base class for all domain errors raised by the engine."""

    code = None

    def __init__(self, message='', **details):
        super().__init__(message or self.default_message())
        self.details = details

    @classmethod
    def default_message(cls):
        return cls.__name__

    @property
    def error_code(self):
        return self.code or type(self).__name__

    def as_dict(self):
        """
        Render the error as a JSON-friendly dict.

        Returns:
            dict: ``{"error": code, "detail": message}`` plus any details.
        """
        payload = {'error': self.error_code, 'detail': str(self)}
        for key, value in self.details.items():
            payload[key] = value if isinstance(value, (int, bool, list, dict)) else str(value)
        return payload


class NegativeRadicand(ClosureError):
    """A square root of a negative rational was requested."""


class EmptyInterval(ClosureError):
    """An open interval with lo >= hi."""


class BadRational(ClosureError):
    """Text that does not spell an exact rational."""


class IncompatibleRadicands(ClosureError):
    """Arithmetic on two surds with different radicands."""
