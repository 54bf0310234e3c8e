"""DRF fields for the exact JSON encodings used by every command."""
from rest_framework import serializers

from .exceptions import BadRational, ClosureError
from .numbers import OpenInterval, QuadraticNumber, format_rational, parse_rational

NEG_INF = '-inf'
POS_INF = '+inf'


class RationalField(serializers.Field):
    """
    A rational encoded as "num/den" (den omitted when 1).

    Integers are accepted on input; floats are rejected so nothing inexact can
    slip into the engine.
    """

    default_error_messages = {
        'invalid': 'Expected an exact rational such as "3/4", got {value!r}.',
    }

    def to_internal_value(self, data):
        try:
            return parse_rational(data)
        except BadRational:
            self.fail('invalid', value=data)

    def to_representation(self, value):
        return format_rational(value)


class PositiveRationalField(RationalField):
    default_error_messages = {
        'not_positive': 'Must be strictly positive.',
    }

    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if value <= 0:
            self.fail('not_positive')
        return value


def quadratic_to_json(value):
    """Rational values render as a bare string, surds as {"a", "b", "c"}."""
    value = QuadraticNumber.coerce(value)
    if value.is_rational:
        return format_rational(value.a)
    return {
        'a': format_rational(value.a),
        'b': format_rational(value.b),
        'c': format_rational(value.c),
    }


class QuadraticField(serializers.Field):
    """A QuadraticNumber as "num/den" or {"a": .., "b": .., "c": ..}."""

    default_error_messages = {
        'invalid': 'Expected a rational string or an object with keys a, b, c.',
        'radicand': '{message}',
    }

    def to_internal_value(self, data):
        try:
            if isinstance(data, dict):
                if set(data) - {'a', 'b', 'c'}:
                    self.fail('invalid')
                return QuadraticNumber(
                    parse_rational(data.get('a', 0)),
                    parse_rational(data.get('b', 0)),
                    parse_rational(data.get('c', 0)),
                )
            return QuadraticNumber(parse_rational(data))
        except BadRational:
            self.fail('invalid')
        except ClosureError as exc:
            self.fail('radicand', message=str(exc))

    def to_representation(self, value):
        return quadratic_to_json(value)


def interval_to_json(interval):
    return {
        'lo': NEG_INF if interval.lo is None else quadratic_to_json(interval.lo),
        'hi': POS_INF if interval.hi is None else quadratic_to_json(interval.hi),
    }


class IntervalField(serializers.Field):
    """An OpenInterval as {"lo": .., "hi": ..} with "-inf"/"+inf" sentinels."""

    default_error_messages = {
        'invalid': 'Expected an object with keys lo and hi.',
        'sentinel': '{side} cannot be {value}.',
        'empty': '{message}',
    }

    def _endpoint(self, side, value, unbounded, forbidden):
        if value == unbounded:
            return None
        if value == forbidden:
            self.fail('sentinel', side=side, value=value)
        return QuadraticField().to_internal_value(value)

    def to_internal_value(self, data):
        if not isinstance(data, dict) or set(data) != {'lo', 'hi'}:
            self.fail('invalid')
        lo = self._endpoint('lo', data['lo'], NEG_INF, POS_INF)
        hi = self._endpoint('hi', data['hi'], POS_INF, NEG_INF)
        try:
            return OpenInterval(lo, hi)
        except ClosureError as exc:
            self.fail('empty', message=str(exc))

    def to_representation(self, value):
        return interval_to_json(value)
