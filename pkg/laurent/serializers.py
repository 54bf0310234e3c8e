"""Serializers for the Laurent polynomial commands: classify-pq, classify-poly, cor-pq."""
from rest_framework import serializers

from derivation_closure.outcome import Outcome
from deduction.verdicts import trace_to_json
from exactnum.numbers import format_rational
from exactnum.serializers import IntervalField, RationalField, interval_to_json

from .classify import check_cor_pq, classify_polynomial, classify_pq
from .polynomials import LaurentPoly


class TermSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    c = RationalField()

    def validate_c(self, value):
        """
        Validates a coefficient.

        Raises:
            serializers.ValidationError: If the coefficient is zero.
        """
        if value == 0:
            raise serializers.ValidationError('Zero coefficients must be omitted')
        return value


class LaurentPolyField(serializers.Field):
    """
    A Laurent polynomial as ``{"terms": [{"k": int, "c": "num/den"}, ...]}``.

    Terms must be sorted by k ascending, with no duplicate k and no zero c.
    """

    default_error_messages = {
        'invalid': 'Expected an object with a "terms" list.',
        'order': 'Terms must be sorted by strictly increasing k.',
    }

    def to_internal_value(self, data):
        if not isinstance(data, dict) or set(data) != {'terms'} or not isinstance(data['terms'], list):
            self.fail('invalid')
        terms = TermSerializer(data=data['terms'], many=True)
        if not terms.is_valid():
            raise serializers.ValidationError({'terms': terms.errors})
        exponents = [term['k'] for term in terms.validated_data]
        if any(left >= right for left, right in zip(exponents, exponents[1:])):
            self.fail('order')
        return LaurentPoly(tuple((term['k'], term['c']) for term in terms.validated_data))

    def to_representation(self, value):
        return laurent_to_json(value)


def laurent_to_json(poly):
    return {'terms': [{'k': k, 'c': format_rational(c)} for k, c in poly.terms]}


def pq_case_to_json(case, depth=None):
    payload = {'case': case.tag.value, **case.verdict.as_json()}
    if case.pivot is not None:
        payload['pivot'] = {
            'k0': case.pivot.k0,
            'ell': case.pivot.ell,
            'r': format_rational(case.pivot.r),
        }
    trace = trace_to_json(case.steps, depth)
    if trace:
        payload['trace'] = trace
    return payload


class ClassifyPQSerializer(serializers.Serializer):
    """
    Serializer for classify-pq.

    The optional interval I is only validated (nonempty, 0 not inside); the
    trichotomy itself depends on the coefficients alone.
    """

    P = LaurentPolyField()
    Q = LaurentPolyField()
    I = IntervalField(required=False)

    def validate_I(self, value):
        if value.contains_zero():
            raise serializers.ValidationError('The interval must not contain 0')
        return value

    def create(self, validated_data):
        case = classify_pq(validated_data['P'], validated_data['Q'])
        payload = pq_case_to_json(case, self.context.get('trace_depth'))
        if 'I' in validated_data:
            payload['I'] = interval_to_json(validated_data['I'])
        return Outcome(payload)


class ClassifyPolySerializer(serializers.Serializer):
    """Serializer for classify-poly: a nonzero polynomial P and an optional interval I."""

    P = LaurentPolyField()
    I = IntervalField(required=False)

    def validate_P(self, value):
        """
        Validates the polynomial.

        Raises:
            serializers.ValidationError: If P is zero or has negative exponents.
        """
        if value.is_zero:
            raise serializers.ValidationError('P must be nonzero')
        if value.has_negative_exponents:
            raise serializers.ValidationError('P must not have negative exponents')
        return value

    def create(self, validated_data):
        verdict = classify_polynomial(validated_data['P'], validated_data.get('I'))
        return Outcome({**verdict.as_json(), 'degree': validated_data['P'].degree})


class CorPQSerializer(serializers.Serializer):
    """Serializer for cor-pq: P, Q and an interval I avoiding 0."""

    P = LaurentPolyField()
    Q = LaurentPolyField()
    I = IntervalField()

    def validate_I(self, value):
        if value.contains_zero():
            raise serializers.ValidationError('The interval must not contain 0')
        return value

    def create(self, validated_data):
        verdict = check_cor_pq(validated_data['P'], validated_data['Q'], validated_data['I'])
        return Outcome(verdict.as_json(), applicable=not verdict.is_inapplicable)
