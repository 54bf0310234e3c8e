"""Serializers for the dense-point and membership commands."""
from rest_framework import serializers

from derivation_closure.outcome import Outcome
from exactnum.numbers import format_rational, is_rational_square
from exactnum.serializers import RationalField, interval_to_json

from .density import ConicSet, dense_point, membership, radicand


def cert_to_json(cert):
    return {
        'set': cert.conic_set.value,
        'x': format_rational(cert.x),
        'eps': format_rational(cert.eps),
        'r': format_rational(cert.r),
        's': format_rational(cert.s),
        'companion': format_rational(cert.companion),
        'witness_interval': interval_to_json(cert.witness_interval),
        'citation': cert.citation,
    }


class DensePointSerializer(serializers.Serializer):
    """
    Serializer for dense-point.

    ``eps`` is any rational; non-positive values are rejected by the
    construction itself with a PreconditionViolated error.
    """

    set = serializers.ChoiceField(choices=[tag.value for tag in ConicSet])
    x = RationalField()
    eps = RationalField()

    def create(self, validated_data):
        cert = dense_point(ConicSet(validated_data['set']), validated_data['x'], validated_data['eps'])
        return Outcome(cert_to_json(cert))


class MembershipSerializer(serializers.Serializer):
    set = serializers.ChoiceField(choices=[tag.value for tag in ConicSet])
    s = RationalField()

    def create(self, validated_data):
        conic_set, s = ConicSet(validated_data['set']), validated_data['s']
        payload = {'set': conic_set.value, 's': format_rational(s), 'member': membership(conic_set, s)}
        if payload['member']:
            payload['companion'] = format_rational(is_rational_square(radicand(conic_set, s)))
        return Outcome(payload)
