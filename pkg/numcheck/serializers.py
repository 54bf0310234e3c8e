"""Serializers for the verify-identities and grad-check commands."""
from rest_framework import serializers

from derivation_closure.outcome import Outcome
from deduction.serializers import FuncExprField

from .exceptions import UnknownCase
from .expressions import Expr
from .oracle import CASES, case_key, grad_check, verify_addition_identity, verify_bor_identity


class VerifyIdentitiesSerializer(serializers.Serializer):
    """
    Serializer for verify-identities.

    ``case`` is ``"all"`` (default), ``"bor"`` or one of ``"Mak-(i)"`` ..
    ``"Mak-(ix)"``; ``"Mak-iv"`` and ``"iv"`` are accepted too.
    """

    case = serializers.CharField(default='all')
    samples = serializers.IntegerField(min_value=1, required=False)
    tol = serializers.FloatField(min_value=0, required=False)

    def validate_case(self, value):
        if value in ('all', 'bor'):
            return value
        try:
            return f'Mak-({case_key(value)})'
        except UnknownCase:
            legal = ', '.join(f'Mak-({case})' for case in CASES)
            raise serializers.ValidationError(f'Unknown identity {value!r}; expected all, bor or one of {legal}.')

    def create(self, validated_data):
        case = validated_data['case']
        samples, tol = validated_data.get('samples'), validated_data.get('tol')
        if case == 'all':
            reports = [verify_addition_identity(c, samples, tol) for c in CASES]
            reports.append(verify_bor_identity(samples, tol))
        elif case == 'bor':
            reports = [verify_bor_identity(samples, tol)]
        else:
            reports = [verify_addition_identity(case, samples, tol)]
        passed = all(report.passed for report in reports)
        return Outcome({'passed': passed, 'reports': [report.as_json() for report in reports]}, applicable=passed)


class GradCheckSerializer(serializers.Serializer):
    """
    Serializer for grad-check: either a catalog ``func`` or a free-form
    ``expr`` over ``names``.
    """

    func = FuncExprField(required=False)
    expr = serializers.CharField(required=False)
    names = serializers.ListField(child=serializers.CharField(), default=['x'])
    point = serializers.ListField(child=serializers.FloatField(), min_length=1)
    h = serializers.FloatField(min_value=0, required=False)
    tol = serializers.FloatField(min_value=0, required=False)

    def validate(self, attrs):
        if ('func' in attrs) == ('expr' in attrs):
            raise serializers.ValidationError('Give exactly one of "func" and "expr".')
        if 'expr' in attrs:
            try:
                attrs['expr'] = Expr.parse(attrs['expr'], attrs['names'])
            except ValueError as e:
                raise serializers.ValidationError({'expr': [str(e)]})
        else:
            attrs['expr'] = Expr.from_func(attrs.pop('func'))
        inputs = attrs['expr'].arity[0]
        if len(attrs['point']) != inputs:
            raise serializers.ValidationError(
                {'point': [f'{attrs["expr"]} takes {inputs} input(s), got {len(attrs["point"])}']})
        return attrs

    def create(self, validated_data):
        report = grad_check(validated_data['expr'], validated_data['point'],
                            validated_data.get('h'), validated_data.get('tol'))
        return Outcome(report.as_json(), applicable=report.passed)
