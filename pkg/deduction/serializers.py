"""Serializers for the deduce and maksa commands."""
from rest_framework import serializers

from derivation_closure.outcome import Outcome
from exactnum.exceptions import BadRational, ClosureError
from exactnum.numbers import parse_rational
from exactnum.serializers import IntervalField, RationalField
from laurent.serializers import LaurentPolyField

from .catalog import (
    BINARY, UNARY, compose, const, identity, inverse_of, laurent, law, power, tuple_of, unary, var,
)
from .domains import DomainSet, Span
from .engine import run_deduction
from .exceptions import HypothesisFailed
from .maksa import ROWS, maksa_verdict
from .store import Fact
from .verdicts import Verdict, VerdictTag, trace_to_json

COMBINATORS = ('id', 'const', 'power', 'laurent', 'var', 'compose', 'tuple', 'inverse')


class FuncExprField(serializers.Field):
    """
    A catalog map as a JSON object keyed by ``fn``.

    ``{"fn": "sinh"}`` and ``{"fn": "g_tanh"}`` name catalog entries; the
    combinators take extra keys: ``power`` (``r``), ``const`` (``c``),
    ``laurent`` (``P``), ``var`` (``i``, ``n``), ``compose`` (``inner``,
    ``outer``), ``tuple`` (``items``) and ``inverse`` (``of``).
    """

    default_error_messages = {
        'invalid': 'Expected an object with an "fn" key.',
        'unknown': 'Unknown catalog entry {fn!r}.',
        'missing': '{fn} needs the key {key!r}.',
        'exponent': 'The exponent of power must be an exact rational, got {value!r}.',
        'shape': '{message}',
    }

    def _key(self, data, key):
        if key not in data:
            self.fail('missing', fn=data['fn'], key=key)
        return data[key]

    def to_internal_value(self, data):
        if not isinstance(data, dict) or not isinstance(data.get('fn'), str):
            self.fail('invalid')
        fn = data['fn']
        try:
            if fn in UNARY:
                return unary(fn)
            if fn in BINARY:
                return law(fn)
            if fn == 'id':
                return identity()
            if fn == 'power':
                try:
                    return power(parse_rational(self._key(data, 'r')))
                except BadRational:
                    self.fail('exponent', value=data['r'])
            if fn == 'const':
                return const(RationalField().to_internal_value(self._key(data, 'c')))
            if fn == 'laurent':
                return laurent(LaurentPolyField().to_internal_value(self._key(data, 'P')))
            if fn == 'var':
                return var(int(self._key(data, 'i')), int(self._key(data, 'n')))
            if fn == 'compose':
                return compose(self.to_internal_value(self._key(data, 'inner')),
                               self.to_internal_value(self._key(data, 'outer')))
            if fn == 'tuple':
                return tuple_of(*(self.to_internal_value(item) for item in self._key(data, 'items')))
            if fn == 'inverse':
                return inverse_of(self.to_internal_value(self._key(data, 'of')))
        except (ClosureError, TypeError, ValueError) as exc:
            self.fail('shape', message=str(exc))
        self.fail('unknown', fn=fn)

    def to_representation(self, value):
        return str(value)


class DomainField(serializers.Field):
    """
    A fact domain: an interval ``{"lo", "hi"}``, a box ``{"box": [interval, ...]}``
    or a union ``{"union": [domain, ...]}`` of boxes of one dimension.
    """

    default_error_messages = {
        'invalid': 'Expected an interval, {"box": [...]} or {"union": [...]}.',
        'empty': '{message}',
    }

    def to_internal_value(self, data):
        if not isinstance(data, dict):
            self.fail('invalid')
        try:
            if set(data) == {'box'} and isinstance(data['box'], list) and data['box']:
                spans = [Span.from_interval(IntervalField().to_internal_value(item)) for item in data['box']]
                return DomainSet.product(*spans)
            if set(data) == {'union'} and isinstance(data['union'], list) and data['union']:
                return DomainSet.of(*(self.to_internal_value(item) for item in data['union']))
            if set(data) == {'lo', 'hi'}:
                return DomainSet.of(Span.from_interval(IntervalField().to_internal_value(data)))
        except ClosureError as exc:
            self.fail('empty', message=str(exc))
        self.fail('invalid')

    def to_representation(self, value):
        return str(value)


class HypothesisSerializer(serializers.Serializer):
    func = FuncExprField()
    domain = DomainField()

    def validate(self, attrs):
        """
        Checks that the domain lives where the map takes its inputs.

        Raises:
            serializers.ValidationError: If the dimensions differ.
        """
        inputs = attrs['func'].arity[0]
        if attrs['domain'].dim != inputs:
            raise serializers.ValidationError(
                f'{attrs["func"]} takes {inputs} input(s) but the domain has dimension {attrs["domain"].dim}')
        return attrs


class DeduceSerializer(serializers.Serializer):
    """Serializer for deduce: saturate the rules over the hypotheses."""

    hypotheses = HypothesisSerializer(many=True)
    goal = serializers.ChoiceField(
        choices=[tag.value for tag in VerdictTag if tag is not VerdictTag.INAPPLICABLE],
        default=VerdictTag.STANDARD.value,
    )
    depth = serializers.IntegerField(min_value=0, required=False)

    def create(self, validated_data):
        hypotheses = [Fact(item['func'], item['domain']) for item in validated_data['hypotheses']]
        result = run_deduction(hypotheses, Verdict(VerdictTag(validated_data['goal'])), validated_data.get('depth'))
        payload = {**result.verdict.as_json(), 'trace': trace_to_json(result.trace, self.context.get('trace_depth'))}
        if result.depth_exceeded:
            payload['depth_exceeded'] = True
        return Outcome(payload)


class MaksaSerializer(serializers.Serializer):
    """Serializer for maksa: the addition-law dispatcher on ]alpha, beta[."""

    fn = serializers.ChoiceField(choices=list(ROWS))
    alpha = RationalField()
    beta = RationalField()

    def create(self, validated_data):
        try:
            result = maksa_verdict(validated_data['fn'], validated_data['alpha'], validated_data['beta'])
        except HypothesisFailed as exc:
            verdict = Verdict.inapplicable('HypothesisFailed', exc.details['failed'])
            return Outcome({**verdict.as_json(), 'trace': []}, applicable=False)
        payload = {
            **result.verdict.as_json(),
            'case': result.case,
            'trace': trace_to_json(result.trace, self.context.get('trace_depth')),
        }
        return Outcome(payload, applicable=not result.verdict.is_inapplicable)
