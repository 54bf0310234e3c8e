"""
Problem specs for the ``derive`` command.

A spec is a JSON object with a ``command`` key; every other key is the
payload, validated by the same DRF serializer the HTTP view uses.
"""
import json
import logging
from dataclasses import dataclass

from rest_framework.utils.encoders import JSONEncoder

from conic.serializers import DensePointSerializer, MembershipSerializer
from deduction.serializers import DeduceSerializer, MaksaSerializer
from exactnum.exceptions import ClosureError
from laurent.serializers import ClassifyPolySerializer, ClassifyPQSerializer, CorPQSerializer
from numcheck.serializers import GradCheckSerializer, VerifyIdentitiesSerializer

from .exceptions import ParseError, SchemaError

logger = logging.getLogger(__name__)

COMMAND_SERIALIZERS = {
    'classify-pq': ClassifyPQSerializer,
    'classify-poly': ClassifyPolySerializer,
    'cor-pq': CorPQSerializer,
    'dense-point': DensePointSerializer,
    'membership': MembershipSerializer,
    'deduce': DeduceSerializer,
    'maksa': MaksaSerializer,
    'verify-identities': VerifyIdentitiesSerializer,
    'grad-check': GradCheckSerializer,
}

EXIT_OK, EXIT_ERROR, EXIT_INAPPLICABLE = 0, 1, 2


@dataclass(frozen=True)
class ProblemSpec:
    """
    Attributes:
        command (str): A key of ``COMMAND_SERIALIZERS``.
        payload (dict): The command's input, already known to validate.
    """

    command: str
    payload: dict


def flatten_errors(errors, prefix=''):
    """
    DRF's nested ``serializer.errors`` as a flat list.

    Returns:
        list[dict]: ``{"field": "hypotheses.0.func", "rule": message}`` items.
    """
    if isinstance(errors, dict):
        flat = []
        for key, value in errors.items():
            field = prefix if key == 'non_field_errors' else f'{prefix}.{key}' if prefix else str(key)
            flat.extend(flatten_errors(value, field))
        return flat
    if isinstance(errors, list):
        if all(isinstance(item, str) for item in errors):
            return [{'field': prefix, 'rule': str(item)} for item in errors]
        flat = []
        for index, item in enumerate(errors):
            if item:
                flat.extend(flatten_errors(item, f'{prefix}.{index}' if prefix else str(index)))
        return flat
    return [{'field': prefix, 'rule': str(errors)}]


def build_spec(document):
    """
    Validate a decoded problem.

    Raises:
        SchemaError: If the command is missing or unknown, or the payload
            does not fit its serializer.
    """
    if not isinstance(document, dict):
        raise SchemaError([{'field': '', 'rule': 'The problem must be a JSON object.'}])
    payload = {key: value for key, value in document.items() if key != 'command'}
    command = document.get('command')
    if command not in COMMAND_SERIALIZERS:
        legal = ', '.join(COMMAND_SERIALIZERS)
        raise SchemaError([{'field': 'command', 'rule': f'Expected one of {legal}, got {command!r}.'}])
    serializer = COMMAND_SERIALIZERS[command](data=payload)
    if not serializer.is_valid():
        raise SchemaError(flatten_errors(serializer.errors))
    return ProblemSpec(command, payload)


def parse_spec(text):
    """
    Parse and validate a problem spec.

    Args:
        text (str | bytes): UTF-8 JSON.

    Raises:
        ParseError: With the line and column where decoding failed.
        SchemaError: With the field path and the violated rule.

    Returns:
        ProblemSpec
    """
    if isinstance(text, bytes):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as e:
            raise ParseError(f'not UTF-8: {e.reason}', 1, e.start + 1) from e
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from e
    return build_spec(document)


def run(spec, trace_depth=None):
    """
    Execute a validated spec.

    Args:
        spec (ProblemSpec): The problem.
        trace_depth (int | None): Truncates proof traces.

    Returns:
        tuple: ``(exit_code, payload)``: 0 on success, 2 for an inapplicable
        verdict or a failing identity report, 1 for errors.
    """
    serializer = COMMAND_SERIALIZERS[spec.command](data=spec.payload, context={'trace_depth': trace_depth})
    if not serializer.is_valid():
        return EXIT_ERROR, SchemaError(flatten_errors(serializer.errors)).as_dict()
    try:
        outcome = serializer.save()
    except ClosureError as e:
        logger.info('%s rejected: %s', spec.command, e)
        return EXIT_ERROR, e.as_dict()
    except Exception as e:
        logger.exception('%s failed', spec.command)
        return EXIT_ERROR, {'error': 'InternalError', 'detail': str(e)}
    return (EXIT_OK if outcome.applicable else EXIT_INAPPLICABLE), outcome.payload


def render(payload, pretty=False):
    """Canonical JSON: sorted keys, so equal payloads give equal bytes."""
    return json.dumps(payload, cls=JSONEncoder, sort_keys=True, indent=2 if pretty else None, ensure_ascii=False)
