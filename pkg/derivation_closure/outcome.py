"""
Glue shared by the REST views and the ``derive`` management command.

Every command is a DRF serializer whose ``create()`` runs the computation and
returns an ``Outcome``; transports only decide how to ship it.
"""
import logging
from dataclasses import dataclass

from rest_framework import status
from rest_framework.response import Response

from exactnum.exceptions import ClosureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Outcome:
    """
    Result of one command.

    Attributes:
        payload (dict): The JSON document to emit.
        applicable (bool): False for inapplicable verdicts and failing
            identity reports (HTTP 422, exit code 2).
    """

    payload: dict
    applicable: bool = True


def parse_trace_depth(value):
    """``None``/empty means unlimited; anything else must be a non-negative int."""
    if value in (None, ''):
        return None
    depth = int(value)
    if depth < 0:
        raise ValueError('trace depth must be >= 0')
    return depth


def respond(serializer_class, request):
    """
    Validate ``request.data`` with ``serializer_class`` and run it.

    Args:
        serializer_class (type): A command serializer.
        request (Request): The DRF request; ``?trace_depth=N`` limits traces.

    Returns:
        Response: 200 with the result, 400 with field errors, or 422 with an
        inapplicable verdict or an ``{"error", "detail"}`` body.
    """
    try:
        depth = parse_trace_depth(request.query_params.get('trace_depth'))
    except ValueError as e:
        return Response({'trace_depth': [str(e)]}, status=status.HTTP_400_BAD_REQUEST)

    serializer = serializer_class(data=request.data, context={'trace_depth': depth})
    if not serializer.is_valid():
        return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)

    try:
        outcome = serializer.save()
    except ClosureError as e:
        logger.info('%s rejected: %s', serializer_class.__name__, e)
        return Response(e.as_dict(), status=status.HTTP_422_UNPROCESSABLE_ENTITY)
    except Exception as e:
        logger.exception('%s failed', serializer_class.__name__)
        return Response({'error': 'InternalError', 'detail': str(e)},
                        status=status.HTTP_500_INTERNAL_SERVER_ERROR)

    code = status.HTTP_200_OK if outcome.applicable else status.HTTP_422_UNPROCESSABLE_ENTITY
    return Response(outcome.payload, status=code)
