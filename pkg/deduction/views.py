from rest_framework.decorators import api_view

from derivation_closure.outcome import respond

from .serializers import DeduceSerializer, MaksaSerializer


@api_view(['POST'])
def deduce_view(request):
    """
    Saturates the rule set over a list of hypotheses.

    Args:
        request (HttpRequest): JSON body with hypotheses, an optional goal
            and an optional depth.

    Returns:
        Response: The strongest verdict reached and its proof trace.
    """
    return respond(DeduceSerializer, request)


@api_view(['POST'])
def maksa_view(request):
    """Runs the addition-law dispatcher for one function and interval."""
    return respond(MaksaSerializer, request)
