from rest_framework.decorators import api_view

from derivation_closure.outcome import respond

from .serializers import ClassifyPolySerializer, ClassifyPQSerializer, CorPQSerializer


@api_view(['POST'])
def classify_pq_view(request):
    """
    Classifies ``Q'(u) d(P(u)) = P'(u) d(Q(u))`` for a Laurent pair.

    Args:
        request (HttpRequest): JSON body with P, Q and an optional interval I.

    Returns:
        Response: The case tag, verdict, pivot and trace.
    """
    return respond(ClassifyPQSerializer, request)


@api_view(['POST'])
def classify_poly_view(request):
    """Classifies derivability of a polynomial over an interval."""
    return respond(ClassifyPolySerializer, request)


@api_view(['POST'])
def cor_pq_view(request):
    """Decides the ``P o Q^-1`` criterion on an interval."""
    return respond(CorPQSerializer, request)
