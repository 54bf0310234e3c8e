from rest_framework.decorators import api_view

from derivation_closure.outcome import respond

from .serializers import DensePointSerializer, MembershipSerializer


@api_view(['POST'])
def dense_point_view(request):
    """
    Certifies a rational point of U, V or W near a target.

    Args:
        request (HttpRequest): JSON body with set, x and eps.

    Returns:
        Response: The certificate with exact rational fields.
    """
    return respond(DensePointSerializer, request)


@api_view(['POST'])
def membership_view(request):
    return respond(MembershipSerializer, request)
