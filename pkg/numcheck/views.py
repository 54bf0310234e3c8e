from rest_framework.decorators import api_view

from derivation_closure.outcome import respond

from .serializers import GradCheckSerializer, VerifyIdentitiesSerializer


@api_view(['POST'])
def verify_identities_view(request):
    """
    Runs the identity oracle.

    Args:
        request (HttpRequest): JSON body with an optional case, sample count
            and tolerance.

    Returns:
        Response: One report per identity; 422 if any of them fails.
    """
    return respond(VerifyIdentitiesSerializer, request)


@api_view(['POST'])
def grad_check_view(request):
    return respond(GradCheckSerializer, request)
