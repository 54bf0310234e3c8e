from django.urls import path

from .views import grad_check_view, verify_identities_view

urlpatterns = [
    path('verify-identities/', verify_identities_view, name='verify-identities'),
    path('grad-check/', grad_check_view, name='grad-check'),
]
