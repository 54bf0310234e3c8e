"""
URL configuration for the derivation_closure project.

Every command of the ``derive`` management command is also reachable as
``POST /api/<command>/`` with the same JSON payload.
"""
from django.urls import path, include

urlpatterns = [
    path('api/', include('laurent.urls')),
    path('api/', include('conic.urls')),
    path('api/', include('deduction.urls')),
    path('api/', include('numcheck.urls')),
]
