from django.urls import path

from .views import deduce_view, maksa_view

urlpatterns = [
    path('deduce/', deduce_view, name='deduce'),
    path('maksa/', maksa_view, name='maksa'),
]
