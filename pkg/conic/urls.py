from django.urls import path

from .views import dense_point_view, membership_view

urlpatterns = [
    path('dense-point/', dense_point_view, name='dense-point'),
    path('membership/', membership_view, name='membership'),
]
