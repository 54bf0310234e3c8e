from django.urls import path

from .views import classify_poly_view, classify_pq_view, cor_pq_view

urlpatterns = [
    path('classify-pq/', classify_pq_view, name='classify-pq'),
    path('classify-poly/', classify_poly_view, name='classify-poly'),
    path('cor-pq/', cor_pq_view, name='cor-pq'),
]
