from django.apps import AppConfig


class ConicConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'conic'
    verbose_name = 'Rational points on the unit conics'
