from django.apps import AppConfig


class DeductionConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'deduction'
    verbose_name = 'Derivation rule engine'
