from django.apps import AppConfig


class NumcheckConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'numcheck'
    verbose_name = 'Identity oracle and Q(t) model'
