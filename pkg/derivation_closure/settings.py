"""
Django settings for the derivation_closure project.

Generated by 'django-admin startproject' using Django 5.1.2 and trimmed down
to what a stateless computation service needs: no admin, no sessions, no
static files.

For more information on this file, see
https://docs.djangoproject.com/en/5.1/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""
import os
from pathlib import Path

from derivation_closure.conf import DEFAULTS as CLOSURE_DEFAULTS

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def env_flag(name, default=False):
    """Read a boolean flag from the environment ("1", "true", "yes" are truthy)."""
    value = os.environ.get(name)
    if value is None:
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    'DJANGO_SECRET_KEY',
    'django-insecure-derivation-closure-development-key',
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = env_flag('DJANGO_DEBUG')

ALLOWED_HOSTS = os.environ.get('DJANGO_ALLOWED_HOSTS', '*').split(',')


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'exactnum.apps.ExactnumConfig',
    'laurent.apps.LaurentConfig',
    'conic.apps.ConicConfig',
    'numcheck.apps.NumcheckConfig',
    'deduction.apps.DeductionConfig',
    'cli.apps.CliConfig',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'derivation_closure.urls'

TEMPLATES = []

WSGI_APPLICATION = 'derivation_closure.wsgi.application'


# Database
# Nothing is persisted; the sqlite entry only keeps management commands happy.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [
        'rest_framework.permissions.AllowAny',
    ],
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
    'UNAUTHENTICATED_USER': None,
}

# Internationalization
# https://docs.djangoproject.com/en/5.1/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Engine configuration. Read through derivation_closure.conf.closure_setting;
# the defaults live in derivation_closure.conf.DEFAULTS.

DERIV_CLOSURE = {
    **CLOSURE_DEFAULTS,
    'PRECISION': int(os.environ.get('DERIV_CLOSURE_PRECISION', CLOSURE_DEFAULTS['PRECISION'])),
}


# Logging

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': os.environ.get('DERIV_CLOSURE_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        }
        for app in ('derivation_closure', 'exactnum', 'laurent', 'conic',
                    'numcheck', 'deduction', 'cli')
    },
}

# The following are security based settings:

SECURE_CONTENT_TYPE_NOSNIFF = True

X_FRAME_OPTIONS = 'DENY'

# Redirect HTTP to HTTPS only where TLS is actually terminated in front of us
SECURE_SSL_REDIRECT = env_flag('DJANGO_SECURE_SSL_REDIRECT')

SECURE_HSTS_SECONDS = int(os.environ.get('DJANGO_HSTS_SECONDS', '0'))
SECURE_HSTS_INCLUDE_SUBDOMAINS = SECURE_HSTS_SECONDS > 0
