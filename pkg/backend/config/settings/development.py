"""
Development settings: verbose toolkit logging, every core for experiments,
and small hidden layers so a full benchmark finishes in seconds.
"""

import os

from .base import *  # noqa: F401, F403

DEBUG = True
ALLOWED_HOSTS = ['*']

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.dev.sqlite3',  # noqa: F405
    }
}

LOGGING['loggers']['apps']['level'] = 'DEBUG'  # noqa: F405

EXPERIMENT_DEFAULT_JOBS = int(os.environ.get('BROAD_TRANSFER_EXPERIMENT_DEFAULT_JOBS', '-1'))
BLS_FEATURE_GROUPS = int(os.environ.get('BROAD_TRANSFER_BLS_FEATURE_GROUPS', '10'))
BLS_ENHANCEMENT_NODES = int(os.environ.get('BROAD_TRANSFER_BLS_ENHANCEMENT_NODES', '100'))

CELERY_TASK_ALWAYS_EAGER = True
CELERY_TASK_EAGER_PROPAGATES = True
