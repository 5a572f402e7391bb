"""
Test settings for the broad-transfer project.
"""

from .base import *  # noqa: F401, F403

DEBUG = False

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
}

# Faster password hashing for tests
PASSWORD_HASHERS = [
    'django.contrib.auth.hashers.MD5PasswordHasher',
]

# Tasks run in-process
CELERY_TASK_ALWAYS_EAGER = True
CELERY_TASK_EAGER_PROPAGATES = True

# Toolkit defaults, independent of the caller's environment
FEATURE_NORMALIZATION = 'zscore'
BLS_SAE_ITERS = 50
EXPERIMENT_DEFAULT_JOBS = 1
DABLS_IMBALANCE_SCALE = None

LOGGING['loggers']['apps']['level'] = 'WARNING'  # noqa: F405
