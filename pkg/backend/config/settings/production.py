"""
Production settings: PostgreSQL run history, the admin behind gunicorn,
and experiments queued to a Redis-backed Celery worker.
"""

import os

import sentry_sdk
from sentry_sdk.integrations.celery import CeleryIntegration
from sentry_sdk.integrations.django import DjangoIntegration

from .base import *  # noqa: F401, F403

DEBUG = False

DATABASES['default']['CONN_MAX_AGE'] = int(os.environ.get('DB_CONN_MAX_AGE', '60'))  # noqa: F405

# ---------------------------------------------------------------------------
# Admin security
# ---------------------------------------------------------------------------

SECURE_SSL_REDIRECT = os.environ.get('SECURE_SSL_REDIRECT', 'true').lower() in ('1', 'true', 'yes', 'on')
SESSION_COOKIE_SECURE = True
CSRF_COOKIE_SECURE = True
SECURE_CONTENT_TYPE_NOSNIFF = True
X_FRAME_OPTIONS = 'DENY'

STORAGES = {
    'staticfiles': {
        'BACKEND': 'whitenoise.storage.CompressedManifestStaticFilesStorage',
    },
}

# ---------------------------------------------------------------------------
# Error reporting: failed runs raise inside the Celery task
# ---------------------------------------------------------------------------

sentry_sdk.init(
    dsn=os.environ.get('SENTRY_DSN', ''),
    integrations=[DjangoIntegration(), CeleryIntegration()],
    traces_sample_rate=0.0,
    send_default_pii=False,
)

# ---------------------------------------------------------------------------
# Logging: worker pid on every line, per-task progress from the harness
# ---------------------------------------------------------------------------

LOGGING['formatters']['verbose']['format'] = '{levelname} {asctime} {module} {process:d} {message}'  # noqa: F405
LOGGING['root'] = {'handlers': ['console'], 'level': 'WARNING'}  # noqa: F405

# ---------------------------------------------------------------------------
# Celery
# ---------------------------------------------------------------------------

CELERY_TASK_ALWAYS_EAGER = False

# One experiment per worker process; joblib and BLAS use the cores
CELERY_WORKER_CONCURRENCY = int(os.environ.get('CELERY_WORKER_CONCURRENCY', '1'))
CELERY_WORKER_PREFETCH_MULTIPLIER = 1
CELERY_WORKER_MAX_TASKS_PER_CHILD = 20
EXPERIMENT_DEFAULT_JOBS = int(os.environ.get('BROAD_TRANSFER_EXPERIMENT_DEFAULT_JOBS', '-1'))
