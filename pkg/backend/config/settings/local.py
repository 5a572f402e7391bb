"""
Default settings for ``manage.py`` and ``cli.py``.

Run records go to SQLite next to manage.py (override with DB_NAME to keep
separate histories) and queued runs execute in-process, so no services are
needed.
"""

import os

from .base import *  # noqa: F401, F403

DEBUG = True
ALLOWED_HOSTS = ['*']

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.getenv('DB_NAME', str(BASE_DIR / 'db.sqlite3')),  # noqa: F405
    }
}

# Set BROAD_TRANSFER_CELERY_EAGER=false and start a worker to queue runs against Redis
CELERY_TASK_ALWAYS_EAGER = os.getenv('BROAD_TRANSFER_CELERY_EAGER', 'true').lower() in ('1', 'true', 'yes', 'on')
CELERY_TASK_EAGER_PROPAGATES = True
