"""
Celery app for queued experiment runs (``--queue`` and the admin "re-run" action).

Production settings point the broker at Redis; local, development and test
settings run tasks eagerly.
"""

import os

from celery import Celery

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings.local")

app = Celery("broad_transfer")
app.config_from_object("django.conf:settings", namespace="CELERY")

# Progress lines go through the Django LOGGING config
app.conf.worker_hijack_root_logger = False

app.autodiscover_tasks()
