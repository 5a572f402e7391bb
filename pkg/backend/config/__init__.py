"""
Loads the Celery app at Django start-up so ``run_experiment_task`` binds to it.

Celery is optional for the command-line tools: without it, queued runs
execute in-process (see ``apps.experiments.tasks.schedule``).
"""

try:
    from .celery import app as celery_app
except ImportError:
    celery_app = None
    __all__ = []
else:
    __all__ = ["celery_app"]
