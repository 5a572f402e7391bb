"""
Celery tasks for background experiment execution.

Triggered by `ExperimentRun.schedule()` (`--queue` on the experiment
commands, or the admin "re-run" action).
"""

import logging

from celery import shared_task

from apps.core.exceptions import ToolkitError
from apps.experiments.models import ExperimentRun
from apps.experiments.services.recording import execute_run

logger = logging.getLogger(__name__)


@shared_task(
    bind=True,
    acks_late=True,
)
def run_experiment(self, run_id: str) -> dict:
    """
    Execute one recorded experiment run.

    Args:
        run_id: UUID of the ExperimentRun.

    Returns:
        dict with the run status.
    """
    try:
        run = ExperimentRun.objects.get(pk=run_id)
    except ExperimentRun.DoesNotExist:
        logger.error("Experiment run %s not found, skipping.", run_id)
        return {"status": "error", "detail": "Run not found"}

    if run.status == ExperimentRun.Status.RUNNING:
        logger.info("Experiment run %s is already running, skipping.", run_id)
        return {"status": "skipped", "detail": "Already running"}

    try:
        execute_run(run)
    except ToolkitError as exc:
        logger.error("Experiment run %s failed: %s", run_id, exc)
        return {"status": "failed", "detail": str(exc)}
    except Exception as exc:
        logger.exception("Unexpected error in experiment run %s", run_id)
        try:
            run.mark_failed(f"Unexpected error: {exc}")
        except Exception as save_exc:
            logger.error("Failed to save error status for run %s: %s", run_id, save_exc)
        return {"status": "failed", "detail": str(exc)}

    return {"status": "completed", "run_id": str(run.pk), "kind": run.kind}
