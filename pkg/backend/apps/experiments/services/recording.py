"""
Persisting experiment runs.

The experiment services are database-free; this module stores their
results on ExperimentRun / TaskRecord rows.
"""

import logging

from django.db import transaction

from apps.core.exceptions import ToolkitError
from apps.experiments.models import ExperimentRun, TaskRecord
from apps.experiments.services.config import ExperimentConfig, experiment_config_from_dict
from apps.experiments.services.execution import execute_experiment
from apps.experiments.services.reports import ExperimentReport

logger = logging.getLogger(__name__)


def record_run(kind: str, config: ExperimentConfig, label: str = "") -> ExperimentRun:
    run = ExperimentRun.objects.create_run(kind, config, label=label)
    logger.info("Recorded %s experiment %s", kind, run.pk)
    return run


def _task_records(run: ExperimentRun, report: ExperimentReport) -> list[TaskRecord]:
    return [
        TaskRecord(
            run=run,
            task=result.task,
            method=result.method,
            seed=str(result.seed),
            fraction=result.fraction,
            accuracy=result.accuracy,
            fit_seconds=result.fit_seconds,
            predict_seconds=result.predict_seconds,
            class_recall={str(k): v for k, v in result.class_recall.items()},
        )
        for result in report.results
    ]


def execute_run(run: ExperimentRun):
    """Execute a stored run and save its report.

    Returns:
        The report or table produced by the experiment.

    Raises:
        ToolkitError: Re-raised after the run is marked FAILED.
    """
    run.mark_running()
    try:
        config = experiment_config_from_dict(run.config)
        result = execute_experiment(run.kind, config)
    except ToolkitError as exc:
        run.mark_failed(str(exc))
        raise

    with transaction.atomic():
        run.task_records.all().delete()
        if isinstance(result, ExperimentReport):
            TaskRecord.objects.bulk_create(_task_records(run, result))
        run.mark_completed(result.to_dict())

    logger.info("Experiment %s completed in %.1fs", run.pk, run.duration_seconds or 0.0)
    return result
