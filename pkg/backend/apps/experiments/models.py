"""
Experiment run records.

A run stores the configuration it was started with and, once finished,
the full report. Execution happens in the Celery task `run_experiment`,
or synchronously when Celery is not installed.
"""

import logging
import uuid

from django.db import models
from django.db.models import CASCADE
from django.utils import timezone

from apps.core.models import TimeStampedModel
from apps.experiments.managers import ExperimentRunManager

logger = logging.getLogger(__name__)


class ExperimentRun(TimeStampedModel):
    class Kind(models.TextChoices):
        BENCH = "bench", "Benchmark"
        GRID = "grid", "Grid search"
        SWEEP = "sweep", "Labeled-fraction sweep"
        SENSITIVITY = "sensitivity", "Sensitivity sweep"

    class Status(models.TextChoices):
        PENDING = "pending", "Pending"
        RUNNING = "running", "Running"
        COMPLETED = "completed", "Completed"
        FAILED = "failed", "Failed"

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    label = models.CharField(max_length=255, blank=True, default="")
    kind = models.CharField(max_length=20, choices=Kind.choices, db_index=True)
    status = models.CharField(
        max_length=20,
        choices=Status.choices,
        default=Status.PENDING,
        db_index=True,
    )
    config = models.JSONField(default=dict, help_text="Experiment configuration echo")
    report = models.JSONField(default=dict, blank=True, help_text="Full report (populated by the task)")
    error_message = models.TextField(blank=True, default="")
    started_at = models.DateTimeField(null=True, blank=True)
    finished_at = models.DateTimeField(null=True, blank=True)

    objects = ExperimentRunManager()

    class Meta:
        db_table = "experiment_runs"
        ordering = ["-created_at"]
        indexes = [
            models.Index(fields=["kind", "status"], name="idx_run_kind_status"),
        ]

    def __str__(self):
        return self.label or f"{self.kind} {self.pk}"

    def mark_running(self):
        self.status = self.Status.RUNNING
        self.error_message = ""
        self.started_at = timezone.now()
        self.finished_at = None
        self.save(update_fields=["status", "error_message", "started_at", "finished_at", "updated_at"])

    def mark_completed(self, report: dict):
        self.status = self.Status.COMPLETED
        self.report = report
        self.finished_at = timezone.now()
        self.save(update_fields=["status", "report", "finished_at", "updated_at"])

    def mark_failed(self, message: str):
        self.status = self.Status.FAILED
        self.error_message = message
        self.finished_at = timezone.now()
        self.save(update_fields=["status", "error_message", "finished_at", "updated_at"])

    def schedule(self):
        """
        Queue this run for background execution.
        Runs synchronously if Celery is not installed.
        """
        try:
            # Import here to avoid circular imports (tasks.py imports models.py)
            from apps.experiments.tasks import run_experiment
        except ImportError:
            from apps.experiments.services.recording import execute_run

            logger.info("Celery unavailable, running experiment %s synchronously", self.pk)
            execute_run(self)
            return
        run_experiment.delay(str(self.pk))
        logger.info("Scheduled %s experiment %s", self.kind, self.pk)

    @property
    def is_finished(self) -> bool:
        return self.status in (self.Status.COMPLETED, self.Status.FAILED)

    @property
    def duration_seconds(self) -> float | None:
        if not (self.started_at and self.finished_at):
            return None
        return (self.finished_at - self.started_at).total_seconds()


class TaskRecord(TimeStampedModel):
    """One (task, method, seed) result of a benchmark run."""

    run = models.ForeignKey(ExperimentRun, on_delete=CASCADE, related_name="task_records")
    task = models.CharField(max_length=100)
    method = models.CharField(max_length=30)
    seed = models.CharField(max_length=24, help_text="Derived 64-bit seed of the run")
    fraction = models.FloatField()
    accuracy = models.FloatField()
    fit_seconds = models.FloatField()
    predict_seconds = models.FloatField()
    class_recall = models.JSONField(default=dict, blank=True)

    class Meta:
        db_table = "experiment_task_records"
        ordering = ["run", "id"]
        indexes = [
            models.Index(fields=["run", "task"], name="idx_record_run_task"),
        ]

    def __str__(self):
        return f"{self.task} [{self.method}] {self.accuracy:.4f}"
