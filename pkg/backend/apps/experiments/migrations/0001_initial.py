# Generated by Django 5.0.14 on 2026-10-18 09:12

from django.db import migrations, models
import django.db.models.deletion
import uuid


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="ExperimentRun",
            fields=[
                ("created_at", models.DateTimeField(auto_now_add=True)),
                ("updated_at", models.DateTimeField(auto_now=True)),
                (
                    "id",
                    models.UUIDField(
                        default=uuid.uuid4,
                        editable=False,
                        primary_key=True,
                        serialize=False,
                    ),
                ),
                ("label", models.CharField(blank=True, default="", max_length=255)),
                (
                    "kind",
                    models.CharField(
                        choices=[
                            ("bench", "Benchmark"),
                            ("grid", "Grid search"),
                            ("sweep", "Labeled-fraction sweep"),
                            ("sensitivity", "Sensitivity sweep"),
                        ],
                        db_index=True,
                        max_length=20,
                    ),
                ),
                (
                    "status",
                    models.CharField(
                        choices=[
                            ("pending", "Pending"),
                            ("running", "Running"),
                            ("completed", "Completed"),
                            ("failed", "Failed"),
                        ],
                        db_index=True,
                        default="pending",
                        max_length=20,
                    ),
                ),
                ("config", models.JSONField(default=dict, help_text="Experiment configuration echo")),
                (
                    "report",
                    models.JSONField(
                        blank=True,
                        default=dict,
                        help_text="Full report (populated by the task)",
                    ),
                ),
                ("error_message", models.TextField(blank=True, default="")),
                ("started_at", models.DateTimeField(blank=True, null=True)),
                ("finished_at", models.DateTimeField(blank=True, null=True)),
            ],
            options={
                "db_table": "experiment_runs",
                "ordering": ["-created_at"],
                "indexes": [
                    models.Index(fields=["kind", "status"], name="idx_run_kind_status"),
                ],
            },
        ),
        migrations.CreateModel(
            name="TaskRecord",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("created_at", models.DateTimeField(auto_now_add=True)),
                ("updated_at", models.DateTimeField(auto_now=True)),
                ("task", models.CharField(max_length=100)),
                ("method", models.CharField(max_length=30)),
                ("seed", models.CharField(help_text="Derived 64-bit seed of the run", max_length=24)),
                ("fraction", models.FloatField()),
                ("accuracy", models.FloatField()),
                ("fit_seconds", models.FloatField()),
                ("predict_seconds", models.FloatField()),
                ("class_recall", models.JSONField(blank=True, default=dict)),
                (
                    "run",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE,
                        related_name="task_records",
                        to="experiments.experimentrun",
                    ),
                ),
            ],
            options={
                "db_table": "experiment_task_records",
                "ordering": ["run", "id"],
                "indexes": [
                    models.Index(fields=["run", "task"], name="idx_record_run_task"),
                ],
            },
        ),
    ]
