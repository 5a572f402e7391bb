"""
Django admin for experiment run records.
"""

from django.contrib import admin

from .models import ExperimentRun, TaskRecord


class TaskRecordInline(admin.TabularInline):
    model = TaskRecord
    extra = 0
    can_delete = False
    readonly_fields = ['task', 'method', 'seed', 'fraction', 'accuracy', 'fit_seconds', 'predict_seconds']
    fields = readonly_fields


@admin.register(ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    list_display = ['__str__', 'kind', 'status', 'average_accuracy', 'created_at', 'finished_at']
    list_filter = ['kind', 'status', 'created_at']
    search_fields = ['label', 'id']
    readonly_fields = ['id', 'report', 'error_message', 'started_at', 'finished_at', 'created_at', 'updated_at']
    inlines = [TaskRecordInline]
    actions = ['rerun_experiments']

    def average_accuracy(self, obj):
        """Per-method average accuracy of a benchmark report."""
        averages = (obj.report or {}).get("averages") or {}
        if not averages:
            return "-"
        return ", ".join(f"{method}: {values['accuracy']:.4f}" for method, values in averages.items())
    average_accuracy.short_description = "Average accuracy"

    def rerun_experiments(self, request, queryset):
        """Admin action to run selected experiments again."""
        count = 0
        for run in queryset.exclude(status=ExperimentRun.Status.RUNNING):
            run.status = ExperimentRun.Status.PENDING
            run.error_message = ""
            run.save(update_fields=['status', 'error_message', 'updated_at'])
            run.schedule()
            count += 1

        self.message_user(request, f"Scheduled {count} experiment runs.")
    rerun_experiments.short_description = "Re-run selected experiments"


@admin.register(TaskRecord)
class TaskRecordAdmin(admin.ModelAdmin):
    list_display = ['task', 'method', 'accuracy', 'fit_seconds', 'predict_seconds', 'run']
    list_filter = ['method', 'run__kind']
    search_fields = ['task', 'run__label']
    readonly_fields = ['run', 'task', 'method', 'seed', 'fraction', 'accuracy', 'fit_seconds',
                       'predict_seconds', 'class_recall', 'created_at', 'updated_at']
