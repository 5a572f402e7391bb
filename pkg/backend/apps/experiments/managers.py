"""
Custom model managers for experiment records.
"""

from django.db import models


class ExperimentRunManager(models.Manager):
    """Custom manager for ExperimentRun model."""

    def create_run(self, kind, config, label=""):
        """Create a pending run from an experiment configuration.

        Args:
            kind: One of bench, grid, sweep, sensitivity.
            config: An ExperimentConfig or its ``to_dict()`` payload.
            label: Optional display name.

        Returns:
            The newly created ExperimentRun instance.
        """
        payload = config.to_dict() if hasattr(config, "to_dict") else dict(config)
        return self.create(kind=kind, config=payload, label=label)

    def completed(self):
        return self.filter(status=self.model.Status.COMPLETED)

    def for_kind(self, kind):
        return self.filter(kind=kind)
