from django.apps import AppConfig


class CoreConfig(AppConfig):
    """Exceptions, exit codes, seeding and the command base shared by the toolkit apps."""

    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.core'
    verbose_name = 'Toolkit core'
