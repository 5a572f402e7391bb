from django.apps import AppConfig


class BroadLearningConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.bls'
    verbose_name = 'Broad Learning System'
