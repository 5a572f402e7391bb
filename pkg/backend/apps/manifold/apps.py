from django.apps import AppConfig


class ManifoldConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.manifold'
    verbose_name = 'Manifold Graphs'
