"""
Cross-domain benchmark: every ordered domain pair, per seed and method.
Usage: python manage.py bench --manifest office.json --hp q=10,n=20,r=400,cs=1e3,ct=10,sigma=0.1
"""

from apps.experiments.management.base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Run the cross-domain benchmark and write the report'
    kind = 'bench'

    def report(self, result):
        for method, values in result.averages().items():
            self.success(
                f"{method}: average accuracy {values['accuracy']:.4f} over {values['tasks']} tasks "
                f"(fit {values['fit_seconds']:.3f}s, predict {values['predict_seconds']:.3f}s)"
            )
