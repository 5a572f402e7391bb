"""
Accuracy against the labeled target fraction.
Usage: python manage.py sweep --source amazon.csv --target caltech.csv --fractions 0.1,0.2,0.3,0.4,0.5 --seeds 0,1,2
"""

from apps.core.management.base import parse_float_list
from apps.experiments.management.base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Sweep the labeled target fraction and write the accuracy table'
    kind = 'sweep'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--fractions', default=None, help='Comma-separated labeled fractions')

    def experiment_options(self, options) -> dict:
        if not options['fractions']:
            return {}
        return {"fractions": tuple(parse_float_list(options['fractions'], '--fractions'))}
