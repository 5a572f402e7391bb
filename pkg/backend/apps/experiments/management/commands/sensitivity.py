"""
Sensitivity of accuracy to one hyper-parameter.

Usage: python manage.py sensitivity --source amazon.csv --target caltech.csv --parameter sigma --values 0.01,0.1,1,10
"""

from apps.core.management.base import parse_float_list
from apps.experiments.management.base import ExperimentCommand
from apps.experiments.services.sweeps import SWEEP_PARAMETERS


class Command(ExperimentCommand):
    help = 'Sweep one hyper-parameter and write the accuracy table'
    kind = 'sensitivity'

    def add_experiment_arguments(self, parser):
        parser.add_argument(
            '--parameter',
            choices=SWEEP_PARAMETERS + ('cs', 'ct', 'c_T'),
            default=None,
            help='Hyper-parameter to vary'
        )
        parser.add_argument('--values', default=None, help='Comma-separated values')

    def experiment_options(self, options) -> dict:
        sensitivity = {}
        if options['parameter']:
            sensitivity["parameter"] = options['parameter']
        if options['values']:
            sensitivity["values"] = parse_float_list(options['values'], '--values')
        return {"sensitivity": sensitivity} if sensitivity else {}
