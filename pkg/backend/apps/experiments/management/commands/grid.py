"""
Hyper-parameter grid search on one task.
Usage: python manage.py grid --source dslr.csv --target webcam.csv --grid "sigma=0.01,0.1,1;cs=100,1000"
"""

from apps.core.exceptions import ParameterError
from apps.experiments.management.base import ExperimentCommand
from apps.experiments.services.config import parse_grid_values
from apps.experiments.services.grid import GRID_MODES


class Command(ExperimentCommand):
    help = 'Grid-search hyper-parameters and write the grid table and best point'
    kind = 'grid'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--grid', default=None, help='Grid as "name=v1,v2;name=v1,v2"')
        parser.add_argument(
            '--full-scope',
            action='store_true',
            help='Search the widest scopes for n, q, r, c_s, c_T and sigma'
        )
        parser.add_argument('--mode', choices=GRID_MODES, default=None, help='Tuning protocol (default: holdout)')
        parser.add_argument('--repeats', type=int, default=None, help='Seeded splits averaged per point')

    def experiment_options(self, options) -> dict:
        grid = {}
        if options['grid'] and options['full_scope']:
            raise ParameterError("give either --grid or --full-scope, not both")
        if options['grid']:
            grid["values"] = parse_grid_values(options['grid'])
        if options['full_scope']:
            grid["full_scope"] = True
        if options['mode']:
            grid["mode"] = options['mode']
        if options['repeats'] is not None:
            grid["repeats"] = options['repeats']
        return {"grid": grid} if grid else {}

    def report(self, result):
        self.success(f"Best point {result.best_index}: {result.best_point} (score {result.best_score:.4f})")
