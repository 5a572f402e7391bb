"""
Shared options of the experiment commands (bench, grid, sweep, sensitivity).
"""

from dataclasses import replace
from pathlib import Path

from apps.core.exceptions import ParameterError
from apps.core.management.base import ToolkitCommand, parse_int_list
from apps.datasets.services.loader import DomainManifest
from apps.experiments.services.config import (
    ExperimentConfig,
    apply_overrides,
    default_fraction,
    load_experiment_config,
)
from apps.experiments.services.execution import execute_experiment
from apps.experiments.services.runner import METHODS


class ExperimentCommand(ToolkitCommand):
    """Builds an ExperimentConfig from a manifest and flags, then runs it."""

    kind = None

    def add_arguments(self, parser):
        parser.add_argument('--manifest', help='Experiment manifest JSON')
        parser.add_argument('--source', help='Source domain CSV (instead of a manifest)')
        parser.add_argument('--target', help='Target domain CSV (instead of a manifest)')
        parser.add_argument(
            '--method',
            type=str,
            default=None,
            help=f'Comma-separated methods out of {", ".join(METHODS)}'
        )
        parser.add_argument('--fraction', type=float, default=None, help='Labeled target fraction')
        parser.add_argument('--seed', type=int, default=None, help='Root seed (default: manifest, else 0)')
        parser.add_argument('--seeds', type=str, default=None, help='Comma-separated root seeds')
        parser.add_argument('--jobs', type=int, default=None, help='Parallel workers; -1 uses every core')
        parser.add_argument('--record', action='store_true', help='Store the run and its report in the database')
        parser.add_argument('--queue', action='store_true', help='Store the run and execute it in the background')
        parser.add_argument('--label', default='', help='Display name of a recorded run')
        self.add_hyperparam_arguments(parser)
        self.add_output_arguments(parser)
        self.add_experiment_arguments(parser)

    def add_experiment_arguments(self, parser):
        pass

    def experiment_options(self, options) -> dict:
        """Kind-specific ExperimentConfig fields parsed from ``options``."""
        return {}

    # -- config --------------------------------------------------------------

    def _domains(self, options) -> list[DomainManifest]:
        if not (options['source'] and options['target']):
            raise ParameterError("give --manifest, or both --source and --target")
        return [
            DomainManifest(name=Path(options[role]).stem or role, path=Path(options[role]))
            for role in ('source', 'target')
        ]

    def build_config(self, options) -> ExperimentConfig:
        # Flags are validated before the manifest is read
        overrides = self.hyperparam_overrides(options)
        apply_overrides(overrides)
        extra = self.experiment_options(options)
        methods = None
        if options['method']:
            methods = tuple(m.strip() for m in options['method'].split(',') if m.strip())
        seeds = None
        if options['seeds']:
            seeds = tuple(parse_int_list(options['seeds'], '--seeds'))
        elif options['seed'] is not None:
            seeds = (options['seed'],)

        if options['manifest']:
            config = load_experiment_config(options['manifest'])
        else:
            config = ExperimentConfig(domains=self._domains(options), fraction=default_fraction())

        changes = {"hyperparams": apply_overrides(overrides, base=config.hyperparams)}
        for name, value in extra.items():
            current = getattr(config, name, None)
            # Flags refine a manifest's grid / sensitivity block
            changes[name] = {**current, **value} if isinstance(current, dict) and isinstance(value, dict) else value
        if methods:
            changes["methods"] = methods
        if seeds:
            changes["seeds"] = seeds
        if options['fraction'] is not None:
            changes["fraction"] = options['fraction']
        if options['jobs'] is not None:
            changes["jobs"] = options['jobs']
        return replace(config, **changes)

    # -- run -----------------------------------------------------------------

    def handle(self, *args, **options):
        config = self.build_config(options)

        if options['queue'] or options['record']:
            # Import here to avoid loading models for plain runs
            from apps.experiments.services.recording import execute_run, record_run

            run = record_run(self.kind, config, label=options['label'])
            if options['queue']:
                run.schedule()
                self.stdout.write(str(run.pk))
                self.success(f"Queued {self.kind} run {run.pk}")
                return
            result = execute_run(run)
            self.success(f"Recorded {self.kind} run {run.pk}")
        else:
            result = execute_experiment(self.kind, config)

        self.emit(result.render(options['format']), options['out'])
        self.report(result)

    def report(self, result):
        """Summary line on stderr after the output is written."""
