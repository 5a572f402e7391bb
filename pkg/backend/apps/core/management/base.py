"""
Shared base for the toolkit's management commands.

ToolkitError subclasses become CommandError with the error's exit code, so
``manage.py`` and ``dispatch`` exit with 1 (usage), 2 (data) or 3 (numeric).
Progress goes to stderr; data goes to stdout or to ``--out``.
"""

import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from apps.core.exceptions import ParameterError, ToolkitError
from apps.core.seeding import validate_seed

# -v level -> level of the ``apps`` logger
VERBOSITY_LEVELS = {0: logging.WARNING, 1: logging.INFO, 2: logging.DEBUG, 3: logging.DEBUG}

# Individual hyper-parameter flags, named after the model's symbols
HYPERPARAM_FLAGS = (
    ("--cs", "cs", "Source error weight c_s"),
    ("--ct", "ct", "Target error weight c_T"),
    ("--sigma", "sigma", "Manifold regularisation weight"),
    ("--tau0", "tau0", "Class-imbalance scale (default: mean class size)"),
    ("--k", "k", "LLE neighbour count"),
    ("--n", "n", "Feature-node groups"),
    ("--q", "q", "Nodes per feature group"),
    ("--m", "m", "Enhancement groups"),
    ("--r", "r", "Nodes per enhancement group"),
    ("--lambda", "lambda", "Ridge regularisation of the BLS solve"),
)


def configure_verbosity(verbosity) -> None:
    level = VERBOSITY_LEVELS.get(int(verbosity), logging.DEBUG)
    logging.getLogger("apps").setLevel(level)


def parse_int_list(text: str, name: str) -> list[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise ParameterError(f"{name} must be a comma-separated list of integers, got '{text}'") from exc


def parse_float_list(text: str, name: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise ParameterError(f"{name} must be a comma-separated list of numbers, got '{text}'") from exc


class ToolkitCommand(BaseCommand):
    """BaseCommand with exit-code mapping and shared flag helpers."""

    requires_system_checks = []

    def execute(self, *args, **options):
        configure_verbosity(options.get("verbosity", 1))
        try:
            return super().execute(*args, **options)
        except ToolkitError as exc:
            raise CommandError(str(exc), returncode=exc.exit_code) from exc

    # -- arguments -----------------------------------------------------------

    def add_hyperparam_arguments(self, parser):
        parser.add_argument(
            '--hp',
            type=str,
            default="",
            help='Hyper-parameter overrides, e.g. q=10,n=20,r=400,cs=1e3,ct=10,sigma=0.1'
        )
        group = parser.add_argument_group('hyper-parameters')
        for flag, dest, help_text in HYPERPARAM_FLAGS:
            group.add_argument(flag, dest=f"hp_{dest}", type=str, default=None, help=help_text)

    def add_seed_argument(self, parser, default=0):
        parser.add_argument(
            '--seed',
            type=int,
            default=default,
            help=f'Root seed for every random draw (default: {default})'
        )

    def add_output_arguments(self, parser, formats=("json", "csv")):
        parser.add_argument(
            '--out',
            type=str,
            default=None,
            help='Output file (default: standard output)'
        )
        if formats:
            parser.add_argument(
                '--format',
                choices=formats,
                default=formats[0],
                help=f'Output format (default: {formats[0]})'
            )

    # -- option helpers ------------------------------------------------------

    def hyperparam_overrides(self, options) -> dict:
        """Collect ``--hp`` and the individual flags; individual flags win."""
        # Import here to avoid circular imports (experiments builds on core)
        from apps.experiments.services.config import parse_overrides

        overrides = parse_overrides(options.get("hp"))
        for _, dest, _ in HYPERPARAM_FLAGS:
            value = options.get(f"hp_{dest}")
            if value is not None:
                overrides[dest] = value
        return overrides

    def hyperparams(self, options, base=None):
        """Validated HyperParams from the command's options."""
        from apps.experiments.services.config import apply_overrides

        return apply_overrides(self.hyperparam_overrides(options), base)

    def seed(self, options) -> int:
        return validate_seed(options["seed"])

    def emit(self, text: str, out: str | None = None) -> None:
        """Write ``text`` to ``out`` or to stdout."""
        if out:
            path = Path(out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            self.progress(f"Wrote {path}")
        else:
            self.stdout.write(text, ending="")

    def progress(self, message: str) -> None:
        self.stderr.write(message, style_func=str)

    def success(self, message: str) -> None:
        self.stderr.write(message, style_func=self.style.SUCCESS)
