"""
Single command-line entry point.

    cli.py <subcommand> [options]

Each subcommand is the management command of the same name, so
``cli.py bench ...`` and ``manage.py bench ...`` behave identically.
"""

import os
import sys

from apps.core.exceptions import EXIT_OK, EXIT_USAGE

SUBCOMMANDS = ("convert", "train", "predict", "bench", "grid", "sweep", "sensitivity", "inspect")
PROG = "broad-transfer"


def usage() -> str:
    return f"usage: {PROG} {{{','.join(SUBCOMMANDS)}}} [options]\n"


def dispatch(argv=None) -> int:
    """Run one subcommand and return its exit code.

    Returns:
        0 on success, 1 on usage errors, 2 on data errors, 3 on numeric errors.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        sys.stderr.write(usage())
        return EXIT_OK if argv else EXIT_USAGE

    name, arguments = argv[0], argv[1:]
    if name not in SUBCOMMANDS:
        sys.stderr.write(f"{PROG}: unknown subcommand '{name}'\n{usage()}")
        return EXIT_USAGE

    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings.local")
    import django
    from django.core.management import get_commands, load_command_class
    from django.core.management.base import CommandError

    django.setup()
    command = load_command_class(get_commands()[name], name)
    parser = command.create_parser(PROG, name)
    try:
        options = vars(parser.parse_args(arguments))
        positional = options.pop("args", ())
        command.execute(*positional, **options)
    except CommandError as exc:
        sys.stderr.write(f"{PROG} {name}: error: {exc}\n")
        return exc.returncode
    except SystemExit as exc:
        # --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return EXIT_OK
