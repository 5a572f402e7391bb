#!/usr/bin/env python
"""Administrative entry point: migrations, the admin server and the toolkit commands.

The toolkit subcommands (convert, train, predict, bench, grid, sweep,
sensitivity, inspect) are also reachable through ``cli.py``.
"""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings.local')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Django is not importable; install requirements/base.txt "
            "into the active environment first."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
