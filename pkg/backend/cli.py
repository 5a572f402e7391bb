#!/usr/bin/env python
"""Command-line entry point for conversion, training, prediction and experiments."""
import sys

from apps.core.cli import dispatch

if __name__ == '__main__':
    sys.exit(dispatch())
