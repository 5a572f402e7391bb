#!/usr/bin/env python3
"""
Setup script: creates the superuser, writes four synthetic domains plus an
experiment manifest, and records one benchmark run for the admin.
"""
import json
import os
import sys
from pathlib import Path

import django

sys.path.insert(0, os.path.dirname(__file__))
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings.local')
django.setup()

from django.contrib.auth import get_user_model

from apps.datasets.services.loader import write_domain_csv
from apps.datasets.services.synthetic import make_shifted_domains
from apps.experiments.models import ExperimentRun
from apps.experiments.services.config import load_experiment_config
from apps.experiments.services.recording import execute_run, record_run

SAMPLE_DIR = Path(__file__).resolve().parent / 'sample_data'
MANIFEST_PATH = SAMPLE_DIR / 'synthetic.json'

# name -> (rotation in degrees, shift)
DOMAINS = {
    'S': (0.0, (0.0, 0.0)),
    'R30': (30.0, (4.0, -2.0)),
    'R60': (60.0, (-3.0, 1.0)),
    'R90': (90.0, (2.0, 3.0)),
}


def write_domains():
    entries = []
    for index, (name, (rotation, shift)) in enumerate(DOMAINS.items()):
        _, domain = make_shifted_domains(
            source_samples=3, target_samples=300, rotation_degrees=rotation, shift=shift, seed=index,
        )
        path = write_domain_csv(domain, SAMPLE_DIR / f'{name.lower()}.csv')
        entries.append({'name': name, 'path': path.name, 'num_classes': domain.num_classes})
        print(f'  {name}: {domain.num_samples} samples → {path}')

    MANIFEST_PATH.write_text(json.dumps({
        'domains': entries,
        'methods': ['dabls', 'bls_source_only'],
        'hyperparams': {'n': 10, 'q': 10, 'r': 100, 'cs': 100, 'ct': 100, 'sigma': 0.1},
        'fraction': 0.1,
        'seeds': [0, 1, 2],
        'grid': {'values': {'sigma': [0.01, 0.1, 1.0], 'c_t': [10, 100, 1000]}, 'mode': 'holdout'},
        'sensitivity': {'parameter': 'sigma', 'values': [0.001, 0.01, 0.1, 1.0, 10.0]},
    }, indent=2) + '\n')
    print(f'  Manifest: {MANIFEST_PATH}')


def setup():
    print('=== Setting up sample domains ===')

    User = get_user_model()
    if not User.objects.filter(is_superuser=True).exists():
        User.objects.create_superuser('admin', 'admin@example.com', 'admin123')
        print('Superuser created: admin / admin123')
    else:
        print('Superuser already exists')

    SAMPLE_DIR.mkdir(parents=True, exist_ok=True)
    write_domains()

    if ExperimentRun.objects.filter(label='sample benchmark').exists():
        print('Sample benchmark already recorded')
    else:
        print('Recording sample benchmark (12 tasks × 3 seeds × 2 methods)...')
        run = record_run('bench', load_experiment_config(MANIFEST_PATH), label='sample benchmark')
        report = execute_run(run)
        for method, values in report.averages().items():
            print(f'  {method}: average accuracy {values["accuracy"]:.4f}')

    print('\n=== Done ===')
    print(f'  Runs: {ExperimentRun.objects.count()}')
    print(f'  Try:  python cli.py bench --manifest {MANIFEST_PATH} --format csv')
    print('  Admin: http://127.0.0.1:8000/admin/ (admin / admin123)')


if __name__ == '__main__':
    setup()
