"""
Train a domain-adaptive (or source-only BLS) model and write it to a file.
Usage: python manage.py train --method dabls --source a.csv --target c.csv --fraction 0.1 --seed 7 --out model.npz
"""

import json
from pathlib import Path

from apps.adaptation.services.dabls import dabls_fit, dabls_predict
from apps.bls.services.model import bls_predict, fit_bls
from apps.bls.services.persistence import describe_model, save_model
from apps.core.exceptions import ParameterError
from apps.core.management.base import ToolkitCommand
from apps.core.seeding import derive_seed
from apps.datasets.services.loader import load_domain_csv
from apps.datasets.services.splits import stratified_split
from apps.experiments.services.config import default_fraction
from apps.experiments.services.metrics import accuracy
from apps.experiments.services.runner import METHODS, MODEL_STREAM, SPLIT_STREAM, check_compatible


class Command(ToolkitCommand):
    help = 'Fit DABLS-LLE (or source-only BLS) and write the model file'

    def add_arguments(self, parser):
        parser.add_argument('--method', choices=METHODS, default='dabls', help='Training method (default: dabls)')
        parser.add_argument('--source', required=True, help='Source domain CSV')
        parser.add_argument('--target', help='Target domain CSV (required for dabls)')
        parser.add_argument(
            '--fraction',
            type=float,
            default=None,
            help='Labeled fraction of each target class (default: EXPERIMENT_LABELED_FRACTION)'
        )
        parser.add_argument('--out', required=True, help='Model file to write')
        self.add_seed_argument(parser)
        self.add_hyperparam_arguments(parser)

    def handle(self, *args, **options):
        # Validate every flag before reading data
        hp = self.hyperparams(options)
        seed = self.seed(options)
        method = options['method']
        fraction = default_fraction() if options['fraction'] is None else options['fraction']
        if not 0.0 < fraction < 1.0:
            raise ParameterError(f"labeled fraction must lie in (0, 1), got {fraction}")
        if method == 'dabls' and not options['target']:
            raise ParameterError("--target is required for --method dabls")

        source = load_domain_csv(options['source'], domain_name=Path(options['source']).stem)
        target = None
        if options['target']:
            target = load_domain_csv(
                options['target'], domain_name=Path(options['target']).stem, num_classes=source.num_classes
            )
            check_compatible(source, target)

        split = None
        if target is not None:
            split = stratified_split(target, fraction, derive_seed(seed, SPLIT_STREAM))
        model_seed = derive_seed(seed, MODEL_STREAM)

        self.progress(f"Training {method} (F={hp.bls.num_hidden}, seed={seed})")
        if method == 'dabls':
            model = dabls_fit(source, split.labeled, hp, model_seed)
        else:
            model = fit_bls(source, hp.bls.with_seed(model_seed), hp.normalization)
        save_model(model, options['out'])

        summary = describe_model(model)
        summary['model_file'] = options['out']
        if split is not None and split.num_unlabeled:
            predict = dabls_predict if method == 'dabls' else bls_predict
            _, labels = predict(model, split.unlabeled_features)
            summary['unlabeled_target_accuracy'] = accuracy(labels, split.unlabeled_truth)

        self.stdout.write(json.dumps(summary, indent=2))
        self.success(f"Model written to {options['out']}")
