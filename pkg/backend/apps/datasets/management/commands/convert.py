"""
Convert a numpy feature archive into a domain CSV.
Usage: python manage.py convert --input amazon.npz --output amazon.csv --name A
"""

from apps.core.management.base import ToolkitCommand
from apps.datasets.services.conversion import convert_npz


class Command(ToolkitCommand):
    help = 'Convert an .npz archive (features + labels) into the canonical domain CSV'

    def add_arguments(self, parser):
        parser.add_argument('--input', required=True, help='Input .npz archive')
        parser.add_argument('--output', required=True, help='Output CSV path')
        parser.add_argument(
            '--features-key',
            default='features',
            help='Archive key of the N×D feature matrix (default: features)'
        )
        parser.add_argument(
            '--labels-key',
            default='labels',
            help='Archive key of the label vector (default: labels)'
        )
        parser.add_argument(
            '--label-offset',
            type=int,
            default=0,
            help='Subtracted from every label, e.g. 1 for 1-based labels'
        )
        parser.add_argument('--name', default='', help='Domain name (default: archive file stem)')

    def handle(self, *args, **options):
        dataset = convert_npz(
            options['input'],
            options['output'],
            features_key=options['features_key'],
            labels_key=options['labels_key'],
            label_offset=options['label_offset'],
            domain_name=options['name'],
        )
        self.success(
            f"Converted {dataset.domain_name}: N={dataset.num_samples}, "
            f"D={dataset.num_features}, C={dataset.num_classes} → {options['output']}"
        )
