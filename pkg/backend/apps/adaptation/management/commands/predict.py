"""
Predict labels for a feature CSV with a trained model.
Usage: python manage.py predict --model model.npz --input x.csv --out labels.csv
"""

from apps.adaptation.services.dabls import dabls_predict
from apps.bls.services.model import BlsModel, bls_predict
from apps.bls.services.persistence import load_model
from apps.core.management.base import ToolkitCommand
from apps.datasets.services.loader import load_feature_matrix
from apps.experiments.services.metrics import accuracy


class Command(ToolkitCommand):
    help = 'Write one predicted label per input row'

    def add_arguments(self, parser):
        parser.add_argument('--model', required=True, help='Model file written by train')
        parser.add_argument('--input', required=True, help='Feature CSV (may contain 0 rows)')
        parser.add_argument(
            '--has-labels',
            action='store_true',
            help='Input rows start with a label column; accuracy is reported on stderr'
        )
        parser.add_argument(
            '--scores',
            action='store_true',
            help='Write class scores after each label'
        )
        self.add_output_arguments(parser, formats=None)

    def handle(self, *args, **options):
        model = load_model(options['model'])
        features, truth = load_feature_matrix(
            options['input'], has_labels=options['has_labels'], num_features=model.input_dim
        )

        predict = bls_predict if isinstance(model, BlsModel) else dabls_predict
        scores, labels = predict(model, features)

        lines = []
        for row, label in enumerate(labels):
            if options['scores']:
                values = ",".join(f"{value:.17g}" for value in scores[row])
                lines.append(f"{label},{values}")
            else:
                lines.append(str(label))
        self.emit("".join(f"{line}\n" for line in lines), options['out'])

        if truth is not None and labels.size:
            self.progress(f"Accuracy on {labels.size} labeled rows: {accuracy(labels, truth):.4f}")
        self.success(f"Predicted {labels.size} rows")
