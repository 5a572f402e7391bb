"""
Print summaries of a model file, an LLE graph, or recorded experiment runs.
Usage:
    python manage.py inspect --model model.npz
    python manage.py inspect --graph amazon.csv --k 5 --dump graph.txt
    python manage.py inspect --runs
"""

from apps.bls.services.persistence import describe_model, load_model
from apps.core.exceptions import ParameterError
from apps.core.management.base import ToolkitCommand
from apps.datasets.services.loader import load_feature_matrix
from apps.datasets.services.normalizer import normalize_apply, normalize_fit
from apps.experiments.services.reports import dumps
from apps.manifold.services.lle import build_lle_graph, dump_coordinates, graph_summary


class Command(ToolkitCommand):
    help = 'Inspect a model file, the LLE graph of a feature CSV, or recorded runs'

    def add_arguments(self, parser):
        parser.add_argument('--model', help='Model file written by train')
        parser.add_argument('--graph', help='CSV whose rows form the LLE graph')
        parser.add_argument('--has-labels', action='store_true', help='--graph CSV starts with a label column')
        parser.add_argument('--k', type=int, default=None, help='Neighbour count for --graph')
        parser.add_argument('--reg', type=float, default=None, help='LLE regularisation for --graph')
        parser.add_argument('--dump', help='Write the graph matrix M as "row col value" lines')
        parser.add_argument('--runs', action='store_true', help='List recorded experiment runs')
        parser.add_argument('--limit', type=int, default=20, help='Runs to list (default: 20)')
        self.add_output_arguments(parser, formats=None)

    def handle(self, *args, **options):
        chosen = [name for name in ('model', 'graph', 'runs') if options[name]]
        if len(chosen) != 1:
            raise ParameterError("give exactly one of --model, --graph or --runs")

        if options['model']:
            payload = describe_model(load_model(options['model']))
        elif options['graph']:
            payload = self.inspect_graph(options)
        else:
            payload = self.list_runs(options['limit'])
        self.emit(dumps(payload), options['out'])

    def inspect_graph(self, options) -> dict:
        features, _ = load_feature_matrix(options['graph'], has_labels=options['has_labels'])
        if features.shape[0] == 0:
            raise ParameterError(f"{options['graph']} has no rows")
        features = normalize_apply(normalize_fit(features), features)
        graph = build_lle_graph(features, k=options['k'], reg=options['reg'])
        if options['dump']:
            dump_coordinates(graph.graph, options['dump'])
            self.progress(f"Wrote graph coordinates to {options['dump']}")
        return graph_summary(graph)

    def list_runs(self, limit: int) -> list[dict]:
        # Import here to avoid loading models for file inspection
        from apps.experiments.models import ExperimentRun

        return [
            {
                "id": str(run.pk),
                "label": run.label,
                "kind": run.kind,
                "status": run.status,
                "created_at": run.created_at.isoformat(),
                "duration_seconds": run.duration_seconds,
                "averages": (run.report or {}).get("averages"),
                "error_message": run.error_message,
            }
            for run in ExperimentRun.objects.all()[:limit]
        ]
