"""
Experiment reports and result tables.

Both render to JSON (full detail) and CSV. CSV tables carry one row per
task (or sweep value), mean and standard deviation columns per method,
and a closing "Average" row.
"""

import csv
import io
import json
import platform
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy
from django.conf import settings
from django.utils import timezone

AVERAGE_ROW = "Average"


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, default=_json_default) + "\n"


def mean_std(values) -> tuple[float, float]:
    """Arithmetic mean and population standard deviation."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return float("nan"), float("nan")
    return float(np.mean(values)), float(np.std(values))


def environment_stamp() -> dict:
    return {
        "build": f"broad-transfer {getattr(settings, 'TOOLKIT_VERSION', 'dev')}",
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "timestamp": timezone.now().isoformat(),
    }


@dataclass(frozen=True)
class TaskResult:
    """Outcome of one (task, method, seed) run."""

    task: str
    source: str
    target: str
    method: str
    seed: int
    fraction: float
    accuracy: float
    fit_seconds: float
    predict_seconds: float
    labeled_count: int
    unlabeled_count: int
    class_recall: dict = field(default_factory=dict)
    hyperparams: dict = field(default_factory=dict)

    @property
    def total_seconds(self) -> float:
        return self.fit_seconds + self.predict_seconds

    def to_dict(self) -> dict:
        payload = asdict(self)
        payload["class_recall"] = {str(k): v for k, v in self.class_recall.items()}
        return payload


@dataclass
class ResultTable:
    """A rectangular table of results: ``columns`` names, ``rows`` dicts."""

    title: str
    columns: list[str]
    rows: list[dict]
    meta: dict = field(default_factory=dict)

    def column(self, name: str) -> list:
        return [row[name] for row in self.rows if row[self.columns[0]] != AVERAGE_ROW]

    def to_dict(self) -> dict:
        return {"title": self.title, "columns": self.columns, "rows": self.rows, "meta": self.meta}

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=self.columns, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({name: _format_cell(row.get(name)) for name in self.columns})
        return buffer.getvalue()

    def render(self, fmt: str) -> str:
        return self.to_csv() if fmt == "csv" else self.to_json()


def _format_cell(value):
    if isinstance(value, float):
        return f"{value:.6f}"
    return "" if value is None else value


@dataclass
class ExperimentReport:
    """TaskResults of a benchmark plus per-task and per-method aggregates."""

    results: list[TaskResult]
    config: dict = field(default_factory=dict)
    environment: dict = field(default_factory=environment_stamp)

    def tasks(self) -> list[str]:
        return list(dict.fromkeys(result.task for result in self.results))

    def methods(self) -> list[str]:
        return list(dict.fromkeys(result.method for result in self.results))

    def results_for(self, task: str, method: str) -> list[TaskResult]:
        return [r for r in self.results if r.task == task and r.method == method]

    def task_summary(self) -> list[dict]:
        """Mean ± std accuracy and mean times per (task, method)."""
        summary = []
        for task in self.tasks():
            for method in self.methods():
                runs = self.results_for(task, method)
                if not runs:
                    continue
                accuracy, accuracy_std = mean_std([r.accuracy for r in runs])
                summary.append({
                    "task": task,
                    "method": method,
                    "runs": len(runs),
                    "accuracy": accuracy,
                    "accuracy_std": accuracy_std,
                    "fit_seconds": mean_std([r.fit_seconds for r in runs])[0],
                    "predict_seconds": mean_std([r.predict_seconds for r in runs])[0],
                })
        return summary

    def averages(self) -> dict[str, dict]:
        """Per method: arithmetic mean over tasks of the per-task means."""
        summary = self.task_summary()
        averages = {}
        for method in self.methods():
            rows = [row for row in summary if row["method"] == method]
            averages[method] = {
                "tasks": len(rows),
                "accuracy": float(np.mean([row["accuracy"] for row in rows])),
                "fit_seconds": float(np.mean([row["fit_seconds"] for row in rows])),
                "predict_seconds": float(np.mean([row["predict_seconds"] for row in rows])),
            }
        return averages

    def table(self) -> ResultTable:
        """Tasks as rows, one accuracy/std/time column group per method."""
        methods = self.methods()
        columns = ["task"]
        for method in methods:
            columns += [
                f"{method}_accuracy", f"{method}_std",
                f"{method}_fit_seconds", f"{method}_predict_seconds",
            ]

        by_key = {(row["task"], row["method"]): row for row in self.task_summary()}
        rows = []
        for task in self.tasks():
            row = {"task": task}
            for method in methods:
                cell = by_key.get((task, method))
                if cell is None:
                    continue
                row[f"{method}_accuracy"] = cell["accuracy"]
                row[f"{method}_std"] = cell["accuracy_std"]
                row[f"{method}_fit_seconds"] = cell["fit_seconds"]
                row[f"{method}_predict_seconds"] = cell["predict_seconds"]
            rows.append(row)

        average = {"task": AVERAGE_ROW}
        for method, values in self.averages().items():
            average[f"{method}_accuracy"] = values["accuracy"]
            average[f"{method}_fit_seconds"] = values["fit_seconds"]
            average[f"{method}_predict_seconds"] = values["predict_seconds"]
        rows.append(average)
        return ResultTable(title="benchmark", columns=columns, rows=rows)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "environment": self.environment,
            "averages": self.averages(),
            "tasks": self.task_summary(),
            "results": [result.to_dict() for result in self.results],
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_csv(self) -> str:
        return self.table().to_csv()

    def render(self, fmt: str) -> str:
        return self.to_csv() if fmt == "csv" else self.to_json()
