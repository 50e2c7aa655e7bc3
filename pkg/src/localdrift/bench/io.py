"""CSV and manifest files written to a results directory.

All numbers are written with ``repr``/fixed formats so the output does not
depend on the locale, and rows are ordered by run id, then detector.
"""
import csv
import math
from pathlib import Path

import yaml

from ..exceptions import ConfigurationError

RUNS_FILE = "runs.csv"
METRICS_FILE = "metrics.csv"
GRID_FILE = "grid_counts.csv"
SUMMARY_FILE = "accuracy_summary.csv"
MANIFEST_FILE = "manifest.yaml"

RUNS_HEADER = ["run_id", "size", "positive", "concept_i", "concept_j", "detector", "detection_count"]
METRICS_HEADER = ["detector", "size", "accuracy", "f1", "fpr", "fnr", "threshold"]
TRACE_HEADER = ["batch", "overall_acc", "subgroup_acc"]


def _num(v):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return f"{v:.6f}" if isinstance(v, float) else str(v)


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def write_runs(path, results, selected):
    """One row per run and detector with the count of the selected grid entry."""
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(RUNS_HEADER)
        for r in results:
            for kind in sorted(selected):
                w.writerow([
                    r.run_id, repr(r.size), int(r.positive), r.concept_i,
                    "" if r.concept_j is None else r.concept_j,
                    kind, r.counts[kind][selected[kind]],
                ])


def read_runs(path):
    """Rows of ``runs.csv`` as ``(run_id, size, positive, detector, count)``."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != RUNS_HEADER:
            raise ConfigurationError(f"{path} does not have the runs.csv header")
        for rec in reader:
            rows.append((int(rec["run_id"]), float(rec["size"]), rec["positive"] == "1",
                         rec["detector"], int(rec["detection_count"])))
    return rows


def write_grid_counts(path, results, grid):
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(["run_id", "detector", "grid_index", "params", "detection_count"])
        for r in results:
            for kind in sorted(grid):
                for k, params in enumerate(grid[kind]):
                    spec = ";".join(f"{key}={params[key]!r}" for key in sorted(params))
                    w.writerow([r.run_id, kind, k, spec, r.counts[kind][k]])


def write_metrics(path, rows):
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(METRICS_HEADER)
        for m in rows:
            w.writerow([m.detector, repr(m.size), _num(m.accuracy), _num(m.f1),
                        _num(m.fpr), _num(m.fnr), m.threshold])


def write_summary(path, results):
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(["run_id", "size", "positive", "train_accuracy",
                    "pre_overall", "post_overall", "pre_subgroup", "post_subgroup"])
        for r in results:
            s = r.summary()
            w.writerow([r.run_id, repr(r.size), int(r.positive), _num(r.train_accuracy),
                        _num(s["pre_overall"]), _num(s["post_overall"]),
                        _num(s["pre_subgroup"]), _num(s["post_subgroup"])])


def write_trace(path, result):
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(TRACE_HEADER)
        for b, (acc, sub) in enumerate(zip(result.overall_acc, result.subgroup_acc)):
            w.writerow([b, _num(float(acc)), _num(float(sub))])


def write_manifest(path, cfg, results, selected, calibration_ids):
    doc = {
        "config": cfg.to_dict(),
        "selected_detectors": {
            kind: {"grid_index": k, "params": cfg.detectors[kind][k]}
            for kind, k in sorted(selected.items())
        },
        "runs": [
            {
                "run_id": r.run_id,
                "size": r.size,
                "positive": r.positive,
                "split": "calibration" if r.run_id in calibration_ids else "evaluation",
                "concept_i": r.concept_i,
                "concept_j": r.concept_j,
                "subgroup": r.subgroup.to_list(),
                "subgroup_description": str(r.subgroup),
                "computed_size": round(r.subgroup.computed_size, 10),
                "subgroup_gap": round(r.subgroup_gap, 10),
                "subgroup_iterations": r.subgroup.n_iter,
                "subgroup_within_tolerance": r.subgroup_gap <= cfg.subgroup_tolerance,
            }
            for r in results
        ],
    }
    with open(path, "w") as fh:
        yaml.safe_dump(doc, fh, sort_keys=False)


def read_manifest(path):
    try:
        with open(path) as fh:
            return yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read manifest {path}: {exc}") from None


def results_paths(out_dir):
    out = Path(out_dir)
    return {
        "runs": out / RUNS_FILE,
        "metrics": out / METRICS_FILE,
        "grid": out / GRID_FILE,
        "summary": out / SUMMARY_FILE,
        "manifest": out / MANIFEST_FILE,
    }
