"""End-to-end benchmark: run, select detector configs, calibrate, report."""
from dataclasses import dataclass
from pathlib import Path

from ..exceptions import ConfigurationError
from . import io
from .experiment import run_all
from .metrics import calibrate_all, evaluate, select_grid_entry, split_runs


@dataclass
class MetricsReport:
    rows: list
    thresholds: dict

    def for_detector(self, detector):
        return [r for r in self.rows if r.detector == detector]


def split_for(results, cfg):
    return split_runs(((r.run_id, r.size, r.positive) for r in results),
                      cfg.calibration_fraction, cfg.seed)


def select_detectors(results, cfg, calibration_ids):
    """Grid entry per detector with the best Youden J on the calibration runs."""
    return {kind: select_grid_entry(results, kind, calibration_ids) for kind in sorted(cfg.detectors)}


def build_report(table, calibration_ids, evaluation_ids):
    if calibration_ids & evaluation_ids:
        raise ConfigurationError("calibration and evaluation runs overlap")
    thresholds = calibrate_all(table, calibration_ids)
    return MetricsReport(evaluate(table, thresholds, evaluation_ids), thresholds)


def run_benchmark(cfg, out_dir, progress=None):
    """Execute every run of ``cfg`` and write the results directory."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    results = run_all(cfg, progress=progress)
    calibration, evaluation = split_for(results, cfg)
    selected = select_detectors(results, cfg, calibration)
    paths = io.results_paths(out)
    io.write_runs(paths["runs"], results, selected)
    io.write_grid_counts(paths["grid"], results, cfg.detectors)
    io.write_summary(paths["summary"], results)
    io.write_manifest(paths["manifest"], cfg, results, selected, calibration)
    report = report_dir(out)
    return results, report


def report_dir(out_dir):
    """Rebuild ``metrics.csv`` from ``runs.csv`` and the manifest's split."""
    paths = io.results_paths(out_dir)
    if not paths["runs"].exists() or not paths["manifest"].exists():
        raise ConfigurationError(f"no benchmark results in {out_dir}")
    table = io.read_runs(paths["runs"])
    if not table:
        raise ConfigurationError(f"{paths['runs']} holds no runs")
    manifest = io.read_manifest(paths["manifest"])
    calibration = {r["run_id"] for r in manifest["runs"] if r["split"] == "calibration"}
    evaluation = {r["run_id"] for r in manifest["runs"] if r["split"] == "evaluation"}
    report = build_report(table, calibration, evaluation)
    io.write_metrics(paths["metrics"], report.rows)
    return report
