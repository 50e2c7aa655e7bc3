"""Experiment harness: runs, threshold calibration and reporting."""
from .config import ExperimentConfig
from .experiment import RunResult, RunSpec, plan_runs, run_all, run_experiment
from .metrics import calibrate_threshold, evaluate, score, split_runs
from .pipeline import MetricsReport, report_dir, run_benchmark
