"""Experiment configuration and its YAML representation."""
from dataclasses import asdict, dataclass, field, fields

import numpy as np
import yaml

from .._validation import check_fraction, check_positive_int
from ..detectors import make_detector
from ..exceptions import ConfigurationError
from ..stream import COMMISSION_RULES


def log_sizes(n=10, low=0.01, high=1.0):
    return [float(v) for v in np.round(np.geomspace(low, high, n), 4)]


# Small per-detector grid; one entry per detector is picked on the
# calibration runs. Long streams (200k samples) need stricter settings than
# the stationary-stream defaults of the detector classes.
DEFAULT_DETECTOR_GRID = {
    "DDM": [
        {"drift_level": 3.5, "min_samples": 1000},
        {"drift_level": 4.0, "min_samples": 1000},
        {"drift_level": 5.0, "min_samples": 1000},
    ],
    "EDDM": [
        {"alpha": 0.9, "beta": 0.8, "min_errors": 100},
        {"alpha": 0.9, "beta": 0.8, "min_errors": 300},
    ],
    "HDDM": [
        {"warning_confidence": 5e-4, "drift_confidence": 1e-4},
        {"warning_confidence": 5e-6, "drift_confidence": 1e-6},
        {"warning_confidence": 5e-8, "drift_confidence": 1e-8},
    ],
    "FHDDM": [
        {"window_size": 1000, "delta": 1e-10},
        {"window_size": 500, "delta": 1e-10},
        {"window_size": 1000, "delta": 1e-14},
    ],
}


def _default_grid():
    return {k: [dict(p) for p in v] for k, v in DEFAULT_DETECTOR_GRID.items()}


@dataclass
class ExperimentConfig:
    """Everything that determines a benchmark run, together with ``seed``."""

    sizes: list = field(default_factory=log_sizes)
    runs_per_size: int = 20
    train_size: int = 10_000
    batch_count: int = 200
    batch_size: int = 1_000
    drift_center: float = 100.0
    drift_width: float = 100.0
    perturbation: float = 0.25
    subgroup_tolerance: float = 0.01
    subgroup_max_iter: int = 1_000
    calibration_fraction: float = 0.30
    max_depth: int = 5
    min_leaf: int = 5
    commission_rule: str = "zero_below"
    detectors: dict = field(default_factory=_default_grid)
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not self.sizes:
            raise ConfigurationError("sizes must not be empty")
        self.sizes = [check_fraction(float(s), "subgroup size", low_open=True) for s in self.sizes]
        check_positive_int(self.runs_per_size, "runs_per_size", minimum=2)
        if self.runs_per_size % 2:
            raise ConfigurationError("runs_per_size must be even (half positive, half negative)")
        for name in ("train_size", "batch_count", "batch_size", "subgroup_max_iter",
                     "max_depth", "min_leaf", "jobs"):
            check_positive_int(getattr(self, name), name)
        check_fraction(self.perturbation, "perturbation")
        check_fraction(self.subgroup_tolerance, "subgroup_tolerance", low_open=True)
        check_fraction(self.calibration_fraction, "calibration_fraction",
                       low_open=True, high_open=True)
        if self.drift_width <= 0:
            raise ConfigurationError("drift_width must be positive")
        if self.commission_rule not in COMMISSION_RULES:
            raise ConfigurationError(f"commission_rule must be one of {COMMISSION_RULES}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigurationError("seed must be a non-negative integer")
        if not self.detectors:
            raise ConfigurationError("at least one detector is required")
        for kind, grid in self.detectors.items():
            if not grid:
                raise ConfigurationError(f"detector {kind} has an empty parameter grid")
            for params in grid:
                try:
                    make_detector(kind, **params).reset()
                except TypeError as exc:
                    raise ConfigurationError(f"bad parameters for {kind}: {exc}") from None
        return self

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path):
        try:
            with open(path) as fh:
                data = yaml.safe_load(fh) or {}
        except OSError as exc:
            raise ConfigurationError(f"cannot read config {path}: {exc}") from None
        except yaml.YAMLError as exc:
            raise ConfigurationError(f"invalid YAML in {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigurationError(f"{path} must hold a mapping of config keys")
        return cls.from_dict(data)

    def to_dict(self):
        return asdict(self)
