"""Calibration split, detection-count thresholds and run-level metrics."""
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .._validation import check_fraction
from ..exceptions import CalibrationError

# Salt mixed into the master seed for the calibration/evaluation split.
_SPLIT_SALT = 0x5EED


def split_runs(runs, fraction, seed):
    """Stratified split of run ids into ``(calibration, evaluation)`` sets.

    ``runs`` is an iterable of ``(run_id, size, positive)``. Within each
    (size, polarity) stratum ``round(fraction * n)`` runs go to calibration.
    """
    fraction = check_fraction(fraction, "calibration fraction", low_open=True, high_open=True)
    strata = defaultdict(list)
    for run_id, size, positive in runs:
        strata[(size, bool(positive))].append(run_id)
    rng = np.random.default_rng([seed, _SPLIT_SALT])
    calibration = set()
    for key in sorted(strata):
        ids = sorted(strata[key])
        k = int(round(fraction * len(ids)))
        calibration.update(int(i) for i in rng.permutation(ids)[:k])
    evaluation = {int(i) for ids in strata.values() for i in ids} - calibration
    return calibration, evaluation


def youden_curve(counts, labels, thresholds):
    """TPR - FPR of the rule ``count >= t`` for every ``t`` in ``thresholds``."""
    counts = np.asarray(counts)
    labels = np.asarray(labels, dtype=bool)
    fired = counts[None, :] >= np.asarray(thresholds)[:, None]
    tpr = fired[:, labels].mean(axis=1)
    fpr = fired[:, ~labels].mean(axis=1)
    return tpr - fpr


def calibrate_threshold(counts, labels):
    """Integer count threshold maximising Youden's J; ties go to the smallest.

    Returns ``(threshold, j)``. Candidates run from 1 to ``max(counts) + 1``.
    """
    labels = np.asarray(labels, dtype=bool)
    if labels.all() or not labels.any():
        raise CalibrationError("calibration needs both positive and negative runs")
    thresholds = np.arange(1, int(np.max(counts)) + 2)
    j = youden_curve(counts, labels, thresholds)
    best = int(np.argmax(j))
    return int(thresholds[best]), float(j[best])


@dataclass(frozen=True)
class Scores:
    accuracy: float
    f1: float
    fpr: float
    fnr: float
    n_runs: int


def score(predicted, labels):
    """Accuracy, F1 (drift = positive class), FPR and FNR of run-level calls."""
    predicted = np.asarray(predicted, dtype=bool)
    labels = np.asarray(labels, dtype=bool)
    tp = int(np.sum(predicted & labels))
    fp = int(np.sum(predicted & ~labels))
    fn = int(np.sum(~predicted & labels))
    tn = int(np.sum(~predicted & ~labels))
    n_pos, n_neg = tp + fn, fp + tn
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / n_pos if n_pos else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return Scores(
        accuracy=(tp + tn) / len(labels) if len(labels) else float("nan"),
        f1=f1,
        fpr=fp / n_neg if n_neg else float("nan"),
        fnr=fn / n_pos if n_pos else float("nan"),
        n_runs=len(labels),
    )


@dataclass(frozen=True)
class MetricRow:
    detector: str
    size: float
    accuracy: float
    f1: float
    fpr: float
    fnr: float
    threshold: int


def evaluate(table, thresholds, evaluation_ids):
    """Per detector and size scores on the evaluation runs.

    ``table`` rows are ``(run_id, size, positive, detector, count)``.
    """
    groups = defaultdict(list)
    for run_id, size, positive, detector, count in table:
        if run_id in evaluation_ids:
            groups[(detector, size)].append((count, positive))
    rows = []
    for detector, size in sorted(groups):
        counts, labels = zip(*groups[(detector, size)])
        theta = thresholds[detector]
        s = score(np.asarray(counts) >= theta, labels)
        rows.append(MetricRow(detector, size, s.accuracy, s.f1, s.fpr, s.fnr, theta))
    return rows


def calibrate_all(table, calibration_ids):
    """Threshold per detector from the calibration runs of ``table``."""
    per_detector = defaultdict(lambda: ([], []))
    for run_id, _size, positive, detector, count in table:
        if run_id in calibration_ids:
            per_detector[detector][0].append(count)
            per_detector[detector][1].append(positive)
    return {d: calibrate_threshold(c, l)[0] for d, (c, l) in sorted(per_detector.items())}


def select_grid_entry(results, kind, calibration_ids):
    """Index of the grid entry for ``kind`` with the best calibration J.

    Ties go to the earliest entry.
    """
    calib = [r for r in results if r.run_id in calibration_ids]
    labels = [r.positive for r in calib]
    n_entries = len(calib[0].counts[kind])
    best, best_j = 0, -np.inf
    for k in range(n_entries):
        _, j = calibrate_threshold([r.counts[kind][k] for r in calib], labels)
        if j > best_j:
            best, best_j = k, j
    return best
