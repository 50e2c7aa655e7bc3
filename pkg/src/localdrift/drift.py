"""Gradual concept drift confined to a subgroup."""
import csv
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.special import expit

from ._validation import check_fraction, check_positive_int, check_random_state
from .exceptions import ConfigurationError
from .stream import ATTRIBUTES, Record, check_concept, classify_records, perturb_records, sample_records
from .subgroup import Subgroup


def mix_probability(t, center, width):
    """Probability of the drift concept at time ``t`` (logistic in ``t``)."""
    if width <= 0:
        raise ConfigurationError(f"drift width must be positive, got {width!r}")
    return expit(4.0 * (np.asarray(t, dtype=float) - center) / width)


@dataclass(frozen=True)
class DriftSchedule:
    """Which concepts are mixed, when, and for which subgroup.

    With ``enabled=False`` every record keeps ``concept_orig`` and
    ``concept_drift`` may be ``None``.
    """

    concept_orig: int
    concept_drift: int = None
    center: float = 100.0
    width: float = 100.0
    subgroup: Subgroup = field(default_factory=Subgroup)
    enabled: bool = True

    def __post_init__(self):
        check_concept(self.concept_orig)
        if self.width <= 0:
            raise ConfigurationError(f"drift width must be positive, got {self.width!r}")
        if self.enabled:
            check_concept(self.concept_drift)
            if self.concept_drift == self.concept_orig:
                raise ConfigurationError("drift concept must differ from the original one")
        elif self.concept_drift is not None:
            check_concept(self.concept_drift)


def label_records_with_drift(X, t, schedule, random_state=None):
    """Labels for clean records ``X`` observed at time ``t``.

    Returns ``(labels, in_subgroup)``. Outside the subgroup (or when drift is
    disabled) the label is always the original concept; inside, the drift
    concept is used with probability ``mix_probability(t, center, width)``.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    labels = classify_records(X, schedule.concept_orig)
    in_subgroup = schedule.subgroup.contains(X)
    if not schedule.enabled:
        return labels, in_subgroup
    rng = check_random_state(random_state)
    use_drift = rng.random(len(X)) < mix_probability(t, schedule.center, schedule.width)
    use_drift &= in_subgroup
    if use_drift.any():
        labels[use_drift] = classify_records(X[use_drift], schedule.concept_drift)
    return labels, in_subgroup


def label_with_drift(x, t, schedule, random_state=None):
    row = x.to_array() if isinstance(x, Record) else np.asarray(x, dtype=float)
    labels, _ = label_records_with_drift(row[None, :], t, schedule, random_state)
    return int(labels[0])


class Batch(NamedTuple):
    t: int
    X: np.ndarray  # perturbed attributes, what the model sees
    y: np.ndarray
    in_subgroup: np.ndarray  # membership of the clean record


def make_stream(schedule, batch_count=200, batch_size=1000, perturbation=0.25,
                random_state=None, commission_rule="zero_below"):
    """Yield ``batch_count`` labelled batches; batch ``b`` is observed at ``t = b``.

    Labels are assigned on the clean records, then attributes are perturbed.
    """
    batch_count = check_positive_int(batch_count, "batch_count")
    batch_size = check_positive_int(batch_size, "batch_size")
    perturbation = check_fraction(perturbation, "perturbation")
    rng = check_random_state(random_state)
    for b in range(batch_count):
        X = sample_records(batch_size, rng, commission_rule)
        y, in_subgroup = label_records_with_drift(X, b, schedule, rng)
        yield Batch(b, perturb_records(X, perturbation, rng), y, in_subgroup)


def write_stream_csv(batches, path):
    """Dump batches as one row per sample: batch, attributes, label, in_subgroup."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["batch", *ATTRIBUTES, "label", "in_subgroup"])
        for batch in batches:
            for row, label, member in zip(batch.X, batch.y, batch.in_subgroup):
                writer.writerow([batch.t, *(repr(float(v)) for v in row), int(label), int(member)])
