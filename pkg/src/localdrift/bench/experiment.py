"""One benchmark run: train a tree, stream drifting data, count detections."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..detectors import make_detector
from ..drift import DriftSchedule, make_stream
from ..stream import N_CONCEPTS, classify_records, perturb_records, sample_records
from ..subgroup import Subgroup, generate_subgroup
from ..tree import DecisionTreeClassifier

# Batches averaged for the pre-/post-drift accuracy summaries.
PRE_DRIFT_BATCHES = slice(0, 20)
POST_DRIFT_BATCHES = slice(-20, None)


@dataclass(frozen=True)
class RunSpec:
    run_id: int
    size: float
    positive: bool


@dataclass
class RunResult:
    run_id: int
    size: float
    positive: bool
    concept_i: int
    concept_j: int  # None for negative runs
    subgroup: Subgroup
    subgroup_gap: float
    train_accuracy: float
    counts: dict  # detector kind -> detection count per grid entry
    overall_acc: np.ndarray = field(repr=False)
    subgroup_acc: np.ndarray = field(repr=False)  # NaN where a batch has no members

    def summary(self):
        """Mean accuracies over the first and last batches."""
        def mean(a):
            a = a[~np.isnan(a)]
            return float(a.mean()) if a.size else float("nan")

        return {
            "pre_overall": mean(self.overall_acc[PRE_DRIFT_BATCHES]),
            "post_overall": mean(self.overall_acc[POST_DRIFT_BATCHES]),
            "pre_subgroup": mean(self.subgroup_acc[PRE_DRIFT_BATCHES]),
            "post_subgroup": mean(self.subgroup_acc[POST_DRIFT_BATCHES]),
        }


def plan_runs(cfg):
    """Run specs ordered by size, alternating positive and negative runs."""
    specs = []
    for size in cfg.sizes:
        for r in range(cfg.runs_per_size):
            specs.append(RunSpec(len(specs), size, r % 2 == 0))
    return specs


def run_rng(seed, run_id):
    """Generator for one run, derived from the master seed and the run id only."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(run_id,)))


def run_experiment(spec, cfg, keep_errors=False):
    """Execute a single run of the protocol.

    Trains a tree on the original concept, streams ``batch_count`` batches
    through it and counts the drifts signalled by every detector
    configuration in ``cfg.detectors``. With ``keep_errors`` the full error
    stream is returned alongside the result.
    """
    rng = run_rng(cfg.seed, spec.run_id)
    concept_i = int(rng.integers(N_CONCEPTS))
    concept_j = None
    if spec.positive:
        others = [c for c in range(N_CONCEPTS) if c != concept_i]
        concept_j = int(others[rng.integers(len(others))])
    subgroup = generate_subgroup(spec.size, cfg.subgroup_tolerance, cfg.subgroup_max_iter, rng)

    X_train = sample_records(cfg.train_size, rng, cfg.commission_rule)
    y_train = classify_records(X_train, concept_i)
    X_train = perturb_records(X_train, cfg.perturbation, rng)
    model = DecisionTreeClassifier(max_depth=cfg.max_depth, min_leaf=cfg.min_leaf)
    model.fit(X_train, y_train)

    schedule = DriftSchedule(concept_i, concept_j, cfg.drift_center, cfg.drift_width,
                             subgroup, enabled=spec.positive)
    errors = np.empty(cfg.batch_count * cfg.batch_size, dtype=np.int8)
    overall = np.empty(cfg.batch_count)
    in_group = np.full(cfg.batch_count, np.nan)
    stream = make_stream(schedule, cfg.batch_count, cfg.batch_size, cfg.perturbation,
                         rng, cfg.commission_rule)
    for batch in stream:
        wrong = model.predict(batch.X) != batch.y
        errors[batch.t * cfg.batch_size:(batch.t + 1) * cfg.batch_size] = wrong
        overall[batch.t] = 1.0 - wrong.mean()
        if batch.in_subgroup.any():
            in_group[batch.t] = 1.0 - wrong[batch.in_subgroup].mean()

    counts = {
        kind: [make_detector(kind, **params).count_drifts(errors) for params in grid]
        for kind, grid in cfg.detectors.items()
    }
    result = RunResult(
        run_id=spec.run_id,
        size=spec.size,
        positive=spec.positive,
        concept_i=concept_i,
        concept_j=concept_j,
        subgroup=subgroup,
        subgroup_gap=abs(subgroup.computed_size - spec.size),
        train_accuracy=model.train_accuracy_,
        counts=counts,
        overall_acc=overall,
        subgroup_acc=in_group,
    )
    return (result, errors) if keep_errors else result


def _run_one(args):
    spec, cfg = args
    return run_experiment(spec, cfg)


def run_all(cfg, specs=None, progress=None):
    """Run every planned experiment; results come back ordered by run id."""
    specs = plan_runs(cfg) if specs is None else specs
    jobs = [(s, cfg) for s in specs]
    if cfg.jobs == 1:
        results = []
        for job in jobs:
            results.append(_run_one(job))
            if progress:
                progress(len(results), len(jobs))
        return results
    results = []
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        for res in pool.map(_run_one, jobs, chunksize=4):
            results.append(res)
            if progress:
                progress(len(results), len(jobs))
    return sorted(results, key=lambda r: r.run_id)
