"""Agrawal loan-applicant records, the ten concept functions and perturbation.

Records are handled column-wise as float arrays of shape ``(n, 9)`` whose
columns follow :data:`ATTRIBUTES`. :class:`Record` is a convenience view of
a single row.
"""
from dataclasses import astuple, dataclass

import numpy as np

from ._validation import check_fraction, check_positive_int, check_random_state
from .exceptions import ConfigurationError

ATTRIBUTES = (
    "salary", "commission", "age", "elevel", "car",
    "zipcode", "hvalue", "hyears", "loan",
)
COL = {name: i for i, name in enumerate(ATTRIBUTES)}
N_CONCEPTS = 10

CONTINUOUS = "continuous"
CATEGORICAL = "categorical"


@dataclass(frozen=True)
class AttributeMeta:
    """Support ``[low, high]`` of an attribute sampled on a grid of ``step``."""

    name: str
    kind: str
    low: float
    high: float
    step: float
    independent: bool = True

    @property
    def n_values(self):
        return int(round((self.high - self.low) / self.step)) + 1

    @property
    def span(self):
        return self.high - self.low


ATTRIBUTE_META = {
    m.name: m
    for m in (
        AttributeMeta("salary", CONTINUOUS, 20_000, 150_000, 1_000),
        AttributeMeta("commission", CONTINUOUS, 0, 75_000, 1_000, independent=False),
        AttributeMeta("age", CONTINUOUS, 20, 80, 1),
        AttributeMeta("elevel", CATEGORICAL, 0, 4, 1),
        AttributeMeta("car", CATEGORICAL, 1, 20, 1),
        AttributeMeta("zipcode", CATEGORICAL, 0, 8, 1),
        AttributeMeta("hvalue", CONTINUOUS, 0, 800_000, 1_000, independent=False),
        AttributeMeta("hyears", CONTINUOUS, 1, 30, 1),
        AttributeMeta("loan", CONTINUOUS, 0, 500_000, 1_000),
    )
}
INDEPENDENT_ATTRIBUTES = tuple(n for n in ATTRIBUTES if ATTRIBUTE_META[n].independent)
NUMERIC_ATTRIBUTES = tuple(n for n in ATTRIBUTES if ATTRIBUTE_META[n].kind == CONTINUOUS)

# "zero_below": commission is zero below $75,000 of salary.
# "zero_above": commission is zero at or above $75,000 (classic generator).
COMMISSION_RULES = ("zero_below", "zero_above")


@dataclass(frozen=True)
class Record:
    salary: float
    commission: float
    age: float
    elevel: float
    car: float
    zipcode: float
    hvalue: float
    hyears: float
    loan: float

    def to_array(self):
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, row):
        row = np.asarray(row, dtype=float).ravel()
        if row.shape != (len(ATTRIBUTES),):
            raise ConfigurationError(f"expected {len(ATTRIBUTES)} attribute values")
        return cls(*(float(v) for v in row))


def _grid_draw(rng, meta, n):
    return meta.low + meta.step * rng.integers(0, meta.n_values, size=n)


def sample_records(n, random_state=None, commission_rule="zero_below"):
    """Draw ``n`` records on the attribute grid.

    Independent attributes are uniform over their grid; ``commission``
    depends on ``salary`` and ``hvalue`` on ``zipcode``.
    """
    n = check_positive_int(n, "n")
    if commission_rule not in COMMISSION_RULES:
        raise ConfigurationError(f"commission_rule must be one of {COMMISSION_RULES}")
    rng = check_random_state(random_state)
    X = np.empty((n, len(ATTRIBUTES)))
    for name in INDEPENDENT_ATTRIBUTES:
        X[:, COL[name]] = _grid_draw(rng, ATTRIBUTE_META[name], n)

    salary = X[:, COL["salary"]]
    commission = 10_000 + 1_000 * rng.integers(0, 66, size=n)
    no_commission = salary < 75_000 if commission_rule == "zero_below" else salary >= 75_000
    X[:, COL["commission"]] = np.where(no_commission, 0, commission)

    zipcode = X[:, COL["zipcode"]].astype(np.int64)
    # uniform integer in [50*z, 100*z] thousands
    X[:, COL["hvalue"]] = 1_000 * (50 * zipcode + rng.integers(0, 50 * zipcode + 1))
    return X


def sample_record(random_state=None, commission_rule="zero_below"):
    return Record.from_array(sample_records(1, random_state, commission_rule)[0])


def _unpack(X):
    return (X[:, i] for i in range(len(ATTRIBUTES)))


def _age_bands(age):
    return age < 40, (age >= 40) & (age < 60), age >= 60


def _banded(age, young, middle, old):
    y, m, o = _age_bands(age)
    return (y & young) | (m & middle) | (o & old)


def _between(v, lo, hi):
    return (v >= lo) & (v <= hi)


def _f0(salary, commission, age, elevel, car, zipcode, hvalue, hyears, loan):
    return (age < 40) | (age >= 60)


def _f1(salary, commission, age, elevel, car, zipcode, hvalue, hyears, loan):
    return _banded(
        age,
        _between(salary, 50_000, 100_000),
        _between(salary, 75_000, 125_000),
        _between(salary, 25_000, 75_000),
    )


def _f2(salary, commission, age, elevel, car, zipcode, hvalue, hyears, loan):
    return _banded(age, elevel <= 1, _between(elevel, 1, 3), elevel >= 2)


def _f3(salary, commission, age, elevel, car, zipcode, hvalue, hyears, loan):
    return _banded(
        age,
        np.where(elevel <= 1, _between(salary, 25_000, 75_000), _between(salary, 50_000, 100_000)),
        np.where(_between(elevel, 1, 3), _between(salary, 50_000, 100_000),
                 _between(salary, 75_000, 125_000)),
        np.where(elevel >= 2, _between(salary, 50_000, 100_000), _between(salary, 25_000, 75_000)),
    )


def _f4(salary, commission, age, elevel, car, zipcode, hvalue, hyears, loan):
    return _banded(
        age,
        np.where(_between(salary, 50_000, 100_000), _between(loan, 100_000, 300_000),
                 _between(loan, 200_000, 400_000)),
        np.where(_between(salary, 75_000, 125_000), _between(loan, 200_000, 400_000),
                 _between(loan, 300_000, 500_000)),
        np.where(_between(salary, 25_000, 75_000), _between(loan, 300_000, 500_000),
                 _between(loan, 100_000, 300_000)),
    )


def _f5(salary, commission, age, elevel, car, zipcode, hvalue, hyears, loan):
    total = salary + commission
    return _banded(
        age,
        _between(total, 50_000, 100_000),
        _between(total, 75_000, 125_000),
        _between(total, 25_000, 75_000),
    )


# Concepts 6-9 label 1 when disposable income is NOT positive, following the
# common stream-mining convention for these indices.
def _f6(salary, commission, age, elevel, car, zipcode, hvalue, hyears, loan):
    disposable = 2 * (salary + commission) / 3 - loan / 5 - 20_000
    return ~(disposable > 1)


def _f7(salary, commission, age, elevel, car, zipcode, hvalue, hyears, loan):
    disposable = 2 * (salary + commission) / 3 - 5_000 * elevel - 20_000
    return ~(disposable > 1)


def _f8(salary, commission, age, elevel, car, zipcode, hvalue, hyears, loan):
    disposable = 2 * (salary + commission) / 3 - 5_000 * elevel - loan / 5 - 10_000
    return ~(disposable > 1)


def _f9(salary, commission, age, elevel, car, zipcode, hvalue, hyears, loan):
    equity = np.where(hyears >= 20, hvalue * (hyears - 20) / 10, 0.0)
    disposable = 2 * (salary + commission) / 3 - 5_000 * elevel + equity / 5 - 10_000
    return ~(disposable > 1)


CONCEPTS = (_f0, _f1, _f2, _f3, _f4, _f5, _f6, _f7, _f8, _f9)


def check_concept(concept):
    if isinstance(concept, bool) or not isinstance(concept, (int, np.integer)) \
            or not 0 <= concept < N_CONCEPTS:
        raise ConfigurationError(f"concept id must be an integer in 0..9, got {concept!r}")
    return int(concept)


def classify_records(X, concept):
    """Vectorised labels of ``X`` (shape ``(n, 9)``) under concept ``0..9``."""
    concept = check_concept(concept)
    X = np.atleast_2d(np.asarray(X, dtype=float))
    return CONCEPTS[concept](*_unpack(X)).astype(np.int8)


def classify(x, concept):
    """Label of a single :class:`Record` under concept ``0..9``."""
    row = x.to_array() if isinstance(x, Record) else np.asarray(x, dtype=float)
    return int(classify_records(row[None, :], concept)[0])


def perturb_records(X, magnitude, random_state=None):
    """Return a noisy copy of ``X``; categorical columns are left untouched.

    Each numeric attribute with support ``[a, b]`` gets additive noise
    ``U(-m(b-a)/2, m(b-a)/2)`` and is clipped back into ``[a, b]``.
    """
    magnitude = check_fraction(magnitude, "perturbation")
    X = np.array(X, dtype=float, copy=True, ndmin=2)
    if magnitude == 0:
        return X
    rng = check_random_state(random_state)
    for name in NUMERIC_ATTRIBUTES:
        meta = ATTRIBUTE_META[name]
        half = magnitude * meta.span / 2
        col = X[:, COL[name]]
        col += rng.uniform(-half, half, size=col.shape)
        np.clip(col, meta.low, meta.high, out=col)
    return X


def perturb(x, magnitude, random_state=None):
    return Record.from_array(perturb_records(x.to_array(), magnitude, random_state)[0])
