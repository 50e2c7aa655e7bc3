"""Attribute-slice subgroups and the greedy random subgroup generator."""
import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_fraction, check_positive_int, check_random_state
from .exceptions import InvalidSliceError
from .stream import ATTRIBUTE_META, COL, INDEPENDENT_ATTRIBUTES, Record

# Attributes a subgroup may constrain; commission and hvalue depend on others.
ELIGIBLE_ATTRIBUTES = INDEPENDENT_ATTRIBUTES


def _fmt(v):
    return str(int(v)) if float(v).is_integer() else repr(float(v))


@dataclass(frozen=True)
class Slice:
    """Half-open interval ``[lower, upper)`` on one attribute's grid."""

    attribute: str
    lower: float
    upper: float

    def __post_init__(self):
        meta = ATTRIBUTE_META.get(self.attribute)
        if meta is None:
            raise InvalidSliceError(f"unknown attribute {self.attribute!r}")
        if not meta.independent:
            raise InvalidSliceError(f"{self.attribute} is not an independent attribute")
        for bound in (self.lower, self.upper):
            k = (bound - meta.low) / meta.step
            if not math.isclose(k, round(k), abs_tol=1e-9):
                raise InvalidSliceError(f"{self.attribute} bound {bound} is off the grid")
        if not (meta.low <= self.lower < self.upper <= meta.high + meta.step):
            raise InvalidSliceError(
                f"{self.attribute} slice [{self.lower}, {self.upper}) outside "
                f"[{meta.low}, {meta.high + meta.step})"
            )

    @property
    def n_values(self):
        return int(round((self.upper - self.lower) / ATTRIBUTE_META[self.attribute].step))

    def __str__(self):
        return f"{self.attribute} in [{_fmt(self.lower)}, {_fmt(self.upper)})"


def slice_probability(s):
    """Fraction of the attribute's grid values falling in ``[lower, upper)``."""
    return s.n_values / ATTRIBUTE_META[s.attribute].n_values


@dataclass(frozen=True)
class Subgroup:
    """Conjunction of slices, at most one per attribute.

    The empty subgroup selects the whole population.
    """

    slices: tuple = ()
    n_iter: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(self.slices))
        attrs = [s.attribute for s in self.slices]
        if len(set(attrs)) != len(attrs):
            raise InvalidSliceError("a subgroup holds at most one slice per attribute")

    @property
    def attributes(self):
        return tuple(s.attribute for s in self.slices)

    @property
    def computed_size(self):
        return subgroup_probability(self)

    def with_slice(self, s):
        """Copy with ``s`` added, replacing any slice on the same attribute."""
        kept = tuple(old for old in self.slices if old.attribute != s.attribute)
        return Subgroup(kept + (s,), self.n_iter)

    def contains(self, X):
        """Boolean membership for each row of ``X`` (or a single :class:`Record`)."""
        if isinstance(X, Record):
            return bool(self.contains(X.to_array()[None, :])[0])
        X = np.atleast_2d(np.asarray(X, dtype=float))
        mask = np.ones(len(X), dtype=bool)
        for s in self.slices:
            col = X[:, COL[s.attribute]]
            mask &= (col >= s.lower) & (col < s.upper)
        return mask

    def to_list(self):
        return [[s.attribute, s.lower, s.upper] for s in self.slices]

    @classmethod
    def from_list(cls, items):
        return cls(tuple(Slice(a, float(lo), float(hi)) for a, lo, hi in items))

    def __str__(self):
        if not self.slices:
            return "{ }"
        return "{ " + " and ".join(str(s) for s in self.slices) + " }"


def subgroup_probability(g):
    return math.prod(slice_probability(s) for s in g.slices)


def contains(g, x):
    return int(g.contains(x)) if isinstance(x, Record) else g.contains(x).astype(np.int8)


def random_slice(attribute, rng):
    """Uniform interval between two distinct grid boundaries of ``attribute``."""
    meta = ATTRIBUTE_META[attribute]
    # n_values + 1 boundaries: low, low + step, ..., high + step
    i, j = np.sort(rng.choice(meta.n_values + 1, size=2, replace=False))
    return Slice(attribute, float(meta.low + i * meta.step), float(meta.low + j * meta.step))


def generate_subgroup(target, tolerance=0.01, max_iter=1000, random_state=None):
    """Greedily grow a random subgroup whose size approximates ``target``.

    Each iteration draws a random attribute and a random interval on it. The
    slice is kept only if it moves the computed size closer to ``target``; on
    an attribute that is already constrained the candidate competes with (and
    may replace) the existing slice. Stops once the gap is within
    ``tolerance`` or after ``max_iter`` draws; the caller checks the residual
    gap.
    """
    target = check_fraction(target, "target", low_open=True)
    tolerance = check_fraction(tolerance, "tolerance", low_open=True)
    max_iter = check_positive_int(max_iter, "max_iter")
    rng = check_random_state(random_state)

    group = Subgroup()
    size = 1.0
    n_iter = 0
    while abs(size - target) > tolerance and n_iter < max_iter:
        n_iter += 1
        attribute = ELIGIBLE_ATTRIBUTES[rng.integers(len(ELIGIBLE_ATTRIBUTES))]
        proposal = group.with_slice(random_slice(attribute, rng))
        new_size = proposal.computed_size
        if abs(new_size - target) < abs(size - target):
            group, size = proposal, new_size
    return Subgroup(group.slices, n_iter)
