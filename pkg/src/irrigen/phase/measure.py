"""Finite weighted ensembles, observables, and Birkhoff averages."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import NonFiniteOrbitError
from .dynamics import as_point, evolve


@dataclass(frozen=True)
class Observable:
    """Scalar function on phase space.

    ``fn`` maps a (d,) point to a float; with ``vectorized=True`` it also maps
    an (n, d) stack to an (n,) array.
    """
    fn: Callable[[np.ndarray], float]
    vectorized: bool = False

    def __call__(self, point):
        return float(self.fn(np.asarray(point, dtype=float)))

    def over(self, points):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if self.vectorized:
            return np.asarray(self.fn(points), dtype=float).reshape(points.shape[0])
        return np.array([self.fn(p) for p in points], dtype=float)


def as_observable(obj):
    return obj if isinstance(obj, Observable) else Observable(obj)


def coordinate(k):
    """Observable returning the k-th coordinate."""
    return Observable(lambda x: x[..., k], vectorized=True)


def _fsum_mean(values, weights):
    # normalizing by the realized weight total keeps constants exact
    return math.fsum(values * weights) / math.fsum(weights)


@dataclass(frozen=True)
class EnsembleMeasure:
    """Probability measure given by sample points and non-negative weights.

    No density is ever assumed: the measure is the weighted sum of point
    masses, which is how orbit-sampled stationary statistics arise.
    """
    samples: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        s = np.array(self.samples, dtype=float)
        if s.ndim == 1:
            s = s[:, None]
        w = np.array(self.weights, dtype=float).reshape(-1)
        if s.ndim != 2 or s.shape[0] != w.size or w.size == 0:
            raise ValueError("samples and weights must have matching non-zero length")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite and non-negative")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {math.fsum(w)!r}, expected 1")
        s.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return self.weights.size

    @property
    def dim(self):
        return self.samples.shape[1]

    @classmethod
    def uniform(cls, samples):
        s = np.asarray(samples, dtype=float)
        return cls(s, np.full(s.shape[0], 1.0 / s.shape[0]))

    @classmethod
    def point_mass(cls, point):
        return cls(as_point(point)[None, :], [1.0])

    @classmethod
    def uniform_grid(cls, lower, upper, n):
        """Midpoint lattice of ``n`` points per axis on the box [lower, upper)."""
        lower = np.atleast_1d(np.asarray(lower, dtype=float))
        upper = np.atleast_1d(np.asarray(upper, dtype=float))
        axes = [lo + (hi - lo) * (np.arange(n) + 0.5) / n for lo, hi in zip(lower, upper)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, lower.size)
        return cls.uniform(grid)

    @classmethod
    def uniform_random(cls, rng, lower, upper, n):
        lower = np.atleast_1d(np.asarray(lower, dtype=float))
        upper = np.atleast_1d(np.asarray(upper, dtype=float))
        return cls.uniform(rng.uniform(lower, upper, size=(n, lower.size)))

    @classmethod
    def from_trajectory(cls, trajectory):
        """Empirical orbit measure, equal weight on every visited point."""
        return cls.uniform(trajectory.points)

    def weight_of(self, mask):
        return math.fsum(self.weights[np.asarray(mask, dtype=bool)])


def ensemble_average(measure, observable):
    """Weighted mean sum_k w_k phi(sigma_k)."""
    values = as_observable(observable).over(measure.samples)
    return _fsum_mean(values, measure.weights)


def time_average(law, start, observable, horizon):
    """Orbit average (1/T) sum_{j=0}^{T-1} phi(S^j sigma)."""
    horizon = int(horizon)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    traj = evolve(law, start, horizon - 1)
    if traj.truncated:
        raise NonFiniteOrbitError(
            f"orbit left the finite reals after {len(traj)} of {horizon} points")
    return math.fsum(as_observable(observable).over(traj.points)) / horizon


def birkhoff_residual(law, start, measure, observable, horizon):
    return abs(time_average(law, start, observable, horizon)
               - ensemble_average(measure, observable))


def pushforward(law, measure):
    """Image measure S_* mu: same weights on the mapped samples."""
    if law.is_flow:
        raise ValueError("pushforward is defined here for discrete maps only")
    return EnsembleMeasure(law.apply(law.transform, measure.samples), measure.weights)


def is_measure_preserving(law, measure, bins=100, tol=0.02, value_range=None):
    """Compare binned weights of ``measure`` and of its image under ``law``.

    Returns (preserved, max_deviation), the deviation being the largest
    absolute difference of bin weights.  ``value_range`` is a sequence of
    (low, high) per axis and defaults to the joint extent of both sample sets.
    """
    if measure.dim > 3:
        raise ValueError("histogram comparison supports d <= 3")
    image = pushforward(law, measure)
    if value_range is None:
        both = np.vstack([measure.samples, image.samples])
        value_range = list(zip(both.min(axis=0), both.max(axis=0)))
    before, _ = np.histogramdd(measure.samples, bins=bins, range=value_range,
                               weights=measure.weights)
    after, _ = np.histogramdd(image.samples, bins=bins, range=value_range,
                              weights=image.weights)
    deviation = float(np.max(np.abs(after - before)))
    return deviation < tol, deviation


def measure_additivity_check(measure, partition):
    """Check mu(union of regions) == sum of mu(region) within 1e-12.

    ``partition`` is a sequence of boolean masks over the samples or of
    predicates taking the (n, d) sample stack.  Overlapping regions raise.
    """
    masks = []
    for region in partition:
        mask = region(measure.samples) if callable(region) else region
        mask = np.asarray(mask, dtype=bool).reshape(-1)
        if mask.size != len(measure):
            raise ValueError("region mask length does not match the ensemble")
        masks.append(mask)
    if not masks:
        return True
    stacked = np.vstack(masks)
    if np.any(stacked.sum(axis=0) > 1):
        raise ValueError("regions overlap; additivity needs disjoint sets")
    union = measure.weight_of(stacked.any(axis=0))
    parts = math.fsum(measure.weight_of(m) for m in masks)
    return abs(union - parts) <= 1e-12


def _fmt(x):
    return format(float(x), ".17g")


def ensemble_to_csv(measure):
    """CSV text: header ``index,x0,...,weight`` then one row per sample."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index"] + [f"x{k}" for k in range(measure.dim)] + ["weight"])
    for i, (s, w) in enumerate(zip(measure.samples, measure.weights)):
        writer.writerow([i] + [_fmt(v) for v in s] + [_fmt(w)])
    return buf.getvalue()


def trajectory_to_csv(trajectory):
    """Trajectory rows in the ensemble layout, equal orbit weights."""
    return ensemble_to_csv(EnsembleMeasure.from_trajectory(trajectory))


def ensemble_from_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    if header[0] != "index" or header[-1] != "weight":
        raise ValueError("expected columns index, coords..., weight")
    data = np.array([[float(v) for v in row[1:]] for row in body])
    return EnsembleMeasure(data[:, :-1], data[:, -1])
