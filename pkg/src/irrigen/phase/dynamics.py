"""Dynamical laws on phase space and their orbits."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import DiagnosticWarning

MAP = "discrete-map"
FLOW = "continuous-flow"

FD_STEP = 1e-5


def as_point(coords):
    """Validate phase-space coordinates and return them as a float vector."""
    x = np.atleast_1d(np.asarray(coords, dtype=float))
    if x.ndim != 1 or x.size < 1:
        raise ValueError(f"a phase point is a non-empty vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("phase point has non-finite coordinates")
    return x


@dataclass(frozen=True)
class DynamicalLaw:
    """A discrete map sigma -> S(sigma) or a vector field sigma -> E(sigma).

    ``transform``, ``divergence`` and ``jacobian_det`` take coordinate arrays
    whose last axis has length ``dim``.  With ``vectorized=True`` they must
    also accept stacks of shape (n, dim) and act row-wise.
    """
    kind: str
    transform: Callable[[np.ndarray], np.ndarray]
    dim: int = 1
    divergence: Optional[Callable[[np.ndarray], np.ndarray]] = None
    jacobian_det: Optional[Callable[[np.ndarray], np.ndarray]] = None
    dt: float = 1.0
    vectorized: bool = False
    name: str = ""

    def __post_init__(self):
        if self.kind not in (MAP, FLOW):
            raise ValueError(f"unknown law kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.kind == FLOW and not self.dt > 0:
            raise ValueError("flows need dt > 0")

    @property
    def is_flow(self):
        return self.kind == FLOW

    def apply(self, fn, points):
        """Evaluate ``fn`` row-wise over an (n, dim) stack."""
        points = np.asarray(points, dtype=float)
        if self.vectorized:
            return np.asarray(fn(points), dtype=float)
        return np.array([fn(p) for p in points], dtype=float)


@dataclass(frozen=True)
class Trajectory:
    """Sampled orbit; ``points`` has shape (n_points, dim)."""
    points: np.ndarray
    step: float = 1.0
    truncated: bool = False

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("a trajectory needs at least one point")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.shape[0]

    @property
    def start(self):
        return self.points[0]

    @property
    def end(self):
        return self.points[-1]


def rk4_step(field, x, dt):
    k1 = field(x)
    k2 = field(x + 0.5 * dt * k1)
    k3 = field(x + 0.5 * dt * k2)
    k4 = field(x + dt * k3)
    return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def step_fn(law):
    """One application of the dynamics: S for maps, an RK4 step of E for flows."""
    if law.is_flow:
        field = lambda x: np.asarray(law.transform(x), dtype=float)
        return lambda x: rk4_step(field, x, law.dt)
    return lambda x: np.asarray(law.transform(x), dtype=float)


def evolve(law, start, steps):
    """Iterate ``law`` from ``start``; returns steps + 1 points.

    If the orbit leaves the finite reals, the trajectory is cut at the last
    finite point, flagged ``truncated`` and a DiagnosticWarning is issued.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    x = as_point(start)
    advance = step_fn(law)
    pts = np.empty((steps + 1, x.size))
    pts[0] = x
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(steps):
            x = advance(x)
            if not np.isfinite(x).all():
                warnings.warn(
                    f"orbit became non-finite at step {k + 1}; trajectory truncated",
                    DiagnosticWarning, stacklevel=2)
                return Trajectory(pts[:k + 1], law.dt if law.is_flow else 1.0, truncated=True)
            pts[k + 1] = x
    return Trajectory(pts, law.dt if law.is_flow else 1.0)


def fd_divergence(fn, points, h=FD_STEP, vectorized=True):
    """Central-difference divergence of a vector field at an (n, d) stack."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    ev = fn if vectorized else (lambda p: np.array([fn(r) for r in p]))
    div = np.zeros(points.shape[0])
    for k in range(points.shape[1]):
        shift = np.zeros(points.shape[1])
        shift[k] = h
        fp = np.asarray(ev(points + shift), dtype=float).reshape(points.shape)
        fm = np.asarray(ev(points - shift), dtype=float).reshape(points.shape)
        div += (fp[:, k] - fm[:, k]) / (2.0 * h)
    return div


def fd_jacobian_det(fn, points, h=FD_STEP, vectorized=True):
    """Determinant of the central-difference Jacobian of a map."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    ev = fn if vectorized else (lambda p: np.array([fn(r) for r in p]))
    n, d = points.shape
    jac = np.empty((n, d, d))
    for k in range(d):
        shift = np.zeros(d)
        shift[k] = h
        fp = np.asarray(ev(points + shift), dtype=float).reshape(points.shape)
        fm = np.asarray(ev(points - shift), dtype=float).reshape(points.shape)
        jac[:, :, k] = (fp - fm) / (2.0 * h)
    return np.linalg.det(jac)


def jacobian_dets(law, points, h=FD_STEP):
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if law.jacobian_det is not None:
        return law.apply(law.jacobian_det, points).reshape(points.shape[0])
    return fd_jacobian_det(law.transform, points, h, law.vectorized)


def divergences(law, points, h=FD_STEP):
    """Row-wise divergence over an (n, d) stack; see :func:`divergence`."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if not law.is_flow:
        with np.errstate(divide="ignore"):
            return np.log(np.abs(jacobian_dets(law, points, h)))
    if law.divergence is not None:
        return law.apply(law.divergence, points).reshape(points.shape[0])
    return fd_divergence(law.transform, points, h, law.vectorized)


def divergence(law, point, h=FD_STEP):
    """Divergence of the law at ``point``.

    For flows this is div E, analytic when registered and otherwise a
    central difference with step ``h``.  For maps it is the per-step phase
    volume growth ln|det dS|, the discrete counterpart.
    """
    value = float(divergences(law, as_point(point)[None, :], h)[0])
    if np.isnan(value):
        raise ValueError(f"divergence undefined at {point}")
    return value


def is_cycle(trajectory, tol=1e-12):
    """True when the first and last points agree in max norm within ``tol``."""
    if len(trajectory) < 2:
        raise ValueError("a cycle check needs at least two points")
    return bool(np.max(np.abs(trajectory.end - trajectory.start)) < tol)
