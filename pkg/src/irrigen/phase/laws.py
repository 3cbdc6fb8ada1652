"""Reference dynamical laws used by tests, scripts and the CLI.

All transforms are vectorized over a leading sample axis.  Binary floating
point collapses orbits of the doubling and tent maps onto 0 within ~60
iterations, so neither is offered as an ergodic test map; the golden
rotation and the r=4 logistic map are used instead.
"""
from __future__ import annotations

import numpy as np

from .dynamics import FLOW, MAP, DynamicalLaw

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0  # 0.6180339887...


def _ones(x):
    return np.ones(np.shape(x)[:-1])


def identity(dim=1):
    return DynamicalLaw(MAP, lambda x: np.array(x, dtype=float), dim=dim,
                        jacobian_det=_ones, vectorized=True, name="identity")


def rotation(alpha):
    """Circle rotation x -> x + alpha mod 1."""
    return DynamicalLaw(MAP, lambda x: np.mod(x + alpha, 1.0), dim=1,
                        jacobian_det=_ones, vectorized=True, name=f"rotation({alpha})")


def golden_rotation():
    return rotation(GOLDEN)


def logistic(r=4.0):
    return DynamicalLaw(
        MAP, lambda x: r * x * (1.0 - x), dim=1,
        jacobian_det=lambda x: (r * (1.0 - 2.0 * x))[..., 0],
        vectorized=True, name=f"logistic({r})")


def scaling(factor, dim=1):
    """Linear map x -> factor * x (contracting for |factor| < 1)."""
    return DynamicalLaw(
        MAP, lambda x: factor * np.asarray(x, dtype=float), dim=dim,
        jacobian_det=lambda x: np.full(np.shape(x)[:-1], float(factor) ** dim),
        vectorized=True, name=f"scaling({factor})")


def square():
    """x -> x**2 on [0, 1]; not measure preserving for Lebesgue measure."""
    return DynamicalLaw(MAP, lambda x: np.asarray(x, dtype=float) ** 2, dim=1,
                        jacobian_det=lambda x: 2.0 * x[..., 0],
                        vectorized=True, name="square")


def _standard(x, k, wrap):
    x = np.asarray(x, dtype=float)
    q, p = x[..., 0], x[..., 1]
    p_new = p + k / (2.0 * np.pi) * np.sin(2.0 * np.pi * q)
    q_new = q + p_new
    if wrap:
        q_new, p_new = np.mod(q_new, 1.0), np.mod(p_new, 1.0)
    return np.stack([q_new, p_new], axis=-1)


def standard_map(k=0.97, wrap=True):
    """Chirikov standard map on the unit torus (area preserving).

    With ``wrap=False`` the lift to the plane is returned, which is smooth
    everywhere and therefore safe for finite-difference Jacobians.
    """
    return DynamicalLaw(MAP, lambda x: _standard(x, k, wrap), dim=2,
                        jacobian_det=_ones if wrap else None,
                        vectorized=True, name=f"standard_map({k})")


def linear_flow(lam, dim=1, analytic=True):
    """Vector field E(x) = -lam * x with div E = -lam * dim."""
    return DynamicalLaw(
        FLOW, lambda x: -lam * np.asarray(x, dtype=float), dim=dim,
        divergence=(lambda x: np.full(np.shape(x)[:-1], -lam * dim)) if analytic else None,
        dt=0.01, vectorized=True, name=f"linear_flow({lam})")


def rotation_flow(omega=1.0, analytic=True):
    """Divergence-free planar rotation E(x, y) = omega * (-y, x)."""
    def field(x):
        x = np.asarray(x, dtype=float)
        return omega * np.stack([-x[..., 1], x[..., 0]], axis=-1)
    return DynamicalLaw(FLOW, field, dim=2,
                        divergence=_zeros if analytic else None,
                        dt=0.01, vectorized=True, name="rotation_flow")


def shear_flow(analytic=True):
    """Nonlinear divergence-free field E(x, y) = (sin y, cos x)."""
    def field(x):
        x = np.asarray(x, dtype=float)
        return np.stack([np.sin(x[..., 1]), np.cos(x[..., 0])], axis=-1)
    return DynamicalLaw(FLOW, field, dim=2,
                        divergence=_zeros if analytic else None,
                        dt=0.01, vectorized=True, name="shear_flow")


def cubic_flow(analytic=True):
    """E(x) = -x**3, div E = -3 x**2."""
    return DynamicalLaw(
        FLOW, lambda x: -np.asarray(x, dtype=float) ** 3, dim=1,
        divergence=(lambda x: -3.0 * x[..., 0] ** 2) if analytic else None,
        dt=0.01, vectorized=True, name="cubic_flow")


def _zeros(x):
    return np.zeros(np.shape(x)[:-1])
