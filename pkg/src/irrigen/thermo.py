"""Generalized thermodynamic coordinates and Onsager-expansion densities.

The deviations ``xi`` are assumed pre-normalized (dimensionless); every
density below is a polynomial in ``xi`` built from a symmetric quadratic
form ``l2`` and a fully symmetric cubic form ``l3``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid

from .errors import StepRejected

K_B_SI = 1.380649e-23  # J/K


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GeneralizedState:
    xi: np.ndarray
    xi_dot: Optional[np.ndarray] = None
    t: float = 0.0

    def __post_init__(self):
        xi = np.atleast_1d(_frozen(self.xi))
        if xi.ndim != 1:
            raise ValueError(f"xi must be a vector, got shape {xi.shape}")
        if not np.all(np.isfinite(xi)):
            raise ValueError("xi has non-finite entries")
        object.__setattr__(self, "xi", xi)
        if self.xi_dot is not None:
            xi_dot = np.atleast_1d(_frozen(self.xi_dot))
            if xi_dot.shape != xi.shape:
                raise ValueError(
                    f"xi_dot has shape {xi_dot.shape}, expected {xi.shape}")
            object.__setattr__(self, "xi_dot", xi_dot)

    @property
    def n(self):
        return self.xi.shape[0]


def symmetrize(tensor):
    """Average ``tensor`` over all permutations of its axes."""
    t = np.asarray(tensor, dtype=float)
    perms = list(itertools.permutations(range(t.ndim)))
    return sum(np.transpose(t, p) for p in perms) / len(perms)


@dataclass(frozen=True)
class OnsagerTensors:
    """Phenomenological coefficients L_ij (``l2``) and L_ijk (``l3``).

    Both are symmetrized on construction; only the symmetric part of either
    contributes to the index-contracted sums.
    """
    l2: np.ndarray
    l3: Optional[np.ndarray] = None

    def __post_init__(self):
        l2 = np.atleast_2d(np.asarray(self.l2, dtype=float))
        n = l2.shape[0]
        if l2.shape != (n, n):
            raise ValueError(f"l2 must be square, got shape {l2.shape}")
        l3 = np.zeros((n, n, n)) if self.l3 is None else np.asarray(self.l3, dtype=float)
        if l3.shape != (n, n, n):
            raise ValueError(f"l3 has shape {l3.shape}, expected {(n, n, n)}")
        object.__setattr__(self, "l2", _frozen(symmetrize(l2)))
        object.__setattr__(self, "l3", _frozen(symmetrize(l3)))

    @property
    def n(self):
        return self.l2.shape[0]


@dataclass(frozen=True)
class PhysicalConstants:
    k_b: float = K_B_SI
    t_ref: float = 298.15

    def __post_init__(self):
        if not (self.k_b > 0 and self.t_ref > 0):
            raise ValueError("k_b and t_ref must be strictly positive")


def _forms(state, tensors):
    """Return (quadratic, cubic) = (L_ij xi_i xi_j, L_ijk xi_i xi_j xi_k)."""
    if state.n != tensors.n:
        raise ValueError(
            f"state has {state.n} coordinates but tensors are {tensors.n}-dimensional")
    x = state.xi
    quad = float(x @ tensors.l2 @ x)
    cubic = float(np.einsum("ijk,i,j,k->", tensors.l3, x, x, x))
    return quad, cubic


def entropy_rate_density(state, tensors):
    """Entropy per unit time and volume: sum L_ij xi xi + 1/2 sum L_ijk xi xi xi."""
    quad, cubic = _forms(state, tensors)
    return quad + 0.5 * cubic


def dissipative_potential(state, tensors):
    quad, cubic = _forms(state, tensors)
    return 0.5 * quad + cubic / 6.0


def lagrangian_density(state, tensors):
    """Lagrangian density 1/2 sum L_ij xi xi + 1/3 sum L_ijk xi xi xi.

    Algebraically equal to ``entropy_rate_density - dissipative_potential``.
    """
    quad, cubic = _forms(state, tensors)
    return 0.5 * quad + cubic / 3.0


def hamiltonian_density(state, tensors):
    # every conjugate momentum vanishes, so only the -rho_L term survives
    return -lagrangian_density(state, tensors)


def conjugate_momenta(state, tensors):
    """Momenta conjugate to xi: d(rho_L)/d(xi_dot), identically zero."""
    if state.n != tensors.n:
        raise ValueError(
            f"state has {state.n} coordinates but tensors are {tensors.n}-dimensional")
    return np.zeros(state.n)


@dataclass(frozen=True)
class ConsistencyReport:
    """Residuals of the identities linking the density expressions.

    decomposition
        rho_L - (entropy rate - psi); zero up to rounding.
    lavenda
        rho_s - rho_pi - 2 psi, only when both rates are supplied.
    psi_minus_lagrangian
        psi - rho_L = -(1/6) cubic form; zero iff the cubic form vanishes.
    psi_minus_cubic
        psi - (1/6) cubic form, i.e. the quadratic part 1/2 L_ij xi xi.
    """
    decomposition: float
    lavenda: Optional[float]
    psi_minus_lagrangian: float
    psi_minus_cubic: float


def consistency_report(state, tensors, rho_s=None, rho_pi=None):
    sigma = entropy_rate_density(state, tensors)
    psi = dissipative_potential(state, tensors)
    rho_l = lagrangian_density(state, tensors)
    _, cubic = _forms(state, tensors)
    lavenda = None
    if rho_s is not None and rho_pi is not None:
        lavenda = rho_s - rho_pi - 2.0 * psi
    return ConsistencyReport(
        decomposition=rho_l - (sigma - psi),
        lavenda=lavenda,
        psi_minus_lagrangian=psi - rho_l,
        psi_minus_cubic=psi - cubic / 6.0,
    )


def integrate_density(t, temperature, volume, values):
    """Trapezoidal triple integral of ``values[i, j, k]`` over (t, T, V) axes."""
    axes = [np.asarray(a, dtype=float) for a in (t, temperature, volume)]
    for name, a in zip(("t", "T", "V"), axes):
        if a.ndim != 1 or a.size < 2:
            raise ValueError(f"axis {name} needs at least 2 points")
        if np.any(np.diff(a) <= 0):
            raise ValueError(f"axis {name} is not strictly increasing")
    values = np.asarray(values, dtype=float)
    shape = tuple(a.size for a in axes)
    if values.shape != shape:
        raise ValueError(f"values have shape {values.shape}, grid is {shape}")
    if not np.all(np.isfinite(values)):
        raise ValueError("values contain non-finite entries")
    out = trapezoid(values, axes[2], axis=2)
    out = trapezoid(out, axes[1], axis=1)
    return float(trapezoid(out, axes[0]))


@dataclass(frozen=True)
class CompartmentSystem:
    """Elementary volumes V_i with densities rho_i moving with velocity x_i.

    ``div_velocity[i]`` is the local dilatation rate of compartment i,
    ``div_barycentric`` that of the centre-of-mass motion, and ``source`` the
    specific production rate (matter transfer, reactions).
    """
    densities: np.ndarray
    volumes: np.ndarray
    div_velocity: np.ndarray
    source: float = 0.0
    total_density: float = 1.0
    div_barycentric: float = 0.0
    total_volume: Optional[float] = None
    masses: np.ndarray = field(init=False)

    def __post_init__(self):
        rho = np.atleast_1d(_frozen(self.densities))
        vol = np.atleast_1d(_frozen(self.volumes))
        div = np.atleast_1d(_frozen(self.div_velocity))
        if not (rho.shape == vol.shape == div.shape) or rho.ndim != 1:
            raise ValueError("densities, volumes and div_velocity must be equal-length vectors")
        if np.any(rho <= 0) or np.any(vol <= 0) or self.total_density <= 0:
            raise ValueError("densities and volumes must be strictly positive")
        if self.total_volume is not None:
            total = float(np.sum(vol))
            if abs(total - self.total_volume) > 1e-12 * abs(self.total_volume):
                raise ValueError(
                    f"compartment volumes sum to {total}, expected {self.total_volume}")
        object.__setattr__(self, "densities", rho)
        object.__setattr__(self, "volumes", vol)
        object.__setattr__(self, "div_velocity", div)
        object.__setattr__(self, "masses", _frozen(rho * vol))


def total_mass(system):
    return float(np.sum(system.masses))


def step_compartments(system, dt):
    """One explicit Euler step of the compartment continuity equations.

    Densities follow d(rho_i)/dt = rho*source - rho_i div_i and the total
    density d(rho)/dt = -rho div_B.  Each compartment is a material volume,
    so its mass changes only through the source term; volumes are updated
    to keep ``mass = density * volume``.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    rho = system.densities
    gain = system.total_density * system.source
    new_rho = rho + dt * (gain - rho * system.div_velocity)
    new_total = system.total_density - dt * system.total_density * system.div_barycentric
    if np.any(new_rho <= 0):
        bad = int(np.argmin(new_rho))
        raise StepRejected(
            f"compartment {bad} density would become {new_rho[bad]:.6g} "
            f"(dt={dt:g}); reduce the step")
    if new_total <= 0:
        raise StepRejected(f"total density would become {new_total:.6g} (dt={dt:g})")
    new_mass = system.masses + dt * gain * system.volumes
    new_vol = new_mass / new_rho
    total_volume = None if system.total_volume is None else float(np.sum(new_vol))
    return CompartmentSystem(
        densities=new_rho,
        volumes=new_vol,
        div_velocity=system.div_velocity,
        source=system.source,
        total_density=new_total,
        div_barycentric=system.div_barycentric,
        total_volume=total_volume,
    )
