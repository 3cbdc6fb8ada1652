"""Engineering entropy-generation balance for an open system.

Sign convention: ``lost_work`` is the positive engineering quantity
``T_ref * dS_irr``; the thermodynamic Lagrangian carries the opposite sign,
``L = -T_ref * dS_irr``, and the Hamiltonian ``H = -L``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class ProcessBalance:
    """Terms of the balance, SI units (J, K, J/K, kg/s)."""
    q_r: float = 0.0
    t_r: float = 300.0
    t_a: float = 300.0
    delta_h: float = 0.0
    delta_s: float = 0.0
    delta_ek: float = 0.0
    delta_eg: float = 0.0
    w: float = 0.0
    t_ref: float = 300.0
    m_dot: Optional[float] = None

    def __post_init__(self):
        for name in ("t_r", "t_a", "t_ref"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite temperature, got {value}")
        for name in ("q_r", "delta_h", "delta_s", "delta_ek", "delta_eg", "w"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.m_dot is not None and not (math.isfinite(self.m_dot) and self.m_dot > 0):
            raise ValueError(f"m_dot must be positive when given, got {self.m_dot}")


def entropy_generation(balance):
    """Irreversible entropy dS_irr [J/K].

    Q_r/T_a (1 - T_a/T_r) + dH/T_a - dS + (dE_k + dE_g - W)/T_a.
    Not clamped: a negative result flags an inconsistent balance.
    """
    b = balance
    return (b.q_r / b.t_a * (1.0 - b.t_a / b.t_r)
            + b.delta_h / b.t_a
            - b.delta_s
            + (b.delta_ek + b.delta_eg - b.w) / b.t_a)


def lost_work(balance):
    return balance.t_ref * entropy_generation(balance)


def thermodynamic_lagrangian(balance):
    return -(balance.t_ref * entropy_generation(balance))


def thermodynamic_hamiltonian(balance):
    return -thermodynamic_lagrangian(balance)


def balance_report(balance):
    """All derived quantities plus a second-law violation flag."""
    s_irr = entropy_generation(balance)
    return {
        "delta_s_irr": s_irr,
        "w_lost": lost_work(balance),
        "lagrangian": thermodynamic_lagrangian(balance),
        "hamiltonian": thermodynamic_hamiltonian(balance),
        "second_law_violation": s_irr < 0,
    }
