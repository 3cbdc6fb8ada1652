"""Entropy production from phase-space contraction."""
from __future__ import annotations

import warnings

import numpy as np

from ..errors import DiagnosticWarning
from .dynamics import FD_STEP, divergences, jacobian_dets
from .measure import _fsum_mean


def entropy_production(law, measure, constants, h=FD_STEP):
    """sigma_entr = -k_B <div E>_mu for a flow."""
    if not law.is_flow:
        raise ValueError("entropy_production needs a continuous flow; "
                         "use contraction_rate_map for maps")
    div = divergences(law, measure.samples, h)
    return -constants.k_b * _fsum_mean(div, measure.weights) + 0.0  # no -0.0


def contraction_rate_map(law, measure, constants, h=FD_STEP):
    """Per-step phase-volume contraction -k_B <ln|det dS|>_mu of a map.

    Samples with a singular Jacobian are dropped (with a warning) and the
    remaining weights renormalized.  A negative rate means the map expands
    phase volume on average and is also reported through a warning.
    """
    if law.is_flow:
        raise ValueError("contraction_rate_map needs a discrete map")
    dets = jacobian_dets(law, measure.samples, h)
    keep = dets != 0
    if not keep.all():
        warnings.warn(f"{int((~keep).sum())} samples with singular Jacobian rejected",
                      DiagnosticWarning, stacklevel=2)
        if not keep.any():
            raise ValueError("every sample has a singular Jacobian")
    rate = -constants.k_b * _fsum_mean(np.log(np.abs(dets[keep])), measure.weights[keep]) + 0.0
    if rate < 0:
        warnings.warn(f"map expands phase volume (rate {rate:.6g})",
                      DiagnosticWarning, stacklevel=2)
    return rate


def entropy_generation_statistical(law, measure, constants, m_dot):
    """dS_irr = sigma_entr / m_dot."""
    if not m_dot > 0:
        raise ValueError(f"m_dot must be positive, got {m_dot}")
    return entropy_production(law, measure, constants) / m_dot
