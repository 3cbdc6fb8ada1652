"""Phase-space dynamics, ensemble statistics and entropy production."""
from .dynamics import (
    FLOW,
    MAP,
    DynamicalLaw,
    Trajectory,
    as_point,
    divergence,
    evolve,
    is_cycle,
)
from .entropy import (
    contraction_rate_map,
    entropy_generation_statistical,
    entropy_production,
)
from .measure import (
    EnsembleMeasure,
    Observable,
    birkhoff_residual,
    coordinate,
    ensemble_average,
    ensemble_from_csv,
    ensemble_to_csv,
    is_measure_preserving,
    measure_additivity_check,
    pushforward,
    time_average,
    trajectory_to_csv,
)
from .onsager import ar1_ensemble, onsager_estimate
from . import laws

__all__ = [
    "FLOW", "MAP", "DynamicalLaw", "Trajectory", "as_point", "divergence",
    "evolve", "is_cycle", "contraction_rate_map", "entropy_generation_statistical",
    "entropy_production", "EnsembleMeasure", "Observable", "birkhoff_residual",
    "coordinate", "ensemble_average", "ensemble_from_csv", "ensemble_to_csv",
    "is_measure_preserving", "measure_additivity_check", "pushforward",
    "time_average", "trajectory_to_csv", "ar1_ensemble", "onsager_estimate", "laws",
]
