"""Entropy generation for open systems: balance, densities and phase space."""
from .exergy import (
    ProcessBalance,
    entropy_generation,
    lost_work,
    thermodynamic_hamiltonian,
    thermodynamic_lagrangian,
)
from .thermo import (
    CompartmentSystem,
    GeneralizedState,
    OnsagerTensors,
    PhysicalConstants,
    conjugate_momenta,
    consistency_report,
    dissipative_potential,
    entropy_rate_density,
    hamiltonian_density,
    integrate_density,
    lagrangian_density,
    step_compartments,
    total_mass,
)

__version__ = "0.1.0"
