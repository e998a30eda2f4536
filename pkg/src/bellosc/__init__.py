"""Quantum fluctuations of position-position coupled oscillators in entangled states.

Closed-form fluctuation amplitudes, uncertainty products, and period
statistics for two coupled harmonic oscillators prepared in single-excitation
entangled states, together with a truncated-Fock-space oracle that re-derives
every result from matrix mechanics, a seeded envelope sampler, and a CLI for
verification runs and data export.
"""

from .analytic import (
    DegenerateCouplingError,
    FluctuationTrace,
    PeriodStats,
    baseline_nc,
    bell_sign,
    normalized_p_fluctuation,
    normalized_x_fluctuation,
    period_statistics,
    trace,
    uncertainty_product,
    uncertainty_sum,
)
from .fock import (
    ConvergenceError,
    OperatorMatrix,
    TwoModeBasis,
    bare_quadratures,
    bell_vector,
    coupled_hamiltonian,
    ground_state,
    ladder_matrices,
    normal_mode_ladders,
    normal_mode_quadratures,
    quadrature_matrices,
)
from .model import (
    BellState,
    ModeIndex,
    OscillatorIndex,
    SystemParams,
    beat_frequency,
    eta,
    mode_frequency,
)
from .oracle import (
    OracleReport,
    commutator_check,
    cross_momentum_scaling_probe,
    evolve_expectations,
    heisenberg_evolution_check,
    table1_check,
)
from .sampler import Realization, RealizationConfig, sample_realization

__version__ = "0.1.0"

__all__ = [
    "BellState",
    "ConvergenceError",
    "DegenerateCouplingError",
    "FluctuationTrace",
    "ModeIndex",
    "OperatorMatrix",
    "OracleReport",
    "OscillatorIndex",
    "PeriodStats",
    "Realization",
    "RealizationConfig",
    "SystemParams",
    "TwoModeBasis",
    "bare_quadratures",
    "baseline_nc",
    "beat_frequency",
    "bell_sign",
    "bell_vector",
    "commutator_check",
    "coupled_hamiltonian",
    "cross_momentum_scaling_probe",
    "eta",
    "evolve_expectations",
    "ground_state",
    "heisenberg_evolution_check",
    "ladder_matrices",
    "mode_frequency",
    "normal_mode_ladders",
    "normal_mode_quadratures",
    "normalized_p_fluctuation",
    "normalized_x_fluctuation",
    "period_statistics",
    "quadrature_matrices",
    "sample_realization",
    "table1_check",
    "trace",
    "uncertainty_product",
    "uncertainty_sum",
    "__version__",
]
