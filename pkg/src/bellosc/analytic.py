"""Closed-form fluctuation amplitudes, uncertainty products, and period statistics.

All amplitudes are normalized by the single-oscillator ground-state values
sqrt(1/(2 omega)) for coordinates and sqrt(omega/2) for momenta, so every
quantity here is dimensionless.  The four (state, oscillator) sign variants of
the amplitude formulas funnel through a single helper; the sign stacking is
the most error-prone part of the algebra and is pinned against the Fock-space
oracle in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    BellState,
    OscillatorIndex,
    SystemParams,
    beat_frequency,
    eta,
)

__all__ = [
    "DegenerateCouplingError",
    "FluctuationTrace",
    "PeriodStats",
    "bell_sign",
    "normalized_x_fluctuation",
    "normalized_p_fluctuation",
    "uncertainty_product",
    "uncertainty_sum",
    "baseline_nc",
    "period_statistics",
    "trace",
]

SQRT3 = math.sqrt(3.0)

PRODUCT_CONSISTENCY_TOL = 1e-12


class DegenerateCouplingError(ValueError):
    """Raised when an operation needs a finite envelope period but coupling is zero."""


def bell_sign(state: BellState, osc: OscillatorIndex) -> int:
    """Sign of the oscillating term: +1 for (PSI_PLUS, ONE) and (PSI_MINUS, TWO)."""
    sign = 1 if state is BellState.PSI_PLUS else -1
    return sign if osc is OscillatorIndex.ONE else -sign


def normalized_x_fluctuation(params, state, osc, t):
    """Normalized coordinate fluctuation amplitude at time t (scalar or array).

    sqrt(1 + 1/eta + sign * cos(w_beat t) / sqrt(eta)), bounded between
    sqrt(1 + 1/eta - 1/sqrt(eta)) and sqrt(1 + 1/eta + 1/sqrt(eta)).
    """
    e = eta(params)
    c = np.cos(beat_frequency(params) * np.asarray(t, dtype=float))
    return np.sqrt(1.0 + 1.0 / e + bell_sign(state, osc) * c / math.sqrt(e))


def normalized_p_fluctuation(params, state, osc, t):
    """Normalized momentum fluctuation amplitude sqrt(1 + eta + sign * sqrt(eta) cos(w_beat t))."""
    e = eta(params)
    c = np.cos(beat_frequency(params) * np.asarray(t, dtype=float))
    return np.sqrt(1.0 + e + bell_sign(state, osc) * math.sqrt(e) * c)


def uncertainty_sum(params: SystemParams) -> float:
    """sqrt(eta) + 1/sqrt(eta): period-mean of either uncertainty product.

    Also half the (constant) sum of the two products at any instant, the
    quantitative form of the noise-transfer effect.
    """
    root = math.sqrt(eta(params))
    return root + 1.0 / root


def uncertainty_product(params, state, osc, t):
    """Normalized coordinate-momentum uncertainty product for one oscillator.

    The radicand of dx * dp is the perfect square (s + sign * cos)^2 with
    s = sqrt(eta) + 1/sqrt(eta) >= 2, so the product reduces to
    s + sign * cos(w_beat t) and never drops below s - 1 >= 1.
    """
    c = np.cos(beat_frequency(params) * np.asarray(t, dtype=float))
    return uncertainty_sum(params) + bell_sign(state, osc) * c


def baseline_nc(state: BellState, osc: OscillatorIndex) -> tuple[float, float]:
    """Zero-coupling (amplitude, product) levels: (sqrt(3), 3) or (1, 1).

    The sqrt(3) pairings are (PSI_PLUS, ONE) and (PSI_MINUS, TWO); the other
    two combinations sit at the vacuum level.
    """
    if bell_sign(state, osc) > 0:
        return SQRT3, 3.0
    return 1.0, 1.0


@dataclass(frozen=True)
class FluctuationTrace:
    """Fluctuation amplitudes and uncertainty products on a time grid.

    All columns are dimensionless; ``up1``/``up2`` must agree with the
    products of the amplitude columns to within 1e-12.
    """

    times: np.ndarray
    dx1: np.ndarray
    dx2: np.ndarray
    dp1: np.ndarray
    dp2: np.ndarray
    up1: np.ndarray
    up2: np.ndarray

    def __post_init__(self) -> None:
        cols = {name: np.asarray(getattr(self, name), dtype=float) for name in self.column_names()}
        n = cols["times"].size
        for name, arr in cols.items():
            if arr.ndim != 1 or arr.size != n:
                raise ValueError(f"column {name} must be 1-d of length {n}")
            object.__setattr__(self, name, arr)
        if n >= 2 and not np.all(np.diff(cols["times"]) > 0):
            raise ValueError("times must be strictly increasing")
        for name in ("dx1", "dx2", "dp1", "dp2", "up1", "up2"):
            if not np.all(cols[name] > 0):
                raise ValueError(f"column {name} must be strictly positive")
        for up, dx, dp in (("up1", "dx1", "dp1"), ("up2", "dx2", "dp2")):
            dev = np.max(np.abs(cols[up] - cols[dx] * cols[dp]))
            if dev > PRODUCT_CONSISTENCY_TOL:
                raise ValueError(f"{up} deviates from {dx}*{dp} by {dev:.3e}")

    @staticmethod
    def column_names() -> tuple[str, ...]:
        return ("times", "dx1", "dx2", "dp1", "dp2", "up1", "up2")


@dataclass(frozen=True)
class PeriodStats:
    """Statistics of one uncertainty product over a full envelope period."""

    min_product: float
    max_product: float
    mean_product: float
    fraction_below_nc: float
    nc_baseline: float

    def __post_init__(self) -> None:
        if not (self.min_product <= self.mean_product <= self.max_product):
            raise ValueError("period statistics must satisfy min <= mean <= max")
        if self.min_product < 1.0 - 1e-12:
            raise ValueError(f"min_product {self.min_product} violates the uncertainty bound")
        if not (0.0 <= self.fraction_below_nc <= 1.0):
            raise ValueError("fraction_below_nc must lie in [0, 1]")


def period_statistics(
    params: SystemParams,
    state: BellState,
    osc: OscillatorIndex,
    samples_per_period: int = 4096,
) -> PeriodStats:
    """Midpoint-rule statistics of the uncertainty product over one period.

    The grid covers exactly one period 2 pi / |w_beat| uniformly; the mean
    converges to sqrt(eta) + 1/sqrt(eta) and ``fraction_below_nc`` counts grid
    points strictly below the zero-coupling level.  Requires nonzero coupling:
    without a finite period there is no period to average over.
    """
    if params.coupling_ratio == 0:
        raise DegenerateCouplingError(
            "period statistics need coupling_ratio > 0: the envelope is constant at g = 0"
        )
    if samples_per_period < 16:
        raise ValueError(f"samples_per_period must be >= 16, got {samples_per_period}")
    period = 2.0 * math.pi / abs(beat_frequency(params))
    times = (np.arange(samples_per_period) + 0.5) * (period / samples_per_period)
    products = uncertainty_product(params, state, osc, times)
    baseline = baseline_nc(state, osc)[1]
    return PeriodStats(
        min_product=float(np.min(products)),
        max_product=float(np.max(products)),
        mean_product=float(np.mean(products)),
        fraction_below_nc=float(np.mean(products < baseline)),
        nc_baseline=baseline,
    )


def trace(
    params: SystemParams,
    state: BellState,
    t_start: float,
    t_end: float,
    n_points: int,
) -> FluctuationTrace:
    """Evaluate every closed-form column on a uniform time grid."""
    if not (math.isfinite(t_start) and math.isfinite(t_end) and t_end > t_start):
        raise ValueError(f"need finite t_end > t_start, got [{t_start}, {t_end}]")
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    times = np.linspace(t_start, t_end, n_points)
    one, two = OscillatorIndex.ONE, OscillatorIndex.TWO
    return FluctuationTrace(
        times=times,
        dx1=normalized_x_fluctuation(params, state, one, times),
        dx2=normalized_x_fluctuation(params, state, two, times),
        dp1=normalized_p_fluctuation(params, state, one, times),
        dp2=normalized_p_fluctuation(params, state, two, times),
        up1=uncertainty_product(params, state, one, times),
        up2=uncertainty_product(params, state, two, times),
    )
