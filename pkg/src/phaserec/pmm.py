"""Multi-stage phase-metric estimator (PMM) on coarse-to-fine grids.

The metric for a candidate phase ``theta`` is the summed squared distance
between the de-rotated samples and their nearest constellation points:

    M(theta) = sum_k min_a || r_k * exp(-j*theta) - a ||**2

For a 2*pi/M rotationally symmetric constellation the metric is
2*pi/M-periodic and, in the absence of noise, reaches zero exactly at the
true carrier phase. The estimator searches a uniform grid over one period,
then optionally refines around the winner: each later stage re-grids a
window twice as wide as the previous grid spacing, shrinking the final
resolution to ``2**(stages-1) * (2*pi/M) / n**stages`` for n phases per
stage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constellation import Constellation

TWO_PI = 2.0 * np.pi


def wrap_phase(theta: float, symmetry_order: int) -> float:
    """Reduce a phase into the canonical interval ``[0, 2*pi/M)``."""
    period = TWO_PI / symmetry_order
    wrapped = theta % period
    # Guard against the float edge case theta % period == period.
    return wrapped if wrapped < period else 0.0


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform phase grid ``start + p*spacing`` for ``p = 0..count-1``."""

    start: float
    spacing: float
    count: int

    def __post_init__(self) -> None:
        if self.spacing <= 0.0:
            raise ValueError("grid spacing must be positive")
        if self.count < 2:
            raise ValueError("grid needs at least 2 phases")

    @property
    def phases(self) -> np.ndarray:
        return self.start + self.spacing * np.arange(self.count)


@dataclass(frozen=True)
class PmmPlan:
    """Search plan: ``stages`` passes with ``phases_per_stage`` grid points each."""

    stages: int
    phases_per_stage: int
    symmetry_order: int

    def __post_init__(self) -> None:
        if self.stages < 1:
            raise ValueError("stages must be >= 1")
        if self.phases_per_stage < 2:
            raise ValueError("phases_per_stage must be >= 2")
        if self.symmetry_order < 2:
            raise ValueError("symmetry_order must be >= 2")
        if not 0.0 < self.resolution < TWO_PI / self.symmetry_order:
            raise ValueError("final-stage resolution must lie inside one period")

    @property
    def resolution(self) -> float:
        """Final-stage grid spacing ``2**(stages-1) * (2*pi/M) / n**stages``."""
        m, n, lam = self.symmetry_order, self.phases_per_stage, self.stages
        return 2.0 ** (lam - 1) * (TWO_PI / m) / n**lam


@dataclass(frozen=True)
class PhaseEstimate:
    """A phase estimate canonicalized into ``[0, 2*pi/M)``."""

    theta_hat: float
    estimator: str
    metric_value: float | None = None


def phase_metric(c: Constellation, samples, theta: float) -> float:
    """Evaluate the nearest-point distance metric at one candidate phase.

    Returns ``sum_k min_a ||samples[k]*exp(-j*theta) - a||**2``. The value
    is non-negative and zero only when every de-rotated sample coincides
    with a constellation point.

    Raises
    ------
    ValueError
        If ``samples`` is empty or ``theta`` is not finite.
    """
    z = np.asarray(samples, dtype=np.complex128)
    if z.size == 0:
        raise ValueError("samples must be non-empty")
    if not math.isfinite(float(theta)):
        raise ValueError("theta must be finite")
    rotated = z * np.exp(-1j * float(theta))
    d = rotated[:, None] - c.points[None, :]
    sq = d.real**2 + d.imag**2
    return float(np.sum(sq.min(axis=1)))


def metric_profile(c: Constellation, samples, phases) -> np.ndarray:
    """Evaluate :func:`phase_metric` at each phase of a grid."""
    return np.array([phase_metric(c, samples, theta) for theta in np.asarray(phases)])


def rotate_block(samples, phi: float) -> np.ndarray:
    """Rotate every sample by ``exp(j*phi)``."""
    if not math.isfinite(float(phi)):
        raise ValueError("phi must be finite")
    return np.asarray(samples, dtype=np.complex128) * np.exp(1j * float(phi))


def stage_grid(
    center: float,
    width: float,
    n: int,
    symmetry_order: int,
    first_stage: bool,
) -> PhaseGrid:
    """Build the search grid for one estimator stage.

    First stage: ``n`` phases covering ``[0, 2*pi/M)`` starting at 0 with
    spacing ``2*pi/(M*n)`` (``center`` and ``width`` are ignored).
    Refinement stage: ``n + 1`` phases spanning
    ``[center - width/2, center + width/2]`` inclusive with spacing
    ``width/n``, where callers pass ``width`` equal to twice the previous
    stage's spacing.
    """
    if n < 2:
        raise ValueError("phase count must be >= 2")
    if first_stage:
        if symmetry_order < 2:
            raise ValueError("symmetry_order must be >= 2")
        spacing = TWO_PI / (symmetry_order * n)
        return PhaseGrid(start=0.0, spacing=spacing, count=n)
    if width <= 0.0:
        raise ValueError("refinement width must be positive")
    return PhaseGrid(start=center - width / 2.0, spacing=width / n, count=n + 1)


def _argmin_lowest_phase(values: np.ndarray, phases: np.ndarray) -> int:
    # Tie-break toward the smaller phase value, independent of grid order.
    return int(np.lexsort((phases, values))[0])


def pmm_estimate(c: Constellation, samples, plan: PmmPlan) -> PhaseEstimate:
    """Coarse-to-fine grid argmin of the phase metric.

    Stage 1 scans the first-stage grid over one full period; each later
    stage re-searches a window of twice the previous spacing centered on
    the previous winner. Because the metric is periodic, refinement
    phases are wrapped into ``[0, 2*pi/M)`` before evaluation. Argmin
    ties break toward the smaller (wrapped) phase. The winner is returned
    together with its metric value.

    Raises
    ------
    ValueError
        If the plan's symmetry order does not match the constellation's.
    """
    if plan.symmetry_order != c.symmetry_order:
        raise ValueError(
            f"plan symmetry order {plan.symmetry_order} != "
            f"constellation symmetry order {c.symmetry_order}"
        )
    n = plan.phases_per_stage
    m = plan.symmetry_order

    grid = stage_grid(0.0, 0.0, n, m, first_stage=True)
    candidates = grid.phases
    values = metric_profile(c, samples, candidates)
    best = _argmin_lowest_phase(values, candidates)
    winner = float(candidates[best])
    spacing = grid.spacing

    for _ in range(1, plan.stages):
        grid = stage_grid(winner, 2.0 * spacing, n, m, first_stage=False)
        candidates = np.array([wrap_phase(p, m) for p in grid.phases])
        values = metric_profile(c, samples, candidates)
        best = _argmin_lowest_phase(values, candidates)
        winner = float(candidates[best])
        spacing = grid.spacing

    return PhaseEstimate(
        theta_hat=wrap_phase(winner, m),
        estimator="pmm",
        metric_value=float(values[best]),
    )
