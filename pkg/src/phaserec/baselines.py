"""Competitor blind phase estimators: power law (PLE) and minimum distance (MDE).

The M-th power-law estimator (the Viterbi-and-Viterbi family, monomial
nonlinearity) strips the modulation by raising every sample to the M-th
power and reads the carrier phase off the argument of the constellation-
weighted sum. The minimum-distance estimator scans a small set of
hypothesis rotations with hard decisions, then corrects the winning
hypothesis with a decision-directed residual phase.

Both estimators follow the same de-rotation convention as the phase
metric (candidate rotations are applied as ``exp(-j*theta)``) and report
estimates wrapped into ``[0, 2*pi/M)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constellation import Constellation, nearest_indices
from .pmm import PhaseEstimate, wrap_phase

_DEGENERATE_TOL = 1e-12


class DegenerateStatisticError(RuntimeError):
    """The estimator's decision statistic vanished; no phase is defined."""


class EstimatorUndefinedError(ValueError):
    """The estimator does not exist for this constellation."""


@dataclass(frozen=True)
class MdeConfig:
    """Hypothesis grid for the minimum-distance estimator.

    ``hypothesis_count`` phases are spread uniformly (inclusive) over
    ``[-pi/M, pi/M]``, which covers one full ambiguity period.
    """

    hypothesis_count: int
    symmetry_order: int

    def __post_init__(self) -> None:
        if self.hypothesis_count < 2:
            raise ValueError("hypothesis_count must be >= 2")
        if self.symmetry_order < 2:
            raise ValueError("symmetry_order must be >= 2")


def hypothesis_phases(cfg: MdeConfig) -> np.ndarray:
    """The MDE hypothesis phases, ascending over ``[-pi/M, pi/M]``."""
    bound = np.pi / cfg.symmetry_order
    return np.linspace(-bound, bound, cfg.hypothesis_count)


def ple_constant(c: Constellation) -> complex:
    """Constellation constant ``mean(conj(point)**M)`` of the power-law estimator.

    Zero for constellations whose M-th moments cancel, in which case the
    estimator is undefined.
    """
    m = c.symmetry_order
    return complex(np.mean(np.conj(c.points) ** m))


def ple_estimate(c: Constellation, samples) -> PhaseEstimate:
    """M-th power-law estimate ``arg(constant * sum(r**M)) / M``.

    Exact on noiseless M-PSK blocks, where every symbol's M-th power
    collapses to the same constant.

    Raises
    ------
    EstimatorUndefinedError
        If the constellation constant has negligible modulus.
    DegenerateStatisticError
        If ``|sum(r**M)|`` is below 1e-12 so the argument is undefined.
    ValueError
        If the sample block is empty.

    References
    ----------
    A. J. Viterbi and A. M. Viterbi, "Nonlinear estimation of PSK-modulated
    carrier phase with application to burst digital transmission," IEEE
    Trans. Inf. Theory, 1983.
    """
    z = np.asarray(samples, dtype=np.complex128)
    if z.size == 0:
        raise ValueError("samples must be non-empty")
    constant = ple_constant(c)
    if abs(constant) <= _DEGENERATE_TOL:
        raise EstimatorUndefinedError(
            f"power-law constant vanishes for constellation {c.label!r}"
        )
    m = c.symmetry_order
    power_sum = complex(np.sum(z**m))
    if abs(power_sum) <= _DEGENERATE_TOL:
        raise DegenerateStatisticError("sum of M-th sample powers is degenerate")
    theta = math.atan2((constant * power_sum).imag, (constant * power_sum).real) / m
    return PhaseEstimate(theta_hat=wrap_phase(theta, m), estimator="ple")


def mde_estimate(c: Constellation, samples, cfg: MdeConfig) -> PhaseEstimate:
    """Two-phase minimum-distance estimate.

    1. De-rotate the block by each hypothesis phase and hard-decide every
       sample; score each hypothesis by its total squared decision distance.
    2. Pick the lowest-scoring hypothesis (ties toward the smaller phase).
    3. Correct it with the decision-directed residual
       ``atan2(sum Im(x*conj(a)), sum Re(x*conj(a)))`` computed from the
       winning hypothesis's de-rotated samples ``x`` and decisions ``a``.

    Raises
    ------
    DegenerateStatisticError
        If both residual correlation sums are below 1e-12.
    ValueError
        On an empty block or a symmetry-order mismatch.
    """
    z = np.asarray(samples, dtype=np.complex128)
    if z.size == 0:
        raise ValueError("samples must be non-empty")
    if cfg.symmetry_order != c.symmetry_order:
        raise ValueError(
            f"config symmetry order {cfg.symmetry_order} != "
            f"constellation symmetry order {c.symmetry_order}"
        )

    phases = hypothesis_phases(cfg)
    best_idx = 0
    best_score = math.inf
    best_decisions = None
    for i, theta in enumerate(phases):
        x = z * np.exp(-1j * theta)
        decided = c.points[nearest_indices(c, x)]
        d = x - decided
        score = float(np.sum(d.real**2 + d.imag**2))
        if score < best_score:
            best_idx, best_score, best_decisions = i, score, decided

    theta_l = float(phases[best_idx])
    x = z * np.exp(-1j * theta_l)
    corr = complex(np.sum(x * np.conj(best_decisions)))
    if abs(corr.real) <= _DEGENERATE_TOL and abs(corr.imag) <= _DEGENERATE_TOL:
        raise DegenerateStatisticError("residual correlation sums are degenerate")
    residual = math.atan2(corr.imag, corr.real)
    m = c.symmetry_order
    return PhaseEstimate(
        theta_hat=wrap_phase(theta_l + residual, m),
        estimator="mde",
        metric_value=best_score,
    )
