"""Analytic sizing and cost model for the multi-stage grid estimator.

A noiseless single-stage grid search with spacing ``dtheta`` snaps a
uniformly distributed phase to the nearest grid point, so its estimate
error is uniform and has standard deviation ``dtheta / (2*sqrt(3))``. The
planner chooses the smallest per-stage phase count whose final-stage
quantization std-dev sits at or below the square root of the modified
Cramer-Rao bound, here approximated by ``1 / (2*N*SNR)``, and picks the
stage count that minimizes an abstract operation-count cost model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import SnrSpec

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class PlanQuery:
    """One planning scenario: constellation shape, block size, SNR, stages."""

    symmetry_order: int
    size: int
    n_symbols: int
    snr: SnrSpec
    stages: int

    def __post_init__(self) -> None:
        if self.symmetry_order < 2 or self.size < 2:
            raise ValueError("symmetry_order and size must be >= 2")
        if self.n_symbols < 1 or self.stages < 1:
            raise ValueError("n_symbols and stages must be >= 1")


@dataclass(frozen=True)
class CostBreakdown:
    """A stage count with its planned phase count and total cost."""

    stages: int
    phase_count: int
    cost: int


def stage_resolution(symmetry_order: int, phase_count: int, stages: int = 1) -> float:
    """Final-stage grid spacing ``2**(stages-1) * (2*pi/M) / n**stages``."""
    _check_grid_args(symmetry_order, phase_count, stages)
    m, n, lam = symmetry_order, phase_count, stages
    return 2.0 ** (lam - 1) * (2.0 * math.pi / m) / n**lam


def quantization_stddev(symmetry_order: int, phase_count: int, stages: int = 1) -> float:
    """Noiseless estimate std-dev for a uniformly distributed true phase.

    Equals ``resolution / (2*sqrt(3))``, the std-dev of a uniform
    quantization error over ``[-resolution/2, resolution/2]``.
    """
    return stage_resolution(symmetry_order, phase_count, stages) / (2.0 * _SQRT3)


def mcrb(n_symbols: int, snr: SnrSpec) -> float:
    """Modified Cramer-Rao bound approximation ``1 / (2*N*SNR)`` in rad**2."""
    if n_symbols < 1:
        raise ValueError("n_symbols must be >= 1")
    if snr.linear <= 0.0:
        raise ValueError("SNR linear value must be positive")
    return 1.0 / (2.0 * n_symbols * snr.linear)


def phase_count_bound(
    symmetry_order: int, n_symbols: int, snr: SnrSpec, stages: int = 1
) -> float:
    """Real-valued phase count at which quantization std-dev meets sqrt(MCRB).

    ``optimal_phase_count`` is the ceiling of this value. Exposed
    separately because the planning surfaces report the pre-ceiling
    number as well.
    """
    if symmetry_order < 2:
        raise ValueError("symmetry_order must be >= 2")
    if n_symbols < 1:
        raise ValueError("n_symbols must be >= 1")
    if stages < 1:
        raise ValueError("stages must be >= 1")
    if snr.linear <= 0.0:
        raise ValueError("SNR linear value must be positive")
    m, lam = symmetry_order, stages
    inner = (2.0 ** (lam - 1) * math.pi / m) * math.sqrt(
        2.0 * n_symbols * snr.linear / 3.0
    )
    return inner ** (1.0 / lam)


def optimal_phase_count(
    symmetry_order: int, n_symbols: int, snr: SnrSpec, stages: int = 1
) -> int:
    """Smallest integer phase count (>= 2) meeting the MCRB quantization target."""
    return max(2, math.ceil(phase_count_bound(symmetry_order, n_symbols, snr, stages)))


def cost(stages: int, phase_count: int, size: int, n_symbols: int) -> int:
    """Abstract operation count ``lam * (n*L*(10*N + 44) + 416*n + 6)``."""
    if stages < 1 or phase_count < 1 or size < 1 or n_symbols < 1:
        raise ValueError("all cost arguments must be >= 1")
    lam, n, big_l, big_n = stages, phase_count, size, n_symbols
    return lam * (n * big_l * (10 * big_n + 44) + 416 * n + 6)


def query_cost(query: PlanQuery) -> CostBreakdown:
    """Planned phase count and total cost for one fully specified query."""
    n0 = optimal_phase_count(
        query.symmetry_order, query.n_symbols, query.snr, query.stages
    )
    return CostBreakdown(
        query.stages, n0, cost(query.stages, n0, query.size, query.n_symbols)
    )


def stage_cost_table(
    symmetry_order: int,
    size: int,
    n_symbols: int,
    snr: SnrSpec,
    max_stages: int = 8,
) -> list[CostBreakdown]:
    """Planned phase count and cost for each stage count 1..max_stages."""
    if max_stages < 1:
        raise ValueError("max_stages must be >= 1")
    return [
        query_cost(PlanQuery(symmetry_order, size, n_symbols, snr, lam))
        for lam in range(1, max_stages + 1)
    ]


def optimal_stage_count(
    symmetry_order: int,
    size: int,
    n_symbols: int,
    snr: SnrSpec,
    max_stages: int = 8,
) -> CostBreakdown:
    """The cheapest stage count in 1..max_stages; ties go to fewer stages."""
    best = None
    for entry in stage_cost_table(symmetry_order, size, n_symbols, snr, max_stages):
        if best is None or entry.cost < best.cost:
            best = entry
    return best


def _check_grid_args(symmetry_order: int, phase_count: int, stages: int) -> None:
    if symmetry_order < 2:
        raise ValueError("symmetry_order must be >= 2")
    if phase_count < 2:
        raise ValueError("phase_count must be >= 2")
    if stages < 1:
        raise ValueError("stages must be >= 1")
