"""Monte Carlo engine: estimator-vs-SNR sweeps with wrapped-error statistics.

Each trial draws a true phase, generates one received block, runs an
estimator, and records the estimate error wrapped into the ambiguity
interval ``[-pi/M, pi/M)``. Per-(SNR, trial) randomness is derived from the
scenario's master seed through a documented 64-bit mixing function
(SplitMix64 avalanche over the master seed, the bit pattern of the SNR in
dB, the trial index, and a stream tag), so results are bit-identical for
identical scenarios regardless of execution order or parallelism.

Within one (SNR, trial) pair every estimator sees the same block (paired
noise): block seeds intentionally do not depend on the estimator, which
reduces the variance of estimator comparisons without touching marginal
statistics.
"""

from __future__ import annotations

import math
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, TextIO

import numpy as np

from . import planning
from .baselines import DegenerateStatisticError, MdeConfig, mde_estimate, ple_estimate
from .channel import SnrSpec, transmit_block
from .constellation import Constellation, by_name
from .pmm import PhaseEstimate, PmmPlan, pmm_estimate, wrap_phase

_MASK64 = (1 << 64) - 1

# Stream tags keep the theta, block, and estimator RNG streams disjoint.
_TAG_THETA = 0x7E7A0001
_TAG_BLOCK = 0xB10C0002
_TAG_EST = 0xE5710003
_NOISELESS_TAG = 0x4E4F4953

#: Exact header of the sweep CSV, one row per estimator x SNR pair.
SWEEP_CSV_HEADER = (
    "constellation,estimator,M,L,N,lambda,n0,snr_db,trials,"
    "failed_trials,bias_rad,std_dev_rad,mcrb_sqrt_rad"
)

#: Estimator names accepted at config/CLI boundaries.
ESTIMATOR_NAMES = ("pmm", "ple", "mde")


class TrialFailureRateError(RuntimeError):
    """More than 1% of trials raised a degenerate-statistic error."""


def mix64(*parts: int) -> int:
    """Mix integers into one 64-bit seed using the SplitMix64 finalizer."""
    h = 0x9E3779B97F4A7C15
    for part in parts:
        h = ((h ^ (int(part) & _MASK64)) * 0xBF58476D1CE4E5B9) & _MASK64
        h ^= h >> 27
        h = (h * 0x94D049BB133111EB) & _MASK64
        h ^= h >> 31
    return h


def _snr_tag(snr_db: float | None) -> int:
    if snr_db is None:
        return _NOISELESS_TAG
    return int.from_bytes(struct.pack("<d", float(snr_db)), "little")


def trial_block_seed(master_seed: int, snr_db: float | None, trial: int) -> int:
    """Block seed for one (SNR, trial) pair; shared by every estimator."""
    return mix64(master_seed, _snr_tag(snr_db), trial, _TAG_BLOCK)


def trial_theta_seed(master_seed: int, snr_db: float | None, trial: int) -> int:
    """Seed of the per-trial true-phase draw."""
    return mix64(master_seed, _snr_tag(snr_db), trial, _TAG_THETA)


def wrapped_error(theta_hat: float, theta0: float, symmetry_order: int) -> float:
    """Estimate error reduced modulo ``2*pi/M`` into ``[-pi/M, pi/M)``."""
    period = 2.0 * math.pi / symmetry_order
    err = (float(theta_hat) - float(theta0)) % period
    if err >= period / 2.0:
        err -= period
    return err


@dataclass(frozen=True)
class EstimatorSpec:
    """An estimator selection plus its integer parameters.

    Parameters: ``pmm`` takes ``stages`` (default 2) and ``phases``
    (default 10); ``mde`` takes ``phases`` (default 10); ``ple`` takes
    none. The ``synthetic`` estimator (harness self-test instrumentation)
    returns the true phase plus Gaussian noise of std ``sigma`` radians.
    """

    name: str
    params: dict = field(default_factory=dict)

    def stages(self) -> int | None:
        return self.params.get("stages", 2) if self.name == "pmm" else None

    def phase_count(self) -> int | None:
        if self.name in ("pmm", "mde"):
            return self.params.get("phases", 10)
        return None


@dataclass(frozen=True)
class Scenario:
    """One sweep definition: constellation, block size, estimators, SNR grid.

    ``theta0_mode`` is ``"uniform"`` (fresh uniform draw over
    ``[0, 2*pi/M)`` each trial) or ``"fixed"`` (every trial uses
    ``theta0_value`` radians, wrapped).
    """

    constellation_label: str
    n_symbols: int
    estimators: tuple[EstimatorSpec, ...]
    snr_grid_db: tuple[float, ...]
    trials: int
    master_seed: int
    theta0_mode: str = "uniform"
    theta0_value: float = 0.0

    def __post_init__(self) -> None:
        if self.n_symbols < 1:
            raise ValueError("n_symbols must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.snr_grid_db:
            raise ValueError("snr_grid_db must be non-empty")
        if not self.estimators:
            raise ValueError("at least one estimator is required")
        if self.theta0_mode not in ("uniform", "fixed"):
            raise ValueError("theta0_mode must be 'uniform' or 'fixed'")


@dataclass(frozen=True)
class TrialStats:
    """Wrapped-error statistics for one (estimator, SNR) pair.

    ``std_dev_rad`` is the population standard deviation about the mean;
    the mean error is reported separately as ``bias_rad``. Trials that
    raised a degenerate-statistic error are excluded from both and counted
    in ``failed_trials``.
    """

    estimator: str
    stages: int | None
    phase_count: int | None
    snr_db: float | None
    trials: int
    failed_trials: int
    bias_rad: float
    std_dev_rad: float
    mcrb_sqrt_rad: float


@dataclass(frozen=True)
class SweepReport:
    """All rows of one scenario sweep, in estimator-major order."""

    scenario: Scenario
    rows: tuple[TrialStats, ...]


class _TrialContext:
    """Per-trial data handed to estimator callables (used by 'synthetic')."""

    def __init__(self, theta0: float, est_seed: int):
        self.theta0 = theta0
        self._est_seed = est_seed
        self._rng = None

    @property
    def rng(self) -> np.random.Generator:
        if self._rng is None:
            self._rng = np.random.default_rng(self._est_seed)
        return self._rng


def _resolve_estimator(
    spec: EstimatorSpec, c: Constellation
) -> Callable[[np.ndarray, _TrialContext], PhaseEstimate]:
    if spec.name == "pmm":
        plan = PmmPlan(
            stages=spec.params.get("stages", 2),
            phases_per_stage=spec.params.get("phases", 10),
            symmetry_order=c.symmetry_order,
        )
        return lambda samples, ctx: pmm_estimate(c, samples, plan)
    if spec.name == "ple":
        return lambda samples, ctx: ple_estimate(c, samples)
    if spec.name == "mde":
        cfg = MdeConfig(
            hypothesis_count=spec.params.get("phases", 10),
            symmetry_order=c.symmetry_order,
        )
        return lambda samples, ctx: mde_estimate(c, samples, cfg)
    if spec.name == "synthetic":
        sigma = float(spec.params.get("sigma", 0.0))
        m = c.symmetry_order

        def synthetic(samples, ctx):
            noise = sigma * ctx.rng.standard_normal() if sigma > 0.0 else 0.0
            return PhaseEstimate(wrap_phase(ctx.theta0 + noise, m), "synthetic")

        return synthetic
    raise ValueError(f"unknown estimator {spec.name!r}")


def run_trials(
    scenario: Scenario, snr_db: float | None, estimator: EstimatorSpec
) -> TrialStats:
    """Run every trial of one (estimator, SNR) pair and reduce to statistics.

    Trials execute in index order; errors are accumulated into an array
    indexed by trial and reduced with a fixed summation order, so the
    result does not depend on how callers schedule the work. A failure
    rate above 1% raises :class:`TrialFailureRateError`.
    """
    c = by_name(scenario.constellation_label)
    m = c.symmetry_order
    snr = None if snr_db is None else SnrSpec(snr_db)
    estimate = _resolve_estimator(estimator, c)

    errors = np.full(scenario.trials, np.nan)
    for t in range(scenario.trials):
        if scenario.theta0_mode == "fixed":
            theta0 = scenario.theta0_value
        else:
            theta_rng = np.random.default_rng(
                trial_theta_seed(scenario.master_seed, snr_db, t)
            )
            theta0 = theta_rng.uniform(0.0, 2.0 * math.pi / m)
        block = transmit_block(
            c,
            scenario.n_symbols,
            theta0,
            snr,
            trial_block_seed(scenario.master_seed, snr_db, t),
        )
        ctx = _TrialContext(
            theta0=block.true_phase,
            est_seed=mix64(scenario.master_seed, _snr_tag(snr_db), t, _TAG_EST),
        )
        try:
            result = estimate(block.samples, ctx)
        except DegenerateStatisticError:
            continue
        errors[t] = wrapped_error(result.theta_hat, block.true_phase, m)

    ok = errors[~np.isnan(errors)]
    failed = scenario.trials - ok.size
    if failed > 0.01 * scenario.trials:
        raise TrialFailureRateError(
            f"{failed}/{scenario.trials} trials degenerate for "
            f"{estimator.name} at snr_db={snr_db!r}"
        )
    bias = float(np.mean(ok))
    std = float(np.sqrt(np.mean((ok - bias) ** 2)))
    mcrb_sqrt = (
        math.nan if snr is None else math.sqrt(planning.mcrb(scenario.n_symbols, snr))
    )
    return TrialStats(
        estimator=estimator.name,
        stages=estimator.stages(),
        phase_count=estimator.phase_count(),
        snr_db=snr_db,
        trials=scenario.trials,
        failed_trials=failed,
        bias_rad=bias,
        std_dev_rad=std,
        mcrb_sqrt_rad=mcrb_sqrt,
    )


def _sweep_task(args: tuple[Scenario, float, EstimatorSpec]) -> TrialStats:
    scenario, snr_db, estimator = args
    return run_trials(scenario, snr_db, estimator)


def sweep(scenario: Scenario, jobs: int = 1) -> SweepReport:
    """Run every (estimator, SNR) pair of a scenario.

    ``jobs > 1`` distributes pairs over worker processes; each pair is
    internally deterministic and results are collected in grid order, so
    the report is identical at any parallelism level.
    """
    tasks = [
        (scenario, snr_db, est)
        for est in scenario.estimators
        for snr_db in scenario.snr_grid_db
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = tuple(pool.map(_sweep_task, tasks))
    else:
        rows = tuple(_sweep_task(task) for task in tasks)
    return SweepReport(scenario=scenario, rows=rows)


def format_number(x: float) -> str:
    """Format a float with 9 significant digits (plain decimal point)."""
    return f"{float(x):.9g}"


def write_sweep_csv(report: SweepReport, out: TextIO) -> None:
    """Serialize a sweep report with the documented CSV schema."""
    c = by_name(report.scenario.constellation_label)
    out.write(SWEEP_CSV_HEADER + "\n")
    for row in report.rows:
        fields = [
            report.scenario.constellation_label,
            row.estimator,
            str(c.symmetry_order),
            str(c.size),
            str(report.scenario.n_symbols),
            "" if row.stages is None else str(row.stages),
            "" if row.phase_count is None else str(row.phase_count),
            format_number(row.snr_db),
            str(row.trials),
            str(row.failed_trials),
            format_number(row.bias_rad),
            format_number(row.std_dev_rad),
            format_number(row.mcrb_sqrt_rad),
        ]
        out.write(",".join(fields) + "\n")
