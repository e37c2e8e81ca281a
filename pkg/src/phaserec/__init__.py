"""Blind carrier phase estimation for rotationally symmetric constellations.

A library plus CLI implementing a multi-stage grid-search phase estimator
built on a nearest-point distance metric, the analytic machinery that
sizes its grids against the modified Cramer-Rao bound, two classic
competitor estimators (M-th power law and minimum distance), and a
deterministic Monte Carlo harness that benchmarks all three over SNR
sweeps with CSV and PNG output.
"""

from .baselines import (
    DegenerateStatisticError,
    EstimatorUndefinedError,
    MdeConfig,
    hypothesis_phases,
    mde_estimate,
    ple_constant,
    ple_estimate,
)
from .channel import SampleBlock, SnrSpec, noise_sigma, transmit_block
from .config import ConfigError, load_scenario, parse_scenario
from .constellation import (
    NAMES,
    Constellation,
    by_name,
    make_psk,
    make_square_qam,
    make_v29,
    nearest_indices,
    nearest_point,
    rotation_invariant,
    verify_symmetry,
)
from .harness import (
    ESTIMATOR_NAMES,
    SWEEP_CSV_HEADER,
    EstimatorSpec,
    Scenario,
    SweepReport,
    TrialFailureRateError,
    TrialStats,
    mix64,
    run_trials,
    sweep,
    trial_block_seed,
    trial_theta_seed,
    wrapped_error,
    write_sweep_csv,
)
from .planning import (
    CostBreakdown,
    PlanQuery,
    cost,
    mcrb,
    optimal_phase_count,
    optimal_stage_count,
    phase_count_bound,
    quantization_stddev,
    query_cost,
    stage_cost_table,
    stage_resolution,
)
from .pmm import (
    PhaseEstimate,
    PhaseGrid,
    PmmPlan,
    metric_profile,
    phase_metric,
    pmm_estimate,
    rotate_block,
    stage_grid,
    wrap_phase,
)
from .presets import PRESET_IDS, run_preset, sweep_scenario

__version__ = "0.1.0"

__all__ = [
    "Constellation",
    "ConfigError",
    "CostBreakdown",
    "DegenerateStatisticError",
    "ESTIMATOR_NAMES",
    "EstimatorSpec",
    "EstimatorUndefinedError",
    "MdeConfig",
    "NAMES",
    "PRESET_IDS",
    "PhaseEstimate",
    "PhaseGrid",
    "PlanQuery",
    "PmmPlan",
    "SWEEP_CSV_HEADER",
    "SampleBlock",
    "Scenario",
    "SnrSpec",
    "SweepReport",
    "TrialFailureRateError",
    "TrialStats",
    "by_name",
    "cost",
    "hypothesis_phases",
    "load_scenario",
    "make_psk",
    "make_square_qam",
    "make_v29",
    "mcrb",
    "mde_estimate",
    "metric_profile",
    "mix64",
    "nearest_indices",
    "nearest_point",
    "noise_sigma",
    "optimal_phase_count",
    "optimal_stage_count",
    "parse_scenario",
    "phase_count_bound",
    "phase_metric",
    "ple_constant",
    "ple_estimate",
    "pmm_estimate",
    "quantization_stddev",
    "query_cost",
    "rotate_block",
    "rotation_invariant",
    "run_preset",
    "run_trials",
    "stage_cost_table",
    "stage_grid",
    "stage_resolution",
    "sweep",
    "sweep_scenario",
    "transmit_block",
    "trial_block_seed",
    "trial_theta_seed",
    "verify_symmetry",
    "wrap_phase",
    "wrapped_error",
    "write_sweep_csv",
]
