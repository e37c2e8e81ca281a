"""Canned experiment presets, each reproducing one benchmark figure's data.

Every preset writes a CSV file (the authoritative output) and, unless
disabled, a rendered PNG next to it:

    fig1        metric-vs-phase curves for qpsk/8psk/v29 at a 30 degree
                offset, 20 dB SNR, N=64, grid sized by the single-stage
                MCRB rule
    fig3-fig6   cost-vs-stage-count tables for qpsk/v29/8psk/16psk
    fig7-fig8   required phase count vs SNR for qpsk at 1 and 2 stages
    fig9-fig12  estimator std-dev-vs-SNR sweeps for qpsk/v29/8psk/16psk

``trials`` only affects the sweep presets; the analytic presets accept and
ignore it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from . import planning
from .channel import SnrSpec, transmit_block
from .constellation import by_name
from .harness import (
    EstimatorSpec,
    Scenario,
    format_number,
    mix64,
    sweep,
    write_sweep_csv,
)
from .pmm import metric_profile, stage_grid

_TAG_FIG1 = 0xF160001

PRESET_IDS = (
    "fig1",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "fig7",
    "fig8",
    "fig9",
    "fig10",
    "fig11",
    "fig12",
)

_COST_PRESETS = {"fig3": "qpsk", "fig4": "v29", "fig5": "8psk", "fig6": "16psk"}
_COST_SNRS_DB = (10.0, 15.0, 20.0, 25.0)
_PHASE_COUNT_PRESETS = {"fig7": 1, "fig8": 2}
_PHASE_COUNT_N = (8, 16, 24, 32, 40)
_PHASE_COUNT_SNRS_DB = (5.0, 10.0, 15.0, 20.0, 25.0)
_SWEEP_PRESETS = {
    "fig9": ("qpsk", 32),
    "fig10": ("v29", 64),
    "fig11": ("8psk", 40),
    "fig12": ("16psk", 64),
}
_SWEEP_SNRS_DB = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0)

METRIC_CSV_HEADER = "constellation,theta_deg,metric"
COST_CSV_HEADER = "constellation,N,snr_db,lambda,n0,cost,is_optimal"
PHASE_COUNT_CSV_HEADER = "constellation,N,snr_db,lambda,n0_real,n0"


@dataclass(frozen=True)
class MetricRow:
    constellation: str
    theta_deg: float
    metric: float


@dataclass(frozen=True)
class CostRow:
    constellation: str
    n_symbols: int
    snr_db: float
    stages: int
    phase_count: int
    cost: int
    is_optimal: bool


@dataclass(frozen=True)
class PhaseCountRow:
    constellation: str
    n_symbols: int
    snr_db: float
    stages: int
    n0_real: float
    n0: int


def metric_curve_rows(master_seed: int) -> list[MetricRow]:
    """Metric-vs-phase rows for the fig1 preset (one seeded block each)."""
    snr = SnrSpec(20.0)
    theta0 = math.radians(30.0)
    rows = []
    for index, label in enumerate(("qpsk", "8psk", "v29")):
        c = by_name(label)
        n0 = planning.optimal_phase_count(c.symmetry_order, 64, snr, stages=1)
        grid = stage_grid(0.0, 0.0, n0, c.symmetry_order, first_stage=True)
        block = transmit_block(c, 64, theta0, snr, mix64(master_seed, index, _TAG_FIG1))
        values = metric_profile(c, block.samples, grid.phases)
        for phase, value in zip(grid.phases, values):
            rows.append(MetricRow(label, math.degrees(phase), float(value)))
    return rows


def cost_table_rows(label: str) -> list[CostRow]:
    """Cost-vs-stage-count rows over an (N, SNR) grid for one constellation."""
    c = by_name(label)
    rows = []
    for n_symbols in (2 * c.size, 4 * c.size, 8 * c.size):
        for snr_db in _COST_SNRS_DB:
            snr = SnrSpec(snr_db)
            table = planning.stage_cost_table(c.symmetry_order, c.size, n_symbols, snr)
            best = planning.optimal_stage_count(c.symmetry_order, c.size, n_symbols, snr)
            for entry in table:
                rows.append(
                    CostRow(
                        label,
                        n_symbols,
                        snr_db,
                        entry.stages,
                        entry.phase_count,
                        entry.cost,
                        entry.stages == best.stages,
                    )
                )
    return rows


def phase_count_rows(stages: int) -> list[PhaseCountRow]:
    """Required-phase-count rows over the (N, SNR) grid for qpsk."""
    c = by_name("qpsk")
    rows = []
    for n_symbols in _PHASE_COUNT_N:
        for snr_db in _PHASE_COUNT_SNRS_DB:
            snr = SnrSpec(snr_db)
            real = planning.phase_count_bound(c.symmetry_order, n_symbols, snr, stages)
            n0 = planning.optimal_phase_count(c.symmetry_order, n_symbols, snr, stages)
            rows.append(PhaseCountRow("qpsk", n_symbols, snr_db, stages, real, n0))
    return rows


def sweep_scenario(preset_id: str, master_seed: int, trials: int) -> Scenario:
    """The sweep scenario behind one of the fig9..fig12 presets."""
    label, n_symbols = _SWEEP_PRESETS[preset_id]
    return Scenario(
        constellation_label=label,
        n_symbols=n_symbols,
        estimators=(
            EstimatorSpec("pmm", {"stages": 2, "phases": 10}),
            EstimatorSpec("ple"),
            EstimatorSpec("mde", {"phases": 10}),
        ),
        snr_grid_db=_SWEEP_SNRS_DB,
        trials=trials,
        master_seed=master_seed,
        theta0_mode="uniform",
    )


def _write_metric_csv(rows: list[MetricRow], out) -> None:
    out.write(METRIC_CSV_HEADER + "\n")
    for row in rows:
        out.write(
            f"{row.constellation},{format_number(row.theta_deg)},"
            f"{format_number(row.metric)}\n"
        )


def _write_cost_csv(rows: list[CostRow], out) -> None:
    out.write(COST_CSV_HEADER + "\n")
    for row in rows:
        out.write(
            f"{row.constellation},{row.n_symbols},{format_number(row.snr_db)},"
            f"{row.stages},{row.phase_count},{row.cost},{int(row.is_optimal)}\n"
        )


def _write_phase_count_csv(rows: list[PhaseCountRow], out) -> None:
    out.write(PHASE_COUNT_CSV_HEADER + "\n")
    for row in rows:
        out.write(
            f"{row.constellation},{row.n_symbols},{format_number(row.snr_db)},"
            f"{row.stages},{format_number(row.n0_real)},{row.n0}\n"
        )


def run_preset(
    preset_id: str,
    master_seed: int = 12345,
    trials: int = 2000,
    out_dir: str | Path = ".",
    jobs: int = 1,
    plot: bool = True,
) -> list[Path]:
    """Run one preset; returns the paths of the files it wrote."""
    if preset_id not in PRESET_IDS:
        raise ValueError(
            f"unknown preset {preset_id!r}; choose from {', '.join(PRESET_IDS)}"
        )
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{preset_id}.csv"
    png_path = out_dir / f"{preset_id}.png"
    written = [csv_path]

    from . import plotting  # deferred: pulls in matplotlib

    if preset_id == "fig1":
        rows = metric_curve_rows(master_seed)
        with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
            _write_metric_csv(rows, fh)
        if plot:
            plotting.plot_metric_curves(rows, png_path)
            written.append(png_path)
    elif preset_id in _COST_PRESETS:
        rows = cost_table_rows(_COST_PRESETS[preset_id])
        with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
            _write_cost_csv(rows, fh)
        if plot:
            plotting.plot_cost_curves(rows, png_path)
            written.append(png_path)
    elif preset_id in _PHASE_COUNT_PRESETS:
        rows = phase_count_rows(_PHASE_COUNT_PRESETS[preset_id])
        with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
            _write_phase_count_csv(rows, fh)
        if plot:
            plotting.plot_phase_counts(rows, png_path)
            written.append(png_path)
    else:
        scenario = sweep_scenario(preset_id, master_seed, trials)
        report = sweep(scenario, jobs=jobs)
        with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
            write_sweep_csv(report, fh)
        if plot:
            plotting.plot_sweep(report, png_path)
            written.append(png_path)
    return written
