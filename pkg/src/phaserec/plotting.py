"""Matplotlib rendering of preset and sweep outputs to PNG files.

Figures are a convenience companion to the CSV data; the CSV is the
authoritative output. Uses the Agg backend so rendering works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def plot_sweep(report, path: str | Path) -> None:
    """Std-dev vs SNR on a log scale, one line per estimator, MCRB dashed."""
    fig, ax = plt.subplots(figsize=(7, 5))
    names = []
    for est in report.scenario.estimators:
        if est.name in names:
            continue
        names.append(est.name)
    for name in names:
        rows = [r for r in report.rows if r.estimator == name]
        ax.semilogy(
            [r.snr_db for r in rows],
            [r.std_dev_rad for r in rows],
            marker="o",
            label=name,
        )
    mcrb_rows = [r for r in report.rows if r.estimator == names[0]]
    ax.semilogy(
        [r.snr_db for r in mcrb_rows],
        [r.mcrb_sqrt_rad for r in mcrb_rows],
        "k--",
        label="sqrt(MCRB)",
    )
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("phase estimate std dev (rad)")
    ax.set_title(
        f"{report.scenario.constellation_label}, N={report.scenario.n_symbols}, "
        f"{report.scenario.trials} trials"
    )
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_metric_curves(rows, path: str | Path) -> None:
    """Phase metric vs candidate phase, one line per constellation."""
    fig, ax = plt.subplots(figsize=(7, 5))
    labels = sorted({r.constellation for r in rows})
    for label in labels:
        sel = [r for r in rows if r.constellation == label]
        ax.plot([r.theta_deg for r in sel], [r.metric for r in sel], label=label)
    ax.axvline(30.0, color="k", linestyle=":", alpha=0.6)
    ax.set_xlabel("candidate phase (deg)")
    ax.set_ylabel("phase metric")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_cost_curves(rows, path: str | Path) -> None:
    """Cost vs stage count, one line per (N, SNR), optima circled."""
    fig, ax = plt.subplots(figsize=(7, 5))
    combos = sorted({(r.n_symbols, r.snr_db) for r in rows})
    for n_symbols, snr_db in combos:
        sel = [r for r in rows if r.n_symbols == n_symbols and r.snr_db == snr_db]
        sel.sort(key=lambda r: r.stages)
        (line,) = ax.semilogy(
            [r.stages for r in sel],
            [r.cost for r in sel],
            marker=".",
            label=f"N={n_symbols}, {snr_db:g} dB",
        )
        best = [r for r in sel if r.is_optimal]
        ax.semilogy(
            [r.stages for r in best],
            [r.cost for r in best],
            "o",
            mfc="none",
            color=line.get_color(),
            markersize=10,
        )
    ax.set_xlabel("stage count")
    ax.set_ylabel("computational cost")
    ax.set_title(rows[0].constellation if rows else "")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize="small", ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_phase_counts(rows, path: str | Path) -> None:
    """Required phase count vs SNR, one line per block size."""
    fig, ax = plt.subplots(figsize=(7, 5))
    for n_symbols in sorted({r.n_symbols for r in rows}):
        sel = [r for r in rows if r.n_symbols == n_symbols]
        sel.sort(key=lambda r: r.snr_db)
        ax.plot(
            [r.snr_db for r in sel],
            [r.n0_real for r in sel],
            marker="o",
            label=f"N={n_symbols}",
        )
    stages = rows[0].stages if rows else 0
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("required phase count (pre-ceiling)")
    ax.set_title(f"{rows[0].constellation if rows else ''}, {stages} stage(s)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
