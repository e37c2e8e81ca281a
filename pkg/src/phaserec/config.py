"""Flat key-value sweep configuration files.

Format: one ``key = value`` pair per line; blank lines and ``#`` comments
are ignored. Keys:

    constellation   one of qpsk, 8psk, 16psk, v29, qam16, qam64
    n_symbols       block size N
    snr_db          SNR grid in dB, space or comma separated
    trials          trials per (estimator, SNR) point (default 2000)
    seed            64-bit master seed (default 12345)
    theta0          "uniform" (default) or "fixed <degrees>"
    estimator       repeatable; estimator name followed by key=value
                    parameters, e.g. "pmm stages=2 phases=10"

Example::

    constellation = qpsk
    n_symbols = 32
    snr_db = 0 5 10 15 20 25
    trials = 2000
    seed = 12345
    theta0 = uniform
    estimator = pmm stages=2 phases=10
    estimator = ple
    estimator = mde phases=10
"""

from __future__ import annotations

import math

from .constellation import NAMES
from .harness import ESTIMATOR_NAMES, EstimatorSpec, Scenario

DEFAULT_TRIALS = 2000
DEFAULT_SEED = 12345

_REQUIRED = ("constellation", "n_symbols", "snr_db")


class ConfigError(ValueError):
    """A sweep configuration file could not be parsed."""


def _parse_int(key: str, raw: str, lineno: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"line {lineno}: {key} expects an integer, got {raw!r}")


def _parse_estimator(raw: str, lineno: int) -> EstimatorSpec:
    tokens = raw.replace(",", " ").split()
    if not tokens:
        raise ConfigError(f"line {lineno}: empty estimator entry")
    name = tokens[0].lower()
    if name not in ESTIMATOR_NAMES:
        raise ConfigError(
            f"line {lineno}: unknown estimator {name!r}; "
            f"choose from {', '.join(ESTIMATOR_NAMES)}"
        )
    params = {}
    for token in tokens[1:]:
        if "=" not in token:
            raise ConfigError(f"line {lineno}: estimator parameter {token!r} is not k=v")
        key, _, value = token.partition("=")
        params[key.strip()] = _parse_int(f"estimator {key}", value.strip(), lineno)
    return EstimatorSpec(name=name, params=params)


def parse_scenario(text: str) -> Scenario:
    """Parse configuration text into a :class:`~phaserec.harness.Scenario`."""
    values: dict[str, tuple[str, int]] = {}
    estimators: list[EstimatorSpec] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key == "estimator":
            estimators.append(_parse_estimator(value, lineno))
        elif key in ("constellation", "n_symbols", "snr_db", "trials", "seed", "theta0"):
            if key in values:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            values[key] = (value, lineno)
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")

    for key in _REQUIRED:
        if key not in values:
            raise ConfigError(f"missing required key {key!r}")
    if not estimators:
        raise ConfigError("at least one 'estimator' line is required")

    label, lineno = values["constellation"]
    label = label.lower()
    if label not in NAMES:
        raise ConfigError(
            f"line {lineno}: unknown constellation {label!r}; "
            f"choose from {', '.join(NAMES)}"
        )

    raw, lineno = values["snr_db"]
    try:
        snr_grid = tuple(float(tok) for tok in raw.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"line {lineno}: snr_db expects numbers, got {raw!r}")
    if not snr_grid:
        raise ConfigError(f"line {lineno}: snr_db must list at least one value")

    theta0_mode, theta0_value = "uniform", 0.0
    if "theta0" in values:
        raw, lineno = values["theta0"]
        tokens = raw.split()
        if tokens[0] == "uniform" and len(tokens) == 1:
            pass
        elif tokens[0] == "fixed" and len(tokens) == 2:
            theta0_mode = "fixed"
            try:
                theta0_value = math.radians(float(tokens[1]))
            except ValueError:
                raise ConfigError(f"line {lineno}: fixed theta0 expects degrees")
        else:
            raise ConfigError(
                f"line {lineno}: theta0 must be 'uniform' or 'fixed <degrees>'"
            )

    return Scenario(
        constellation_label=label,
        n_symbols=_parse_int("n_symbols", *values["n_symbols"]),
        estimators=tuple(estimators),
        snr_grid_db=snr_grid,
        trials=(
            _parse_int("trials", *values["trials"])
            if "trials" in values
            else DEFAULT_TRIALS
        ),
        master_seed=(
            _parse_int("seed", *values["seed"]) if "seed" in values else DEFAULT_SEED
        ),
        theta0_mode=theta0_mode,
        theta0_value=theta0_value,
    )


def load_scenario(path) -> Scenario:
    """Read and parse a sweep configuration file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario(fh.read())
