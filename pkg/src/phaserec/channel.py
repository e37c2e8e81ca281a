"""Constant-phase AWGN channel with a deterministic randomness contract.

Model: ``r_k = s_k * exp(j*theta0) + eta_k`` for ``k = 0..N-1``, where the
symbols ``s_k`` are drawn i.i.d. uniform from a unit-energy constellation,
``theta0`` is a constant unknown carrier phase, and ``eta_k`` is circular
complex Gaussian noise with per-dimension variance ``sigma**2``. With unit
symbol energy the SNR is ``1 / (2*sigma**2)``.

Randomness comes from numpy's seeded PCG64 generator (one per block), so a
given ``(constellation, n_symbols, theta0, snr, seed)`` tuple always yields
a bit-identical block. Noiseless operation is requested explicitly by
passing ``snr=None`` rather than by encoding an infinite SNR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constellation import Constellation

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SnrSpec:
    """Signal-to-noise ratio, carried in dB at every user-facing boundary.

    The linear value ``10**(value_db/10)`` must be positive and finite.
    """

    value_db: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value_db", float(self.value_db))
        if not math.isfinite(self.value_db) or not math.isfinite(self.linear):
            raise ValueError(f"SNR {self.value_db!r} dB has no finite linear value")

    @property
    def linear(self) -> float:
        try:
            return 10.0 ** (self.value_db / 10.0)
        except OverflowError:
            return math.inf


@dataclass(frozen=True)
class SampleBlock:
    """One received block plus the ground truth that produced it.

    ``true_phase`` is the applied carrier phase wrapped into
    ``[0, 2*pi/M)`` for the generating constellation's symmetry order M;
    ``symbol_indices`` are the transmitted constellation point indices.
    """

    samples: np.ndarray
    symbol_indices: np.ndarray
    true_phase: float
    snr: SnrSpec | None
    seed: int
    constellation_label: str


def noise_sigma(snr: SnrSpec | None) -> float:
    """Per-dimension noise standard deviation for a unit-energy alphabet.

    ``sigma = sqrt(1 / (2 * SNR_linear))``; the noiseless flag
    (``snr=None``) gives 0.
    """
    if snr is None:
        return 0.0
    if snr.linear <= 0.0:
        raise ValueError("SNR linear value must be positive")
    return math.sqrt(1.0 / (2.0 * snr.linear))


def transmit_block(
    c: Constellation,
    n_symbols: int,
    theta0: float,
    snr: SnrSpec | None,
    seed: int,
) -> SampleBlock:
    """Generate one received block under the constant-phase AWGN model.

    Symbols are i.i.d. uniform over ``c.points``, rotated by
    ``exp(j*theta0)``, then perturbed by circular complex Gaussian noise of
    per-dimension std :func:`noise_sigma`. ``theta0`` is wrapped into
    ``[0, c.period)`` before use.

    Determinism: the block is a pure function of its arguments. The
    generator is numpy's PCG64 seeded with ``seed`` (reduced to 64 bits);
    symbol indices are drawn first, then the real and imaginary noise
    vectors, so noiseless and noisy blocks with equal seeds share the
    same symbol sequence.

    Raises
    ------
    ValueError
        If ``n_symbols < 1`` or ``theta0`` is not finite.
    """
    if n_symbols < 1:
        raise ValueError("n_symbols must be >= 1")
    theta0 = float(theta0)
    if not math.isfinite(theta0):
        raise ValueError("theta0 must be finite")
    theta0 = theta0 % c.period

    rng = np.random.default_rng(int(seed) & _MASK64)
    indices = rng.integers(0, c.size, size=n_symbols)
    samples = c.points[indices] * np.exp(1j * theta0)
    if snr is not None:
        sigma = noise_sigma(snr)
        noise = sigma * rng.standard_normal(n_symbols) + 1j * (
            sigma * rng.standard_normal(n_symbols)
        )
        samples = samples + noise

    indices.setflags(write=False)
    samples.setflags(write=False)
    return SampleBlock(
        samples=samples,
        symbol_indices=indices,
        true_phase=theta0,
        snr=snr,
        seed=int(seed) & _MASK64,
        constellation_label=c.label,
    )
