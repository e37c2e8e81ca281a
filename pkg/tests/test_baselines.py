"""Tests for the power-law and minimum-distance estimators."""

import math

import numpy as np
import pytest

from phaserec.baselines import (
    DegenerateStatisticError,
    EstimatorUndefinedError,
    MdeConfig,
    hypothesis_phases,
    mde_estimate,
    ple_constant,
    ple_estimate,
)
from phaserec.channel import SnrSpec, transmit_block
from phaserec.constellation import Constellation, by_name, make_psk
from phaserec.pmm import PmmPlan, pmm_estimate, rotate_block


def wrapped(err, m):
    period = 2 * math.pi / m
    e = err % period
    return e - period if e >= period / 2 else e


class TestPleConstant:
    def test_qpsk_is_minus_one(self):
        # every ((+-1 +-1j)/sqrt(2))**4 equals -1
        assert ple_constant(by_name("qpsk")) == pytest.approx(-1.0 + 0j, abs=1e-12)

    def test_8psk_is_minus_one(self):
        assert ple_constant(by_name("8psk")) == pytest.approx(-1.0 + 0j, abs=1e-12)

    def test_v29_value(self):
        """Oracle: enumerate conj(point)**4 over the raw V.29 listing."""
        c = by_name("v29")
        raw = c.points * math.sqrt(13.5)
        oracle = np.mean(np.conj(raw) ** 4) / 13.5**2
        assert oracle == pytest.approx(1512 / (16 * 13.5**2), abs=1e-12)
        assert ple_constant(c) == pytest.approx(oracle, abs=1e-12)
        assert ple_constant(c) == pytest.approx(0.5185185185 + 0j, abs=1e-9)


class TestPleEstimate:
    @pytest.mark.parametrize(
        "name,theta0", [("qpsk", 0.3), ("8psk", 0.2), ("16psk", 0.11)]
    )
    def test_exact_on_noiseless_psk(self, name, theta0):
        c = by_name(name)
        block = transmit_block(c, 64, theta0, None, seed=17)
        est = ple_estimate(c, block.samples)
        assert abs(wrapped(est.theta_hat - block.true_phase, c.symmetry_order)) <= 1e-12

    def test_exact_on_noiseless_psk_random_phases(self):
        rng = np.random.default_rng(8)
        for name in ("qpsk", "8psk", "16psk"):
            c = by_name(name)
            for theta0 in rng.uniform(0.0, c.period, size=20):
                block = transmit_block(c, 32, theta0, None, seed=int(theta0 * 1e6) + 3)
                est = ple_estimate(c, block.samples)
                assert (
                    abs(wrapped(est.theta_hat - block.true_phase, c.symmetry_order))
                    <= 1e-12
                )

    @pytest.mark.parametrize("name", ["qpsk", "8psk", "16psk", "v29"])
    def test_rotation_equivariance(self, name):
        c = by_name(name)
        block = transmit_block(c, 64, 0.12, SnrSpec(15.0), seed=23)
        base = ple_estimate(c, block.samples).theta_hat
        rng = np.random.default_rng(4)
        for phi in rng.uniform(-3.0, 3.0, size=10):
            shifted = ple_estimate(c, rotate_block(block.samples, phi)).theta_hat
            assert abs(wrapped(shifted - base - phi, c.symmetry_order)) <= 1e-9

    def test_output_in_canonical_interval(self):
        c = by_name("v29")
        block = transmit_block(c, 64, 1.4, SnrSpec(5.0), seed=31)
        est = ple_estimate(c, block.samples)
        assert 0.0 <= est.theta_hat < c.period

    def test_zero_block_degenerate(self):
        with pytest.raises(DegenerateStatisticError):
            ple_estimate(by_name("qpsk"), np.zeros(8, dtype=complex))

    def test_empty_block_rejected(self):
        with pytest.raises(ValueError):
            ple_estimate(by_name("qpsk"), [])

    def test_vanishing_constant_undefined(self):
        # QPSK points are also pi-rotation symmetric, but their second
        # moments cancel, so the order-2 power-law estimator does not exist.
        c2 = Constellation(
            points=make_psk(4).points, symmetry_order=2, label="qpsk-m2"
        )
        assert abs(ple_constant(c2)) < 1e-12
        block = transmit_block(c2, 16, 0.1, None, seed=3)
        with pytest.raises(EstimatorUndefinedError):
            ple_estimate(c2, block.samples)


class TestMdeEstimate:
    def test_hypothesis_grid_spans_full_interval(self):
        cfg = MdeConfig(10, 4)
        phases = hypothesis_phases(cfg)
        assert phases[0] == pytest.approx(-math.pi / 4)
        assert phases[-1] == pytest.approx(math.pi / 4)
        assert len(phases) == 10

    def test_exact_when_theta0_is_a_hypothesis(self):
        c = by_name("qpsk")
        cfg = MdeConfig(10, 4)
        theta0 = float(hypothesis_phases(cfg)[7])  # 25 degrees
        block = transmit_block(c, 64, theta0, None, seed=11)
        est = mde_estimate(c, block.samples, cfg)
        assert abs(wrapped(est.theta_hat - block.true_phase, 4)) <= 1e-12

    @pytest.mark.parametrize("name", ["qpsk", "8psk", "16psk", "v29"])
    def test_noiseless_between_hypotheses(self, name):
        """Residual stage corrects the coarse pick; fine-grid search agrees."""
        c = by_name(name)
        cfg = MdeConfig(10, c.symmetry_order)
        oracle_plan = PmmPlan(5, 50, c.symmetry_order)  # resolution < 1e-7
        assert oracle_plan.resolution < 1e-7
        rng = np.random.default_rng(29)
        for theta0 in rng.uniform(0.0, c.period, size=10):
            block = transmit_block(c, 4 * c.size, theta0, None, seed=int(theta0 * 1e6))
            est = mde_estimate(c, block.samples, cfg)
            assert abs(wrapped(est.theta_hat - block.true_phase, c.symmetry_order)) <= 1e-6
            oracle = pmm_estimate(c, block.samples, oracle_plan)
            assert (
                abs(wrapped(est.theta_hat - oracle.theta_hat, c.symmetry_order)) <= 1e-6
            )

    def test_output_in_canonical_interval(self):
        c = by_name("8psk")
        cfg = MdeConfig(10, 8)
        block = transmit_block(c, 40, 0.3, SnrSpec(3.0), seed=41)
        est = mde_estimate(c, block.samples, cfg)
        assert 0.0 <= est.theta_hat < c.period

    def test_zero_block_degenerate(self):
        with pytest.raises(DegenerateStatisticError):
            mde_estimate(by_name("qpsk"), np.zeros(8, dtype=complex), MdeConfig(10, 4))

    def test_symmetry_mismatch_rejected(self):
        c = by_name("qpsk")
        block = transmit_block(c, 8, 0.0, None, seed=2)
        with pytest.raises(ValueError):
            mde_estimate(c, block.samples, MdeConfig(10, 8))

    def test_invalid_config(self):
        with pytest.raises(ValueError):
            MdeConfig(1, 4)
