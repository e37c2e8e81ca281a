"""Tests for the Monte Carlo harness: seeding, statistics, CSV output."""

import io
import math

import numpy as np
import pytest

import phaserec.harness as harness
from phaserec.baselines import DegenerateStatisticError
from phaserec.channel import transmit_block
from phaserec.constellation import by_name
from phaserec.harness import (
    SWEEP_CSV_HEADER,
    EstimatorSpec,
    Scenario,
    TrialFailureRateError,
    mix64,
    run_trials,
    sweep,
    trial_block_seed,
    trial_theta_seed,
    wrapped_error,
    write_sweep_csv,
)
from phaserec.planning import quantization_stddev


def small_scenario(**overrides):
    defaults = dict(
        constellation_label="qpsk",
        n_symbols=32,
        estimators=(EstimatorSpec("pmm", {"stages": 2, "phases": 10}),),
        snr_grid_db=(10.0, 20.0),
        trials=50,
        master_seed=2222,
    )
    defaults.update(overrides)
    return Scenario(**defaults)


class TestWrappedError:
    def test_identity(self):
        assert wrapped_error(0.7, 0.7, 4) == 0.0

    def test_wraps_across_boundary(self):
        # estimates on either side of the ambiguity boundary are neighbors
        assert wrapped_error(0.01, math.pi / 2 - 0.01, 4) == pytest.approx(0.02)

    def test_full_period_is_zero(self):
        theta0 = 0.3
        assert wrapped_error(theta0 + math.pi / 4, theta0, 8) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_range(self):
        rng = np.random.default_rng(6)
        for a, b in zip(rng.uniform(-9, 9, 100), rng.uniform(-9, 9, 100)):
            e = wrapped_error(a, b, 4)
            assert -math.pi / 4 <= e < math.pi / 4


class TestSeeding:
    def test_mix64_deterministic_and_tag_sensitive(self):
        assert mix64(1, 2, 3) == mix64(1, 2, 3)
        assert mix64(1, 2, 3) != mix64(1, 2, 4)
        assert mix64(1, 2, 3) != mix64(1, 3, 2)
        assert 0 <= mix64(2**80, -5) < 2**64

    def test_block_seed_is_estimator_independent(self):
        """All estimators of one (SNR, trial) pair share a block (paired noise)."""
        seed = trial_block_seed(42, 10.0, 7)
        c = by_name("qpsk")
        a = transmit_block(c, 16, 0.1, None, seed)
        b = transmit_block(c, 16, 0.1, None, trial_block_seed(42, 10.0, 7))
        assert np.array_equal(a.samples, b.samples)

    def test_stream_separation(self):
        assert trial_block_seed(42, 10.0, 7) != trial_theta_seed(42, 10.0, 7)
        assert trial_block_seed(42, 10.0, 7) != trial_block_seed(42, 10.0, 8)
        assert trial_block_seed(42, 10.0, 7) != trial_block_seed(42, None, 7)


class TestRunTrials:
    def test_bit_identical_reruns(self):
        scenario = small_scenario()
        spec = scenario.estimators[0]
        a = run_trials(scenario, 10.0, spec)
        b = run_trials(scenario, 10.0, spec)
        assert a == b

    def test_synthetic_estimator_recovers_sigma(self):
        """Harness self-test: a theta0 + N(0, sigma) estimator measures sigma."""
        sigma = 0.05
        scenario = small_scenario(
            estimators=(EstimatorSpec("synthetic", {"sigma": sigma}),),
            trials=10_000,
            n_symbols=4,
        )
        stats = run_trials(scenario, 20.0, scenario.estimators[0])
        assert stats.std_dev_rad == pytest.approx(sigma, rel=0.05)
        assert abs(stats.bias_rad) <= 3 * sigma / math.sqrt(10_000) * 1.5

    def test_noiseless_pmm_std_matches_quantization(self):
        """Uniform theta0, no noise: the sweep std is the quantization floor."""
        scenario = small_scenario(trials=4000, n_symbols=16)
        stats = run_trials(scenario, None, scenario.estimators[0])
        assert stats.std_dev_rad == pytest.approx(quantization_stddev(4, 10, 2), rel=0.10)
        assert math.isnan(stats.mcrb_sqrt_rad)

    def test_fixed_theta0_mode(self):
        scenario = small_scenario(
            theta0_mode="fixed", theta0_value=0.321, trials=5, n_symbols=8
        )
        stats = run_trials(scenario, None, scenario.estimators[0])
        assert stats.trials == 5
        assert abs(stats.bias_rad) <= quantization_stddev(4, 10, 2) * 4

    def test_degenerate_trials_counted_and_excluded(self, monkeypatch):
        fail_on = {3, 7}

        def resolver(spec, c):
            def estimator(samples, ctx):
                if estimator.calls in fail_on:
                    estimator.calls += 1
                    raise DegenerateStatisticError("synthetic failure")
                estimator.calls += 1
                from phaserec.pmm import PhaseEstimate

                return PhaseEstimate(ctx.theta0, "stub")

            estimator.calls = 0
            return estimator

        monkeypatch.setattr(harness, "_resolve_estimator", resolver)
        scenario = small_scenario(trials=300, n_symbols=4)
        stats = run_trials(scenario, 10.0, scenario.estimators[0])
        assert stats.failed_trials == 2
        assert stats.std_dev_rad == 0.0

    def test_failure_rate_above_one_percent_raises(self, monkeypatch):
        def resolver(spec, c):
            def estimator(samples, ctx):
                raise DegenerateStatisticError("always fails")

            return estimator

        monkeypatch.setattr(harness, "_resolve_estimator", resolver)
        scenario = small_scenario(trials=100, n_symbols=4)
        with pytest.raises(TrialFailureRateError):
            run_trials(scenario, 10.0, scenario.estimators[0])


class TestSweep:
    def test_row_order_and_count(self):
        scenario = small_scenario(
            estimators=(
                EstimatorSpec("pmm", {"stages": 2, "phases": 10}),
                EstimatorSpec("ple"),
            ),
            trials=20,
        )
        report = sweep(scenario)
        assert len(report.rows) == 4
        assert [r.estimator for r in report.rows] == ["pmm", "pmm", "ple", "ple"]
        assert [r.snr_db for r in report.rows] == [10.0, 20.0, 10.0, 20.0]

    def test_csv_schema(self):
        scenario = small_scenario(trials=10)
        report = sweep(scenario)
        buf = io.StringIO()
        write_sweep_csv(report, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == SWEEP_CSV_HEADER
        assert len(lines) == 1 + len(report.rows)
        first = lines[1].split(",")
        assert first[0] == "qpsk"
        assert first[1] == "pmm"
        assert first[2:7] == ["4", "4", "32", "2", "10"]
        assert first[8] == "10"  # trials
        float(first[10]), float(first[11]), float(first[12])

    def test_ple_row_leaves_params_blank(self):
        scenario = small_scenario(estimators=(EstimatorSpec("ple"),), trials=10)
        report = sweep(scenario)
        buf = io.StringIO()
        write_sweep_csv(report, buf)
        fields = buf.getvalue().splitlines()[1].split(",")
        assert fields[5] == "" and fields[6] == ""

    def test_parallel_equals_serial(self):
        scenario = small_scenario(
            estimators=(
                EstimatorSpec("pmm", {"stages": 2, "phases": 10}),
                EstimatorSpec("mde", {"phases": 10}),
            ),
            trials=30,
        )
        serial = sweep(scenario, jobs=1)
        parallel = sweep(scenario, jobs=2)
        assert serial == parallel
        a, b = io.StringIO(), io.StringIO()
        write_sweep_csv(serial, a)
        write_sweep_csv(parallel, b)
        assert a.getvalue() == b.getvalue()


class TestFormatting:
    def test_nine_significant_digits(self):
        assert harness.format_number(0.00015625) == "0.00015625"
        assert harness.format_number(20.0) == "20"
        assert harness.format_number(1 / 3) == "0.333333333"
