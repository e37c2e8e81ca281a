"""Tests for constellation factories, hard decisions, and symmetry checks."""

import math

import numpy as np
import pytest

from phaserec.constellation import (
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

ALL_NAMES = list(NAMES)


class TestFactories:
    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_unit_energy_and_symmetry(self, name):
        """Every factory output has unit average energy and verified symmetry."""
        c = by_name(name)
        energy = float(np.mean(np.abs(c.points) ** 2))
        assert abs(energy - 1.0) <= 1e-12
        assert verify_symmetry(c)

    def test_qpsk_is_diagonal(self):
        """make_psk(4) puts the four points at (+-1 +-1j)/sqrt(2)."""
        c = make_psk(4)
        expected = {
            complex(s * (1 / math.sqrt(2)), t * (1 / math.sqrt(2)))
            for s in (1, -1)
            for t in (1, -1)
        }
        for p in c.points:
            assert min(abs(p - e) for e in expected) < 1e-12
        assert c.symmetry_order == 4

    def test_psk_order_is_increasing_angle(self):
        c = make_psk(8)
        angles = np.angle(c.points) % (2 * np.pi)
        assert np.allclose(angles, np.pi / 8 + np.arange(8) * np.pi / 4)
        assert np.allclose(np.abs(c.points), 1.0)

    def test_psk_too_small_raises(self):
        with pytest.raises(ValueError):
            make_psk(1)

    def test_v29_raw_energy(self):
        """Rescaling the normalized points by sqrt(13.5) restores raw energy 13.5."""
        c = make_v29()
        raw = c.points * math.sqrt(13.5)
        assert float(np.mean(np.abs(raw) ** 2)) == pytest.approx(13.5, abs=1e-12)
        assert c.size == 16
        assert c.symmetry_order == 4

    def test_v29_quarter_turn_permutes_raw_list(self):
        """Multiplying each raw point by j reproduces the raw point set."""
        c = make_v29()
        raw = c.points * math.sqrt(13.5)
        rotated = raw * 1j
        for z in rotated:
            assert min(abs(z - raw)) < 1e-9

    def test_qam16_scale(self):
        """Raw 16-QAM grid energy is 10, so the factory scales by 1/sqrt(10)."""
        c = make_square_qam(16)
        raw = c.points * math.sqrt(10.0)
        grid = sorted(round(v) for v in raw.real.tolist())
        assert grid == sorted([-3, -1, 1, 3] * 4)
        assert np.allclose(raw.real, np.round(raw.real), atol=1e-9)

    def test_qam4_equals_qpsk_point_set(self):
        qam = make_square_qam(4)
        psk = make_psk(4)
        for p in qam.points:
            assert min(abs(p - psk.points)) < 1e-12

    def test_qam_unsupported_size_raises(self):
        with pytest.raises(ValueError):
            make_square_qam(32)

    def test_by_name_unknown_raises(self):
        with pytest.raises(ValueError):
            by_name("qam128")


class TestNearestPoint:
    def test_exact_point_is_identity(self):
        c = by_name("v29")
        for i, p in enumerate(c.points):
            idx, point, sq = nearest_point(c, p)
            assert idx == i
            assert sq == 0.0

    def test_offset_sample(self):
        """z = 0.9 + 0.1j decides to (1+j)/sqrt(2); distance checked by scan."""
        c = make_psk(4)
        idx, point, sq = nearest_point(c, 0.9 + 0.1j)
        # oracle: exhaustive scan with the same distance formula
        d = (0.9 + 0.1j) - c.points
        dists = d.real**2 + d.imag**2
        assert sq == float(np.min(dists))
        assert idx == int(np.argmin(dists))
        assert point == pytest.approx(complex(1, 1) / math.sqrt(2), abs=1e-12)
        assert sq == pytest.approx(0.4057864376269049, abs=1e-12)

    def test_origin_tie_breaks_to_lowest_index(self):
        c = make_psk(4)
        idx, _, _ = nearest_point(c, 0j)
        assert idx == 0

    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_matches_exhaustive_scan(self, name):
        c = by_name(name)
        rng = np.random.default_rng(1234)
        for z in rng.normal(size=50) + 1j * rng.normal(size=50):
            idx, point, sq = nearest_point(c, z)
            d = z - c.points
            dists = d.real**2 + d.imag**2
            assert sq == float(np.min(dists))
            assert idx == int(np.argmin(dists))

    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_rotation_consistency(self, name):
        """Rotating z by a full symmetry step leaves the decision distance alone."""
        c = by_name(name)
        rng = np.random.default_rng(99)
        step = np.exp(2j * np.pi / c.symmetry_order)
        for z in rng.normal(size=30) + 1j * rng.normal(size=30):
            _, _, sq = nearest_point(c, z)
            _, _, sq_rot = nearest_point(c, z * step)
            assert abs(sq - sq_rot) < 1e-9

    def test_vectorized_matches_scalar(self):
        c = by_name("qam16")
        rng = np.random.default_rng(5)
        z = rng.normal(size=40) + 1j * rng.normal(size=40)
        idx = nearest_indices(c, z)
        for k in range(z.size):
            assert idx[k] == nearest_point(c, z[k])[0]

    def test_non_finite_input_raises(self):
        c = make_psk(4)
        with pytest.raises(ValueError):
            nearest_point(c, complex(np.nan, 0.0))
        with pytest.raises(ValueError):
            nearest_indices(c, np.array([1.0, np.inf]) + 0j)


class TestSymmetryChecks:
    def test_missing_point_fails(self):
        """{1, j, -1} is not pi/2-rotation invariant: -j is missing."""
        assert not rotation_invariant(np.array([1, 1j, -1]), 4)

    def test_psk_rotation_invariant(self):
        assert rotation_invariant(make_psk(8).points, 8)

    def test_constructor_rejects_broken_symmetry(self):
        pts = np.array([1, 1j, -1]) / math.sqrt(1.0)
        with pytest.raises(ValueError):
            Constellation(points=pts, symmetry_order=4, label="bad")

    def test_constructor_rejects_bad_energy(self):
        with pytest.raises(ValueError):
            Constellation(
                points=np.array([2.0, 2j, -2.0, -2j]), symmetry_order=4, label="hot"
            )

    def test_constructor_rejects_duplicates(self):
        pts = np.array([1, 1, -1, -1]) + 0j
        with pytest.raises(ValueError):
            Constellation(points=pts, symmetry_order=2, label="dup")

    def test_points_are_read_only(self):
        c = make_psk(4)
        with pytest.raises(ValueError):
            c.points[0] = 0
