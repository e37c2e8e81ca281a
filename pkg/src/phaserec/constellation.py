"""Unit-energy signal constellations with verified rotational symmetry.

Every constellation built here has unit average symbol energy and is
invariant under rotation by ``2*pi/M`` for its declared symmetry order
``M``. Any blind phase estimate over such a constellation is therefore
only meaningful modulo ``2*pi/M``; the estimators in this package all
report phases canonicalized into ``[0, 2*pi/M)``.

Supported shapes: M-ary PSK on the unit circle, square QAM grids, and
the 16-point CCITT V.29 modem constellation (pi/2 rotational symmetry).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Absolute tolerance on the unit-average-energy invariant.
ENERGY_TOL = 1e-12
#: Euclidean tolerance used by the rotation-invariance set matching.
SYMMETRY_TOL = 1e-9

# CCITT V.29 points in listing order (each value followed by its negation).
# Raw average symbol energy is 13.5; the factory normalizes to unit energy.
_V29_RAW = np.array(
    [
        1 + 1j, -1 - 1j,
        3 + 3j, -3 - 3j,
        -1 + 1j, 1 - 1j,
        -3 + 3j, 3 - 3j,
        3, -3,
        5, -5,
        3j, -3j,
        5j, -5j,
    ],
    dtype=np.complex128,
)

_QAM_SIZES = (4, 16, 64)

#: Constellation names accepted at config/CLI boundaries.
NAMES = ("qpsk", "8psk", "16psk", "v29", "qam16", "qam64")


@dataclass(frozen=True)
class Constellation:
    """An ordered, unit-energy point set with 2*pi/M rotational symmetry.

    Attributes
    ----------
    points : np.ndarray
        Complex points, shape ``(L,)`` with ``L >= 2``. Read-only after
        construction.
    symmetry_order : int
        Smallest declared order ``M >= 2`` such that rotating the set by
        ``2*pi/M`` reproduces it.
    label : str
        Identifier used in CSV output and CLI selection.

    Raises
    ------
    ValueError
        If the points are not finite, not unit average energy (within
        ``ENERGY_TOL``), not pairwise distinct, or not invariant under
        rotation by ``2*pi/symmetry_order`` (within ``SYMMETRY_TOL``).
    """

    points: np.ndarray
    symmetry_order: int
    label: str

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=np.complex128)
        if points.ndim != 1 or points.size < 2:
            raise ValueError("constellation needs at least 2 points")
        if not int(self.symmetry_order) >= 2:
            raise ValueError("symmetry_order must be an integer >= 2")
        if not np.all(np.isfinite(points.real)) or not np.all(np.isfinite(points.imag)):
            raise ValueError("constellation points must be finite")
        energy = float(np.mean(points.real**2 + points.imag**2))
        if abs(energy - 1.0) > ENERGY_TOL:
            raise ValueError(f"average energy {energy!r} is not 1 within {ENERGY_TOL}")
        dist = np.abs(points[:, None] - points[None, :])
        np.fill_diagonal(dist, np.inf)
        if float(dist.min()) <= SYMMETRY_TOL:
            raise ValueError("constellation points must be pairwise distinct")
        if not rotation_invariant(points, self.symmetry_order):
            raise ValueError(
                f"point set is not invariant under rotation by 2*pi/{self.symmetry_order}"
            )
        points.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "symmetry_order", int(self.symmetry_order))

    @property
    def size(self) -> int:
        """Number of points L."""
        return int(self.points.size)

    @property
    def period(self) -> float:
        """Phase ambiguity period 2*pi/M in radians."""
        return 2.0 * np.pi / self.symmetry_order


def rotation_invariant(points, order: int, tol: float = SYMMETRY_TOL) -> bool:
    """Check whether rotating ``points`` by ``2*pi/order`` permutes the set.

    Pure predicate: returns False instead of raising, so it can be used
    to probe arbitrary candidate point sets.
    """
    pts = np.asarray(points, dtype=np.complex128)
    if pts.ndim != 1 or pts.size == 0 or order < 1:
        return False
    rotated = pts * np.exp(2j * np.pi / order)
    dist = np.abs(rotated[:, None] - pts[None, :])
    matched = dist.argmin(axis=1)
    if not bool(np.all(dist[np.arange(pts.size), matched] <= tol)):
        return False
    # The match must be a permutation, or two rotated points collapsed.
    return len(set(matched.tolist())) == pts.size


def verify_symmetry(c: Constellation) -> bool:
    """True iff ``c.points`` maps onto itself under rotation by ``c.period``."""
    return rotation_invariant(c.points, c.symmetry_order)


def make_psk(size: int) -> Constellation:
    """L-ary PSK on the unit circle, diagonal convention.

    Points sit at angles ``pi/L + k*2*pi/L`` in increasing-angle order,
    so no point lies on the positive real axis and ``make_psk(4)`` equals
    the 4-QAM grid ``(+-1 +-1j)/sqrt(2)``. Symmetry order is ``L``.

    Parameters
    ----------
    size : int
        Number of points L, at least 2.
    """
    if size < 2:
        raise ValueError("PSK size must be >= 2")
    angles = np.pi / size + 2.0 * np.pi * np.arange(size) / size
    points = np.exp(1j * angles)
    label = "qpsk" if size == 4 else f"{size}psk"
    return Constellation(points=points, symmetry_order=size, label=label)


def make_v29() -> Constellation:
    """The 16-point V.29 constellation, normalized to unit average energy.

    The raw point set has average symbol energy 13.5 and pi/2 rotational
    symmetry (symmetry order 4). Point order follows the conventional
    listing, each point immediately followed by its negation.
    """
    points = _V29_RAW / math.sqrt(13.5)
    return Constellation(points=points, symmetry_order=4, label="v29")


def make_square_qam(size: int) -> Constellation:
    """Square L-QAM on the odd-integer grid, normalized to unit energy.

    Points are laid out row-major (imaginary part descending, real part
    ascending) on the grid ``{+-1, +-3, ...}^2`` and scaled to unit
    average energy. Symmetry order is 4.

    Parameters
    ----------
    size : int
        One of 4, 16, 64.
    """
    if size not in _QAM_SIZES:
        raise ValueError(f"unsupported square QAM size {size}; choose from {_QAM_SIZES}")
    side = math.isqrt(size)
    coords = np.arange(-side + 1, side, 2)
    raw = np.array(
        [re + 1j * im for im in coords[::-1] for re in coords], dtype=np.complex128
    )
    scale = math.sqrt(float(np.mean(raw.real**2 + raw.imag**2)))
    return Constellation(points=raw / scale, symmetry_order=4, label=f"qam{size}")


def by_name(name: str) -> Constellation:
    """Build the constellation selected by one of the canonical names."""
    key = name.strip().lower()
    if key == "qpsk":
        return make_psk(4)
    if key == "8psk":
        return make_psk(8)
    if key == "16psk":
        return make_psk(16)
    if key == "v29":
        return make_v29()
    if key == "qam16":
        return make_square_qam(16)
    if key == "qam64":
        return make_square_qam(64)
    raise ValueError(f"unknown constellation {name!r}; choose from {', '.join(NAMES)}")


def nearest_point(c: Constellation, z: complex) -> tuple[int, complex, float]:
    """Hard decision: the constellation point nearest to ``z``.

    Returns ``(index, point, sq_dist)`` where ``sq_dist`` is the exact
    minimum squared Euclidean distance over all points. Ties break
    toward the lowest point index, so decisions are deterministic.

    Raises
    ------
    ValueError
        If ``z`` is not finite.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("input sample must be finite")
    d = z - c.points
    sq = d.real**2 + d.imag**2
    idx = int(np.argmin(sq))
    return idx, complex(c.points[idx]), float(sq[idx])


def nearest_indices(c: Constellation, z: np.ndarray) -> np.ndarray:
    """Vectorized hard decisions for an array of complex samples.

    Same distance and tie-break rule as :func:`nearest_point`, applied
    elementwise. Returns an int array of point indices with the shape of
    ``z``.
    """
    z = np.asarray(z, dtype=np.complex128)
    if not np.all(np.isfinite(z.real)) or not np.all(np.isfinite(z.imag)):
        raise ValueError("input samples must be finite")
    d = z[..., None] - c.points
    sq = d.real**2 + d.imag**2
    return np.argmin(sq, axis=-1)
