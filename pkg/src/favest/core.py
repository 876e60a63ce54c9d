"""Shared types and index maps for spherical spectral data.

Complex coefficient tables are stored flat in degree-major order: the entry
for degree ``l`` and order ``m`` lives at index ``l*l + l + m``, so a table
resolved to degree ``lmax`` has ``(lmax + 1)**2`` entries.  Out-of-range
reads (|m| > l or l beyond the table) are defined to be zero; every
assembly loop in the package relies on that convention instead of special
casing boundary indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

FOUR_PI = 4.0 * np.pi

#: Quadrature rule kinds understood by the package.
RULE_KINDS = ("gl-tensor", "spherical-design", "custom")


def flat_index(l: int, m: int) -> int:
    """Return the flat position of (l, m) in degree-major coefficient order.

    Parameters
    ----------
    l : int
        Degree, ``l >= 0``.
    m : int
        Order with ``|m| <= l``.
    """
    if l < 0:
        raise ValueError(f"degree must be non-negative, got l={l}")
    if abs(m) > l:
        raise ValueError(f"order out of range: |m|={abs(m)} > l={l}")
    return l * l + l + m


def flat_size(lmax: int) -> int:
    """Number of (l, m) pairs with l <= lmax."""
    if lmax < 0:
        raise ValueError(f"lmax must be non-negative, got {lmax}")
    return (lmax + 1) ** 2


def degrees_orders(lmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Return integer arrays (ls, ms) listing (l, m) in flat order."""
    size = flat_size(lmax)
    ls = np.empty(size, dtype=np.int64)
    ms = np.empty(size, dtype=np.int64)
    for l in range(lmax + 1):
        sl = slice(l * l, (l + 1) ** 2)
        ls[sl] = l
        ms[sl] = np.arange(-l, l + 1)
    return ls, ms


def check_unit(points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Validate that points lie on the unit sphere; returns them as float64.

    Accepts a single point of shape (3,) or a batch of shape (N, 3).
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.shape[-1] != 3:
        raise ValueError(f"points must have trailing dimension 3, got shape {pts.shape}")
    norms = np.sqrt(np.sum(pts * pts, axis=-1))
    err = np.max(np.abs(norms - 1.0)) if norms.size else 0.0
    if err > tol:
        raise ValueError(f"points deviate from the unit sphere by {err:.3e} (tol {tol:.1e})")
    return pts


def to_spherical(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Convert unit Cartesian points to colatitude/longitude.

    Returns (theta, phi) with theta = arccos(z) in [0, pi] and
    phi = atan2(y, x) mapped into [0, 2*pi).  At the poles phi is 0.
    """
    pts = check_unit(points)
    theta = np.arccos(np.clip(pts[..., 2], -1.0, 1.0))
    phi = np.mod(np.arctan2(pts[..., 1], pts[..., 0]), 2.0 * np.pi)
    return theta, phi


def from_spherical(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Convert colatitude/longitude arrays to unit Cartesian points."""
    theta = np.asarray(theta, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


@dataclass
class ScalarCoefficients:
    """Flat table of scalar spherical harmonic coefficients up to ``lmax``.

    ``values`` is complex128 of length ``(lmax + 1)**2`` in degree-major
    order; treat instances as immutable after construction.
    """

    lmax: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.lmax < 0:
            raise ValueError(f"lmax must be non-negative, got {self.lmax}")
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (flat_size(self.lmax),):
            raise ValueError(
                f"expected {flat_size(self.lmax)} coefficients for lmax={self.lmax}, "
                f"got shape {vals.shape}"
            )
        self.values = vals

    @classmethod
    def zeros(cls, lmax: int) -> "ScalarCoefficients":
        return cls(lmax, np.zeros(flat_size(lmax), dtype=np.complex128))

    def get(self, l: int, m: int) -> complex:
        """Coefficient at (l, m); zero for any out-of-range pair."""
        if l < 0 or l > self.lmax or abs(m) > l:
            return 0.0 + 0.0j
        return complex(self.values[l * l + l + m])

    def copy(self) -> "ScalarCoefficients":
        return ScalarCoefficients(self.lmax, self.values.copy())


@dataclass
class VectorCoefficients:
    """Paired coefficient tables of a tangent field expansion.

    ``div`` holds the coefficients of the gradient-type family and ``curl``
    those of the rotational family, both with the same ``lmax``.  Degree
    zero carries no tangent harmonics, so both l=0 entries must be zero.
    """

    div: ScalarCoefficients
    curl: ScalarCoefficients

    def __post_init__(self) -> None:
        if self.div.lmax != self.curl.lmax:
            raise ValueError(
                f"div/curl tables disagree on lmax: {self.div.lmax} vs {self.curl.lmax}"
            )
        if self.div.lmax < 1:
            raise ValueError("vector coefficients need lmax >= 1")
        if abs(self.div.values[0]) != 0.0 or abs(self.curl.values[0]) != 0.0:
            raise ValueError("l=0 entries of vector coefficient tables must be zero")

    @property
    def lmax(self) -> int:
        return self.div.lmax

    @classmethod
    def zeros(cls, lmax: int) -> "VectorCoefficients":
        return cls(ScalarCoefficients.zeros(lmax), ScalarCoefficients.zeros(lmax))

    def copy(self) -> "VectorCoefficients":
        return VectorCoefficients(self.div.copy(), self.curl.copy())


@dataclass
class TangentFieldSamples:
    """Samples of a tangent vector field at unit-sphere points.

    ``points`` is (N, 3) float64, ``values`` is (N, 3) complex128 holding
    the three Cartesian components per point.
    """

    points: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        self.points = check_unit(np.atleast_2d(np.asarray(self.points, dtype=np.float64)))
        vals = np.atleast_2d(np.asarray(self.values, dtype=np.complex128))
        if vals.shape != self.points.shape:
            raise ValueError(
                f"values shape {vals.shape} does not match points shape {self.points.shape}"
            )
        self.values = vals

    def __len__(self) -> int:
        return self.points.shape[0]

    def max_normal_component(self) -> float:
        """Largest |values_k . points_k| over the sample set (bilinear dot)."""
        if len(self) == 0:
            return 0.0
        return float(np.max(np.abs(np.sum(self.values * self.points, axis=1))))

    def is_tangent(self, tol: float = 1e-8) -> bool:
        scale = 1.0 + (float(np.max(np.abs(self.values))) if len(self) else 0.0)
        return self.max_normal_component() <= tol * scale


@dataclass
class QuadratureRule:
    """Points and weights of a quadrature rule on the unit sphere.

    ``exactness`` is the polynomial degree the rule claims to integrate
    exactly; certification against that claim is a separate operation.
    ``grid`` carries the iso-latitude tensor structure when the rule has
    one, which is what enables the fast transform path.
    """

    points: np.ndarray
    weights: np.ndarray
    exactness: int
    kind: str = "custom"
    grid: "TensorGrid | None" = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.points = check_unit(np.atleast_2d(np.asarray(self.points, dtype=np.float64)))
        w = np.atleast_1d(np.asarray(self.weights, dtype=np.float64))
        if w.shape != (self.points.shape[0],):
            raise ValueError(
                f"weights shape {w.shape} does not match {self.points.shape[0]} points"
            )
        self.weights = w
        if self.kind not in RULE_KINDS:
            raise ValueError(f"unknown rule kind {self.kind!r}; expected one of {RULE_KINDS}")
        if self.exactness < 0:
            raise ValueError(f"claimed exactness must be non-negative, got {self.exactness}")
        total = float(np.sum(w))
        if abs(total - FOUR_PI) > 1e-8:
            raise ValueError(
                f"weights sum to {total:.12e}, expected 4*pi = {FOUR_PI:.12e} within 1e-8"
            )
        if self.kind == "spherical-design":
            expected = FOUR_PI / self.points.shape[0]
            if not np.allclose(w, expected, rtol=1e-12, atol=0.0):
                raise ValueError("spherical-design rules must have equal weights 4*pi/N")

    def __len__(self) -> int:
        return self.points.shape[0]
