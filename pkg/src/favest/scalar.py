"""Scalar spherical harmonic transforms: direct sums and the fast grid path.

The forward transform computes quadrature approximations of the Fourier
coefficients,

    F(l, m) = sum_k w_k f_k conj(Y(l, m, x_k)),

and the adjoint evaluates the partial sum S(g; x) = sum_{l,m} g_{l,m} Y(l,m,x).
The direct variants accept arbitrary points; the fast variants require an
iso-latitude tensor grid and replace the longitudinal sums by FFTs, with the
per-ring convention F_m = (2pi/n_phi) * sum_j f_j exp(-i*m*phi_j) absorbed
into the ring weights.  Orders above the grid's Nyquist limit alias (m and
m - n_phi share a DFT bin), hence the n_phi >= 2L+1 precondition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import QuadratureRule, ScalarCoefficients, degrees_orders, flat_size, from_spherical
from .legendre import legendre_table, ylm_table

#: Target entries per chunked harmonic table; keeps peak memory modest.
_CHUNK_ENTRIES = 1 << 21


@dataclass
class TensorGrid:
    """Iso-latitude tensor product grid.

    ``ring_thetas`` are strictly increasing colatitudes in (0, pi);
    ``ring_weights`` are per-point weights, already including the 2pi/n_phi
    longitudinal factor; each ring carries ``n_phi`` equispaced longitudes
    ``phi_j = 2*pi*j/n_phi``.  Points enumerate ring-major.
    """

    ring_thetas: np.ndarray
    ring_weights: np.ndarray
    n_phi: int

    def __post_init__(self) -> None:
        th = np.atleast_1d(np.asarray(self.ring_thetas, dtype=np.float64))
        w = np.atleast_1d(np.asarray(self.ring_weights, dtype=np.float64))
        if th.ndim != 1 or th.shape != w.shape:
            raise ValueError("ring_thetas and ring_weights must be matching 1-d arrays")
        if th.size == 0:
            raise ValueError("grid needs at least one ring")
        if np.any(th <= 0.0) or np.any(th >= np.pi):
            raise ValueError("ring colatitudes must lie strictly inside (0, pi)")
        if np.any(np.diff(th) <= 0.0):
            raise ValueError("ring colatitudes must be strictly increasing")
        if self.n_phi < 1:
            raise ValueError(f"n_phi must be positive, got {self.n_phi}")
        self.ring_thetas = th
        self.ring_weights = w

    @property
    def n_theta(self) -> int:
        return self.ring_thetas.size

    def __len__(self) -> int:
        return self.n_theta * self.n_phi

    @property
    def phis(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_phi) / self.n_phi

    def points(self) -> np.ndarray:
        """All grid points, ring-major, shape (n_theta * n_phi, 3)."""
        theta = np.repeat(self.ring_thetas, self.n_phi)
        phi = np.tile(self.phis, self.n_theta)
        return from_spherical(theta, phi)

    def to_rule(self, exactness: int, kind: str = "gl-tensor") -> QuadratureRule:
        """Flatten into a point/weight rule that remembers its grid."""
        return QuadratureRule(
            points=self.points(),
            weights=np.repeat(self.ring_weights, self.n_phi),
            exactness=exactness,
            kind=kind,
            grid=self,
        )


def _check_samples(f: np.ndarray, n: int) -> np.ndarray:
    vals = np.asarray(f, dtype=np.complex128)
    if vals.shape[0] != n or vals.ndim not in (1, 2):
        raise ValueError(f"sample array of shape {vals.shape} does not match {n} points")
    return vals


def _forward_direct_values(f: np.ndarray, rule: QuadratureRule, lmax: int) -> np.ndarray:
    """Accumulate sum_k w_k f_k conj(Y) in point chunks; f may be (N,) or (N, c)."""
    vals = _check_samples(f, len(rule))
    wf = rule.weights[:, None] * np.atleast_2d(vals.T).T
    size = flat_size(lmax)
    out = np.zeros((size,) + wf.shape[1:], dtype=np.complex128)
    chunk = max(16, _CHUNK_ENTRIES // size)
    for start in range(0, len(rule), chunk):
        stop = min(start + chunk, len(rule))
        y = ylm_table(lmax, rule.points[start:stop])
        out += y.conj().T @ wf[start:stop]
    return out if vals.ndim == 2 else out[:, 0]


def forward_sht_direct(f: np.ndarray, rule: QuadratureRule, lmax: int) -> ScalarCoefficients:
    """Forward scalar transform by direct summation over arbitrary points."""
    if lmax < 0:
        raise ValueError(f"lmax must be non-negative, got {lmax}")
    return ScalarCoefficients(lmax, _forward_direct_values(f, rule, lmax))


def adjoint_sht_direct(coeffs: ScalarCoefficients, points: np.ndarray) -> np.ndarray:
    """Evaluate the harmonic partial sum at arbitrary points."""
    return _adjoint_direct_values(coeffs.values[:, None], coeffs.lmax, points)[:, 0]


def _adjoint_direct_values(values: np.ndarray, lmax: int, points: np.ndarray) -> np.ndarray:
    """Adjoint sum for a stack of coefficient columns; values is (size, c)."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    out = np.zeros((pts.shape[0], values.shape[1]), dtype=np.complex128)
    chunk = max(16, _CHUNK_ENTRIES // flat_size(lmax))
    for start in range(0, pts.shape[0], chunk):
        stop = min(start + chunk, pts.shape[0])
        out[start:stop] = ylm_table(lmax, pts[start:stop]) @ values
    return out


def _grid_tables(grid: TensorGrid, lmax: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    ls, ms = degrees_orders(lmax)
    p = legendre_table(lmax, np.cos(grid.ring_thetas))
    tri = ls * (ls + 1) // 2 + np.abs(ms)
    signs = np.where(ms >= 0, 1.0, np.where(np.abs(ms) % 2 == 0, 1.0, -1.0))
    return ls, ms, p[:, tri], signs


def _require_bandwidth(grid: TensorGrid, lmax: int) -> None:
    if grid.n_phi < 2 * lmax + 1:
        raise ValueError(
            f"fast path needs n_phi >= 2*lmax+1 = {2 * lmax + 1}, grid has n_phi={grid.n_phi}"
        )


def _forward_fast_values(f: np.ndarray, grid: TensorGrid, lmax: int) -> np.ndarray:
    vals = _check_samples(f, len(grid))
    stacked = np.atleast_2d(vals.T).T.reshape(grid.n_theta, grid.n_phi, -1)
    spectrum = np.fft.fft(stacked, axis=1)  # ring DFT: sum_j f_j exp(-2pi i j m / n_phi)
    _, ms, p_cols, signs = _grid_tables(grid, lmax)
    gathered = spectrum[:, np.mod(ms, grid.n_phi), :]
    weighted = grid.ring_weights[:, None, None] * gathered
    out = signs[:, None] * np.einsum("rk,rkc->kc", p_cols, weighted)
    return out if vals.ndim == 2 else out[:, 0]


def forward_sht_fast(f: np.ndarray, grid: TensorGrid, lmax: int) -> ScalarCoefficients:
    """Forward scalar transform on a tensor grid via per-ring FFTs.

    Requires ``grid.n_phi >= 2*lmax + 1`` so that no retained order falls
    on an aliased DFT bin.  Matches :func:`forward_sht_direct` on the
    flattened rule to rounding error.
    """
    if lmax < 0:
        raise ValueError(f"lmax must be non-negative, got {lmax}")
    _require_bandwidth(grid, lmax)
    return ScalarCoefficients(lmax, _forward_fast_values(f, grid, lmax))


def _adjoint_fast_values(values: np.ndarray, lmax: int, grid: TensorGrid) -> np.ndarray:
    _require_bandwidth(grid, lmax)
    _, ms, p_cols, signs = _grid_tables(grid, lmax)
    cols = signs[:, None] * values
    spectrum = np.zeros((grid.n_theta, grid.n_phi, cols.shape[1]), dtype=np.complex128)
    for m in range(-lmax, lmax + 1):
        sel = ms == m
        spectrum[:, m % grid.n_phi, :] = p_cols[:, sel] @ cols[sel]
    out = np.fft.ifft(spectrum, axis=1) * grid.n_phi
    return out.reshape(len(grid), cols.shape[1])


def adjoint_sht_fast(coeffs: ScalarCoefficients, grid: TensorGrid) -> np.ndarray:
    """Evaluate the harmonic partial sum on a tensor grid via FFTs."""
    return _adjoint_fast_values(coeffs.values[:, None], coeffs.lmax, grid)[:, 0]
