"""Fully normalized associated Legendre functions and spherical harmonics.

All evaluations work in the normalized basis directly: ``Pbar(l, m, t)``
absorbs ``sqrt((2l+1)/(4pi) * (l-m)!/(l+m)!)`` and the Condon-Shortley
phase, so the complex harmonics are::

    Y(l, m) = Pbar(l, m, cos(theta)) * exp(i*m*phi)          for m >= 0
    Y(l, -m) = (-1)**m * conj(Y(l, m))

Running the three-term recurrences on the normalized values keeps every
intermediate bounded by ``sqrt((2l+1)/(4pi))``; evaluating raw ``P_l^m``
and rescaling afterwards overflows near degree 150, which the certified
quadrature degrees here exceed in product form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FOUR_PI, check_unit, degrees_orders, to_spherical

_INV_SQRT_4PI = 1.0 / np.sqrt(FOUR_PI)


def tri_index(l: int, m: int) -> int:
    """Position of (l, m >= 0) in the packed triangular layout."""
    return l * (l + 1) // 2 + m


def tri_size(lmax: int) -> int:
    return (lmax + 1) * (lmax + 2) // 2


def legendre_table(lmax: int, t: np.ndarray) -> np.ndarray:
    """Normalized associated Legendre values for all 0 <= m <= l <= lmax.

    Parameters
    ----------
    lmax : int
        Largest degree to evaluate.
    t : array
        Arguments in [-1, 1]; values within 1e-12 outside are clipped.

    Returns
    -------
    array of shape ``t.shape + (tri_size(lmax),)`` with column
    ``tri_index(l, m)`` holding ``Pbar(l, m, t)``.
    """
    if lmax < 0:
        raise ValueError(f"lmax must be non-negative, got {lmax}")
    t = np.asarray(t, dtype=np.float64)
    if t.size and (np.max(t) > 1.0 + 1e-12 or np.min(t) < -1.0 - 1e-12):
        raise ValueError("Legendre argument outside [-1, 1]")
    t = np.clip(t, -1.0, 1.0)
    s = np.sqrt(np.maximum(0.0, 1.0 - t * t))

    out = np.empty(t.shape + (tri_size(lmax),), dtype=np.float64)
    out[..., 0] = _INV_SQRT_4PI
    # Diagonal seed, then one off-diagonal step, then upward in l at fixed m.
    for m in range(1, lmax + 1):
        out[..., tri_index(m, m)] = (
            -np.sqrt((2 * m + 1) / (2.0 * m)) * s * out[..., tri_index(m - 1, m - 1)]
        )
    for m in range(lmax):
        out[..., tri_index(m + 1, m)] = np.sqrt(2 * m + 3.0) * t * out[..., tri_index(m, m)]
    for m in range(lmax - 1):
        for l in range(m + 2, lmax + 1):
            a = np.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = np.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            out[..., tri_index(l, m)] = a * (
                t * out[..., tri_index(l - 1, m)] - b * out[..., tri_index(l - 2, m)]
            )
    return out


@dataclass
class LegendreBlock:
    """All normalized Legendre values at a single argument.

    ``values[tri_index(l, m)]`` holds ``Pbar(l, m, t)`` for 0 <= m <= l <= lmax.
    """

    lmax: int
    t: float
    values: np.ndarray

    def get(self, l: int, m: int) -> float:
        if m < 0 or m > l or l > self.lmax:
            return 0.0
        return float(self.values[tri_index(l, m)])


def legendre_block(lmax: int, t: float) -> LegendreBlock:
    """Evaluate every ``Pbar(l, m, t)`` with l <= lmax at one argument."""
    values = legendre_table(lmax, np.asarray([t]))[0]
    return LegendreBlock(lmax=lmax, t=float(t), values=values)


def _order_signs(ms: np.ndarray) -> np.ndarray:
    # Y(l, m<0) = (-1)**m * Pbar(l, |m|) * exp(i*m*phi); positive orders carry +1.
    return np.where(ms >= 0, 1.0, np.where(np.abs(ms) % 2 == 0, 1.0, -1.0))


def ylm_table(lmax: int, points: np.ndarray) -> np.ndarray:
    """Complex harmonics Y(l, m) for all l <= lmax at each point.

    Returns an (N, (lmax+1)**2) complex array in degree-major column order.
    The caller is responsible for chunking over points when the table
    would be too large to hold at once.
    """
    pts = check_unit(np.atleast_2d(np.asarray(points, dtype=np.float64)))
    theta_unused, phi = to_spherical(pts)
    del theta_unused
    p = legendre_table(lmax, pts[:, 2])

    ls, ms = degrees_orders(lmax)
    tri = ls * (ls + 1) // 2 + np.abs(ms)
    # exp(i*m*phi) for m = -lmax..lmax, then gathered per flat column.
    orders = np.arange(-lmax, lmax + 1)
    phase = np.exp(1j * np.outer(phi, orders))
    return _order_signs(ms) * p[:, tri] * phase[:, ms + lmax]


def ylm_row(lmax: int, point: np.ndarray) -> np.ndarray:
    """All Y(l, m) with l <= lmax at one point, flat degree-major order."""
    return ylm_table(lmax, np.asarray(point, dtype=np.float64)[None, :])[0]


def eval_ylm(l: int, m: int, points: np.ndarray) -> np.ndarray:
    """Single harmonic Y(l, m) at one point or a batch of points.

    Out-of-range orders (|m| > l) evaluate to zero, matching the
    coefficient-table convention.
    """
    if l < 0:
        raise ValueError(f"degree must be non-negative, got l={l}")
    single = np.asarray(points).ndim == 1
    pts = check_unit(np.atleast_2d(np.asarray(points, dtype=np.float64)))
    if abs(m) > l:
        out = np.zeros(pts.shape[0], dtype=np.complex128)
        return out[0] if single else out

    am = abs(m)
    t = pts[:, 2]
    s = np.sqrt(np.maximum(0.0, 1.0 - t * t))
    pmm = np.full(pts.shape[0], _INV_SQRT_4PI)
    for k in range(1, am + 1):
        pmm = -np.sqrt((2 * k + 1) / (2.0 * k)) * s * pmm
    if l == am:
        plm = pmm
    else:
        prev = pmm
        plm = np.sqrt(2 * am + 3.0) * t * pmm
        for k in range(am + 2, l + 1):
            a = np.sqrt((4.0 * k * k - 1.0) / (k * k - am * am))
            b = np.sqrt(((k - 1.0) ** 2 - am * am) / (4.0 * (k - 1.0) ** 2 - 1.0))
            plm, prev = a * (t * plm - b * prev), plm

    phi = np.mod(np.arctan2(pts[:, 1], pts[:, 0]), 2.0 * np.pi)
    sign = 1.0 if (m >= 0 or am % 2 == 0) else -1.0
    out = sign * plm * np.exp(1j * m * phi)
    return out[0] if single else out
