"""Pointwise vector spherical harmonics and the direct vector transforms.

The two tangent families are assembled from scalar harmonics at coupled
degrees: the div family mixes degrees l-1 and l+1 through the c/d branch
weights, the curl family stays at degree l with a factor i.  Writing the
spin components out in the Cartesian basis gives, per family,

    comp1 = -(B(+1) - B(-1)) / sqrt(2)
    comp2 = -i (B(+1) + B(-1)) / sqrt(2)
    comp3 = B(0)

These direct evaluations are the reference route: the fast transforms must
reproduce them exactly (they are the same finite sums reorganized), which
is what the equivalence tests pin down.  Direct transforms cost O(N L^2)
with a per-degree constant and exist for validation, not speed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    QuadratureRule,
    ScalarCoefficients,
    TangentFieldSamples,
    VectorCoefficients,
    check_unit,
    flat_size,
)
from .coupling import cg_explicit, coupling_weight_c, coupling_weight_d
from .legendre import ylm_table

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass
class VshValue:
    """Cartesian values of the two harmonics at one or many points."""

    div: np.ndarray
    curl: np.ndarray


def _column(table: np.ndarray, lmax: int, l: int, m: int) -> np.ndarray:
    if l < 0 or l > lmax or abs(m) > l:
        return np.zeros(table.shape[0], dtype=np.complex128)
    return table[:, l * l + l + m]


def _bd_from_table(l: int, m: int, table: np.ndarray, lmax: int) -> tuple[np.ndarray, ...]:
    """(B+1, B0, B-1, D+1, D0, D-1) of harmonic (l, m) from a Y table."""
    c = coupling_weight_c(l)
    d = coupling_weight_d(l)
    return (
        c * cg_explicit(-1, 1, l, m) * _column(table, lmax, l - 1, m - 1)
        + d * cg_explicit(1, 1, l, m) * _column(table, lmax, l + 1, m - 1),
        c * cg_explicit(-1, 0, l, m) * _column(table, lmax, l - 1, m)
        + d * cg_explicit(1, 0, l, m) * _column(table, lmax, l + 1, m),
        c * cg_explicit(-1, -1, l, m) * _column(table, lmax, l - 1, m + 1)
        + d * cg_explicit(1, -1, l, m) * _column(table, lmax, l + 1, m + 1),
        1j * cg_explicit(0, 1, l, m) * _column(table, lmax, l, m - 1),
        1j * cg_explicit(0, 0, l, m) * _column(table, lmax, l, m),
        1j * cg_explicit(0, -1, l, m) * _column(table, lmax, l, m + 1),
    )


def _spin_to_cartesian(plus: np.ndarray, zero: np.ndarray, minus: np.ndarray) -> np.ndarray:
    return np.stack(
        [-_INV_SQRT2 * (plus - minus), -1j * _INV_SQRT2 * (plus + minus), zero],
        axis=-1,
    )


def _families_from_table(l: int, m: int, table: np.ndarray, lmax: int) -> tuple[np.ndarray, np.ndarray]:
    """(div, curl) values of harmonic (l, m), each (N, 3), from a Y table."""
    b_plus, b_zero, b_minus, d_plus, d_zero, d_minus = _bd_from_table(l, m, table, lmax)
    return _spin_to_cartesian(b_plus, b_zero, b_minus), _spin_to_cartesian(d_plus, d_zero, d_minus)


def eval_bd(l: int, m: int, points: np.ndarray) -> tuple[np.ndarray, ...]:
    """The six spin-component coefficient functions at the given points.

    Returns (B+1, B0, B-1, D+1, D0, D-1), each complex over the points.
    """
    if l < 1 or abs(m) > l:
        raise ValueError(f"need l >= 1 and |m| <= l, got (l, m) = ({l}, {m})")
    single = np.asarray(points).ndim == 1
    pts = check_unit(np.atleast_2d(np.asarray(points, dtype=np.float64)))
    parts = _bd_from_table(l, m, ylm_table(l + 1, pts), l + 1)
    return tuple(p[0] if single else p for p in parts)


def eval_vsh(l: int, m: int, points: np.ndarray) -> VshValue:
    """Evaluate both tangent harmonics of index (l, m) at the given points."""
    if l < 1 or abs(m) > l:
        raise ValueError(f"need l >= 1 and |m| <= l, got (l, m) = ({l}, {m})")
    single = np.asarray(points).ndim == 1
    pts = check_unit(np.atleast_2d(np.asarray(points, dtype=np.float64)))
    div, curl = _families_from_table(l, m, ylm_table(l + 1, pts), l + 1)
    if single:
        return VshValue(div=div[0], curl=curl[0])
    return VshValue(div=div, curl=curl)


def forward_vsht_direct(
    samples: TangentFieldSamples, rule: QuadratureRule, lmax: int
) -> VectorCoefficients:
    """Vector coefficients by direct quadrature against each harmonic.

    Computes a(l, m) = sum_k w_k conj(ydiv(l, m, x_k)) . T_k and the curl
    analogue for every 1 <= l <= lmax, |m| <= l.
    """
    if lmax < 1:
        raise ValueError(f"vector transforms need lmax >= 1, got {lmax}")
    if samples.points.shape != rule.points.shape or not np.allclose(
        samples.points, rule.points, rtol=0.0, atol=1e-12
    ):
        raise ValueError("sample points do not match the quadrature rule points")
    table = ylm_table(lmax + 1, rule.points)
    weighted = rule.weights[:, None] * samples.values
    a = np.zeros(flat_size(lmax), dtype=np.complex128)
    b = np.zeros(flat_size(lmax), dtype=np.complex128)
    for l in range(1, lmax + 1):
        for m in range(-l, l + 1):
            div, curl = _families_from_table(l, m, table, lmax + 1)
            k = l * l + l + m
            a[k] = np.sum(div.conj() * weighted)
            b[k] = np.sum(curl.conj() * weighted)
    return VectorCoefficients(ScalarCoefficients(lmax, a), ScalarCoefficients(lmax, b))


def adjoint_vsht_direct(coeffs: VectorCoefficients, points: np.ndarray) -> TangentFieldSamples:
    """Synthesize the tangent field sum of a(l,m) ydiv + b(l,m) ycurl."""
    pts = check_unit(np.atleast_2d(np.asarray(points, dtype=np.float64)))
    lmax = coeffs.lmax
    table = ylm_table(lmax + 1, pts)
    out = np.zeros((pts.shape[0], 3), dtype=np.complex128)
    for l in range(1, lmax + 1):
        for m in range(-l, l + 1):
            k = l * l + l + m
            a = coeffs.div.values[k]
            b = coeffs.curl.values[k]
            if a == 0.0 and b == 0.0:
                continue
            div, curl = _families_from_table(l, m, table, lmax + 1)
            out += a * div + b * curl
    return TangentFieldSamples(points=pts, values=out)
