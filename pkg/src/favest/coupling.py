"""Clebsch-Gordan coefficients coupling degree 1 and the transform tables.

Every coefficient the transforms need couples some (j1, m1) with a spin-1
index: C(l, m | j1, m1, 1, m2) with j1 in {l-1, l, l+1} and m1 = m - m2.
Nine closed forms cover all of them; ``cg_explicit`` selects by the offset
pair (j1 - l, m2).  A coefficient whose arguments violate |m| <= l,
|m1| <= j1, or j1 >= 0 is zero by convention: assembly code reads tables
at shifted indices and relies on those zeros instead of branching at
boundaries (the range-validity rule).

``wigner_3j`` is the independent check oracle (Racah's single-sum formula
with log-factorial accumulation); production paths never call it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lgamma

import numpy as np

from .core import ScalarCoefficients, VectorCoefficients, degrees_orders, flat_size


def coupling_weight_c(l: int) -> float:
    """Weight sqrt((l+1)/(2l+1)) of the degree-(l-1) branch."""
    if l < 0:
        raise ValueError(f"degree must be non-negative, got {l}")
    return np.sqrt((l + 1.0) / (2.0 * l + 1.0))


def coupling_weight_d(l: int) -> float:
    """Weight sqrt(l/(2l+1)) of the degree-(l+1) branch; d(0) = 0."""
    if l < 0:
        raise ValueError(f"degree must be non-negative, got {l}")
    return np.sqrt(l / (2.0 * l + 1.0))


def cg_explicit(dl: int, m2: int, l: int, m: int) -> float:
    """One of the nine closed-form coefficients C(l, m | l+dl, m-m2, 1, m2).

    Parameters
    ----------
    dl : int
        Offset j1 - l of the coupled degree, in {-1, 0, +1}.
    m2 : int
        Spin-1 order, in {-1, 0, +1}.
    l, m : int
        Total degree and order (the upper indices).

    Returns zero whenever the arguments are out of range.
    """
    if dl not in (-1, 0, 1) or m2 not in (-1, 0, 1):
        raise ValueError(f"unknown coefficient kind (dl={dl}, m2={m2})")
    j1 = l + dl
    m1 = m - m2
    if l < 0 or j1 < 0 or abs(m) > l or abs(m1) > j1:
        return 0.0
    if dl == -1:
        if m2 == 1:
            return np.sqrt((l + m) * (l + m - 1.0) / ((2.0 * l) * (2.0 * l - 1.0)))
        if m2 == 0:
            return np.sqrt((l + m) * (l - m) / (l * (2.0 * l - 1.0)))
        return np.sqrt((l - m) * (l - m - 1.0) / ((2.0 * l) * (2.0 * l - 1.0)))
    if dl == 1:
        if m2 == 1:
            return np.sqrt((l - m + 1.0) * (l - m + 2.0) / ((2.0 * l + 2.0) * (2.0 * l + 3.0)))
        if m2 == 0:
            return -np.sqrt((l - m + 1.0) * (l + m + 1.0) / ((2.0 * l + 3.0) * (l + 1.0)))
        return np.sqrt((l + m + 1.0) * (l + m + 2.0) / ((2.0 * l + 3.0) * (2.0 * l + 2.0)))
    # dl == 0; these couplings vanish identically at l = 0.
    if l == 0:
        return 0.0
    if m2 == 1:
        return -np.sqrt((l + m) * (l - m + 1.0) / (l * (2.0 * l + 2.0)))
    if m2 == 0:
        return m / np.sqrt(l * (l + 1.0))
    return np.sqrt((l + m + 1.0) * (l - m) / (l * (2.0 * l + 2.0)))


def wigner_3j(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int) -> float:
    """Wigner 3j symbol for integer arguments via Racah's formula.

    Factorials are accumulated as log-gammas and each term of the
    alternating sum is exponentiated separately, which is stable for the
    degree range exercised here.  Selection-rule violations return zero.
    """
    if m1 + m2 + m3 != 0:
        return 0.0
    if abs(m1) > j1 or abs(m2) > j2 or abs(m3) > j3:
        return 0.0
    if j3 < abs(j1 - j2) or j3 > j1 + j2:
        return 0.0

    def lfact(n: int) -> float:
        return lgamma(n + 1.0)

    log_delta = 0.5 * (
        lfact(j1 + j2 - j3) + lfact(j1 - j2 + j3) + lfact(-j1 + j2 + j3) - lfact(j1 + j2 + j3 + 1)
    )
    log_front = 0.5 * (
        lfact(j1 + m1) + lfact(j1 - m1) + lfact(j2 + m2) + lfact(j2 - m2)
        + lfact(j3 + m3) + lfact(j3 - m3)
    )
    t_min = max(0, j2 - j3 - m1, j1 - j3 + m2)
    t_max = min(j1 + j2 - j3, j1 - m1, j2 + m2)
    total = 0.0
    for t in range(t_min, t_max + 1):
        log_term = (
            lfact(t) + lfact(j3 - j2 + t + m1) + lfact(j3 - j1 + t - m2)
            + lfact(j1 + j2 - j3 - t) + lfact(j1 - t - m1) + lfact(j2 - t + m2)
        )
        total += (-1.0) ** t * np.exp(log_delta + log_front - log_term)
    return (-1.0) ** (j1 - j2 - m3) * total


def clebsch_gordan(j1: int, m1: int, j2: int, m2: int, j3: int, m3: int) -> float:
    """General CG coefficient <j1 m1; j2 m2 | j3 m3> via the 3j oracle."""
    if m1 + m2 != m3:
        return 0.0
    return (-1.0) ** (m3 + j1 - j2) * np.sqrt(2.0 * j3 + 1.0) * wigner_3j(
        j1, j2, j3, m1, m2, -m3
    )


@dataclass
class CGTables:
    """Precomputed forward coupling tables over all l <= lmax + 1.

    ``xi[i]`` (i = 1..6) and ``mu[i]`` (i = 1..3) are real flat arrays of
    length (lmax + 2)**2 indexed degree-major, zero wherever the underlying
    coefficient arguments leave their valid range.  ``c`` and ``d`` hold the
    branch weights for l = 0..lmax+1.
    """

    lmax: int
    xi: dict[int, np.ndarray]
    mu: dict[int, np.ndarray]
    c: np.ndarray
    d: np.ndarray


def build_cg_tables(lmax: int) -> CGTables:
    """Tabulate the six xi and three mu coupling arrays for degree lmax.

    The tables extend to degree lmax + 1 because the forward assembly reads
    them at shifted indices l +- 1.
    """
    if lmax < 0:
        raise ValueError(f"lmax must be non-negative, got {lmax}")
    top = lmax + 1
    size = flat_size(top)
    ls, ms = degrees_orders(top)
    xi = {i: np.zeros(size) for i in range(1, 7)}
    mu = {i: np.zeros(size) for i in range(1, 4)}
    for k in range(size):
        l = int(ls[k])
        m = int(ms[k])
        xi[1][k] = coupling_weight_c(l + 1) * cg_explicit(-1, 1, l + 1, m + 1)
        xi[2][k] = (coupling_weight_d(l - 1) * cg_explicit(1, 1, l - 1, m + 1)) if l >= 1 else 0.0
        xi[3][k] = coupling_weight_c(l + 1) * cg_explicit(-1, -1, l + 1, m - 1)
        xi[4][k] = (coupling_weight_d(l - 1) * cg_explicit(1, -1, l - 1, m - 1)) if l >= 1 else 0.0
        xi[5][k] = coupling_weight_c(l + 1) * cg_explicit(-1, 0, l + 1, m)
        xi[6][k] = (coupling_weight_d(l - 1) * cg_explicit(1, 0, l - 1, m)) if l >= 1 else 0.0
        mu[1][k] = cg_explicit(0, 1, l, m + 1)
        mu[2][k] = cg_explicit(0, 0, l, m)
        mu[3][k] = cg_explicit(0, -1, l, m - 1)
    c = np.array([coupling_weight_c(l) for l in range(top + 1)])
    d = np.array([coupling_weight_d(l) for l in range(top + 1)])
    return CGTables(lmax=lmax, xi=xi, mu=mu, c=c, d=d)


def _shift_read(flat: np.ndarray, src_lmax: int, dl: int, dm: int, out_lmax: int) -> np.ndarray:
    """Gather flat[(l+dl, m+dm)] over all (l, m) with l <= out_lmax.

    Out-of-range source pairs contribute zero.
    """
    ls, ms = degrees_orders(out_lmax)
    sl = ls + dl
    sm = ms + dm
    valid = (sl >= 0) & (sl <= src_lmax) & (np.abs(sm) <= sl)
    idx = np.where(valid, sl * sl + sl + sm, 0)
    out = np.where(valid, flat[idx], 0.0)
    return out.astype(flat.dtype)


@dataclass
class AdjointCoupling:
    """The nine synthesis coefficient arrays of the adjoint transform.

    Flat complex arrays of length (lmax + 2)**2: ``nu[1..6]`` derive from
    the div-family table, ``eta[1..3]`` from the curl-family table.
    """

    lmax: int
    nu: dict[int, np.ndarray]
    eta: dict[int, np.ndarray]


def build_adjoint_coupling(coeffs: VectorCoefficients, tables: CGTables | None = None) -> AdjointCoupling:
    """Combine vector coefficients with the CG tables into synthesis arrays.

    Each array multiplies coefficient reads at degree l +- 1 (or l) with the
    matching xi/mu entries; every range restriction in their definitions is
    realized by the zero-read convention rather than explicit branches.
    """
    lmax = coeffs.lmax
    if tables is None:
        tables = build_cg_tables(lmax)
    if tables.lmax < lmax:
        raise ValueError(f"tables built for lmax={tables.lmax} cannot serve lmax={lmax}")
    top = lmax + 1

    def a_at(dl: int, dm: int) -> np.ndarray:
        return _shift_read(coeffs.div.values, lmax, dl, dm, top)

    def b_at(dl: int, dm: int) -> np.ndarray:
        return _shift_read(coeffs.curl.values, lmax, dl, dm, top)

    if tables.lmax == lmax:
        xi = tables.xi
        mu = tables.mu
    else:
        xi = {i: _shift_read(tables.xi[i], tables.lmax + 1, 0, 0, top) for i in range(1, 7)}
        mu = {i: _shift_read(tables.mu[i], tables.lmax + 1, 0, 0, top) for i in range(1, 4)}

    nu = {
        1: a_at(1, 1) * xi[1] - a_at(1, -1) * xi[3],
        2: a_at(-1, 1) * xi[2] - a_at(-1, -1) * xi[4],
        3: 1j * (a_at(1, 1) * xi[1] + a_at(1, -1) * xi[3]),
        4: 1j * (a_at(-1, 1) * xi[2] + a_at(-1, -1) * xi[4]),
        5: a_at(1, 0) * xi[5],
        6: a_at(-1, 0) * xi[6],
    }
    eta = {
        1: 1j * (b_at(0, 1) * mu[1] - b_at(0, -1) * mu[3]),
        2: b_at(0, 1) * mu[1] + b_at(0, -1) * mu[3],
        3: 1j * b_at(0, 0) * mu[2],
    }
    return AdjointCoupling(lmax=lmax, nu=nu, eta=eta)


def coefficients_from_flat(values: np.ndarray, lmax: int) -> ScalarCoefficients:
    """Wrap a flat array (possibly longer than needed) as coefficients."""
    return ScalarCoefficients(lmax, np.asarray(values)[: flat_size(lmax)])
