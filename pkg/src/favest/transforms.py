"""Fast forward and adjoint vector spherical harmonic transforms.

Both directions route all vector work through three scalar transforms of
degree L+1 plus O(L^2) coupling arithmetic:

* forward: scalar-analyze the combinations U = -T1 + i T2, V = T1 + i T2,
  W = T3, then assemble each vector coefficient from six xi-weighted (div
  family) and three mu-weighted (curl family) reads at index offsets
  (l +- 1, m +- 1).
* adjoint: fold the coefficient tables into nine synthesis arrays, merge
  them into one degree-(L+1) scalar coefficient array per Cartesian
  component, and scalar-synthesize.

Each scalar transform runs either as a direct sum over arbitrary points or
on the fast iso-latitude FFT path; ``path="auto"`` picks the fast path
whenever the rule carries a tensor grid with enough longitudes.  The two
routes are algebraically identical to the direct vector transforms for any
point/weight family, not just exact rules - that identity is the main
correctness test of the package.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .core import (
    QuadratureRule,
    ScalarCoefficients,
    TangentFieldSamples,
    VectorCoefficients,
    check_unit,
    flat_size,
)
from .coupling import CGTables, _shift_read, build_adjoint_coupling, build_cg_tables
from .scalar import (
    TensorGrid,
    _adjoint_direct_values,
    _adjoint_fast_values,
    _forward_direct_values,
    _forward_fast_values,
)

PATHS = ("auto", "direct-scalar", "fast-scalar")
_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def _resolve_grid(rule_or_points) -> tuple[np.ndarray, TensorGrid | None, QuadratureRule | None]:
    """Normalize a rule / grid / raw point array into (points, grid, rule)."""
    if isinstance(rule_or_points, QuadratureRule):
        return rule_or_points.points, rule_or_points.grid, rule_or_points
    if isinstance(rule_or_points, TensorGrid):
        return rule_or_points.points(), rule_or_points, None
    pts = check_unit(np.atleast_2d(np.asarray(rule_or_points, dtype=np.float64)))
    return pts, None, None


def _pick_path(path: str, grid: TensorGrid | None, lmax: int) -> bool:
    """Return True for the fast path; raise if an explicit request is impossible."""
    if path not in PATHS:
        raise ValueError(f"unknown path {path!r}; expected one of {PATHS}")
    needed = 2 * (lmax + 1) + 1
    usable = grid is not None and grid.n_phi >= needed
    if path == "fast-scalar":
        if grid is None:
            raise ValueError("fast-scalar path requires a rule with tensor-grid structure")
        if grid.n_phi < needed:
            raise ValueError(
                f"fast-scalar path needs n_phi >= {needed} for degree {lmax}, "
                f"grid has n_phi={grid.n_phi}"
            )
        return True
    if path == "direct-scalar":
        return False
    return usable


def forward_favest(
    samples: TangentFieldSamples,
    rule: QuadratureRule,
    lmax: int,
    path: str = "auto",
    tables: CGTables | None = None,
) -> VectorCoefficients:
    """Forward vector transform via three scalar transforms of degree lmax+1.

    Parameters
    ----------
    samples : TangentFieldSamples
        Tangent field values at exactly the rule's points.
    rule : QuadratureRule
        Points and weights; a tensor-grid rule enables the fast path.
    lmax : int
        Largest vector degree to produce, >= 1.
    path : {"auto", "direct-scalar", "fast-scalar"}
        Scalar backend selection; "auto" uses the FFT path when available.
    tables : CGTables, optional
        Reusable coupling tables for lmax (built on demand otherwise).
    """
    if lmax < 1:
        raise ValueError(f"vector transforms need lmax >= 1, got {lmax}")
    if samples.points.shape != rule.points.shape or not np.allclose(
        samples.points, rule.points, rtol=0.0, atol=1e-12
    ):
        raise ValueError("sample points do not match the quadrature rule points")
    use_fast = _pick_path(path, rule.grid, lmax)

    t1 = samples.values[:, 0]
    t2 = samples.values[:, 1]
    t3 = samples.values[:, 2]
    combos = np.stack([-t1 + 1j * t2, t1 + 1j * t2, t3], axis=1)
    top = lmax + 1
    if use_fast:
        f = _forward_fast_values(combos, rule.grid, top)
    else:
        f = _forward_direct_values(combos, rule, top)
    fu, fv, fw = f[:, 0], f[:, 1], f[:, 2]

    if tables is None:
        tables = build_cg_tables(lmax)
    elif tables.lmax < lmax:
        raise ValueError(f"tables built for lmax={tables.lmax} cannot serve lmax={lmax}")
    xi = tables.xi
    mu = tables.mu
    src_top = tables.lmax + 1

    def read(values: np.ndarray, dl: int, dm: int) -> np.ndarray:
        return _shift_read(values, src_top, dl, dm, lmax)[: flat_size(lmax)]

    def pad(values: np.ndarray) -> np.ndarray:
        out = np.zeros(flat_size(src_top), dtype=np.complex128)
        out[: flat_size(top)] = values
        return out

    fu, fv, fw = pad(fu), pad(fv), pad(fw)
    a = _INV_SQRT2 * (
        read(xi[1] * fu, -1, -1)
        + read(xi[2] * fu, 1, -1)
        + read(xi[3] * fv, -1, 1)
        + read(xi[4] * fv, 1, 1)
    ) + read(xi[5] * fw, -1, 0) + read(xi[6] * fw, 1, 0)
    b = -1j * _INV_SQRT2 * (read(mu[1] * fu, 0, -1) + read(mu[3] * fv, 0, 1)) \
        - 1j * read(mu[2] * fw, 0, 0)
    a[0] = 0.0
    b[0] = 0.0
    return VectorCoefficients(ScalarCoefficients(lmax, a), ScalarCoefficients(lmax, b))


def adjoint_favest(
    coeffs: VectorCoefficients,
    rule_or_points,
    path: str = "auto",
    tables: CGTables | None = None,
) -> TangentFieldSamples:
    """Adjoint vector transform: synthesize the tangent field at points.

    ``rule_or_points`` may be a QuadratureRule, a TensorGrid, or a raw
    (N, 3) array of unit points; weights are never used.  The synthesis
    merges the nine coupling arrays into three scalar coefficient tables of
    degree lmax+1, one per Cartesian component.
    """
    points, grid, _ = _resolve_grid(rule_or_points)
    use_fast = _pick_path(path, grid, coeffs.lmax)
    coupling = build_adjoint_coupling(coeffs, tables)
    nu = coupling.nu
    eta = coupling.eta
    merged = np.stack(
        [
            -_INV_SQRT2 * (nu[1] + nu[2] + eta[1]),
            -_INV_SQRT2 * (nu[3] + nu[4] - eta[2]),
            nu[5] + nu[6] + eta[3],
        ],
        axis=1,
    )
    top = coeffs.lmax + 1
    if use_fast:
        values = _adjoint_fast_values(merged, top, grid)
    else:
        values = _adjoint_direct_values(merged, top, points)
    return TangentFieldSamples(points=points, values=values)


class RoundtripResult(NamedTuple):
    coeffs: VectorCoefficients
    reconstruction: TangentFieldSamples
    rel_l2: float
    max_abs: float


def roundtrip(
    samples: TangentFieldSamples, rule: QuadratureRule, lmax: int, path: str = "auto"
) -> RoundtripResult:
    """Forward then adjoint at the same points, with error metrics."""
    from .diagnostics import error_metrics

    tables = build_cg_tables(lmax)
    coeffs = forward_favest(samples, rule, lmax, path=path, tables=tables)
    recon = adjoint_favest(coeffs, rule, path=path, tables=tables)
    rel_l2, max_abs = error_metrics(samples, recon, rule.weights)
    return RoundtripResult(coeffs=coeffs, reconstruction=recon, rel_l2=rel_l2, max_abs=max_abs)


class RepeatErrors(NamedTuple):
    first_vs_input: float
    second_vs_input: float
    second_vs_first: float
    coefficient_drift: float


def repeat_transform_errors(
    samples: TangentFieldSamples, rule: QuadratureRule, lmax: int, path: str = "auto"
) -> RepeatErrors:
    """Apply the roundtrip projection twice and report stability errors.

    The roundtrip is a projection onto the degree-lmax tangent space when
    the rule is exact enough, so the second pass must reproduce the first
    to rounding error even when the first pass changes the field.  Errors
    are infinity norms of pointwise Euclidean magnitudes; the drift is the
    largest entrywise change between the two coefficient tables.
    """
    tables = build_cg_tables(lmax)
    c1 = forward_favest(samples, rule, lmax, path=path, tables=tables)
    t1 = adjoint_favest(c1, rule, path=path, tables=tables)
    c2 = forward_favest(t1, rule, lmax, path=path, tables=tables)
    t2 = adjoint_favest(c2, rule, path=path, tables=tables)

    def inf_norm(x: np.ndarray, y: np.ndarray) -> float:
        return float(np.max(np.sqrt(np.sum(np.abs(x - y) ** 2, axis=1))))

    drift = max(
        float(np.max(np.abs(c2.div.values - c1.div.values))),
        float(np.max(np.abs(c2.curl.values - c1.curl.values))),
    )
    return RepeatErrors(
        first_vs_input=inf_norm(t1.values, samples.values),
        second_vs_input=inf_norm(t2.values, samples.values),
        second_vs_first=inf_norm(t2.values, t1.values),
        coefficient_drift=drift,
    )
