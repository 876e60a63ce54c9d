import numpy as np
import pytest

from favest.core import from_spherical
from favest.legendre import (
    eval_ylm,
    legendre_block,
    legendre_table,
    tri_index,
    ylm_row,
    ylm_table,
)
from favest.quadrature import gen_gl_tensor

INV_SQRT_4PI = 0.28209479177387814


def _random_points(rng, n):
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def test_normalized_values_at_frozen_arguments():
    p = legendre_table(2, np.array([1.0, 0.0, -0.37]))
    # constant mode is 1/sqrt(4 pi) at any argument
    assert np.allclose(p[:, tri_index(0, 0)], INV_SQRT_4PI, atol=1e-15)
    assert p[0, tri_index(1, 0)] == pytest.approx(0.4886025119029199, abs=1e-12)
    assert p[0, tri_index(1, 1)] == pytest.approx(0.0, abs=1e-15)
    assert p[1, tri_index(2, 0)] == pytest.approx(-0.3153915652525201, abs=1e-12)


def test_legendre_rejects_bad_arguments():
    with pytest.raises(ValueError):
        legendre_table(-1, np.array([0.0]))
    with pytest.raises(ValueError):
        legendre_table(2, np.array([1.5]))


def test_legendre_block_accessor():
    block = legendre_block(3, 0.25)
    assert block.get(0, 0) == pytest.approx(INV_SQRT_4PI)
    assert block.get(2, 3) == 0.0
    assert block.get(5, 0) == 0.0


def test_eval_ylm_out_of_range_is_zero():
    pts = _random_points(np.random.default_rng(0), 10)
    assert np.all(eval_ylm(2, 3, pts) == 0.0)


def test_ylm_row_north_pole():
    row = ylm_row(1, np.array([0.0, 0.0, 1.0]))
    assert np.allclose(
        row, [INV_SQRT_4PI, 0.0, 0.4886025119029199, 0.0], atol=1e-12
    )


def test_ylm_table_matches_eval_ylm():
    rng = np.random.default_rng(3)
    pts = _random_points(rng, 40)
    table = ylm_table(6, pts)
    for l, m in [(0, 0), (1, -1), (3, 2), (6, -6), (5, 0)]:
        assert np.allclose(
            table[:, l * l + l + m], eval_ylm(l, m, pts), atol=1e-13
        )


def test_scipy_cross_check():
    sph = pytest.importorskip("scipy.special")
    if hasattr(sph, "sph_harm_y"):
        def oracle(l, m, theta, phi):
            return sph.sph_harm_y(l, m, theta, phi)
    else:
        def oracle(l, m, theta, phi):
            return sph.sph_harm(m, l, phi, theta)
    rng = np.random.default_rng(11)
    theta = rng.uniform(0.05, np.pi - 0.05, size=25)
    phi = rng.uniform(0, 2 * np.pi, size=25)
    pts = from_spherical(theta, phi)
    for l in range(0, 9):
        for m in range(-l, l + 1):
            assert np.allclose(
                eval_ylm(l, m, pts), oracle(l, m, theta, phi), atol=1e-12
            ), (l, m)


def test_conjugation_symmetry():
    rng = np.random.default_rng(5)
    pts = _random_points(rng, 30)
    for l in (1, 4, 9, 17):
        for m in range(1, l + 1):
            lhs = eval_ylm(l, -m, pts)
            rhs = (-1.0) ** m * np.conj(eval_ylm(l, m, pts))
            assert np.allclose(lhs, rhs, atol=1e-13), (l, m)


def test_addition_theorem_to_degree_50():
    # sum_m Y(l,m,x) conj(Y(l,m,y)) = (2l+1)/(4 pi) P_l(x.y)
    from numpy.polynomial.legendre import legval

    rng = np.random.default_rng(19)
    x = _random_points(rng, 6)
    y = _random_points(rng, 6)
    tx = ylm_table(50, x)
    ty = ylm_table(50, y)
    dots = np.sum(x * y, axis=1)
    for l in range(51):
        sl = slice(l * l, (l + 1) ** 2)
        lhs = np.sum(tx[:, sl] * np.conj(ty[:, sl]), axis=1)
        coeffs = np.zeros(l + 1)
        coeffs[l] = 1.0
        rhs = (2 * l + 1) / (4 * np.pi) * legval(dots, coeffs)
        assert np.max(np.abs(lhs - rhs)) <= 1e-11, l


def test_orthonormality_under_exact_rule():
    lmax = 7
    _, rule = gen_gl_tensor(2 * lmax)
    table = ylm_table(lmax, rule.points)
    gram = table.conj().T @ (rule.weights[:, None] * table)
    assert np.max(np.abs(gram - np.eye((lmax + 1) ** 2))) <= 1e-10
