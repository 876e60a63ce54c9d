import os

import numpy as np
import pytest

from favest.core import FOUR_PI, QuadratureRule
from favest.quadrature import bundled_design, gen_gl_tensor, load_design, verify_exactness

_SD498 = os.path.join(os.path.dirname(__file__), "data", "sd498_t31.txt")


def test_degree_zero_rule_is_single_equator_point():
    grid, rule = gen_gl_tensor(0)
    assert grid.n_theta == 1
    assert grid.n_phi == 1
    assert len(rule) == 1
    assert rule.weights[0] == pytest.approx(FOUR_PI, abs=1e-12)
    assert rule.points[0] == pytest.approx([1.0, 0.0, 0.0], abs=1e-15)


def test_degree_three_rule_shape_and_weight_sum():
    grid, rule = gen_gl_tensor(3)
    assert grid.n_theta == 2
    assert grid.n_phi == 4
    assert len(rule) == 8
    assert np.sum(rule.weights) == pytest.approx(FOUR_PI, abs=1e-12)
    assert np.all(rule.weights > 0.0)


def test_gen_rejects_negative_degree():
    with pytest.raises(ValueError):
        gen_gl_tensor(-1)


@pytest.mark.parametrize("t", [0, 1, 2, 3, 7, 10, 16, 33])
def test_generated_rules_certify(t):
    _, rule = gen_gl_tensor(t)
    defect, passed = verify_exactness(rule, t)
    assert passed
    assert defect <= 1e-12 if t <= 10 else defect <= 1e-10


def test_verify_rejects_negative_degree():
    _, rule = gen_gl_tensor(2)
    with pytest.raises(ValueError):
        verify_exactness(rule, -1)


def test_single_point_is_not_a_one_design():
    rule = QuadratureRule(
        np.array([[0.0, 0.0, 1.0]]), np.array([FOUR_PI]), exactness=0
    )
    defect, passed = verify_exactness(rule, 1)
    assert not passed
    # Y(1,0) integrates to 4*pi * 0.4886... instead of 0
    assert defect == pytest.approx(FOUR_PI * 0.4886025119, rel=1e-6)


def test_random_equal_weights_fail_certification():
    rng = np.random.default_rng(41)
    n = 400
    v = rng.standard_normal((n, 3))
    pts = v / np.linalg.norm(v, axis=1, keepdims=True)
    rule = QuadratureRule(pts, np.full(n, FOUR_PI / n), exactness=0)
    defect, passed = verify_exactness(rule, 5)
    assert not passed
    # Monte Carlo defect decays like 1/sqrt(N); nowhere near certification
    assert 1e-3 < defect < 2.0


def test_bundled_icosahedron_design():
    rule = bundled_design("icosahedron12")
    assert len(rule) == 12
    assert rule.kind == "spherical-design"
    assert np.allclose(rule.weights, FOUR_PI / 12)
    defect5, passed5 = verify_exactness(rule, 5)
    assert passed5 and defect5 <= 1e-10
    defect6, passed6 = verify_exactness(rule, 6)
    assert not passed6 and defect6 > 1e-2


def test_bundled_design_unknown_name():
    with pytest.raises(ValueError):
        bundled_design("dodecahedron")


def test_load_design_roundtrip(tmp_path):
    rule = bundled_design("icosahedron12")
    path = tmp_path / "ico.txt"
    lines = [" ".join(f"{c:.17g}" for c in p) for p in rule.points]
    path.write_text("\n".join(lines) + "\n")
    loaded = load_design(str(path), 5)
    assert loaded.exactness == 5
    assert np.allclose(loaded.points, rule.points, atol=1e-15)
    assert np.allclose(loaded.weights, FOUR_PI / 12)


@pytest.mark.skipif(not os.path.exists(_SD498), reason="external 498-point design not bundled")
def test_sd498_design_certifies_to_degree_31():
    rule = load_design(_SD498, 31)
    assert len(rule) == 498
    defect, passed = verify_exactness(rule, 31)
    assert passed
    assert defect <= 1e-8
