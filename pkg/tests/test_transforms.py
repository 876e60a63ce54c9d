import numpy as np
import pytest

from favest.core import (
    ScalarCoefficients,
    TangentFieldSamples,
    VectorCoefficients,
    flat_index,
    flat_size,
)
from favest.fields import field_a
from favest.quadrature import gen_gl_tensor
from favest.transforms import (
    adjoint_favest,
    forward_favest,
    repeat_transform_errors,
    roundtrip,
)
from favest.vsh import adjoint_vsht_direct, eval_vsh, forward_vsht_direct


def _random_points(rng, n):
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _random_tangent(rng, points):
    raw = rng.standard_normal(points.shape) + 1j * rng.standard_normal(points.shape)
    raw -= np.sum(raw * points, axis=1)[:, None] * points
    return TangentFieldSamples(points, raw)


def _random_coeffs(rng, lmax):
    size = flat_size(lmax)
    raw = rng.standard_normal((2, size)) + 1j * rng.standard_normal((2, size))
    raw[:, 0] = 0.0
    return VectorCoefficients(
        ScalarCoefficients(lmax, raw[0]), ScalarCoefficients(lmax, raw[1])
    )


def test_forward_matches_direct_oracle():
    rng = np.random.default_rng(12)
    lmax = 12
    _, rule = gen_gl_tensor(26)
    samples = _random_tangent(rng, rule.points)
    fast = forward_favest(samples, rule, lmax)
    direct = forward_vsht_direct(samples, rule, lmax)
    assert np.max(np.abs(fast.div.values - direct.div.values)) <= 1e-10
    assert np.max(np.abs(fast.curl.values - direct.curl.values)) <= 1e-10


def test_forward_picks_out_high_order_harmonic():
    _, rule = gen_gl_tensor(12)
    value = eval_vsh(5, 4, rule.points)
    samples = TangentFieldSamples(rule.points, value.div)
    coeffs = forward_favest(samples, rule, 5)
    assert coeffs.div.get(5, 4) == pytest.approx(1.0, abs=1e-9)
    rest = coeffs.div.values.copy()
    rest[flat_index(5, 4)] = 0.0
    assert np.max(np.abs(rest)) <= 1e-9
    assert np.max(np.abs(coeffs.curl.values)) <= 1e-9


def test_adjoint_matches_direct_oracle():
    rng = np.random.default_rng(21)
    lmax = 12
    coeffs = _random_coeffs(rng, lmax)
    pts = _random_points(rng, 500)
    fast = adjoint_favest(coeffs, pts)
    direct = adjoint_vsht_direct(coeffs, pts)
    assert np.max(np.abs(fast.values - direct.values)) <= 1e-10


def test_adjoint_zero_coefficients():
    pts = _random_points(np.random.default_rng(0), 40)
    out = adjoint_favest(VectorCoefficients.zeros(6), pts)
    assert np.all(out.values == 0.0)


def test_forward_recovers_coefficients_after_adjoint():
    rng = np.random.default_rng(33)
    lmax = 9
    coeffs = _random_coeffs(rng, lmax)
    _, rule = gen_gl_tensor(2 * (lmax + 1) + 2)
    field = adjoint_favest(coeffs, rule)
    rec = forward_favest(field, rule, lmax)
    assert np.max(np.abs(rec.div.values - coeffs.div.values)) <= 1e-9
    assert np.max(np.abs(rec.curl.values - coeffs.curl.values)) <= 1e-9


def test_monopole_entries_are_exactly_zero():
    rng = np.random.default_rng(8)
    _, rule = gen_gl_tensor(10)
    samples = _random_tangent(rng, rule.points)
    coeffs = forward_favest(samples, rule, 3)
    assert coeffs.div.values[0] == 0.0
    assert coeffs.curl.values[0] == 0.0


def test_paths_agree_and_bad_path_rejected():
    rng = np.random.default_rng(14)
    lmax = 6
    _, rule = gen_gl_tensor(2 * (lmax + 1))
    samples = _random_tangent(rng, rule.points)
    fast = forward_favest(samples, rule, lmax, path="fast-scalar")
    direct = forward_favest(samples, rule, lmax, path="direct-scalar")
    assert np.max(np.abs(fast.div.values - direct.div.values)) <= 1e-11
    assert np.max(np.abs(fast.curl.values - direct.curl.values)) <= 1e-11
    with pytest.raises(ValueError):
        forward_favest(samples, rule, lmax, path="warp")


def test_fast_path_needs_enough_longitudes():
    rng = np.random.default_rng(15)
    _, rule = gen_gl_tensor(10)  # n_phi = 11 < 2*(5+1)+1
    samples = _random_tangent(rng, rule.points)
    with pytest.raises(ValueError):
        forward_favest(samples, rule, 5, path="fast-scalar")
    coeffs = _random_coeffs(rng, 5)
    with pytest.raises(ValueError):
        adjoint_favest(coeffs, rule, path="fast-scalar")
    # raw points have no grid, so the fast path cannot be forced
    with pytest.raises(ValueError):
        adjoint_favest(coeffs, rule.points, path="fast-scalar")


def test_point_mismatch_rejected():
    rng = np.random.default_rng(16)
    _, rule = gen_gl_tensor(8)
    samples = _random_tangent(rng, _random_points(rng, len(rule)))
    with pytest.raises(ValueError):
        forward_favest(samples, rule, 2)


def test_linearity():
    rng = np.random.default_rng(44)
    lmax = 5
    _, rule = gen_gl_tensor(12)
    s1 = _random_tangent(rng, rule.points)
    s2 = _random_tangent(rng, rule.points)
    alpha = 0.7 - 1.3j
    beta = -2.1 + 0.4j
    mixed = TangentFieldSamples(rule.points, alpha * s1.values + beta * s2.values)
    c_mixed = forward_favest(mixed, rule, lmax)
    c1 = forward_favest(s1, rule, lmax)
    c2 = forward_favest(s2, rule, lmax)
    want_div = alpha * c1.div.values + beta * c2.div.values
    want_curl = alpha * c1.curl.values + beta * c2.curl.values
    assert np.max(np.abs(c_mixed.div.values - want_div)) <= 1e-11
    assert np.max(np.abs(c_mixed.curl.values - want_curl)) <= 1e-11


def test_reality_of_projection():
    # real input samples project onto a conjugation-closed span
    rng = np.random.default_rng(55)
    lmax = 8
    _, rule = gen_gl_tensor(2 * (lmax + 1))
    raw = rng.standard_normal(rule.points.shape)
    raw -= np.sum(raw * rule.points, axis=1)[:, None] * rule.points
    samples = TangentFieldSamples(rule.points, raw)
    rec = adjoint_favest(forward_favest(samples, rule, lmax), rule)
    assert np.max(np.abs(rec.values.imag)) <= 1e-9


def test_roundtrip_field_a_is_lossless():
    _, rule = gen_gl_tensor(22)
    samples = TangentFieldSamples(rule.points, field_a(rule.points))
    result = roundtrip(samples, rule, 10)
    assert result.rel_l2 <= 1e-9
    assert result.coeffs.lmax == 10
    assert len(result.reconstruction) == len(rule)


def test_repeat_projection_is_idempotent():
    rng = np.random.default_rng(66)
    lmax = 6
    _, rule = gen_gl_tensor(2 * (lmax + 1))
    samples = _random_tangent(rng, rule.points)
    errors = repeat_transform_errors(samples, rule, lmax)
    # first pass truncates the random field, second pass must be stable
    assert errors.first_vs_input > 1e-3
    assert errors.second_vs_first <= 1e-9
    assert errors.coefficient_drift <= 1e-9


def test_repeat_zero_field():
    _, rule = gen_gl_tensor(8)
    samples = TangentFieldSamples(rule.points, np.zeros_like(rule.points))
    errors = repeat_transform_errors(samples, rule, 3)
    assert errors == (0.0, 0.0, 0.0, 0.0)


def test_roundtrip_zero_field_is_domain_error():
    _, rule = gen_gl_tensor(8)
    samples = TangentFieldSamples(rule.points, np.zeros_like(rule.points))
    with pytest.raises(ValueError):
        roundtrip(samples, rule, 3)
