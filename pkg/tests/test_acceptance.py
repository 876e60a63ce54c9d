"""Release-gate acceptance checks.

Every test prints exactly one ``[criterion NN] ...: PASS/FAIL`` line with the
measured quantities, then asserts.  Tolerances and reference magnitudes are
stated inline; run with ``pytest -rA`` (the default addopts) to see the lines
for passing criteria too.
"""

import time

import numpy as np

from favest.core import (
    ScalarCoefficients,
    TangentFieldSamples,
    VectorCoefficients,
    flat_size,
)
from favest.coupling import cg_explicit, clebsch_gordan
from favest.diagnostics import bench, component_envelope_check, stability_ratios
from favest.fields import get_field
from favest.quadrature import bundled_design, gen_gl_tensor, verify_exactness
from favest.transforms import (
    adjoint_favest,
    forward_favest,
    repeat_transform_errors,
    roundtrip,
)
from favest.vsh import adjoint_vsht_direct, eval_vsh, forward_vsht_direct


def _report(num: int, label: str, ok: bool, detail: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    line = f"[criterion {num:02d}] {label}: {verdict} ({detail})"
    print(line)
    assert ok, line


def _random_points(rng, n):
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _random_tangent(rng, points):
    raw = rng.standard_normal(points.shape) + 1j * rng.standard_normal(points.shape)
    raw -= np.sum(raw * points, axis=1)[:, None] * points
    return TangentFieldSamples(points, raw)


def _random_coeffs(rng, lmax):
    raw = rng.standard_normal((2, flat_size(lmax))) + 1j * rng.standard_normal(
        (2, flat_size(lmax))
    )
    raw[:, 0] = 0.0
    return VectorCoefficients(
        ScalarCoefficients(lmax, raw[0]), ScalarCoefficients(lmax, raw[1])
    )


def _field_on_rule(name, rule):
    return TangentFieldSamples(rule.points, get_field(name)(rule.points))


def test_criterion_01_explicit_coupling_formulas():
    t0 = time.perf_counter()
    worst = 0.0
    for l in range(31):
        for m in range(-l, l + 1):
            for dl in (-1, 0, 1):
                if l + dl < 0:
                    continue
                for m2 in (-1, 0, 1):
                    got = cg_explicit(dl, m2, l, m)
                    want = clebsch_gordan(l + dl, m - m2, 1, m2, l, m)
                    worst = max(worst, abs(got - want))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 1.0
    _report(
        1,
        "nine explicit coupling formulas match the factorial-sum oracle for l <= 30",
        ok,
        f"max |difference| {worst:.2e} <= 1e-12, {elapsed:.2f} s < 1 s",
    )


def test_criterion_02_forward_equals_direct_analysis():
    t0 = time.perf_counter()
    rng = np.random.default_rng(202)
    worst = 0.0
    for lmax in (4, 8, 16):
        _, rule = gen_gl_tensor(2 * (lmax + 1))
        samples = _random_tangent(rng, rule.points)
        fast = forward_favest(samples, rule, lmax)
        direct = forward_vsht_direct(samples, rule, lmax)
        worst = max(
            worst,
            float(np.max(np.abs(fast.div.values - direct.div.values))),
            float(np.max(np.abs(fast.curl.values - direct.curl.values))),
        )
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 30.0
    _report(
        2,
        "scalar-route forward transform equals direct vector analysis (L=4,8,16)",
        ok,
        f"max |difference| {worst:.2e} <= 1e-10, {elapsed:.2f} s < 30 s",
    )


def test_criterion_03_adjoint_equals_direct_synthesis():
    t0 = time.perf_counter()
    rng = np.random.default_rng(303)
    pts = _random_points(rng, 500)
    worst = 0.0
    for lmax in (4, 8, 16):
        coeffs = _random_coeffs(rng, lmax)
        fast = adjoint_favest(coeffs, pts)
        direct = adjoint_vsht_direct(coeffs, pts)
        worst = max(worst, float(np.max(np.abs(fast.values - direct.values))))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 30.0
    _report(
        3,
        "scalar-route adjoint transform equals direct vector synthesis (L=4,8,16)",
        ok,
        f"max |difference| {worst:.2e} <= 1e-10 on 500 points, {elapsed:.2f} s < 30 s",
    )


def test_criterion_04_orthonormality():
    _, rule = gen_gl_tensor(18)
    rows = []
    for l in range(1, 9):
        for m in range(-l, l + 1):
            value = eval_vsh(l, m, rule.points)
            rows.append(value.div)
            rows.append(value.curl)
    basis = np.array(rows)
    gram = np.einsum("ink,jnk,n->ij", basis, np.conj(basis), rule.weights)
    deviation = float(np.max(np.abs(gram - np.eye(len(rows)))))
    ok = deviation <= 1e-10
    _report(
        4,
        "all vector harmonics with l <= 8 are orthonormal under an exact rule",
        ok,
        f"max |Gram - I| {deviation:.2e} <= 1e-10 over {len(rows)} harmonics",
    )


def test_criterion_05_lossless_recovery():
    rng = np.random.default_rng(505)
    lmax = 32
    coeffs = _random_coeffs(rng, lmax)
    _, rule = gen_gl_tensor(2 * (lmax + 1))
    rec = forward_favest(adjoint_favest(coeffs, rule), rule, lmax)
    coeff_err = max(
        float(np.max(np.abs(rec.div.values - coeffs.div.values))),
        float(np.max(np.abs(rec.curl.values - coeffs.curl.values))),
    )
    _, rule_a = gen_gl_tensor(22)
    rel_a = roundtrip(_field_on_rule("a", rule_a), rule_a, 10).rel_l2
    ok = coeff_err <= 1e-9 and rel_a <= 1e-9
    _report(
        5,
        "exact rules make synthesis-then-analysis and the smooth-field roundtrip lossless",
        ok,
        f"coefficient error {coeff_err:.2e} <= 1e-9 at L=32, "
        f"smooth-field rel L2 {rel_a:.2e} <= 1e-9 at L=10",
    )


def test_criterion_06_truncation_error_bands():
    cases = [("b", 10, 0.03, 0.15), ("b", 30, 1e-3, 1e-2), ("c", 30, 2e-3, 2e-2)]
    measured = []
    ok = True
    for name, lmax, lo, hi in cases:
        _, rule = gen_gl_tensor(2 * (lmax + 1))
        rel = roundtrip(_field_on_rule(name, rule), rule, lmax).rel_l2
        measured.append(f"field {name} L={lmax}: {rel:.3e} in [{lo:g}, {hi:g}]")
        ok = ok and lo <= rel <= hi
    _report(6, "rough-field truncation errors land in the reference bands", ok, "; ".join(measured))


def test_criterion_07_repeated_projection_stability():
    lmax = 40
    _, rule = gen_gl_tensor(2 * (lmax + 1))
    references = {"b": 1.49e-3, "c": 2.0e-2}
    details = []
    ok = True
    for name in ("a", "b", "c"):
        errors = repeat_transform_errors(_field_on_rule(name, rule), rule, lmax)
        stable = errors.second_vs_first <= 1e-9 and errors.coefficient_drift <= 1e-9
        ok = ok and stable
        part = f"field {name}: |T2-T1| {errors.second_vs_first:.1e}, drift {errors.coefficient_drift:.1e}"
        if name in references:
            ref = references[name]
            in_band = ref / 3.0 <= errors.first_vs_input <= ref * 3.0
            ok = ok and in_band
            part += f", |T1-T0| {errors.first_vs_input:.3e} vs reference {ref:g} (factor-3 band)"
        details.append(part)
    _report(
        7,
        "the projection at L=40 is idempotent and first-pass errors match reference magnitudes",
        ok,
        "; ".join(details),
    )


def test_criterion_08_complexity_scaling():
    fast = bench([32, 64], repetitions=5, path="fast-scalar")
    direct = bench([32, 64], repetitions=5, path="direct-scalar")
    fast_ratio = fast[1].forward_seconds / fast[0].forward_seconds
    direct_ratio = direct[1].forward_seconds / direct[0].forward_seconds
    speedup = direct[1].forward_seconds / fast[1].forward_seconds
    ok = fast_ratio <= 10.0 and direct_ratio >= 12.0 and speedup >= 3.0
    _report(
        8,
        "doubling L scales the fast path quasilinearly and the direct path quartically",
        ok,
        f"forward time ratios t(64)/t(32): fast {fast_ratio:.1f} <= 10, "
        f"direct {direct_ratio:.1f} >= 12; fast beats direct {speedup:.0f}x >= 3x at L=64",
    )


def test_criterion_09_stability_envelopes():
    rng = np.random.default_rng(909)
    lmax = 5
    worst_fraction = 0.0
    reports = {}
    for n in (100, 1000, 10000):
        pts = _random_points(rng, n)
        worst_fraction = max(worst_fraction, component_envelope_check(lmax, pts))
        reports[n] = stability_ratios(lmax, pts)
    bound_ok = worst_fraction <= 1.0 + 1e-12
    shrink_ok = (
        reports[10000].ratio_div_per_point < reports[100].ratio_div_per_point
        and reports[10000].ratio_curl_per_point < reports[100].ratio_curl_per_point
    )
    ok = bound_ok and shrink_ok
    _report(
        9,
        "componentwise envelope bound holds at L=5 and per-point ratios shrink with N",
        ok,
        f"max component/envelope {worst_fraction:.6f} <= 1 up to N=10000; "
        f"r/N div {reports[100].ratio_div_per_point:.1e} (N=100) -> "
        f"{reports[10000].ratio_div_per_point:.1e} (N=10000)",
    )


def test_criterion_10_quadrature_certification():
    worst = 0.0
    worst_t = 0
    for t in range(141):
        _, rule = gen_gl_tensor(t)
        defect, _ = verify_exactness(rule, t)
        if defect > worst:
            worst, worst_t = defect, t
    gl_ok = worst <= 1e-10
    design = bundled_design("icosahedron12")
    defect12, passed12 = verify_exactness(design, 5)
    ok = gl_ok and passed12
    _report(
        10,
        "tensor rules certify for every t <= 140 and the bundled 12-point design at t=5",
        ok,
        f"worst tensor defect {worst:.2e} at t={worst_t} (<= 1e-10); "
        f"design defect {defect12:.2e} -> {'pass' if passed12 else 'fail'}",
    )
