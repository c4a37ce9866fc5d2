"""Smoke tests of the python bindings against known closed forms."""

import cmath
import json
import math

import pytest

gtube = pytest.importorskip("gtube")


def test_delta_closed_form():
    z, w = 0.3 + 0.1j, -0.2 + 0.4j
    expect = (1 - abs(z) ** 2) * (1 - abs(w) ** 2) / abs(1 - z * w) ** 2
    assert gtube.delta(z, w) == pytest.approx(expect, rel=1e-14)
    # sech^2(d/2) of the core distance
    d = gtube.core_distance(z, w)
    assert gtube.delta(z, w) == pytest.approx(1 / math.cosh(d / 2) ** 2, rel=1e-12)
    assert gtube.rho(z, w) == pytest.approx(
        math.acos(math.sqrt(gtube.delta(z, w))), rel=1e-12
    )


def test_delta_invariance_under_twisted_action():
    # delta is invariant under (z, w) -> (g z, conj(g conj(w))) for any disk
    # Moebius g = (az+b)/(conj(b)z+conj(a)); the twisted partner of w is
    # conj(g(conj(w))).
    def moebius(a, b, x):
        return (a * x + b) / (b.conjugate() * x + a.conjugate())

    a, b = 1.25, 0.75 * cmath.exp(0.3j)  # |a|^2 - |b|^2 = 1
    z, w = 0.2 - 0.3j, 0.5 + 0.1j
    gz = moebius(a, b, z)
    gw = moebius(a, b, w.conjugate()).conjugate()
    assert gtube.delta(gz, gw) == pytest.approx(gtube.delta(z, w), abs=1e-12)


def test_core_is_delta_one():
    z = 0.4 + 0.2j
    assert gtube.delta(z, z.conjugate()) == pytest.approx(1.0, abs=1e-14)
    assert gtube.rho(z, z.conjugate()) == pytest.approx(0.0, abs=1e-6)


def test_levi_spectra():
    z, w = 0.3 + 0.2j, -0.1 + 0.3j
    # -log(delta) is the product-metric Kaehler potential: positive definite,
    # with determinant 1/((1-|z|^2)(1-|w|^2))^2.  The degenerate potential is rho.
    hlog = gtube.levi("minus_log_delta", z, w)
    expect_det = 1.0 / ((1 - abs(z) ** 2) * (1 - abs(w) ** 2)) ** 2
    assert hlog["min_eig"] > 0
    assert hlog["det"] == pytest.approx(expect_det, rel=1e-10)
    hrho = gtube.levi("rho", z, w)
    frob = abs(hrho["h11"]) + abs(hrho["h22"]) + 2 * abs(hrho["h12"])
    assert abs(hrho["det"]) < 1e-12 * frob**2
    assert hrho["min_eig"] > -1e-12 * frob
    assert hrho["max_eig"] > 0
    hsqrt = gtube.levi("minus_sqrt_delta", z, w)
    assert hsqrt["min_eig"] > 0
    assert hsqrt["det"] > 0
    with pytest.raises(ValueError):
        gtube.levi("no_such_function", z, w)


def test_df_threshold():
    z, w = 0.1 + 0.1j, 0.6 - 0.2j
    threshold = 1.0 / (2.0 * (1.0 - gtube.delta(z, w)))
    assert gtube.df_levi(threshold - 0.01, z, w)["min_eig"] > 0
    assert gtube.df_levi(threshold + 0.01, z, w)["min_eig"] < 0
    assert gtube.df_exponent_estimate() == pytest.approx(0.5, abs=2e-3)


def test_octagon_geometry():
    stats = gtube.octagon_stats()
    assert stats["circumradius"] == pytest.approx(2 ** -0.25, abs=1e-12)
    assert math.cosh(stats["apothem"]) == pytest.approx(1 + math.sqrt(2), abs=1e-12)
    assert stats["translation_length"] == pytest.approx(2 * stats["apothem"])
    assert stats["vertex_angle_sum"] == pytest.approx(2 * math.pi, abs=1e-9)
    assert stats["side_pairing_defect"] < 1e-9


def test_reduce_and_area():
    point, word_len = gtube.reduce(0.97 * cmath.exp(1.1j))
    assert abs(point) < 0.97
    assert word_len >= 1
    value, err = gtube.domain_area(200000, 7)
    assert err < 0.1
    assert value == pytest.approx(2 * math.pi, abs=5 * err)


def test_level_integral_hits_hardy_constant():
    value, err = gtube.level_integral("const", 1.0, 100000, 7)
    assert err < 3.0
    assert value == pytest.approx(8 * math.pi**2, abs=5 * err)


def test_run_suite_json_schema():
    reports = json.loads(gtube.run_suite_json("ma", seed=7))
    assert isinstance(reports, list) and reports
    names = [r["name"] for r in reports]
    assert names == sorted(names)
    for r in reports:
        assert r["schema"] == 1
        assert r["status"] in ("pass", "fail", "info")
        assert r["seed"] == 7
        assert r["runtime_ms"] == 0
    assert all(r["status"] == "pass" for r in reports if r["status"] != "info")
    assert "ma" in gtube.suite_names()
    with pytest.raises(ValueError):
        gtube.run_suite_json("definitely-not-a-suite")


def test_tv_distance_small_for_long_runs():
    assert gtube.tv_distance(2000.0, 0.1, 8, 5) < 0.15
