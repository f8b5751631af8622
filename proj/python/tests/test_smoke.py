import math

import pytest

import bergkern as bk

QUARTER = bk.RadialWeight.step(18.0, 0.25)


def test_quarter_step_coefficients():
    a0, a1 = bk.KernelSeries(QUARTER).alphas(1)
    assert a0 == pytest.approx(16 / (33 * math.pi), rel=1e-13)
    assert a1 == pytest.approx(512 / (273 * math.pi), rel=1e-13)
    mu0, alpha0 = bk.moments(QUARTER, 0)[0]
    assert mu0 * alpha0 == pytest.approx(1.0)


def test_unweighted_kernel_closed_form():
    series = bk.KernelSeries(bk.RadialWeight.constant())
    value, err, n_used = bk.kernel_eval(series, 0.5, 0.5)
    assert value.real == pytest.approx(16 / (9 * math.pi), abs=1e-10)
    assert err <= 1e-10 and n_used > 0


def test_certificate_and_zero_count():
    series = bk.KernelSeries(QUARTER)
    cert = bk.rouche(series, 0.01)
    assert cert["holds"]
    assert cert["t_star"] == pytest.approx(-91 / 170, abs=1e-12)
    report = bk.count_zeros(series, 0.99)
    assert report["certified"] and report["zero_count"] == 1
    assert report["zeros"][0][0].real == pytest.approx(-0.4768747, abs=1e-6)
    flat = bk.count_zeros(bk.KernelSeries(bk.RadialWeight.constant()), 0.999)
    assert flat["zero_count"] == 0


def test_dirac_and_inflation():
    assert bk.dirac_zero(1.0) is None
    assert bk.dirac_zero(10.0) == pytest.approx(1 - math.sqrt(1 + math.pi / 10), abs=1e-12)
    lhs, rhs, agree = bk.inflation_check(QUARTER, 0.3 + 0.1j, -0.2j)
    assert agree and abs(lhs - rhs) <= 1e-8


def test_schur_and_probe():
    value, tail = bk.schur_integral([1.0] * 50, -0.5, 0.0)
    assert value == pytest.approx(2 * math.pi)
    assert bk.schur_constant(-0.5) == pytest.approx(4 * math.pi)
    (ratio, name), = bk.lp_probe(bk.RadialWeight.constant(), [2.0], N=8)
    assert ratio == pytest.approx(1.0, abs=1e-12)


def test_weight_json_and_errors():
    w = bk.RadialWeight.from_json('{"type":"step","segments":[[0.25,18.0],[1.0,1.0]]}')
    assert w.comparability == 18.0
    assert w(0.1) == 18.0 and w(0.5) == 1.0
    with pytest.raises(ValueError):
        bk.RadialWeight.constant(-1.0)
    with pytest.raises(bk.ConvergenceError):
        bk.kernel_eval(bk.KernelSeries(bk.RadialWeight.constant()), 0.99999, 0.99999, 1e-14)


def test_acceptance_subset():
    rows = bk.acceptance("weights")
    assert [r[0] for r in rows] == [1]
    assert rows[0][2]
