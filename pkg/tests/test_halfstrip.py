import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from sharpconj import halfstrip as hs
from sharpconj.constants import sharp_constant_Ap

PI = math.pi


def _mp_oscillatory(fn, j):
    # split [0, 1] at every half period so each piece is smooth and tame
    pts = [mpmath.mpf(k) / (j + 1) for k in range(j + 2)]
    with mpmath.workdps(25):
        return float(mpmath.quad(fn, pts))


def mp_c(p, j):
    lam = (j + mpmath.mpf(1) / 2) * mpmath.pi
    return 2 * _mp_oscillatory(lambda t: (1 - t ** p) * mpmath.cos(lam * t), j)


def mp_c_lambda(p, j):
    lam = (j + mpmath.mpf(1) / 2) * mpmath.pi
    return 2 * p * _mp_oscillatory(lambda t: t ** (p - 1) * mpmath.sin(lam * t), j)


# --- eigenvalues ---------------------------------------------------------------

def test_eigenvalues():
    assert hs.lam(0) == PI / 2
    assert hs.lam(1) == 3 * PI / 2
    j = np.arange(101)
    assert np.max(np.abs(np.cos(hs.lam(j)))) <= 1e-13  # rounding of (j + 1/2) pi
    np.testing.assert_array_equal(hs.eigenvalues(5), hs.lam(np.arange(6)))


def test_default_terms():
    assert hs.default_terms(1.0) == 50
    assert hs.default_terms(0.01) == 1200


def test_strip_point():
    hs.StripPoint(0.0, 1.0)
    with pytest.raises(ValueError):
        hs.StripPoint(-0.1, 0.0)
    with pytest.raises(ValueError):
        hs.StripPoint(1.0, 1.01)


# --- coefficients ----------------------------------------------------------------

def test_coefficients_p2_examples():
    assert hs.coeff_c(2, 0) == pytest.approx(32 / PI ** 3, abs=1e-14)
    assert hs.coeff_c(2, 1) == pytest.approx(-4 / (1.5 * PI) ** 3, abs=1e-14)
    assert hs.coeff_c_lambda(2, 0) == pytest.approx(16 / PI ** 2, abs=1e-14)
    assert hs.coeff_c_lambda(2, 3) == pytest.approx(-4 / (3.5 * PI) ** 2, abs=1e-14)


def test_coefficients_p2_closed_form_to_j_1000():
    j = np.arange(1001)
    lam = hs.lam(j)
    ser = hs.majorant_series(2.0, 1000)
    np.testing.assert_allclose(ser.c, 4 * (-1.0) ** j / lam ** 3, rtol=0, atol=1e-13)
    np.testing.assert_allclose(ser.c_lambda, 4 * (-1.0) ** j / lam ** 2, rtol=0, atol=1e-13)


@pytest.mark.parametrize("p", [1.1, 1.5, 3.0, 10.0])
@pytest.mark.parametrize("j", [0, 1, 7, 50, 200])
def test_coefficients_against_mpmath(p, j):
    assert hs.coeff_c(p, j) == pytest.approx(mp_c(p, j), abs=1e-12)
    assert hs.coeff_c_lambda(p, j) == pytest.approx(mp_c_lambda(p, j), abs=1e-11)


@pytest.mark.parametrize("p", [1.1, 1.5, 2.0, 3.0, 10.0])
def test_c_lambda_consistency_and_bound(p):
    ser = hs.majorant_series(p, 200)
    np.testing.assert_allclose(ser.c * ser.lam, ser.c_lambda, rtol=0, atol=1e-10)
    assert np.all(np.abs(ser.c_lambda) <= 2 + 1e-12)
    assert np.all(np.abs(ser.c) <= 2 / ser.lam + 1e-12)


def test_coefficients_reject_bad_p():
    for f in (hs.coeff_c, hs.coeff_c_lambda):
        with pytest.raises(ValueError):
            f(1.0, 0)


# --- W, U -------------------------------------------------------------------------

@pytest.mark.parametrize("method", ["series", "integral", "auto"])
@pytest.mark.parametrize("y", [1.0, -1.0])
def test_W_vanishes_on_the_rays(method, y):
    w = hs.W(1.7, 0.3, y, method=method)
    assert w.value == 0.0
    assert hs.U(1.7, 0.3, y, method=method).value == 1.0


def test_series_terms_vanish_exactly_at_the_rays():
    ser = hs.majorant_series(2.5, 300)
    vals = ser.W_grid(np.array([0.05, 1.0]), np.array([-1.0, 1.0]))
    assert np.all(vals == 0.0)


def test_W_large_x_is_leading_term():
    w = hs.W(2, 5, 0)
    lead = 32 / PI ** 3 * math.exp(-5 * PI / 2)
    assert abs(w.value) <= lead + w.error_bound
    assert w.value == pytest.approx(lead, rel=1e-6)
    assert abs(w.value) == pytest.approx(4.0e-4, rel=0.01)


def test_W_small_x_near_one():
    assert abs(hs.W(2, 1e-3, 0).value - 1) <= 2e-3


def test_U_large_x_tends_to_one():
    u = hs.U(3, 40, 0.3)
    assert abs(u.value - 1) <= u.error_bound + 1e-15


def test_W_rejects_nonpositive_x():
    with pytest.raises(ValueError):
        hs.W(2, 0.0, 0.1)
    with pytest.raises(ValueError):
        hs.W(2, 0.5, 1.5)


@given(st.sampled_from([1.2, 1.5, 2.0, 3.0, 6.0]), st.floats(0.05, 3.0), st.floats(-1, 1))
def test_series_and_integral_routes_agree(p, x, y):
    a = hs.W(p, x, y, method="series")
    b = hs.W(p, x, y, method="integral")
    assert abs(a.value - b.value) <= a.error_bound + b.error_bound + 1e-12


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_majorant_inequality_on_grid(p):
    xs = np.linspace(0.01, 4.0, 100)
    ys = np.linspace(-1, 1, 102)[1:-1]
    grid = hs.majorant_grid(p, xs, ys)
    assert np.all(grid.margin >= -1e-9)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_majorant_grid_matches_pointwise(p):
    xs = np.array([0.02, 0.4, 2.0])
    ys = np.array([-0.7, 0.0, 0.3, 0.95])
    grid = hs.majorant_grid(p, xs, ys)
    for a, x in enumerate(xs):
        for b, y in enumerate(ys):
            assert grid.U[a, b] == pytest.approx(hs.U(p, x, y, method="integral").value, abs=1e-10)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_boundary_datum_recovery(p):
    ys = np.linspace(-0.9, 0.9, 37)
    err = [abs(hs.U(p, 1e-3, y).value - abs(y) ** p) for y in ys]
    assert max(err) <= 0.02


# --- g, g' ------------------------------------------------------------------------

def test_g_at_zero():
    assert hs.g(2.5, 0.0).value == 0.0


def test_g_prime_two_term_oracle():
    v = hs.g_prime(2, 2).value
    assert v == pytest.approx(16 / PI ** 2 * math.exp(-PI), abs=1e-4)
    two = 16 / PI ** 2 * math.exp(-PI) - 4 / (1.5 * PI) ** 2 * math.exp(-3 * PI)
    assert v == pytest.approx(two, abs=1e-8)


def test_g_prime_rejects_nonpositive():
    with pytest.raises(ValueError):
        hs.g_prime(2, 0.0)


@pytest.mark.parametrize("p", [1.2, 1.5, 2.0, 3.0])
def test_g_prime_ceiling(p):
    A = sharp_constant_Ap(p).value
    for x in np.geomspace(1e-3, 5, 40):
        assert hs.g_prime(p, x).value <= A + 1e-9


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
@pytest.mark.parametrize("x", [0.1, 0.3, 1.0, 2.5])
def test_g_prime_series_vs_quadrature(p, x):
    a = hs.g_prime(p, x, method="series").value
    b = hs.g_prime(p, x, method="integral").value
    assert abs(a - b) <= 1e-8


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
@pytest.mark.parametrize("x", [0.2, 0.3, 0.5, 1.0, 2.0])
def test_finite_difference_consistency(p, x):
    h = 1e-4
    fd = (hs.g(p, x + h).value - hs.g(p, x - h).value) / (2 * h)
    assert abs(fd - hs.g_prime(p, x).value) <= 1e-6


@pytest.mark.parametrize("p", [2.0, 3.0])
def test_sharpness_limit(p):
    A = sharp_constant_Ap(p).value
    r = hs.sharpness_limit(p, [0.1, 0.01, 0.001])
    assert np.all(np.diff(r) > 0)
    assert np.all(r <= A + 1e-9)
    assert r[-1] >= A * (1 - 5e-3)


def test_sharpness_limit_requires_decreasing():
    with pytest.raises(ValueError):
        hs.sharpness_limit(2, [0.01, 0.1])
    with pytest.raises(ValueError):
        hs.sharpness_limit(2, [0.1, -0.01])


# --- kernel -------------------------------------------------------------------------

def test_kernel_examples():
    assert hs.kernel_closed(math.log(4) / PI, 1.0) == pytest.approx(0.4, abs=1e-15)
    assert hs.kernel_closed(1e-8, 0.5) == pytest.approx(1 / math.sqrt(2), abs=1e-7)
    assert hs.kernel_closed(3, 0.5) == pytest.approx(math.exp(-1.5 * PI) * math.sin(PI / 4), rel=1e-3)
    assert hs.kernel_series(1, 1, 0).value == pytest.approx(math.exp(-PI / 2), abs=1e-16)
    assert hs.kernel_series(0.7, 0.0).value == 0.0
    with pytest.raises(ValueError):
        hs.kernel_closed(0.0, 0.5)
    with pytest.raises(ValueError):
        hs.kernel_series(-1.0, 0.5)


@given(st.floats(0.05, 5.0), st.floats(0.0, 1.0))
def test_kernel_series_within_tail_bound(x, y):
    s = hs.kernel_series(x, y, 50)
    assert abs(s.value - hs.kernel_closed(x, y)) <= s.error_bound + 1e-13


def test_kernel_bound_and_certificate():
    xs = np.linspace(4 / 200, 4, 200)
    ys = np.linspace(1 / 200, 1, 200)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    chk = hs.kernel_bound_check(X, Y)
    assert np.all(chk.slack >= -1e-12)
    assert np.all(chk.certificate >= 0)
    assert chk.holds
    np.testing.assert_allclose(chk.slack_from_certificate, chk.slack, rtol=1e-9, atol=1e-12)
    assert np.all(hs.kernel_bound_check(0.5, np.linspace(0.01, 1, 50)).certificate > 0)


def test_kernel_product_form_near_zero():
    chk = hs.kernel_bound_check(np.full(5, 0.3), np.geomspace(1e-9, 1e-3, 5))
    assert np.all(chk.product <= 1.0)
