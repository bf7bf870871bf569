import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sharpconj.trigpoly import (
    LOWER_BOUND_OF_MIN,
    PolynomialError,
    RealTrig,
    TrigPoly,
    as_real_trig,
    certified_min,
    certified_sup_abs,
    certified_sup_modulus,
    conjugate,
    default_grid,
    grid_eval,
    lipschitz_bound,
    lp_norm,
    parseval_l2,
    power_mean,
    real_grid_eval,
)

from conftest import trig_polys


# --- construction ---------------------------------------------------------

def test_rejects_bad_frequencies():
    with pytest.raises(PolynomialError):
        TrigPoly([0, 1], [1, 1])
    with pytest.raises(PolynomialError) as exc:
        TrigPoly([1, 3, 3], [1, 1, 1])
    assert exc.value.index == 2
    with pytest.raises(PolynomialError):
        TrigPoly([], [])
    with pytest.raises(PolynomialError):
        TrigPoly([1.5], [1])


def test_json_round_trip():
    P = TrigPoly([1, 4, 9], [1 + 2j, -0.5, 3j])
    Q = TrigPoly.from_json(P.to_json())
    assert np.array_equal(P.freqs, Q.freqs) and np.array_equal(P.coeffs, Q.coeffs)


@pytest.mark.parametrize("data,index", [
    ({"terms": [{"n": 1, "re": 1}, {"n": 1, "re": 2}]}, 1),
    ({"terms": [{"n": 2, "re": 1}, {"n": 0, "re": 2}]}, 1),
    ({"terms": [{"n": "x", "re": 1}]}, 0),
    ({"terms": [{"n": 1, "re": 1}, {"n": 2, "re": "abc"}]}, 1),
])
def test_json_errors_name_the_term(data, index):
    with pytest.raises(PolynomialError) as exc:
        TrigPoly.from_json(data)
    assert exc.value.index == index
    assert f"term {index}" in str(exc.value)


# --- conjugate --------------------------------------------------------------

def test_conjugate_single_terms():
    c = conjugate(as_real_trig([(1, 1.0, 0.0)]))
    assert c.cos_coeffs.tolist() == [0.0] and c.sin_coeffs.tolist() == [1.0]
    s = conjugate(as_real_trig([(1, 0.0, 1.0)]))
    assert s.cos_coeffs.tolist() == [-1.0] and s.sin_coeffs.tolist() == [0.0]


def test_conjugate_of_real_part_is_imaginary_part():
    # Re(a e^{inx}), a = alpha + i beta  ->  alpha sin(nx) + beta cos(nx)
    P = TrigPoly([3], [2.0 + 5.0j])
    c = conjugate(P.real_part())
    assert c.sin_coeffs[0] == 2.0 and c.cos_coeffs[0] == 5.0
    x = np.linspace(0, 2 * np.pi, 17)
    np.testing.assert_allclose(c(x), P(x).imag, atol=1e-13)


def test_conjugate_rejects_nonzero_mean():
    with pytest.raises(ValueError):
        conjugate(as_real_trig([(1, 1.0, 0.0)], mean=0.5))


@given(trig_polys())
def test_conjugation_is_an_anti_involution(P):
    f = P.real_part()
    ff = conjugate(conjugate(f))
    assert np.array_equal(ff.cos_coeffs, -f.cos_coeffs)
    assert np.array_equal(ff.sin_coeffs, -f.sin_coeffs)


# --- grid evaluation -------------------------------------------------------

def test_grid_eval_single_frequency():
    vals = grid_eval(TrigPoly([1], [1.0]), 8)
    np.testing.assert_allclose(vals, np.exp(2j * np.pi * np.arange(8) / 8), atol=1e-15)


def test_grid_eval_matches_direct_sum():
    P = TrigPoly([1, 2], [1.0, 1.0])
    x = 2 * np.pi * np.arange(8) / 8
    direct = np.exp(1j * x) + np.exp(2j * x)
    np.testing.assert_allclose(grid_eval(P, 8), direct, rtol=1e-12, atol=1e-14)


@given(trig_polys(max_freq=60))
def test_grid_eval_direct_and_refined_grids_agree(P):
    K = 128
    vals = grid_eval(P, K)
    direct = P(2 * np.pi * np.arange(K) / K)
    scale = np.sum(np.abs(P.coeffs))
    np.testing.assert_allclose(vals, direct, atol=1e-12 * scale)
    np.testing.assert_allclose(grid_eval(P, 2 * K)[::2], vals, atol=1e-12 * scale)


def test_grid_eval_rejects_aliasing_and_non_pow2():
    P = TrigPoly([8], [1.0])
    with pytest.raises(ValueError, match="aliasing"):
        grid_eval(P, 8)
    with pytest.raises(ValueError, match="power of two"):
        grid_eval(P, 12)


def test_default_grid():
    assert default_grid(1) == 4096
    assert default_grid(256) == 4096
    assert default_grid(300) == 8192


# --- Lipschitz bound --------------------------------------------------------

def test_lipschitz_examples():
    assert lipschitz_bound(as_real_trig([(1, 1.0, 0.0)])) == 1.0
    assert lipschitz_bound(as_real_trig([(2, 0.0, 3.0)])) == 6.0
    f = as_real_trig([(1, 1.0, 0.0), (2, 1.0, 0.0)])
    assert lipschitz_bound(f) == 3.0
    x = np.linspace(0, 2 * np.pi, 200001)
    assert np.max(np.abs(f.derivative(x))) <= 3.0


@given(trig_polys())
def test_lipschitz_bounds_derivative(P):
    f = P.real_part()
    x = np.linspace(0, 2 * np.pi, 4001)
    assert np.max(np.abs(f.derivative(x))) <= lipschitz_bound(f) * (1 + 1e-12)


# --- certified extrema ------------------------------------------------------

def test_min_of_cosine():
    m = certified_min(as_real_trig([(1, 1.0, 0.0)]))
    assert m.direction == LOWER_BOUND_OF_MIN
    assert m.contains(-1.0)
    assert abs(m.arg - math.pi) < 1e-9
    h = 2 * math.pi / m.grid
    assert m.error_radius == pytest.approx(0.5 * h * 1.0, rel=1e-15)


def test_min_of_two_cosines_closed_form():
    # cos x = 1/4 is the stationary point: f = 1/4 + (2/16 - 1) = -9/8
    m = certified_min(as_real_trig([(1, 1.0, 0.0), (2, 1.0, 0.0)]))
    assert m.contains(-9 / 8)
    assert m.refined_value == pytest.approx(-9 / 8, abs=1e-13)


def test_min_rejects_coarse_grid():
    with pytest.raises(ValueError, match="coarse"):
        certified_min(as_real_trig([(16, 1.0, 0.0)]), 128)


def test_rudin_shapiro_min_enclosures_nest():
    from sharpconj.families import flat_polynomial
    f = flat_polynomial(16).real_part()
    a, b = certified_min(f, 256), certified_min(f, 512)
    assert b.upper - b.lower <= a.upper - a.lower
    assert a.lower <= b.lower and b.upper <= a.upper
    assert a.upper - a.lower <= 2 * math.pi / 256 * lipschitz_bound(f)


def test_sup_examples():
    s = certified_sup_abs(as_real_trig([(1, 0.0, 1.0)]))
    assert s.contains(1.0)
    s = certified_sup_abs(as_real_trig([(1, 4.0, 3.0)]))
    assert s.contains(5.0)
    assert s.refined_value == pytest.approx(5.0, abs=1e-13)


def test_sup_of_conjugate_stable_under_refinement():
    f = TrigPoly([1, 3], [1.0, 1.0]).imag_part()
    a, b = certified_sup_abs(f, 4096), certified_sup_abs(f, 8192)
    assert a.lower <= b.lower <= b.upper <= a.upper


@given(trig_polys(max_freq=30), st.sampled_from(["lipschitz", "bernstein"]))
def test_enclosures_contain_dense_truth(P, cert):
    f = P.real_part()
    truth = real_grid_eval(f, 1 << 16)
    for K in (512, 1024):
        m = certified_min(f, K, cert)
        s = certified_sup_abs(f, K, cert)
        # dense grid values only bound the truth from one side
        assert m.lower <= truth.min() + 1e-12
        assert s.upper >= np.abs(truth).max() - 1e-12


@given(trig_polys(max_freq=30))
def test_lipschitz_enclosures_nest(P):
    # K > 8n: the grid error h^2 n L / 8 stays below the radius saved, L h / 4
    f = P.real_part()
    tol = 1e-12 * (1 + lipschitz_bound(f))
    m1, m2 = certified_min(f, 512), certified_min(f, 1024)
    s1, s2 = certified_sup_abs(f, 512), certified_sup_abs(f, 1024)
    assert m1.lower - tol <= m2.lower and m2.upper <= m1.upper + tol
    assert s1.lower - tol <= s2.lower and s2.upper <= s1.upper + tol


@given(trig_polys(max_freq=30), st.floats(0, 2 * math.pi))
def test_translation_invariance(P, tau):
    f, g = P.real_part(), P.shifted(tau).real_part()
    a, b = certified_min(f, 1024), certified_min(g, 1024)
    assert a.lower <= b.upper + 1e-12 and b.lower <= a.upper + 1e-12
    a, b = certified_sup_abs(f, 1024), certified_sup_abs(g, 1024)
    assert a.lower <= b.upper + 1e-12 and b.lower <= a.upper + 1e-12


@given(trig_polys(max_freq=30), st.integers(-4, 4))
def test_scaling_covariance_exact_for_powers_of_two(P, e):
    c = 2.0 ** e
    f = P.real_part()
    for op in (certified_min, certified_sup_abs):
        a, b = op(f, 512), op(f.scaled(c), 512)
        assert b.grid_value == c * a.grid_value
        assert b.error_radius == c * a.error_radius
        assert b.refined_value == pytest.approx(c * a.refined_value, rel=1e-12, abs=1e-300)


def test_scaling_covariance_general_factor():
    f = TrigPoly([2, 5, 7], [1.0, -0.5j, 0.25 + 0.25j]).real_part()
    for op in (certified_min, certified_sup_abs):
        a, b = op(f, 512), op(f.scaled(3.7), 512)
        assert b.grid_value == pytest.approx(3.7 * a.grid_value, rel=1e-14)
        assert b.error_radius == pytest.approx(3.7 * a.error_radius, rel=1e-14)
        assert b.refined_value == pytest.approx(3.7 * a.refined_value, rel=1e-12)


def test_bernstein_certificate_is_tighter_at_high_degree():
    from sharpconj.families import flat_polynomial
    P = flat_polynomial(1024)
    lip = certified_sup_abs(P.imag_part(), 16 * 1024, "lipschitz")
    ber = certified_sup_abs(P.imag_part(), 16 * 1024, "bernstein")
    assert ber.grid_value == lip.grid_value
    assert ber.error_radius < 0.05 * lip.error_radius


def test_sup_modulus():
    P = TrigPoly([1, 2], [1.0, 1.0])
    s = certified_sup_modulus(P, 64)
    assert s.contains(2.0)
    assert certified_sup_modulus(P, 64, "bernstein").contains(2.0)


# --- norms -------------------------------------------------------------------

def test_lp_norm_examples():
    sinx = as_real_trig([(1, 0.0, 1.0)])
    assert lp_norm(sinx, 2) == pytest.approx(0.5, abs=1e-15)
    # Wallis: (1/2pi) int sin^4 = 3/8
    assert lp_norm(sinx, 4) == pytest.approx(3 / 8, abs=1e-15)
    assert lp_norm(sinx, 4, root=True) == pytest.approx((3 / 8) ** 0.25, abs=1e-15)
    with pytest.raises(ValueError):
        lp_norm(sinx, 1.0)


def test_power_mean_error_estimate_is_small_for_smooth_powers():
    f = TrigPoly([1, 3, 4], [1.0, 0.5j, -0.25]).imag_part()
    val, err = power_mean(f, 3.0, 1024)
    dense = float(np.mean(np.abs(real_grid_eval(f, 1 << 16)) ** 3))
    assert abs(val - dense) <= err


def test_parseval_examples():
    assert parseval_l2(TrigPoly([1], [1.0])) == 0.5
    assert parseval_l2(TrigPoly(range(1, 11), [1.0] * 10)) == 5.0
    assert parseval_l2(TrigPoly([5], [3 + 4j])) == 12.5


@given(trig_polys(max_freq=60))
def test_parseval_matches_trapezoid(P):
    K = 1 << (8 * P.degree).bit_length()
    scale = max(1.0, parseval_l2(P))
    assert abs(lp_norm(P.imag_part(), 2, K) - parseval_l2(P)) <= 1e-10 * scale
    assert abs(lp_norm(P.real_part(), 2, K) - parseval_l2(P)) <= 1e-10 * scale


def test_real_trig_mean_in_evaluation():
    f = RealTrig([1], [1.0], [0.0], mean=2.0)
    np.testing.assert_allclose(real_grid_eval(f, 16), 2.0 + np.cos(2 * np.pi * np.arange(16) / 16), atol=1e-14)


@given(trig_polys(max_freq=20), st.sampled_from([1.1, 1.5, 2.5, 3.0, 4.7]))
def test_power_mean_estimate_covers_dense_truth(P, p):
    f = P.imag_part()
    val, err = power_mean(f, p, 1024)
    dense = float(np.mean(np.abs(real_grid_eval(f, 1 << 18)) ** p))
    assert abs(val - dense) <= err + 1e-13 * dense
