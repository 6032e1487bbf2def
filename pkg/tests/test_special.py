import math
from fractions import Fraction

import mpmath
import pytest

from finjac.ffunc import f_finite
from finjac.special import (
    bessel_j,
    bessel_j_series,
    bessel_ratio_cf,
    bessel_y_via_derivative,
    f_closed_int,
    f_closed_nu,
    f_closed_nu_scaled,
    f_geometric_series,
    jy_closed_part,
    jy_residual,
    q_exp,
    q_phi01,
)


ORDERS = [0.0, 0.5, 1.0, 2.5, 7.0, -0.5, -1.3, 20.0]
# negative w only with integer order, where w^nu stays real
CASES = [(nu, w) for nu in ORDERS for w in (0.1, 1.0, 2.5, 6.0)] + [(nu, -1.7) for nu in (0.0, 1.0, 7.0, 20.0)]


@pytest.mark.parametrize("nu,w", CASES)
def test_bessel_j_matches_mpmath(nu, w):
    ref = float(mpmath.besselj(nu, 2 * w))
    scale = max(1.0, float(abs(mpmath.power(w, nu) * mpmath.rgamma(nu + 1))))
    assert abs(bessel_j(nu, w) - ref) <= 1e-13 * scale


def test_bessel_half_order_is_elementary():
    assert bessel_j(0.5, 1.0) == pytest.approx(math.sin(2) / math.sqrt(math.pi), abs=1e-14)


def test_bessel_mp_mode():
    with mpmath.workdps(40):
        val = bessel_j(mpmath.mpf(1) / 3, mpmath.mpf("0.75"))
        assert abs(val - mpmath.besselj(mpmath.mpf(1) / 3, mpmath.mpf("1.5"))) < mpmath.mpf(10) ** -36


def test_bessel_complex_argument():
    w = 0.8 + 0.6j
    assert abs(bessel_j(1.0, w) - complex(mpmath.besselj(1, 2 * w))) <= 1e-13


def test_bessel_rejects_bad_input():
    with pytest.raises(ValueError):
        bessel_j(-2.0, 1.0)
    with pytest.raises(TypeError):
        bessel_j(Fraction(1), Fraction(1))


@pytest.mark.parametrize("nu", [0.0, 1.5, 3.0])
def test_series_agrees(nu):
    for w in (0.3, 1.1, 4.0):
        assert abs(bessel_j_series(nu, w) - float(mpmath.besselj(nu, 2 * w))) <= 1e-13


@pytest.mark.parametrize("nu", [0.0, 0.5, 2.0])
def test_ratio_cf(nu):
    for z in (0.5, 1.0, 2.0):
        ref = float(mpmath.besselj(nu + 1, z) / mpmath.besselj(nu, z))
        assert abs(bessel_ratio_cf(nu, z) - ref) <= 1e-13


def test_closed_nu_examples():
    assert f_closed_nu(Fraction(0), 2, Fraction(1)) == Fraction(1, 2)
    assert f_closed_nu(Fraction(0), 0, Fraction(3)) == 1
    with pytest.raises(ValueError):
        f_closed_nu(-2, 3, 1)


def test_closed_nu_matches_finite_sum():
    for nu in (Fraction(1, 3), Fraction(-5, 2), Fraction(7)):
        for n in range(0, 9):
            for w in (Fraction(2, 5), Fraction(-3)):
                direct = f_finite([w / (nu + k) for k in range(1, n + 1)], mode="exact")
                assert f_closed_nu(nu, n, w) == direct


def test_scaled_form_is_finite_at_excluded_orders():
    # at nu = -1 the scaled value is still a polynomial in w
    assert f_closed_nu_scaled(Fraction(-1), 3, Fraction(1)) is not None


def test_closed_int_examples():
    assert f_closed_int(1, 3, Fraction(1)) == Fraction(5, 6)
    assert f_closed_int(4, 4, Fraction(9)) == 1
    for m in range(0, 6):
        for n in range(m, 12):
            w = Fraction(3, 4)
            assert f_closed_int(m, n, w) == f_finite([w / k for k in range(m + 1, n + 1)], mode="exact")
    with pytest.raises(ValueError):
        f_closed_int(3, 2, 1)


def test_q_phi01_examples():
    assert q_phi01(0.0, 0.7) == pytest.approx(1.7)
    assert q_phi01(Fraction(1, 3), Fraction(0)) == 1
    with pytest.raises(ValueError):
        q_phi01(1.0, 0.5)


def test_q_exp_tends_to_exp():
    assert abs(q_exp(0.99, 1.0) - math.e) <= 0.05
    assert abs(q_exp(0.999, 1.0) - math.e) < abs(q_exp(0.99, 1.0) - math.e)


def test_q_phi01_against_mpmath():
    q, z = 0.3, 0.8
    ref = mpmath.qhyper([], [0], q, z)
    assert q_phi01(q, z) == pytest.approx(float(ref), rel=1e-14)


def test_geometric_series_is_q_ratio():
    t, w = 0.6, 0.9
    q = t * t
    z = -t * w * w
    # F of the geometric sequence against 0phi1 with q = t^2
    assert f_geometric_series(t, w) == pytest.approx(q_phi01(q, z), rel=1e-14)


def test_y_via_derivative():
    assert bessel_y_via_derivative(0, 1.0) == pytest.approx(0.5103756726, abs=1e-8)
    assert bessel_y_via_derivative(1, 1.0) == pytest.approx(-0.1070324315, abs=1e-8)
    for n in range(0, 4):
        ref = float(mpmath.bessely(n, 3.0))
        coarse = abs(bessel_y_via_derivative(n, 1.5, 1e-2) - ref)
        fine = abs(bessel_y_via_derivative(n, 1.5, 1e-3) - ref)
        assert fine < coarse
        assert fine <= 1e-6


def test_jy_closed_part_shape():
    # n = m - 1: no F term; pi J_1(2w) Y_1(2w) -> -1
    w = Fraction(1, 3)
    assert jy_closed_part(1, 0, w) == -1
    with pytest.raises(ValueError):
        jy_closed_part(3, 0, w)


@pytest.mark.parametrize("mn", [(0, 0), (0, 2), (1, 1), (1, 3), (1, 0), (2, 2)])
def test_jy_residual_order(mn):
    m, n = mn
    scaled = []
    for w in ("1e-2", "1e-3", "1e-4", "1e-5"):
        wm = mpmath.mpf(w)
        r = jy_residual(m, n, w)
        scaled.append(abs(r) / (wm ** (m + n + 1) * abs(mpmath.log(wm))))
    assert max(scaled) / min(scaled) < 10
    assert max(scaled) < 10


def test_jy_residual_against_mpmath():
    m, n = 1, 2
    with mpmath.workdps(50):
        w = mpmath.mpf("0.2")
        ref = mpmath.pi * mpmath.besselj(m, 2 * w) * mpmath.bessely(n + 1, 2 * w) - jy_closed_part(m, n, w)
    assert abs(jy_residual(m, n, "0.2") - ref) < mpmath.mpf(10) ** -20
