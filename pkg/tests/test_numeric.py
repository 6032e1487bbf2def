import random
from fractions import Fraction

import mpmath
import pytest

from finjac.numeric import (
    ModeError,
    Poly,
    common_mode,
    exact_inverse,
    gamma_ratio,
    interpolate,
    newton_binom,
    poly_eval,
)


def test_poly_eval_examples():
    assert poly_eval(Poly([1, 0, -1]), 2) == -3
    assert poly_eval(Poly(), Fraction(5, 3)) == 0
    assert poly_eval(Poly([3, 0, -1]), 1) == 2


def test_poly_eval_rejects_mixed_modes():
    with pytest.raises(ModeError):
        poly_eval(Poly([Fraction(1, 2)]), 0.5)
    with pytest.raises(ModeError):
        common_mode(Fraction(1), mpmath.mpf(1))


def test_poly_trims_trailing_zeros():
    p = Poly([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert Poly([0, 0]).degree == -1


def test_poly_parity_is_validated():
    Poly([1, 0, 3], "even")
    Poly([0, 2], "odd")
    with pytest.raises(ValueError):
        Poly([1, 1], "even")
    with pytest.raises(ValueError):
        Poly([1, 1], "odd")
    assert Poly([0, 0, 1], "even").div_z().parity == "odd"


def test_poly_arithmetic():
    z = Poly.z()
    p = (1 - z * z) * (4 - z * z)
    assert p == Poly([4, 0, -5, 0, 1])
    assert p.derivative() == Poly([0, -10, 0, 4])
    assert (p - p) == 0
    assert -Poly([1]) == -1


def test_newton_binom_examples():
    assert newton_binom(5, 2) == 10
    assert newton_binom(-1, 3) == -1
    assert newton_binom(Fraction(7, 3), 0) == 1
    assert newton_binom(2, 5) == 0


def test_newton_binom_pascal_rule():
    rng = random.Random(11)
    for _ in range(200):
        z = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
        n = rng.randint(1, 20)
        assert newton_binom(z, n) == newton_binom(z - 1, n) + newton_binom(z - 1, n - 1)


def test_newton_binom_integer_path_matches_product():
    for z in range(-8, 9):
        for n in range(0, 8):
            assert newton_binom(z, n) == newton_binom(Fraction(z), n)


def test_gamma_ratio_examples():
    assert gamma_ratio(1, 3, 1) == 6
    assert gamma_ratio(Fraction(2, 7), 4, 4) == 1
    assert gamma_ratio(0, 2, 0) == 0
    with pytest.raises(ValueError):
        gamma_ratio(1, 1, 2)


def test_gamma_ratio_matches_gamma_away_from_poles():
    z = 0.37
    assert gamma_ratio(z, 5, 2) == pytest.approx(
        float(mpmath.gamma(z + 5) / mpmath.gamma(z + 2)), rel=1e-14
    )


def test_rational_round_trip():
    rng = random.Random(5)
    for _ in range(200):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 10**6), rng.randint(1, 10**6))
        assert a * (1 / a) == 1
        assert a.denominator > 0


def test_interpolate_recovers_polynomial():
    p = Poly([Fraction(1, 3), -2, 0, Fraction(5, 7)])
    xs = [Fraction(k, 3) for k in range(4)]
    assert interpolate(xs, [p(x) for x in xs]) == p
    with pytest.raises(ValueError):
        interpolate([1, 1], [0, 0])


def test_exact_inverse():
    import numpy as np

    a = np.array([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]], dtype=object)
    inv = exact_inverse(a)
    assert (a.dot(inv) == np.eye(2, dtype=int)).all()
    with pytest.raises(ZeroDivisionError):
        exact_inverse(np.array([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], dtype=object))
