import math
from fractions import Fraction

import numpy as np
import pytest

from finjac.jacobi import charpoly_oracle
from finjac.jtable import j_entry
from finjac.lineardiag import (
    LinearDiagMatrix,
    SpectralAccuracyError,
    char_at_integer_via_j,
    char_red_at_integer,
    charpoly_closed,
    charpoly_det,
    charpoly_f,
    charpoly_via_antisym,
    ed_coefficients,
    eigen_x,
    k_matrix,
    kw_xz_coefficient,
    rank_one_form,
    reduce_charpoly,
    resolvent,
    resolvent_denominator,
    spectrum,
    sturm_bisection,
    v_basis,
)
from finjac.numeric import Poly, exact_inverse

WS = [Fraction(1), Fraction(-2, 3), Fraction(5, 2), Fraction(1, 7)]


def test_k_matrix_shape():
    k = LinearDiagMatrix(2, 3).to_dense()
    assert k.shape == (5, 5)
    assert list(np.diag(k)) == [-2, -1, 0, 1, 2]
    assert k[0, 1] == k[1, 0] == 3
    with pytest.raises(ValueError):
        LinearDiagMatrix(-1, 1)


def test_charpoly_example_d2():
    w = Fraction(3)
    assert charpoly_closed(2, w)(0) == 4 + 4 * w**2 + 3 * w**4


def test_charpoly_d1():
    w = Fraction(2, 5)
    z = Poly.z()
    assert charpoly_det(1, w) == -z * z * z + z + 2 * w * w * z
    assert charpoly_closed(1, w) == Poly([1 + 2 * w * w, 0, -1])


@pytest.mark.parametrize("d", range(0, 8))
@pytest.mark.parametrize("w", WS)
def test_three_charpoly_routes_agree(d, w):
    closed = charpoly_closed(d, w)
    assert closed == charpoly_via_antisym(d, w)
    assert closed == reduce_charpoly(charpoly_f(d, w), d)
    assert closed == reduce_charpoly(charpoly_det(d, w), d)
    assert closed.degree == 2 * d


def test_sign_convention_d0():
    # K = [0]: det(K - z) = -z and chi_red = 1
    assert charpoly_closed(0, Fraction(4)) == Poly([1])
    assert charpoly_det(0, Fraction(4)) == Poly([0, -1])


@pytest.mark.parametrize("d", range(0, 7))
def test_integer_values(d):
    for w in WS:
        red = charpoly_closed(d, w)
        for n in range(0, d + 4):
            assert char_red_at_integer(d, w, n) == red(n)
        chi = charpoly_det(d, w)
        for n in range(1, d + 1):
            assert char_at_integer_via_j(d, w, n) == chi(n)
            assert chi(n) == (-1) ** (d + 1) * n * red(n)


def test_integer_value_float_mode():
    assert char_red_at_integer(3, 0.5, 2) == pytest.approx(float(char_red_at_integer(3, Fraction(1, 2), 2)))


@pytest.mark.parametrize("d", range(0, 5))
@pytest.mark.parametrize("w", WS[:3])
def test_basis_change(d, w):
    k = k_matrix(d, w).to_dense()
    v = v_basis(d, w).matrix()
    form = rank_one_form(d, w)
    assert (k.dot(v) == v.dot(form.ktilde())).all()
    # the v_s are a basis
    assert (exact_inverse(v).dot(v) == np.eye(2 * d + 1, dtype=int)).all()


def test_rank_one_examples():
    d, w = 3, Fraction(2, 3)
    form = rank_one_form(d, w)
    assert form.b[-1] == w ** (2 * d + 1) / math.factorial(2 * d)
    assert form.a[d] == 0
    for s in range(-d, d + 1):
        assert form.a[s + d] == j_entry(s - d - 1, s + d + 1, w)
    basis = v_basis(d, w)
    k = k_matrix(d, w).to_dense()
    assert all(c == 0 for c in k.dot(np.array(basis.column(0), dtype=object)))


@pytest.mark.parametrize("d", range(0, 5))
def test_ed_combination(d):
    w = Fraction(3, 4)
    basis = v_basis(d, w)
    for ell in range(-d, d + 1):
        c = ed_coefficients(d, w, ell)
        vec = [sum(ci * basis.column(s)[j] for ci, s in zip(c, range(-d, ell + 1))) for j in range(2 * d + 1)]
        # e_ell plus terms in e_(ell+1)..e_d only
        assert vec[: ell + d] == [0] * (ell + d)
        assert vec[ell + d] == 1
    assert vec == [0] * (2 * d) + [1]


@pytest.mark.parametrize("d", range(0, 4))
def test_resolvent_matches_inverse(d):
    w = Fraction(2, 3)
    form = rank_one_form(d, w)
    kt = form.ktilde()
    for z in (Fraction(1, 2), Fraction(-7, 3), Fraction(11, 5)):
        r = resolvent(d, w, z)
        assert (r.dot(kt - z * np.eye(2 * d + 1, dtype=int)) == np.eye(2 * d + 1, dtype=int)).all()


def test_resolvent_denominator_is_charpoly_ratio():
    d, w = 3, Fraction(1, 2)
    chi = charpoly_det(d, w)
    for z in (Fraction(1, 3), Fraction(9, 4)):
        prod = 1
        for k in range(-d, d + 1):
            prod *= k - z
        assert resolvent_denominator(d, w, z) == chi(z) / prod


def test_resolvent_excluded_points():
    with pytest.raises(ZeroDivisionError):
        resolvent(2, Fraction(1), Fraction(-2))
    with pytest.raises(ZeroDivisionError):
        resolvent(1, Fraction(1), Fraction(1))


def test_eigen_x_d1():
    w, z = Fraction(2, 3), Fraction(5, 7)
    x = eigen_x(1, w, z)
    assert x == (1, (z + 1) / w, (z * (z + 1) - w * w) / (w * w))


@pytest.mark.parametrize("d", range(0, 5))
def test_eigen_x_residual(d):
    w = Fraction(3, 5)
    k = k_matrix(d, w).to_dense()
    for z in (Fraction(1, 3), Fraction(-2), Fraction(0), Fraction(7, 2)):
        x = np.array(eigen_x(d, w, z), dtype=object)
        r = k.dot(x) - z * x
        assert all(v == 0 for v in r[:-1])
        assert r[-1] == kw_xz_coefficient(d, w, z)
        # vanishing of that coefficient is exactly the characteristic equation
        assert (r[-1] == 0) == (charpoly_det(d, w)(z) == 0)


def test_sturm_bisection_against_numpy():
    rng = np.random.default_rng(0)
    for _ in range(20):
        n = int(rng.integers(1, 40))
        diag = rng.normal(size=n)
        off = rng.normal(size=n - 1)
        a = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
        assert np.allclose(np.sort(sturm_bisection(diag, off)), np.linalg.eigvalsh(a), atol=1e-12)


def test_spectrum_d1():
    res = spectrum(1, 1.0)
    assert res.eigenvalues == pytest.approx([-math.sqrt(3), 0.0, math.sqrt(3)], abs=1e-15)


@pytest.mark.parametrize("d", [0, 1, 2, 5, 13, 30])
@pytest.mark.parametrize("w", [-7.25, -0.4, 0.01, 1.0, 9.5])
def test_spectrum_properties(d, w):
    res = spectrum(d, w)
    n = 2 * d + 1
    lam = res.eigenvalues
    radius = d + 2 * abs(w)
    k = k_matrix(d, w).to_dense().astype(float)
    assert np.allclose(lam, np.linalg.eigvalsh(k), atol=1e-10 * radius)
    assert np.all(np.diff(lam) > 0)
    assert lam[d] == 0
    assert np.array_equal(lam, -lam[::-1])
    if d:
        assert np.all(np.abs(np.delete(lam, d)) >= 1)
    vec = res.eigenvectors
    assert vec.shape == (n, n)
    assert np.allclose(vec.T @ vec, np.eye(n), atol=1e-10)
    assert np.max(np.linalg.norm(k @ vec - vec * lam, axis=0)) <= 1e-12 * radius


def test_spectrum_w_zero():
    res = spectrum(3, 0.0)
    assert list(res.eigenvalues) == [-3, -2, -1, 0, 1, 2, 3]


def test_spectrum_tolerance_failure():
    with pytest.raises(SpectralAccuracyError):
        spectrum(4, 2.0, tol=1e-30)


@pytest.mark.parametrize("d", range(0, 6))
def test_k_on_basis_vectors(d):
    w = Fraction(-4, 3)
    k = k_matrix(d, w).to_dense()
    basis = v_basis(d, w)
    n = 2 * d + 1
    for s in range(-d, d + 1):
        v = np.array(basis.column(s), dtype=object)
        expect = s * v
        expect[n - 1] -= w * j_entry(s - d - 1, s + d + 1, w)
        assert all(a == b for a, b in zip(k.dot(v), expect))
