"""The matrix K(w) = diag(-d, ..., d) + w E+ + w E-.

Rows and columns are indexed ``-d..d``; in arrays, index ``j`` lives at
position ``j + d``.  Most functions are exact for rational ``w`` and ``z``.
:func:`spectrum` is the float-mode eigen-solver: Sturm bisection on the
tridiagonal recurrence, Newton polish on the closed characteristic
polynomial, eigenvectors from the polynomial form of ``x(z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .ffunc import f_finite
from .jacobi import JacobiMatrix, charpoly_antisym, charpoly_oracle
from .jtable import j_entry
from .numeric import (
    EXACT,
    Poly,
    as_matrix,
    common_mode,
    gamma_ratio,
    interpolate,
    lift,
    rational,
)
from .special import f_closed_nu_scaled

__all__ = [
    "LinearDiagMatrix",
    "BasisMatrix",
    "RankOneForm",
    "SpectralResult",
    "SpectralAccuracyError",
    "k_matrix",
    "v_basis",
    "ed_coefficients",
    "rank_one_form",
    "resolvent",
    "resolvent_denominator",
    "charpoly_closed",
    "charpoly_via_antisym",
    "charpoly_f",
    "charpoly_det",
    "reduce_charpoly",
    "char_red_at_integer",
    "char_at_integer_via_j",
    "eigen_x",
    "kw_xz_coefficient",
    "spectrum",
]


def _check_d(d: int):
    if d < 0:
        raise ValueError("d must be nonnegative")


def _check_w(w):
    if w == 0:
        raise ValueError("w must be nonzero")


@dataclass(frozen=True)
class LinearDiagMatrix:
    """K(w) of size ``2d+1``."""

    d: int
    w: object

    def __post_init__(self):
        _check_d(self.d)

    def jacobi(self) -> JacobiMatrix:
        return JacobiMatrix(tuple(range(-self.d, self.d + 1)), self.w, centered=True)

    def to_dense(self):
        return self.jacobi().to_dense()


def k_matrix(d: int, w) -> JacobiMatrix:
    """K(w) as a centered :class:`JacobiMatrix`."""
    return LinearDiagMatrix(d, w).jacobi()


@dataclass(frozen=True)
class BasisMatrix:
    """The vectors ``v_s``, ``s = -d..d``; ``columns[s + d][j + d] = J(s - j, s + d + 1)``."""

    d: int
    w: object
    columns: tuple

    def column(self, s: int) -> tuple:
        return self.columns[s + self.d]

    def matrix(self):
        n = 2 * self.d + 1
        mode = common_mode(self.w)
        return as_matrix([[self.columns[c][r] for c in range(n)] for r in range(n)], mode)


def v_basis(d: int, w) -> BasisMatrix:
    """Columns ``v_s = (J(s+d, n), J(s+d-1, n), ..., J(s-d, n))`` with ``n = s+d+1``."""
    _check_d(d)
    _check_w(w)
    cols = []
    for s in range(-d, d + 1):
        n = s + d + 1
        cols.append(tuple(j_entry(s - j, n, w) for j in range(-d, d + 1)))
    return BasisMatrix(d, w, tuple(cols))


def ed_coefficients(d: int, w, ell: int | None = None) -> tuple:
    """Coefficients ``c_s`` (``s = -d..ell``) of the triangular combination.

    ``w^(d+ell) sum_s (-1)^(ell+s) / ((d+s)! (ell-s)!) v_s`` lies in
    ``e_ell + span{e_(ell+1), ..., e_d}``; for ``ell = d`` it equals ``e_d``.
    """
    if ell is None:
        ell = d
    mode = common_mode(w)
    out = []
    for s in range(-d, ell + 1):
        c = rational((-1) ** ((ell + s) % 2), math.factorial(d + s) * math.factorial(ell - s), mode)
        out.append(c * w ** (d + ell))
    return tuple(out)


@dataclass(frozen=True)
class RankOneForm:
    """``K~ = K0 - b a^T``, the matrix of K(w) in the basis ``v_s``."""

    k0_diag: tuple
    a: tuple
    b: tuple

    def ktilde(self):
        n = len(self.k0_diag)
        mode = common_mode(self.a, self.b)
        rows = [
            [(self.k0_diag[i] if i == j else 0) - self.b[i] * self.a[j] for j in range(n)]
            for i in range(n)
        ]
        return as_matrix([[lift(v, mode) for v in r] for r in rows], mode)


def rank_one_form(d: int, w) -> RankOneForm:
    """``alpha_s = J(s-d-1, s+d+1)``, ``beta_s = (-1)^(d+s) w^(2d+1) / ((d+s)! (d-s)!)``."""
    _check_d(d)
    _check_w(w)
    mode = common_mode(w)
    a = tuple(j_entry(s - d - 1, s + d + 1, w) for s in range(-d, d + 1))
    b = tuple(
        rational((-1) ** (d + s), math.factorial(d + s) * math.factorial(d - s), mode)
        * w ** (2 * d + 1)
        for s in range(-d, d + 1)
    )
    return RankOneForm(tuple(range(-d, d + 1)), a, b)


def resolvent_denominator(d: int, w, z, form: RankOneForm | None = None):
    """``1 - a^T (K0 - z)^(-1) b``."""
    form = form or rank_one_form(d, w)
    return 1 - sum(al * be / (k - z) for k, al, be in zip(form.k0_diag, form.a, form.b))


def resolvent(d: int, w, z):
    """``(K~(w) - z)^(-1)`` from the rank-one update formula.

    ``R0 + R0 b a^T R0 / (1 - a^T R0 b)`` with ``R0 = (K0 - z)^(-1)``.
    Raises ``ZeroDivisionError`` when ``z`` is an integer in ``[-d, d]`` or the
    denominator vanishes.
    """
    if any(z == k for k in range(-d, d + 1)):
        raise ZeroDivisionError(f"z={z} is an eigenvalue of K0")
    form = rank_one_form(d, w)
    mode = common_mode(w, z)
    r0 = [1 / lift(k - z, mode) for k in form.k0_diag]
    denom = resolvent_denominator(d, w, z, form)
    if denom == 0:
        raise ZeroDivisionError(f"1 - a^T (K0 - z)^-1 b vanishes at z={z}")
    rb = [r * be for r, be in zip(r0, form.b)]
    ar = [al * r for al, r in zip(form.a, r0)]
    n = 2 * d + 1
    rows = [
        [(r0[i] if i == j else 0) + rb[i] * ar[j] / denom for j in range(n)] for i in range(n)
    ]
    return as_matrix([[lift(v, mode) for v in r] for r in rows], mode)


def charpoly_closed(d: int, w) -> Poly:
    """``chi_red(z) = sum_s binom(2d-s+1, s) w^(2s) prod_{k=1}^{d-s} (k^2 - z^2)``."""
    _check_d(d)
    total = Poly()
    prod = Poly([1])
    # s runs downwards so the product gains one factor per step
    for s in range(d, -1, -1):
        if s < d:
            k = d - s
            prod = prod * Poly([k * k, 0, -1])
        total = total + prod * (math.comb(2 * d - s + 1, s) * w ** (2 * s))
    return total.with_parity("even")


def charpoly_via_antisym(d: int, w) -> Poly:
    """chi_red through the antisymmetric-diagonal formula with ``lambda_k = k``."""
    _check_d(d)
    return charpoly_antisym(list(range(1, d + 1)), w)


def charpoly_f(d: int, w) -> Poly:
    """``chi(z) = -z prod_k (z^2 - k^2) F(w/(z-d), ..., w/(z+d))`` as an odd polynomial.

    Interpolated exactly at the ``2d+2`` half-integer nodes ``+-(2i+1)/2``.
    """
    _check_d(d)
    mode = common_mode(w)
    xs = []
    for i in range(d + 1):
        h = rational(2 * i + 1, 2, mode)
        xs.extend([h, -h])
    ys = []
    for z in xs:
        prod = -z
        for k in range(1, d + 1):
            prod = prod * (z * z - k * k)
        ys.append(prod * f_finite([w / (z + j) for j in range(-d, d + 1)], mode=mode))
    poly = interpolate(xs, ys)
    return poly.with_parity("odd") if mode in (None, EXACT) else poly


def charpoly_det(d: int, w) -> Poly:
    """``det(K(w) - z)`` from the determinant recurrence."""
    return charpoly_oracle(k_matrix(d, w))


def reduce_charpoly(chi: Poly, d: int) -> Poly:
    """``chi_red = (-1)^(d+1) chi / z``."""
    out = chi.div_z() * (-1) ** (d + 1)
    return out if chi.parity is None else out.with_parity("even")


def char_red_at_integer(d: int, w, n: int):
    """chi_red at a nonnegative integer from the closed sums.

    ``n = 0``: ``sum_s ((d-s)!)^2 (2d-s+1)! / (s! (2d-2s+1)!) w^(2s)``.
    ``n >= 1``: ``(1/n) sum_{k=0}^{n-1} (-1)^k (2k+1)! binom(n+k, 2k+1) binom(d+k+1, 2k+1) w^(2d-2k)``;
    the terms with ``k > d`` vanish, so this holds for every ``n >= 1``.
    """
    _check_d(d)
    if n < 0:
        raise ValueError("n must be nonnegative")
    mode = common_mode(w)
    total = 0
    if n == 0:
        for s in range(d + 1):
            num = math.factorial(d - s) ** 2 * math.factorial(2 * d - s + 1)
            den = math.factorial(s) * math.factorial(2 * d - 2 * s + 1)
            total += (num // den) * w ** (2 * s)
        return total
    for k in range(min(n - 1, d) + 1):
        c = math.factorial(2 * k + 1) * math.comb(n + k, 2 * k + 1) * math.comb(d + k + 1, 2 * k + 1)
        total += (-1) ** k * c * w ** (2 * d - 2 * k)
    return total / n if mode else Fraction(total, n)


def char_at_integer_via_j(d: int, w, n: int):
    """``chi(n) = (-1)^(d+n) w^(2d+1) J(d-n+1, d+n+1)`` for ``1 <= n <= d``."""
    if not 1 <= n <= d:
        raise ValueError("need 1 <= n <= d")
    return (-1) ** (d + n) * w ** (2 * d + 1) * j_entry(d - n + 1, d + n + 1, w)


def _xi_coefficients(d: int, k: int) -> list[int]:
    m = d + k
    return [
        math.factorial(m - s) // (math.factorial(s) * math.factorial(m - 2 * s))
        for s in range(m // 2 + 1)
    ]


def eigen_x(d: int, w, z) -> tuple:
    """``x(z) = (xi_{-d}(z), ..., xi_d(z))`` from the polynomial form.

    ``xi_k(z) = w^(-d-k) sum_s (-1)^s (d+k-s)!/(s! (d+k-2s)!) w^(2s) prod_{j=s}^{d+k-s-1} (z+d-j)``.
    The products are built from the innermost ``s`` outwards, so no division
    by ``z``-dependent quantities occurs and integer ``z`` is harmless.
    """
    _check_d(d)
    _check_w(w)
    w2 = w * w
    out = []
    for k in range(-d, d + 1):
        m = d + k
        coeffs = _xi_coefficients(d, k)
        s_top = m // 2
        prod = gamma_ratio(z, d - s_top + 1, -k + s_top + 1)
        acc = 0
        for s in range(s_top, -1, -1):
            if s < s_top:
                # widen prod_{i=-k+s+1}^{d-s} (z+i) by its two new end factors
                prod = prod * (z + d - s) * (z - k + s + 1)
            acc = acc * w2 + (-1) ** s * coeffs[s] * prod
        # acc = sum_s (-1)^s c_s w^(2s) prod_s, assembled Horner-style in w^2
        out.append(acc / w**m if m else acc)
    return tuple(out)


def kw_xz_coefficient(d: int, w, z):
    """The ``e_d`` coefficient of ``(K(w) - z) x(z)``.

    ``-w^(-2d) Gamma(z+d+1)/Gamma(z-d) F(w/(z-d), ..., w/(z+d))``, using the
    pole-free product form of the Gamma ratio times F.
    """
    return -f_closed_nu_scaled(z - d - 1, 2 * d + 1, w) / w ** (2 * d)


# -- spectrum ------------------------------------------------------------------


class SpectralAccuracyError(ArithmeticError):
    """A computed eigenpair misses the requested residual tolerance."""


@dataclass(frozen=True)
class SpectralResult:
    """Eigenpairs of K(w): sorted eigenvalues, eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    asymmetry: float


def _sturm_counts(diag: np.ndarray, off2: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Number of eigenvalues below each entry of ``x`` (LDL^T sign count)."""
    # zero pivots are nudged to -pivmin, as in LAPACK's dstebz
    pivmin = np.finfo(float).tiny * max(1.0, float(np.max(off2, initial=0.0)))
    q = diag[0] - x
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(int)
    for i in range(1, len(diag)):
        q = diag[i] - x - off2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def sturm_bisection(diag, off, tol: float = 0.0) -> np.ndarray:
    """All eigenvalues of a real symmetric tridiagonal matrix by bisection.

    Every eigenvalue index is bracketed inside the Gershgorin interval and
    bisected simultaneously until the brackets stop shrinking (or reach
    ``tol``).
    """
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    n = len(diag)
    if n == 1:
        return diag.copy()
    off2 = off * off
    rad = np.abs(np.concatenate([off, [0.0]])) + np.abs(np.concatenate([[0.0], off]))
    lo = np.full(n, np.min(diag - rad))
    hi = np.full(n, np.max(diag + rad))
    idx = np.arange(n)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        done = (hi - lo <= tol) | (mid <= lo) | (mid >= hi)
        if done.all():
            break
        below = _sturm_counts(diag, off2, mid)
        # eigenvalue number idx (0-based) is < mid iff more than idx lie below
        left = below > idx
        hi = np.where(left & ~done, mid, hi)
        lo = np.where(~left & ~done, mid, lo)
    return 0.5 * (lo + hi)


def _char_red_and_derivative(coeffs_w, z):
    """chi_red and d/dz chi_red from nested factors ``(m^2 - z^2)``.

    ``coeffs_w[s] = binom(2d-s+1, s) w^(2s)``;
    chi_red = c_d + (1 - z^2)(c_{d-1} + (4 - z^2)(... + (d^2 - z^2) c_0)).
    """
    d = len(coeffs_w) - 1
    acc = coeffs_w[0]
    dacc = 0
    z2 = z * z
    for m in range(d, 0, -1):
        t = m * m - z2
        dacc = -2 * z * acc + t * dacc
        acc = coeffs_w[d - m + 1] + t * acc
    return acc, dacc


def _polish(lam: float, d: int, w_mp, radius: float, dps: int):
    """Newton on chi_red in mpmath at ``dps`` digits, starting from ``lam``."""
    with mpmath.workdps(dps):
        coeffs = [math.comb(2 * d - s + 1, s) * w_mp ** (2 * s) for s in range(d + 1)]
        z = mpmath.mpf(lam)
        step_tol = mpmath.mpf(10) ** (-dps + 5) * radius
        for _ in range(200):
            f, df = _char_red_and_derivative(coeffs, z)
            if df == 0:
                break
            step = f / df
            z -= step
            if abs(step) <= step_tol:
                break
        return z


def _mp_eigvec(d: int, w_mp, lam, dps: int):
    with mpmath.workdps(dps):
        x = eigen_x(d, w_mp, lam)
        norm = mpmath.sqrt(mpmath.fsum(v * v for v in x))
        xn = [v / norm for v in x]
        # residual of (K - lam) x in working precision
        n = 2 * d + 1
        res = []
        for i in range(n):
            r = (i - d - lam) * xn[i]
            if i > 0:
                r += w_mp * xn[i - 1]
            if i < n - 1:
                r += w_mp * xn[i + 1]
            res.append(r)
        rnorm = mpmath.sqrt(mpmath.fsum(r * r for r in res))
        return np.array([float(v) for v in xn]), float(rnorm)


def _residual(d: int, w: float, lam: float, x: np.ndarray) -> float:
    r = (np.arange(-d, d + 1) - lam) * x
    r[1:] += w * x[:-1]
    r[:-1] += w * x[1:]
    return float(np.linalg.norm(r) / np.linalg.norm(x))


def _eigenpair(d: int, w: float, lam0: float, radius: float, tol: float):
    """Polish one positive root and return (lam, x) with an mp-verified residual."""
    w_mp = mpmath.mpf(w)
    dps = 40
    while True:
        lam = _polish(lam0, d, w_mp, radius, dps)
        x, mp_res = _mp_eigvec(d, w_mp, lam, dps)
        if mp_res <= min(tol, 1e-18) * radius or dps >= 5000:
            return float(lam), x
        dps *= 2


def spectrum(d: int, w, tol: float = 1e-12) -> SpectralResult:
    """Eigenvalues and eigenvectors of K(w) for real ``w``.

    Bisection with Sturm counts locates all ``2d+1`` eigenvalues.  The
    positive ones are polished by Newton's method on the closed chi_red in
    mpmath (the working precision grows until the eigenvector is resolved);
    negatives follow by symmetry and 0 is exact.  Eigenvectors are ``x(lambda)``
    normalized to unit length.  ``tol`` is relative to ``d + 2|w|``; a residual
    above it raises :class:`SpectralAccuracyError`.
    """
    _check_d(d)
    w = float(w)
    n = 2 * d + 1
    radius = d + 2 * abs(w)
    if w == 0:
        return SpectralResult(
            np.arange(-d, d + 1, dtype=float), np.eye(n), np.zeros(n), 0.0
        )
    if d == 0:
        return SpectralResult(np.zeros(1), np.ones((1, 1)), np.zeros(1), 0.0)
    rough = np.sort(sturm_bisection(np.arange(-d, d + 1), np.full(n - 1, w)))
    asymmetry = float(np.max(np.abs(rough + rough[::-1])))
    positives = []
    vectors = []
    for lam0 in rough[d + 1 :]:
        lam, x = _eigenpair(d, w, abs(lam0), radius, tol)
        positives.append(lam)
        vectors.append(x)
    gaps = np.diff([0.0] + positives)
    if gaps.size and gaps.min() <= 10 * tol * radius:
        raise SpectralAccuracyError("Newton polish merged two roots; spectrum not resolved")
    zero_vec = _mp_eigvec(d, mpmath.mpf(w), mpmath.mpf(0), 40)[0]
    # x(-lambda)_k = (-1)^(d+k) x(lambda)_{-k} up to normalization
    signs = np.array([(-1) ** (i % 2) for i in range(n)], dtype=float)
    eigenvalues = [-lam for lam in reversed(positives)] + [0.0] + positives
    cols = [signs * x[::-1] for x in reversed(vectors)] + [zero_vec] + vectors
    cols = [c if c[0] >= 0 else -c for c in cols]
    residuals = np.array([_residual(d, w, lam, x) for lam, x in zip(eigenvalues, cols)])
    bad = residuals > tol * radius
    if bad.any():
        worst = int(np.argmax(residuals))
        raise SpectralAccuracyError(
            f"residual {residuals[worst]:.3e} at eigenvalue {eigenvalues[worst]!r} "
            f"exceeds {tol * radius:.3e}"
        )
    return SpectralResult(np.array(eigenvalues), np.column_stack(cols), residuals, asymmetry)
