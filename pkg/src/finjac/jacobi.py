"""Finite symmetric Jacobi (tridiagonal) matrices.

Covers the F-based determinant formula for constant off-diagonals, the
``J = G J~ G`` normalization to unit off-diagonals, a brute-force
determinant recurrence used as an oracle, and the characteristic function
and kernel vector of matrices with an antisymmetric diagonal
``lambda_{-k} = -lambda_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ffunc import f_finite
from .numeric import EXACT, Poly, as_matrix, common_mode, interpolate, lift, rational, zero

__all__ = [
    "JacobiMatrix",
    "NormalizedJacobi",
    "det_constant_offdiag",
    "normalize",
    "det_oracle",
    "charpoly_oracle",
    "charpoly_antisym",
    "char_antisym_value",
    "kernel_vector_antisym",
    "continuant",
]


@dataclass(frozen=True)
class JacobiMatrix:
    """Symmetric tridiagonal matrix given by its diagonal and off-diagonal.

    ``offdiag`` is either one scalar (constant off-diagonal) or a sequence of
    length ``len(diag) - 1``.  With ``centered=True`` the rows are indexed
    ``-d..d`` and the dimension must be odd.
    """

    diag: tuple
    offdiag: object
    centered: bool = False

    def __post_init__(self):
        diag = tuple(self.diag)
        object.__setattr__(self, "diag", diag)
        n = len(diag)
        if n == 0:
            raise ValueError("empty Jacobi matrix")
        if isinstance(self.offdiag, (list, tuple)):
            off = tuple(self.offdiag)
            if len(off) != n - 1:
                raise ValueError(f"expected {n - 1} off-diagonal entries, got {len(off)}")
            object.__setattr__(self, "offdiag", off)
        if self.centered and n % 2 == 0:
            raise ValueError("centered indexing needs odd dimension 2d+1")
        common_mode(self.diag, self.offdiag)

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def d(self) -> int:
        if not self.centered:
            raise AttributeError("d is defined for centered matrices only")
        return (self.n - 1) // 2

    @property
    def constant_offdiag(self) -> bool:
        return not isinstance(self.offdiag, tuple)

    def off(self, k: int):
        """Off-diagonal entry ``w_k`` joining positions ``k`` and ``k+1`` (0-based)."""
        return self.offdiag if self.constant_offdiag else self.offdiag[k]

    def offdiag_vector(self) -> tuple:
        return tuple(self.off(k) for k in range(self.n - 1))

    def is_antisymmetric_diag(self) -> bool:
        if not self.centered:
            return False
        return all(self.diag[i] == -self.diag[-1 - i] for i in range(self.n))

    def mode(self):
        return common_mode(self.diag, self.offdiag)

    def to_dense(self):
        n = self.n
        mode = self.mode()
        rows = [[zero(mode)] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = lift(self.diag[i], mode)
        for k in range(n - 1):
            rows[k][k + 1] = rows[k + 1][k] = lift(self.off(k), mode)
        return as_matrix(rows, mode)


@dataclass(frozen=True)
class NormalizedJacobi:
    """``J = G J~ G`` with ``G = diag(gammas)`` and unit off-diagonals in ``jtilde``."""

    gammas: tuple
    jtilde: JacobiMatrix

    def reconstruct(self) -> JacobiMatrix:
        g = self.gammas
        diag = tuple(lt * gk * gk for lt, gk in zip(self.jtilde.diag, g))
        off = tuple(g[k] * g[k + 1] for k in range(len(g) - 1))
        return JacobiMatrix(diag, off, self.jtilde.centered)

    def scale(self):
        """``prod gamma_k^2``, the factor with ``det J = scale * det J~``."""
        out = 1
        for g in self.gammas:
            out = out * g * g
        return out


def det_constant_offdiag(y: Sequence, w):
    """det(diag(y) + w E+ + w E-) for ``y = (y_{-d}, ..., y_d)``, ``d >= 1``.

    Evaluates::

        prod_k y_k y_{-k} * [ y_0 F(w/y_1..w/y_d) F(w/y_{-1}..w/y_{-d})
                              - w^2/y_1 F(w/y_2..w/y_d) F(w/y_{-1}..w/y_{-d})
                              - w^2/y_{-1} F(w/y_1..w/y_d) F(w/y_{-2}..w/y_{-d}) ]

    Requires every ``y_k y_{-k}`` (k >= 1) to be nonzero; use
    :func:`det_oracle` otherwise.
    """
    n = len(y)
    if n % 2 == 0 or n < 3:
        raise ValueError("y must have odd length 2d+1 with d >= 1")
    d = n // 2
    mode = common_mode(y, w)
    pos = [lift(v, mode) for v in y[d + 1 :]]  # y_1 .. y_d
    neg = [lift(v, mode) for v in y[d - 1 :: -1]]  # y_-1 .. y_-d
    scale = 1
    for a, b in zip(pos, neg):
        scale = scale * a * b
    if scale == 0:
        raise ZeroDivisionError("some y_k y_{-k} vanishes; formula does not apply")
    u = [w / v for v in pos]
    v = [w / v for v in neg]
    fu, fv = f_finite(u, mode=mode), f_finite(v, mode=mode)
    bracket = (
        y[d] * fu * fv
        - w * w / pos[0] * f_finite(u[1:], mode=mode) * fv
        - w * w / neg[0] * fu * f_finite(v[1:], mode=mode)
    )
    return scale * bracket


def normalize(j: JacobiMatrix) -> NormalizedJacobi:
    """Split ``J`` as ``G J~ G`` with ``gamma_1 = 1``, ``gamma_{k+1} = w_k / gamma_k``."""
    off = j.offdiag_vector()
    if any(wk == 0 for wk in off):
        raise ValueError("normalization needs nonzero off-diagonal entries")
    mode = j.mode()
    gammas = [lift(1, mode)]
    for wk in off:
        gammas.append(wk / gammas[-1])
    diag = tuple(lam / (g * g) for lam, g in zip(j.diag, gammas))
    return NormalizedJacobi(tuple(gammas), JacobiMatrix(diag, 1, j.centered))


def det_oracle(j: JacobiMatrix, shift=0):
    """det(J - shift I) from ``D_k = (lambda_k - shift) D_{k-1} - w_{k-1}^2 D_{k-2}``.

    ``shift`` may be a :class:`Poly`, which yields the characteristic
    polynomial with exact coefficients.
    """
    prev2, prev = 1, j.diag[0] - shift
    for k in range(1, j.n):
        wk = j.off(k - 1)
        prev2, prev = prev, (j.diag[k] - shift) * prev - wk * wk * prev2
    return prev


def charpoly_oracle(j: JacobiMatrix) -> Poly:
    """det(J - z I) as a polynomial in ``z``."""
    out = det_oracle(j, Poly.z())
    return out if isinstance(out, Poly) else Poly([out])


def char_antisym_value(lambda_pos: Sequence, w, z):
    """Pointwise value of the reduced characteristic function at ``z``.

    ``z`` must avoid ``+-lambda_k``.  Computes::

        prod_k (lambda_k^2 - z^2) F(w/(lambda_1 - z), ...) F(w/(lambda_1 + z), ...)
        + 2 sum_j w^(2j) prod_{k>j} (lambda_k^2 - z^2) F(w/(lambda_{j+1} - z), ...) F(w/(lambda_{j+1} + z), ...)
    """
    d = len(lambda_pos)
    mode = common_mode(lambda_pos, w, z)
    minus = [w / (lam - z) for lam in lambda_pos]
    plus = [w / (lam + z) for lam in lambda_pos]
    w2 = w * w
    total = 0
    # walk j = d..0 so the product over k > j grows one factor at a time
    prod = 1
    for jj in range(d, -1, -1):
        term = prod * f_finite(minus[jj:], mode=mode) * f_finite(plus[jj:], mode=mode)
        total += term * (2 * w2**jj if jj else 1)
        if jj:
            lam = lambda_pos[jj - 1]
            prod = prod * (lam * lam - z * z)
    return total


def _sample_points(lambda_pos, count: int, mode):
    """``count`` distinct rational nodes 0, +-1/7, +-2/7, ... avoiding ``+-lambda_k``."""
    bad = {lam for lam in lambda_pos} | {-lam for lam in lambda_pos}
    pts = []
    j = 0
    while len(pts) < count:
        for num in (j, -j) if j else (0,):
            val = rational(num, 7, mode)
            if val not in bad and len(pts) < count:
                pts.append(val)
        j += 1
    return pts


def charpoly_antisym(lambda_pos: Sequence, w) -> Poly:
    """Reduced characteristic polynomial ``(-1)^(d+1) det(K - z)/z`` of an antisymmetric-diagonal matrix.

    ``K = diag(-lambda_d, ..., -lambda_1, 0, lambda_1, ..., lambda_d) + w E+ + w E-``.
    The F-product formula is evaluated at ``2d+1`` rational nodes and
    interpolated; the result is checked to be even.  In exact mode this is
    lossless.  In float/mp mode the interpolation runs in ``u = z^2`` on
    ``d+1`` nodes, which builds the parity in.
    """
    d = len(lambda_pos)
    mode = common_mode(lambda_pos, w)
    if mode in (None, EXACT):
        xs = _sample_points(lambda_pos, 2 * d + 1, mode)
        ys = [char_antisym_value(lambda_pos, w, x) for x in xs]
        return interpolate(xs, ys).with_parity("even")
    xs = [x for x in _sample_points(lambda_pos, 4 * d + 2, mode) if x >= 0][: d + 1]
    ys = [char_antisym_value(lambda_pos, w, x) for x in xs]
    in_u = interpolate([x * x for x in xs], ys)
    coeffs = []
    for c in in_u.coeffs:
        coeffs.extend([c, 0])
    return Poly(coeffs[:-1] if coeffs else [], "even")


def continuant(values: Sequence, w):
    """``G(a_1..a_n) = a_1 G(a_2..a_n) - w^2 G(a_3..a_n)`` with ``G() = 1``.

    Equals ``a_1 ... a_n F(w/a_1, ..., w/a_n)`` whenever no ``a_k`` is zero,
    and stays polynomial (division-free) when some are.
    """
    # after1 = G(a_k..a_n), after2 = G(a_{k+1}..a_n); G past the end counts as 0
    after2, after1 = 0, 1
    w2 = w * w
    for a in reversed(values):
        after2, after1 = after1, a * after1 - w2 * after2
    return after1


def _kernel_halves(lambda_pos, w, mode):
    d = len(lambda_pos)
    theta = []
    for k in range(d + 1):
        prod = 1
        for lam in lambda_pos[k:]:
            prod = prod * lam
        f = f_finite([w / lam for lam in lambda_pos[k:]], mode=mode)
        theta.append((-1) ** k * w**k * prod * f)
    return theta


def kernel_vector_antisym(lambda_pos: Sequence, w) -> tuple:
    """Kernel vector ``(theta_{-d}, ..., theta_d)`` of an antisymmetric-diagonal matrix.

    ``theta_k = (-1)^k w^k (prod_{j>k} lambda_j) F(w/lambda_{k+1}, ..., w/lambda_d)``
    for ``k >= 0`` and ``theta_{-k} = (-1)^k theta_k``.

    When some ``lambda_k`` vanish the formula is continued to them: each
    zero is replaced by a parameter ``t``, the components (polynomials in
    ``t`` of degree at most the number of zeros) are interpolated from
    nonzero ``t`` and evaluated at ``t = 0``.
    """
    lambda_pos = list(lambda_pos)
    d = len(lambda_pos)
    mode = common_mode(lambda_pos, w)
    zeros = [i for i, lam in enumerate(lambda_pos) if lam == 0]
    if not zeros:
        half = _kernel_halves(lambda_pos, w, mode)
    else:
        ts = [lift(t, mode) for t in range(1, len(zeros) + 2)]
        samples = []
        for t in ts:
            lam_t = list(lambda_pos)
            for i in zeros:
                lam_t[i] = t
            samples.append(_kernel_halves(lam_t, w, mode))
        half = [interpolate(ts, [s[k] for s in samples])(0 * ts[0]) for k in range(d + 1)]
    neg = [(-1) ** k * half[k] for k in range(d, 0, -1)]
    return tuple(neg + half)
