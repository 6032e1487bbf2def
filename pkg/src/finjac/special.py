"""Bessel and q-series quantities expressed through F.

The central relation is ``J_nu(2w) = w^nu / Gamma(nu + 1) * F({w/(nu+k)})``.
Evaluation works in float mode (``float``/``complex``) and in mpmath mode;
:func:`jy_residual` always runs in mpmath at a precision chosen from the
requested ``(m, n, w)``.
"""

from __future__ import annotations

import math

import mpmath

from .contfrac import classical_cf
from .ffunc import TailSeq, f_finite, f_infinite
from .numeric import EXACT, FLOAT, MP, common_mode, gamma_ratio, lift, one, rational

__all__ = [
    "bessel_sequence",
    "bessel_j",
    "bessel_j_series",
    "bessel_ratio_cf",
    "f_closed_nu",
    "f_closed_nu_scaled",
    "f_closed_int",
    "q_phi01",
    "q_exp",
    "geometric_sequence",
    "f_geometric_series",
    "bessel_y_via_derivative",
    "jy_closed_part",
    "jy_residual",
]


def _is_negative_integer(nu) -> bool:
    if isinstance(nu, (complex, mpmath.mpc)) and nu.imag != 0:
        return False
    re = nu.real if isinstance(nu, (complex, mpmath.mpc)) else nu
    return re < 0 and re == int(re)


def _rgamma(x, mode):
    if mode == MP:
        return mpmath.rgamma(x)
    val = mpmath.rgamma(x)
    if isinstance(val, mpmath.mpc):
        return complex(val) if val.imag != 0 else float(val.real)
    return float(val)


def _power(w, nu, mode):
    if mode == MP:
        return mpmath.power(w, nu)
    if w == 0:
        return 1.0 if nu == 0 else 0.0
    return w**nu


def _default_tol(mode):
    if mode == MP:
        return mpmath.mpf(10) ** (-(mpmath.mp.dps + 3))
    return 1e-18


def _bessel_tail(nu, w, mode):
    """Certified F({w/(mu+k)}) for mu = nu + N, by the nested-sum identity.

    The order-m nested sum equals ``w^(2m) / (m! (mu+1)_m)``, so
    F = sum_m (-1)^m w^(2m) / (m! (mu+1)(mu+2)...(mu+m)).
    """
    w2 = w * w
    aw2 = float(abs(w2))
    re_nu = float(nu.real) if isinstance(nu, (complex, mpmath.mpc)) else float(nu)

    def tail_value(N, tol):
        mu = nu + N
        re_mu = re_nu + N
        if re_mu + 1 <= 0 or aw2 >= (re_mu + 1):
            return one(mode), math.inf
        total = one(mode)
        term = one(mode)
        m = 0
        target = float(tol) * 1e-3
        while True:
            term = -term * w2 / ((m + 1) * (mu + m + 1))
            m += 1
            ratio_next = aw2 / ((m + 1) * (re_mu + m + 1))
            total += term
            mag = float(abs(term))
            if ratio_next < 0.5 and mag * ratio_next * 2 <= target:
                return total, mag * ratio_next * 2
            if m > 10_000:
                return total, math.inf

    return tail_value


def bessel_sequence(nu, w) -> TailSeq:
    """The sequence ``k -> w / (nu + k)`` with bounds and a tail model."""
    mode = common_mode(nu, w) or FLOAT
    nu = lift(nu, mode)
    w = lift(w, mode)
    aw2 = float(abs(w * w))
    re_nu = float(nu.real) if isinstance(nu, (complex, mpmath.mpc)) else float(nu)
    k0 = max(1, math.floor(-re_nu) + 1)

    def term(k):
        return w / (nu + k)

    def tail_bound(N):
        # explicit terms until nu + k has positive real part, then telescoping
        K = max(N, k0)
        s = sum(float(abs(term(k) * term(k + 1))) for k in range(N, K))
        return s + aw2 / (re_nu + K)

    return TailSeq(term, tail_bound, _bessel_tail(nu, w, mode))


def bessel_j(nu, w, tol=None):
    """``J_nu(2w)`` from the F-representation.

    Float mode unless ``nu``/``w`` are mpmath numbers.  ``tol`` bounds the
    absolute error of the result (default: about machine precision).
    """
    mode = common_mode(nu, w)
    if mode == EXACT:
        raise TypeError("bessel_j works in float or mp mode")
    mode = mode or FLOAT
    nu = lift(nu, mode)
    w = lift(w, mode)
    if _is_negative_integer(nu):
        raise ValueError(f"order nu={nu} is a negative integer")
    prefactor = _power(w, nu, mode) * _rgamma(nu + 1, mode)
    if w == 0:
        return prefactor
    if tol is None:
        tol = _default_tol(mode)
    scale = float(abs(prefactor))
    f_tol = tol / scale if scale > 0 else tol
    value, _ = f_infinite(bessel_sequence(nu, w), f_tol)
    return prefactor * value


def bessel_j_series(nu, w, tol=None):
    """Power-series oracle ``sum_m (-1)^m w^(2m+nu) / (m! Gamma(nu+m+1))``."""
    mode = common_mode(nu, w) or FLOAT
    nu = lift(nu, mode)
    w = lift(w, mode)
    if tol is None:
        tol = _default_tol(mode)
    wn = _power(w, nu, mode)
    total = 0
    m = 0
    w2m = one(mode)
    fact = 1
    small = 0
    while True:
        t = (-1) ** m * w2m * _rgamma(nu + m + 1, mode) / fact
        total += t
        # terms shrink monotonically once m exceeds |w|^2
        if float(abs(t * wn)) <= tol * 1e-3 and m > float(abs(w * w)):
            small += 1
            if small >= 2:
                return wn * total
        m += 1
        fact *= m
        w2m = w2m * w * w


def bessel_ratio_cf(nu, z, depth: int = 200):
    """``J_{nu+1}(z) / J_nu(z)`` from ``z / (2(nu+1) - z^2 / (2(nu+2) - ...))``."""
    parts = [(z, 2 * (nu + 1))] + [(-z * z, 2 * (nu + j)) for j in range(2, depth + 1)]
    return classical_cf(0, parts)


def f_closed_nu_scaled(nu, n: int, w):
    """``Gamma(nu+n+1)/Gamma(nu+1) * F(w/(nu+1), ..., w/(nu+n))`` as a pole-free sum.

    Equals ``sum_s (-1)^s (n-s)!/(s! (n-2s)!) w^(2s) prod_{j=s}^{n-1-s} (nu+n-j)``.
    """
    total = 0
    w2 = w * w
    w2s = 1
    for s in range(n // 2 + 1):
        c = math.factorial(n - s) // (math.factorial(s) * math.factorial(n - 2 * s))
        total += (-1) ** s * c * w2s * gamma_ratio(nu, n - s + 1, s + 1)
        w2s = w2s * w2
    return total


def f_closed_nu(nu, n: int, w):
    """``F(w/(nu+1), ..., w/(nu+n))`` from its closed form.

    ``nu`` must avoid ``-n, ..., -1``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    denom = gamma_ratio(nu, n + 1, 1)
    if denom == 0:
        raise ValueError(f"nu={nu} hits an excluded value in -{n}..-1")
    return f_closed_nu_scaled(nu, n, w) / denom


def f_closed_int(m: int, n: int, w):
    """``F(w/(m+1), ..., w/n)`` for integers ``0 <= m <= n`` from the closed sum."""
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    total = 0
    w2 = w * w
    w2s = 1
    for s in range((n - m) // 2 + 1):
        num = math.factorial(n - s) * math.factorial(n - m - s)
        den = math.factorial(s) * math.factorial(m + s) * math.factorial(n - m - 2 * s)
        total += (-1) ** s * w2s * _fraction_like(num, den, w)
        w2s = w2s * w2
    return total * _fraction_like(math.factorial(m), math.factorial(n), w)


def _fraction_like(num: int, den: int, like):
    return rational(num, den, common_mode(like))


def q_phi01(q, z, tol=1e-17):
    """Basic hypergeometric series ``0phi1(;0;q,z) = sum_k q^(k(k-1)) z^k / (q;q)_k``.

    Summation stops once a term is below ``tol`` and the term ratio has dropped
    under one (from then on the terms decrease monotonically).  With rational
    ``q``, ``z`` and ``tol`` the returned partial sum is exact.
    """
    if abs(q) >= 1:
        raise ValueError("|q| must be < 1")
    mode = common_mode(q, z)
    total = one(mode)
    term = one(mode)
    qk = one(mode)  # q^k
    k = 0
    while True:
        # t_{k+1} = t_k * q^(2k) z / (1 - q^(k+1))
        ratio = qk * qk * z / (1 - qk * q)
        term = term * ratio
        k += 1
        qk = qk * q
        total += term
        if abs(term) <= tol and abs(ratio) < 1:
            return total
        if k > 100_000:
            raise ArithmeticError("q-series failed to converge")


def q_exp(q, z, tol=1e-17):
    """q-deformed exponential ``e(q; z) = 0phi1(;0;q,(1-q) z)``."""
    return q_phi01(q, (1 - q) * z, tol)


def geometric_sequence(t, w) -> TailSeq:
    """``k -> t^(k-1) w`` for ``|t| < 1``, with its geometric tail bound."""
    if abs(t) >= 1:
        raise ValueError("|t| must be < 1")
    at, aw = float(abs(t)), float(abs(w))

    def tail_bound(N):
        return aw * aw * at ** (2 * N - 1) / (1 - at * at)

    return TailSeq(lambda k: t ** (k - 1) * w, tail_bound)


def f_geometric_series(t, w, tol=1e-17):
    """``1 + sum_m (-1)^m t^(m(2m-1)) w^(2m) / ((1-t^2)...(1-t^(2m)))``."""
    total = 1
    m = 0
    term = 1
    while True:
        m += 1
        term = -term * t ** (4 * m - 3) * w * w / (1 - t ** (2 * m))
        total += term
        if abs(term) <= tol and abs(t ** (4 * m + 1) * w * w) < 1:
            return total
        if m > 100_000:
            raise ArithmeticError("series failed to converge")


def bessel_y_via_derivative(n: int, w, h=1e-4):
    """``Y_n(2w)`` from ``pi Y_n = d/dnu (J_nu - (-1)^n J_{-nu})`` at ``nu = n``.

    Central difference in ``nu`` with step ``h`` (error O(h^2)); each ``J`` is
    :func:`bessel_j`.  Pass mpmath ``w``/``h`` to run in mpmath mode.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    mode = common_mode(w, h) or FLOAT
    w = lift(w, mode)
    h = lift(h, mode)
    sign = (-1) ** n

    def g(nu):
        return bessel_j(nu, w) - sign * bessel_j(-nu, w)

    pi = mpmath.pi if mode == MP else math.pi
    return (g(n + h) - g(n - h)) / (2 * h * pi)


def jy_closed_part(m: int, n: int, w):
    """Explicit part of the small-w expansion of ``pi J_m(2w) Y_{n+1}(2w)``.

    Returns ``-(n!/m!) w^(m-n-1) F(w/(m+1), ..., w/n) - sum_s c_s w^(n-m+2s+1)``.
    For ``n = m - 1`` the F term is absent.
    """
    if n < m - 1 or m < 0:
        raise ValueError(f"need m <= n + 1, got m={m}, n={n}")
    out = 0
    if n >= m:
        fterm = f_finite([w / k for k in range(m + 1, n + 1)], mode=common_mode(w))
        out -= _fraction_like(math.factorial(n), math.factorial(m), w) * w ** (m - n - 1) * fterm
    for s in range(m):
        num = math.factorial(m - s - 1) * math.factorial(n - m + 2 * s + 1)
        den = math.factorial(s) * math.factorial(n + s + 1) * math.factorial(n - m + s + 1)
        out -= _fraction_like(num, den, w) * w ** (n - m + 2 * s + 1)
    return out


def jy_residual(m: int, n: int, w, *, dps: int | None = None):
    """``pi J_m(2w) Y_{n+1}(2w)`` minus :func:`jy_closed_part`, in mpmath.

    The difference is of order ``w^(m+n+1) log w`` as ``w -> 0``.  ``Y`` comes
    from :func:`bessel_y_via_derivative`; working precision and step are sized
    so the residual is resolved well past the cancellation between the two
    parts.  ``w`` may be a float, string or mpmath number (real, positive).
    """
    if n < m - 1 or m < 0:
        raise ValueError(f"need m <= n + 1, got m={m}, n={n}")
    wf = float(w)
    if not wf > 0:
        raise ValueError("w must be real and positive")
    lost = max(0.0, (2 * n + 2) * math.log10(1 / wf))
    digits = int(lost) + 25
    step_exp = digits // 2 + 3
    work = dps or digits + step_exp + 20
    with mpmath.workdps(work):
        wm = mpmath.mpf(w)
        h = mpmath.mpf(10) ** (-step_exp)
        y = bessel_y_via_derivative(n + 1, wm, h)
        jm = bessel_j(mpmath.mpf(m), wm)
        res = mpmath.pi * jm * y - jy_closed_part(m, n, wm)
        return +res
