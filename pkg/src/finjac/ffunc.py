"""The functional F on finite and summable infinite sequences.

For a finite sequence ``x = (x_1, ..., x_n)``::

    F(x) = 1 + sum_{m>=1} (-1)^m sum_{k_1 < k_2 < ...} x_{k1} x_{k1+1} ... x_{km} x_{km+1}

where consecutive indices satisfy ``k_{j+1} >= k_j + 2``.  The canonical
evaluator is the O(n) three-term recursion; the exponential direct sum is
kept as :func:`f_direct_sum` for cross-checking small inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .numeric import common_mode, one

__all__ = [
    "TailSeq",
    "f_finite",
    "f_forward",
    "f_direct_sum",
    "f_infinite",
    "f_truncated",
    "truncate_left",
    "f_split",
    "f_rescaled_head",
    "two_sequence_identity",
    "TruncationError",
]


class TruncationError(ArithmeticError):
    """The requested tolerance cannot be met within the term budget."""


@dataclass(frozen=True)
class TailSeq:
    """Lazily generated sequence ``k -> x_k`` (``k >= 1``) in the domain of F.

    ``tail_bound(N)`` must return an upper bound on
    ``sum_{k >= N} |x_k x_{k+1}|``, nonincreasing in ``N``.  A finite value of
    ``tail_bound(1)`` certifies summability.

    ``tail_value``, when given, maps ``(N, tol)`` to ``(F(T^N x), err)`` with a
    certified ``err``.  :func:`f_infinite` then splits at ``N`` instead of
    truncating, which matters for slowly summable tails such as ``w/(nu+k)``.
    """

    term: Callable[[int], object]
    tail_bound: Callable[[int], float]
    tail_value: Callable[[int, float], tuple] | None = None

    def head(self, n: int) -> tuple:
        return tuple(self.term(k) for k in range(1, n + 1))

    def shifted(self, n: int) -> "TailSeq":
        if n == 0:
            return self
        term, bound, tv = self.term, self.tail_bound, self.tail_value
        shifted_tv = None if tv is None else (lambda N, tol: tv(N + n, tol))
        return TailSeq(lambda k: term(k + n), lambda N: bound(N + n), shifted_tv)


def f_finite(x: Sequence, *, mode: str | None = None):
    """F(x_1, ..., x_n) by the backward recursion.

    Uses ``F(x_1..x_k) = F(x_1..x_{k-1}) - x_{k-1} x_k F(x_1..x_{k-2})`` with
    ``F(empty) = F(x_1) = 1``.  Exact in rational mode.
    """
    mode = common_mode(x) or mode
    prev2 = prev = one(mode)
    for k in range(1, len(x)):
        prev2, prev = prev, prev - x[k - 1] * x[k] * prev2
    return prev


def f_forward(x: Sequence, *, mode: str | None = None):
    """F(x) via the left-truncation recursion ``F(x) = F(Tx) - x_1 x_2 F(T^2 x)``.

    Runs from the right end; an independent route to the same value as
    :func:`f_finite`.
    """
    mode = common_mode(x) or mode
    n = len(x)
    # after2 = F(T^{k+1} x), after1 = F(T^k x) while walking k downwards
    after2 = after1 = one(mode)
    for k in range(n - 2, -1, -1):
        after2, after1 = after1, after1 - x[k] * x[k + 1] * after2
    return after1


def f_direct_sum(x: Sequence, *, mode: str | None = None):
    """Brute-force F(x): sum over all index sets with gaps of at least two.

    Exponential in ``len(x)``; intended for ``len(x) <= 20`` as an oracle.
    """
    mode = common_mode(x) or mode
    n = len(x)
    pairs = [x[k] * x[k + 1] for k in range(n - 1)]
    total = one(mode)

    def walk(start, sign, prod):
        nonlocal total
        for k in range(start, n - 1):
            p = prod * pairs[k]
            total += -sign * p
            walk(k + 2, -sign, p)

    walk(0, 1, one(mode))
    return total


def truncate_left(x, n: int = 1):
    """Left shift ``T^n``: ``k -> x_{k+n}``."""
    if n < 0:
        raise ValueError("shift must be nonnegative")
    if isinstance(x, TailSeq):
        return x.shifted(n)
    return tuple(x[n:])


def _first_index_below(bound: Callable[[int], float], target: float, max_terms: int) -> int:
    """Smallest N <= max_terms with bound(N) <= target (bound is nonincreasing)."""
    hi = 1
    while bound(hi) > target:
        if hi >= max_terms:
            raise TruncationError(
                f"tail bound {bound(max_terms):.3e} still above {target:.3e} at N={max_terms}"
            )
        hi = min(2 * hi, max_terms)
    lo = max(1, hi // 2)
    if bound(lo) <= target:
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def f_infinite(x: TailSeq, tol: float, *, max_terms: int = 200_000):
    """F on an infinite sequence with an error bound.

    Without a tail model the result is the plain truncation described in
    :func:`f_truncated`.  With ``x.tail_value`` the split identity at ``N`` is
    used::

        F(x) = F(x_1..x_N) F(T^N x) - F(x_1..x_{N-1}) x_N x_{N+1} F(T^{N+1} x)

    and ``N`` doubles until the propagated tail error is below ``tol``.
    Bounds ignore floating-point rounding in the head recursion.

    Returns ``(value, error_bound)``.
    """
    if x.tail_value is None:
        return f_truncated(x, tol, max_terms=max_terms)
    n = 1
    while True:
        head = x.head(n + 1)
        f_n = f_finite(head[:n])
        f_nm1 = f_finite(head[: n - 1])
        link = head[n - 1] * head[n]
        # tails are weighted by the head values, which can be large
        weight = 2 * max(1.0, float(abs(f_n)), float(abs(f_nm1 * link)))
        t0, e0 = x.tail_value(n, tol / weight)
        t1, e1 = x.tail_value(n + 1, tol / weight)
        err = abs(f_n) * e0 + abs(f_nm1 * link) * e1
        if err <= tol:
            return f_n * t0 - f_nm1 * link * t1, float(err)
        if n >= max_terms:
            raise TruncationError(f"split error {float(err):.3e} above {float(tol):.3e} at N={n}")
        n = min(2 * n, max_terms)


def f_truncated(x: TailSeq, tol: float, *, max_terms: int = 200_000):
    """F on an infinite sequence by plain truncation, with a certified bound.

    The head ``x_1..x_N`` is evaluated exactly by :func:`f_finite`, with ``N``
    the first index where ``exp(S) * S_N <= tol``; here ``S = tail_bound(1)``
    and ``S_N = tail_bound(N)``.  Dropping every product that touches an index
    ``>= N`` changes each order-m term by at most ``(S^m - (S - S_N)^m)/m!``,
    which sums to ``exp(S) - exp(S - S_N) <= exp(S) * S_N``.

    Returns ``(value, error_bound)``.
    """
    s_total = float(x.tail_bound(1))
    if not math.isfinite(s_total):
        raise ValueError("sequence is not certified summable (tail_bound(1) is infinite)")
    scale = math.exp(s_total)
    n = _first_index_below(lambda N: scale * float(x.tail_bound(N)), tol, max_terms)
    value = f_finite(x.head(n))
    return value, scale * float(x.tail_bound(n))


def f_split(x: Sequence, k: int):
    """F(x) assembled from the split at position ``k`` (1 <= k < len(x)).

    ``F(x) = F(x_1..x_k) F(T^k x) - F(x_1..x_{k-1}) x_k x_{k+1} F(T^{k+1} x)``.
    """
    n = len(x)
    if not 1 <= k < n:
        raise ValueError(f"split index k={k} outside 1..{n - 1}")
    return (
        f_finite(x[:k]) * f_finite(x[k:])
        - f_finite(x[: k - 1]) * x[k - 1] * x[k] * f_finite(x[k + 1 :])
    )


def f_rescaled_head(x: Sequence, k: int):
    """F(x) as ``F(x_1..x_k) * F(c x_k, x_{k+1}, ...)``, ``c = F(x_1..x_{k-1}) / F(x_1..x_k)``.

    Raises ``ZeroDivisionError`` when ``F(x_1..x_k)`` vanishes.
    """
    n = len(x)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    head = f_finite(x[:k])
    if head == 0:
        raise ZeroDivisionError("F(x_1..x_k) is zero")
    c = f_finite(x[: k - 1]) / head
    return head * f_finite((c * x[k - 1],) + tuple(x[k:]))


def two_sequence_identity(u: Sequence, v: Sequence):
    """Both sides of the antisymmetric two-sequence identity, as ``(lhs, rhs)``.

    lhs = u_1 F(u_2..u_n) F(v_1..v_n) - v_1 F(u_1..u_n) F(v_2..v_n)
    rhs = sum_j (prod_{k<j} u_k v_k) (u_j - v_j) F(u_{j+1}..u_n) F(v_{j+1}..v_n)
    """
    n = len(u)
    if n != len(v) or n < 1:
        raise ValueError("u and v must have the same positive length")
    mode = common_mode(u, v)
    lhs = u[0] * f_finite(u[1:], mode=mode) * f_finite(v, mode=mode) - v[0] * f_finite(
        u, mode=mode
    ) * f_finite(v[1:], mode=mode)
    rhs = 0
    prefix = one(mode)
    for j in range(n):
        rhs += prefix * (u[j] - v[j]) * f_finite(u[j + 1 :], mode=mode) * f_finite(
            v[j + 1 :], mode=mode
        )
        prefix = prefix * u[j] * v[j]
    return lhs, rhs
