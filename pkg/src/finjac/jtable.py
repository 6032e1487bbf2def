"""Entries of the antisymmetric matrix J(m, n; w), m, n in Z.

J is the unique matrix with ``J(n, m) = -J(m, n)``, ``J(m, m+1) = 1`` whose
rows solve ``w A(m, n-1) - n A(m, n) + w A(m, n+1) = 0``.  Three evaluators
are provided: the closed sum, direct row generation from the recurrence, and
the F representation for ``0 <= m < n``.

The recurrence evaluator memoizes rows for exact ``w``; the cache is guarded
by a lock so concurrent readers are safe.
"""

from __future__ import annotations

import math
import threading
from .ffunc import f_finite
from .numeric import EXACT, common_mode, lift, newton_binom, rational

__all__ = ["j_entry", "j_entry_recurrence", "j_entry_f", "clear_cache"]


def _check_w(w):
    if w == 0:
        raise ValueError("J is defined for w != 0 only")


def j_entry(m: int, n: int, w):
    """Closed-form J(m, n; w).

    For ``m <= n``::

        J(m, n) = sum_{s=0}^{[(n-m-1)/2]} (-1)^s binom(n-s-1, n-m-2s-1) (n-m-s-1)!/s! w^(m-n+2s+1)

    and ``J(m, n) = -J(n, m)`` otherwise.  The binomial takes negative upper
    arguments in the generalised sense.
    """
    _check_w(w)
    if m > n:
        return -j_entry(n, m, w)
    mode = common_mode(w)
    w = lift(w, mode)
    total = 0 * w
    for s in range((n - m - 1) // 2 + 1):
        num = newton_binom(n - s - 1, n - m - 2 * s - 1) * math.factorial(n - m - s - 1)
        if num:
            c = rational(num, math.factorial(s), mode)
            total += (-1) ** s * c * w ** (m - n + 2 * s + 1)
    return total


class _Row:
    __slots__ = ("values", "lo", "hi")

    def __init__(self, m, unit):
        self.values = {m: 0 * unit, m + 1: unit}
        self.lo, self.hi = m, m + 1


_cache: dict = {}
_lock = threading.Lock()


def clear_cache() -> None:
    with _lock:
        _cache.clear()


def _extend(row: _Row, n: int, w) -> None:
    v = row.values
    while row.hi < n:
        k = row.hi
        # w A(k-1) - k A(k) + w A(k+1) = 0
        v[k + 1] = (k * v[k] - w * v[k - 1]) / w
        row.hi = k + 1
    while row.lo > n:
        k = row.lo
        v[k - 1] = (k * v[k] - w * v[k + 1]) / w
        row.lo = k - 1


def j_entry_recurrence(m: int, n: int, w, unit=1):
    """J(m, n; w) by iterating the row recurrence from ``A(m,m)=0, A(m,m+1)=unit``.

    With ``unit != 1`` this generates ``unit * J`` (used for the uniqueness
    check).  Rows are cached per ``(w, m, unit)`` in exact mode.
    """
    _check_w(w)
    mode = common_mode(w, unit)
    w = lift(w, mode)
    unit = lift(unit, mode)
    if mode != EXACT:
        row = _Row(m, unit)
        _extend(row, n, w)
        return row.values[n]
    key = (w, m, unit)
    with _lock:
        row = _cache.get(key)
        if row is None:
            row = _cache[key] = _Row(m, unit)
        _extend(row, n, w)
        return row.values[n]


def j_entry_f(m: int, n: int, w):
    """J(m, n; w) = (n-1)!/m! w^(m-n+1) F(w/(m+1), ..., w/(n-1)) for ``0 <= m < n``."""
    _check_w(w)
    if not 0 <= m < n:
        raise ValueError(f"need 0 <= m < n, got m={m}, n={n}")
    mode = common_mode(w)
    w = lift(w, mode)
    f = f_finite([w / k for k in range(m + 1, n)], mode=mode)
    ratio = math.factorial(n - 1) // math.factorial(m)
    return ratio * w ** (m - n + 1) * f
