"""Continued-fraction convergents attached to a sequence.

For ``x`` with ``F(x) != 0``::

    F(Tx) / F(x) = 1 / (1 - x_1 x_2 / (1 - x_2 x_3 / (1 - ...)))

The numerators ``P_k = F(x_2..x_k)`` and denominators ``Q_k = F(x_1..x_k)``
share the recursion ``Y_{k+1} = Y_k - x_k x_{k+1} Y_{k-1}``.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .ffunc import TailSeq
from .numeric import FLOAT, common_mode, one, zero

__all__ = ["ConvergentPair", "convergents", "cf_limit", "classical_cf", "ConvergenceError"]

RESCALE_EVERY = 50


class ConvergenceError(ArithmeticError):
    pass


class ConvergentPair(NamedTuple):
    k: int
    p: object
    q: object


def _term_getter(x):
    if isinstance(x, TailSeq):
        return x.term, None
    seq = tuple(x)
    n = len(seq)
    return (lambda k: seq[k - 1] if k <= n else 0), seq


def convergents(x, k_max: int) -> list[ConvergentPair]:
    """``(k, P_k, Q_k)`` for ``k = 0..k_max``.

    Past the end of a finite sequence the terms are zero, so the pairs
    freeze at ``k = len(x)``.  In float mode both rows are rescaled together
    every 50 steps; ratios are unaffected, absolute values are not.
    """
    term, seq = _term_getter(x)
    mode = common_mode(seq) if seq is not None else common_mode(term(1))
    p_prev, p = zero(mode), one(mode)
    q_prev, q = one(mode), one(mode)
    out = [ConvergentPair(0, p_prev, q_prev)]
    if k_max >= 1:
        out.append(ConvergentPair(1, p, q))
    x_k = term(1)
    for k in range(1, k_max):
        x_next = term(k + 1)
        c = x_k * x_next
        p_prev, p = p, p - c * p_prev
        q_prev, q = q, q - c * q_prev
        if mode == FLOAT and k % RESCALE_EVERY == 0:
            s = max(abs(p), abs(q), abs(p_prev), abs(q_prev))
            if s > 0:
                p, p_prev, q, q_prev = p / s, p_prev / s, q / s, q_prev / s
        out.append(ConvergentPair(k + 1, p, q))
        x_k = x_next
    return out


def cf_limit(x, tol: float, k_max: int = 10_000, *, q_floor: float = 1e-300):
    """Limit of ``P_k / Q_k``, stopping at the first small successive difference.

    Raises :class:`ConvergenceError` if no two successive ratios agree to
    ``tol`` by ``k_max``, or if ``Q_k`` (relative to the running scale)
    collapses, which signals ``F(x) = 0``.
    """
    term, seq = _term_getter(x)
    mode = common_mode(seq) if seq is not None else common_mode(term(1))
    p_prev, p = zero(mode), one(mode)
    q_prev, q = one(mode), one(mode)
    ratio_prev = p / q
    x_k = term(1)
    for k in range(1, k_max):
        x_next = term(k + 1)
        c = x_k * x_next
        p_prev, p = p, p - c * p_prev
        q_prev, q = q, q - c * q_prev
        x_k = x_next
        scale = max(abs(p), abs(q), abs(p_prev), abs(q_prev))
        if q == 0 or abs(q) <= q_floor * scale:
            raise ConvergenceError(f"Q_{k + 1} vanishes; F(x) is (numerically) zero")
        ratio = p / q
        if abs(ratio - ratio_prev) <= tol:
            return ratio
        ratio_prev = ratio
        if mode == FLOAT and k % RESCALE_EVERY == 0 and scale > 0:
            p, p_prev, q, q_prev = p / scale, p_prev / scale, q / scale, q_prev / scale
    raise ConvergenceError(f"no convergence to tol={tol} within k_max={k_max}")


def classical_cf(b0, partial: Sequence[tuple]) -> object:
    """Evaluate ``b0 + a1/(b1 + a2/(b2 + ...))`` bottom-up from ``[(a1, b1), ...]``."""
    acc = 0
    for a, b in reversed(partial):
        acc = a / (b + acc)
    return b0 + acc
