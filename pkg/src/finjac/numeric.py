"""Scalar modes, dense polynomials and small exact helpers.

Three arithmetic modes are recognised:

``"exact"``
    :class:`fractions.Fraction` values; every operation is exact.
``"float"``
    Python ``float``/``complex`` (and numpy floating scalars).
``"mp"``
    :mod:`mpmath` ``mpf``/``mpc`` values at the ambient working precision.

Plain ``int`` values are mode-neutral: they are exact and combine losslessly
with any mode.  Mixing two different modes in one call raises
:class:`ModeError`.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

EXACT = "exact"
FLOAT = "float"
MP = "mp"


class ModeError(TypeError):
    """Raised when scalars from different arithmetic modes are combined."""


def scalar_mode(x) -> str | None:
    """Return the arithmetic mode of a scalar, ``None`` for plain integers."""
    if isinstance(x, bool):
        return None
    if isinstance(x, Fraction):
        return EXACT
    if isinstance(x, numbers.Integral):
        return None
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return MP
    if isinstance(x, (float, complex, np.floating, np.complexfloating)):
        return FLOAT
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def _flatten(values):
    for v in values:
        if isinstance(v, (list, tuple, np.ndarray)):
            yield from _flatten(v)
        elif isinstance(v, Poly):
            yield from v.coeffs
        elif v is not None:
            yield v


def common_mode(*values) -> str | None:
    """Mode shared by all ``values`` (nested sequences are inspected).

    Raises :class:`ModeError` when two modes are present.
    """
    found = None
    for v in _flatten(values):
        m = scalar_mode(v)
        if m is None:
            continue
        if found is None:
            found = m
        elif m != found:
            raise ModeError(f"cannot mix {found} and {m} scalars")
    return found


def one(mode: str | None):
    if mode == FLOAT:
        return 1.0
    if mode == MP:
        return mpmath.mpf(1)
    return Fraction(1)


def zero(mode: str | None):
    if mode == FLOAT:
        return 0.0
    if mode == MP:
        return mpmath.mpf(0)
    return Fraction(0)


def lift(x, mode: str | None):
    """Convert a mode-neutral integer (or same-mode value) into ``mode``."""
    if scalar_mode(x) is not None:
        return x
    if mode == FLOAT:
        return float(x)
    if mode == MP:
        return mpmath.mpf(x)
    return Fraction(x)


def rational(num: int, den: int, mode: str | None):
    """The rational ``num/den`` as a scalar of ``mode`` (int when integral)."""
    if num % den == 0:
        return num // den
    if mode == FLOAT:
        return num / den
    if mode == MP:
        return mpmath.mpf(num) / den
    return Fraction(num, den)


def to_rational(x) -> Fraction:
    """Parse a rational such as ``"3/7"``, ``"0.25"`` or an int."""
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def is_zero(x) -> bool:
    return x == 0


def magnitude(x) -> float:
    """Absolute value as a float (used for tolerances and bounds only)."""
    return float(abs(x))


# -- combinatorial helpers ---------------------------------------------------


def newton_binom(z, n: int):
    """Generalised binomial ``z (z-1) ... (z-n+1) / n!``.

    Integer ``z`` (including negative values) takes an exact integer fast
    path; any other scalar uses the falling-factorial product.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if isinstance(z, numbers.Integral) and not isinstance(z, bool):
        z = int(z)
        if z >= 0:
            return math.comb(z, n)
        return (-1) ** n * math.comb(n - z - 1, n)
    num = one(scalar_mode(z))
    for j in range(n):
        num = num * (z - j)
    return num / math.factorial(n)


def gamma_ratio(z, a: int, b: int):
    """``Gamma(z + a) / Gamma(z + b)`` as the finite product prod_{j=b}^{a-1} (z + j).

    Only integer offsets with ``a >= b`` are supported; the product is
    polynomial in ``z`` and has no poles.
    """
    if a < b:
        raise ValueError(f"gamma_ratio needs a >= b, got a={a}, b={b}")
    out = 1
    for j in range(b, a):
        out = out * (z + j)
    return out


# -- polynomials ---------------------------------------------------------------


class Poly:
    """Dense univariate polynomial in ``z`` with ascending coefficients.

    ``parity`` may be ``"even"``, ``"odd"`` or ``None``; a declared parity is
    checked against the coefficients at construction time.
    """

    __slots__ = ("coeffs", "parity")

    def __init__(self, coeffs: Iterable = (), parity: str | None = None):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        common_mode(c)
        if parity not in (None, "even", "odd"):
            raise ValueError(f"unknown parity {parity!r}")
        if parity is not None:
            bad = 1 if parity == "even" else 0
            for i in range(bad, len(c), 2):
                if c[i] != 0:
                    raise ValueError(
                        f"coefficient of z^{i} is {c[i]}, not allowed for {parity} parity"
                    )
        self.coeffs = tuple(c)
        self.parity = parity

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def z(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __repr__(self):
        extra = f", parity={self.parity!r}" if self.parity else ""
        return f"Poly({list(self.coeffs)!r}{extra})"

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, z):
        return poly_eval(self, z)

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.parity)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return Poly([other]) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs], self.parity)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def with_parity(self, parity: str) -> "Poly":
        """Return a copy carrying (and validating) ``parity``."""
        return Poly(self.coeffs, parity)

    def div_z(self) -> "Poly":
        """Exact division by ``z``; the constant term must vanish."""
        if self.coeff(0) != 0:
            raise ValueError("polynomial is not divisible by z")
        flip = {"even": "odd", "odd": "even", None: None}[self.parity]
        return Poly(self.coeffs[1:], flip)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)


def poly_eval(p: Poly, z):
    """Horner evaluation of ``p`` at ``z``; exact for rational inputs."""
    common_mode(p.coeffs, z)
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Polynomial through the points ``(xs[i], ys[i])`` (Newton form).

    Exact in rational mode.  The nodes must be pairwise distinct.
    """
    n = len(xs)
    if n != len(ys):
        raise ValueError("xs and ys differ in length")
    if len(set(xs)) != n:
        raise ValueError("interpolation nodes must be distinct")
    dd = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    # expand Newton form into monomial coefficients
    poly = Poly([dd[-1]]) if n else Poly()
    for i in range(n - 2, -1, -1):
        poly = poly * Poly([-xs[i], 1]) + dd[i]
    return poly


# -- small dense matrices ------------------------------------------------------


def as_matrix(rows, mode: str | None) -> np.ndarray:
    """Build a 2-D array; object dtype for exact and mp modes."""
    if mode == FLOAT:
        arr = np.array(rows, dtype=complex)
        if not np.iscomplexobj(arr) or not arr.imag.any():
            arr = arr.real.copy()
        return arr
    return np.array(rows, dtype=object)


def identity(n: int, mode: str | None) -> np.ndarray:
    return as_matrix(
        [[one(mode) if i == j else zero(mode) for j in range(n)] for i in range(n)], mode
    )


def exact_inverse(a: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse of a square matrix of field elements.

    Meant for object arrays of Fractions; pivots on the first nonzero entry.
    """
    n = a.shape[0]
    m = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * pv for v, pv in zip(m[r], m[col])]
    return np.array([row[n:] for row in m], dtype=object)
