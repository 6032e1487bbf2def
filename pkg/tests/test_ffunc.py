import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finjac.ffunc import (
    TailSeq,
    TruncationError,
    f_direct_sum,
    f_finite,
    f_forward,
    f_infinite,
    f_rescaled_head,
    f_split,
    f_truncated,
    truncate_left,
    two_sequence_identity,
)
from finjac.special import bessel_sequence, geometric_sequence, f_geometric_series

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=9)
sequences = st.lists(rationals, min_size=0, max_size=12)


def test_small_values():
    a, b = Fraction(2, 3), Fraction(-5, 7)
    assert f_finite([]) == 1
    assert f_finite([a]) == 1
    assert f_finite([a, b]) == 1 - a * b
    assert f_finite([1, 1, 1, 1]) == -1
    assert f_finite([Fraction(1), Fraction(1, 2)]) == Fraction(1, 2)


def test_direct_sum_matches_hand_expansion():
    x = [Fraction(k, 3) for k in range(1, 5)]
    x1, x2, x3, x4 = x
    assert f_direct_sum(x) == 1 - x1 * x2 - x2 * x3 - x3 * x4 + x1 * x2 * x3 * x4


@settings(max_examples=500, deadline=None)
@given(sequences)
def test_recursions_reversal_and_direct_sum(x):
    x = tuple(x)
    f = f_finite(x)
    assert f == f_forward(x) == f_direct_sum(x)
    assert f == f_finite(x[::-1])
    if len(x) >= 2:
        assert f == f_finite(truncate_left(x)) - x[0] * x[1] * f_finite(truncate_left(x, 2))


@settings(max_examples=300, deadline=None)
@given(sequences)
def test_split_and_rescaled_head(x):
    x = tuple(x)
    f = f_finite(x)
    for k in range(1, len(x)):
        assert f_split(x, k) == f
    for k in range(1, len(x) + 1):
        if f_finite(x[:k]) != 0:
            assert f_rescaled_head(x, k) == f


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.lists(rationals, min_size=n, max_size=n), st.lists(rationals, min_size=n, max_size=n))))
def test_two_sequence_identity(uv):
    lhs, rhs = two_sequence_identity(*uv)
    assert lhs == rhs


def test_split_examples():
    a, b = Fraction(3), Fraction(1, 5)
    assert f_split((a, b), 1) == 1 - a * b
    assert f_split((1, 1, 1, 1), 2) == -1
    with pytest.raises(ValueError):
        f_split((1, 2), 2)


def test_rescaled_head_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        f_rescaled_head((1, 1, 3), 2)


def test_truncate_left():
    assert truncate_left((1, 2, 3)) == (2, 3)
    assert truncate_left((1, 2, 3), 0) == (1, 2, 3)
    assert truncate_left(("a", "b", "c", "d"), 2) == ("c", "d")
    seq = TailSeq(lambda k: k, lambda N: math.inf)
    assert truncate_left(seq, 3).head(2) == (4, 5)


def test_infinite_terminating_sequence():
    seq = geometric_sequence(0.0, 0.7)
    value, err = f_infinite(seq, 1e-14)
    assert value == 1.0
    assert err <= 1e-14


def test_infinite_bessel_sequence_is_j0():
    value, err = f_infinite(bessel_sequence(0.0, 1.0), 1e-15)
    assert abs(value - float(mpmath.besselj(0, 2))) <= 1e-14
    assert err <= 1e-15


def test_infinite_geometric_matches_series():
    value, err = f_infinite(geometric_sequence(0.5, 1.0), 1e-15)
    assert abs(value - f_geometric_series(0.5, 1.0)) <= 1e-14


def test_truncation_bound_holds_against_long_head():
    # plain truncation: compare the certified bound with the actual error
    seq = geometric_sequence(0.8, 1.3)
    reference = f_finite(seq.head(400))
    for tol in (1e-3, 1e-6, 1e-10):
        value, bound = f_truncated(seq, tol)
        assert bound <= tol
        assert abs(value - reference) <= bound + 1e-15


def test_truncation_budget_exhausted():
    slow = TailSeq(lambda k: 1 / math.sqrt(k + 1), lambda N: 10.0 / math.log(N + 2))
    with pytest.raises(TruncationError):
        f_truncated(slow, 1e-12, max_terms=1000)


def test_unsummable_sequence_rejected():
    with pytest.raises(ValueError):
        f_truncated(TailSeq(lambda k: 1.0, lambda N: math.inf), 1e-6)
