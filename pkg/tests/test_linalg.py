from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdly.linalg import (RatMatrix, as_fraction, kernel_basis, rank, rank_naive, rref_naive, solve,
                         solve_naive)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_side=7):
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(1, max_side))
    zero_bias = draw(st.booleans())
    vals = draw(st.lists(small, min_size=r * c, max_size=r * c))
    if zero_bias:
        vals = [v if i % 3 == 0 else Fraction(0) for i, v in enumerate(vals)]
    return RatMatrix(r, c, tuple(vals))


def random_matrix(rng, rows, cols, rank_cap=None):
    """Low-rank products give plenty of dependent rows."""
    k = rank_cap if rank_cap is not None else min(rows, cols)
    a = RatMatrix.from_rows([[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(k)]
                             for _ in range(rows)], k)
    b = RatMatrix.from_rows([[Fraction(rng.randint(-4, 4)) for _ in range(cols)] for _ in range(k)], cols)
    return a @ b


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_naive(m):
    assert rank(m) == rank_naive(m)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_kernel_vectors_are_independent_and_annihilated(m):
    ker = kernel_basis(m)
    assert len(ker) == m.cols - rank_naive(m)
    for v in ker:
        assert not any(m @ list(v))
    if ker:
        assert rank(RatMatrix.from_columns(ker, m.cols)) == len(ker)


@settings(max_examples=80, deadline=None)
@given(matrices(), st.lists(small, min_size=7, max_size=7))
def test_solve_agrees_with_naive_on_consistency(m, x):
    b = m @ list(x[:m.cols])
    sol = solve(m, b)
    assert sol is not None and tuple(m @ list(sol)) == tuple(b)
    bumped = list(b) + []
    if m.rows:
        bumped[0] += 1
        assert (solve(m, bumped) is None) == (solve_naive(m, bumped) is None)


@pytest.mark.parametrize("shape", [(50, 50, 30), (40, 50, 35), (50, 20, 7), (10, 50, 10)])
def test_large_random_rank(shape):
    rows, cols, k = shape
    rng = random.Random(rows * 1000 + cols)
    m = random_matrix(rng, rows, cols, k)
    assert rank(m) == rank_naive(m) == k
    ker = kernel_basis(m)
    assert len(ker) == cols - k
    assert all(not any(m @ list(v)) for v in ker[:5])


def test_inconsistent_system():
    m = RatMatrix.from_rows([[1, 1], [2, 2]])
    assert solve(m, [1, 3]) is None
    assert solve_naive(m, [1, 3]) is None
    assert solve(m, [1, 2]) == (Fraction(1), Fraction(0))


def test_rref_pivots():
    red, piv = rref_naive(RatMatrix.from_rows([[0, 2, 4], [0, 1, 2], [1, 0, 1]]))
    assert piv == [0, 1]
    assert red[0] == [1, 0, 1] and red[1] == [0, 1, 2]


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        RatMatrix.from_rows([[0.5]])


def test_solve_length_mismatch():
    with pytest.raises(ValueError):
        solve(RatMatrix.identity(2), [1])


def test_matrix_arithmetic():
    a = RatMatrix.from_rows([[1, 2], [3, 4]])
    assert (a @ RatMatrix.identity(2)) == a
    assert (a - a).is_zero()
    assert a.transpose()[0, 1] == 3
    assert a @ [1, 1] == (3, 7)
