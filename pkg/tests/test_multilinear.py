from __future__ import annotations

from fractions import Fraction

from mdly.multilinear import Multilinear, cyclic_sum, dense, sparse, swap_args


def test_compose_substitutes_inner_arguments():
    outer = Multilinear.from_entries(2, [((0, 1), 0, 1)])  # outer(e1, e2) = e1
    inner = Multilinear.from_entries(2, [((1, 1), 1, 3)])  # inner(e2, e2) = 3 e2
    comp = outer.compose(1, inner)  # (a, b, c) -> outer(a, inner(b, c))
    assert comp(0, 1, 1) == {0: Fraction(3)}
    assert comp.arity == 3


def test_permuted_moves_arguments():
    t = Multilinear.from_entries(3, [((0, 1, 2), 0, 1)])
    s = t.permuted((2, 0, 1))  # s(v0, v1, v2) = t(v2, v0, v1)
    assert s(1, 2, 0) == {0: Fraction(1)}


def test_cyclic_sum_and_swap():
    t = Multilinear.from_entries(3, [((0, 1, 2), 0, 1)])
    c = cyclic_sum(t)
    assert c(0, 1, 2) == c(2, 0, 1) == c(1, 2, 0) == {0: Fraction(1)}
    assert swap_args(t, 0, 1)(1, 0, 2) == {0: Fraction(1)}


def test_apply_and_dense_roundtrip():
    m = Multilinear.from_matrix([[1, 2], [0, 3]])
    assert dense(m.apply(sparse([1, 1])), 2) == (3, 3)
    assert (m + m.scale(-1)).is_zero()
    assert m.after(Multilinear.identity(2)) == m
