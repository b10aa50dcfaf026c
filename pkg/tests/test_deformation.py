from __future__ import annotations

import random

import pytest

from mdly import examples
from mdly.algebra import MDLYAlgebra, ModifiedOperator

from mdly.cochains import LYCochain, MDLYCochain
from mdly.cohomology import coboundary, differential
from mdly.deformation import (RigidityReport, TruncatedDeformation, apply_equivalence, apply_equivalence_order1,
                              extend_order, infinitesimal_cocycle_check, order_residuals,
                              rigidity_report, verify_deformation)
from mdly.errors import InputError
from mdly.linalg import RatMatrix, kernel_basis
from mdly.multilinear import Multilinear


@pytest.fixture(params=["two", "three"])
def case(request):
    A = request.getfixturevalue(request.param)
    r = request.getfixturevalue("ad_" + request.param)
    return A, r


def kernel_combination(K, rng, bound=3):
    co = [rng.randint(-bound, bound) for _ in K]
    return [sum(a * k[i] for a, k in zip(co, K)) for i in range(len(K[0]))]


def test_zero_deformation_holds(case):
    A, _ = case
    assert verify_deformation(TruncatedDeformation.zero(A, 3)).ok


def test_order_one_iff_cocycle(case, rng):
    A, r = case
    n = A.dim
    K = kernel_basis(differential(r, 2))
    for t in range(20):
        v = kernel_combination(K, rng) if t % 2 == 0 else MDLYCochain.random(n, n, 2, rng, density=0.3).coords
        d = TruncatedDeformation.from_infinitesimal(A, MDLYCochain.from_coords(n, n, 2, v))
        assert verify_deformation(d).ok == infinitesimal_cocycle_check(d)
        if t % 2 == 0:
            assert verify_deformation(d).ok


def test_report_names_first_failing_equation(two):
    d = TruncatedDeformation(two, (Multilinear.from_entries(2, [((0, 1), 0, 1)]),), (Multilinear(3),),
                             (Multilinear(1),))
    rep = verify_deformation(d)
    assert not rep.ok and rep.first_failure == 1
    assert "antisymmetry" in rep.orders[1].failed()
    assert rep.orders[0].ok


def test_order_zero_equations_are_the_base_axioms(case):
    A, _ = case
    d = TruncatedDeformation.zero(A)
    assert all(m.is_zero() for m in order_residuals(d, 0).values())


@pytest.mark.parametrize("lam,rows,valid", [
    (1, [[2, 3], [0, -1]], True),
    (1, [[1, 0], [0, 1]], False),
    (-1, [[1, 0], [0, 1]], True),
    (0, [[0, 0], [0, 1]], False),
])
def test_order_zero_gate(lam, rows, valid):
    base = MDLYAlgebra(examples.two_dim(), ModifiedOperator(lam, RatMatrix.from_rows(rows)))
    assert base.verify().ok == valid
    rep = verify_deformation(TruncatedDeformation.zero(base), orders=[0])
    assert rep.ok == valid


def test_equivalence_difference_is_a_coboundary(case, rng):
    A, r = case
    n = A.dim
    K = kernel_basis(differential(r, 2))
    d = TruncatedDeformation.from_infinitesimal(A, MDLYCochain.from_coords(n, n, 2, kernel_combination(K, rng)))
    for _ in range(5):
        psi = RatMatrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        d1 = apply_equivalence_order1(d, psi)
        full = apply_equivalence(d, psi)
        assert (d1.f_seq, d1.g_seq, d1.phi_seq) == (full.f_seq, full.g_seq, full.phi_seq)
        w = LYCochain.from_linear(Multilinear.from_matrix(psi.tolist()), n, n)
        assert d.infinitesimal() - d1.infinitesimal() == coboundary(r, w)
        assert verify_deformation(d1).ok


def test_extend_and_transport_second_order(two, ad_two):
    rng = random.Random(3)
    K = kernel_basis(differential(ad_two, 2))
    d = TruncatedDeformation.from_infinitesimal(two, MDLYCochain.from_coords(2, 2, 2, K[0]))
    e = extend_order(d)
    assert e is not None and e.order == 2
    assert verify_deformation(e).ok
    psi = RatMatrix.from_rows([[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)])
    assert verify_deformation(apply_equivalence(e, psi)).ok


def test_extend_rejects_nothing_at_zero(two):
    e = extend_order(TruncatedDeformation.zero(two))
    assert e is not None and verify_deformation(e).ok


def test_infinitesimal_needs_antisymmetry(two):
    d = TruncatedDeformation(two, (Multilinear.from_entries(2, [((0, 0), 0, 1)]),), (Multilinear(3),),
                             (Multilinear(1),))
    with pytest.raises(InputError):
        d.infinitesimal()


def test_validation(two):
    with pytest.raises(InputError):
        TruncatedDeformation(two, (Multilinear(2),), (), (Multilinear(1),))
    with pytest.raises(InputError):
        TruncatedDeformation(two, (Multilinear.from_entries(2, [((0, 5), 0, 1)]),), (Multilinear(3),),
                             (Multilinear(1),))


def test_truncate(two, ad_two):
    d = extend_order(TruncatedDeformation.from_infinitesimal(
        two, MDLYCochain.from_coords(2, 2, 2, kernel_basis(differential(ad_two, 2))[0])))
    assert d.truncate(1).order == 1
    assert verify_deformation(d.truncate(1)).ok


def test_rigidity_verdicts(two, three):
    rg = rigidity_report(two, oracle=True)
    assert rg.dimH2 == 2
    assert not rg.rigid
    assert rg.verdict == "inconclusive: dimH^2 = 2 > 0"
    assert rigidity_report(three).dimH2 == 6


def test_rigid_verdict_text():
    assert RigidityReport(0, 3, 3).verdict == "rigid (sufficient condition met)"


def test_coboundary_deformations_are_trivial(case, rng):
    # d^1 psi integrates to the equivalence Id + t psi applied to the zero deformation
    A, r = case
    n = A.dim
    psi = RatMatrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
    moved = apply_equivalence(TruncatedDeformation.zero(A), psi)
    w = LYCochain.from_linear(Multilinear.from_matrix(psi.tolist()), n, n)
    assert moved.infinitesimal() == -coboundary(r, w)
