from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdly import examples
from mdly.algebra import LYAlgebra, MDLYAlgebra, ModifiedOperator, enumerate_modified_operators
from mdly.linalg import RatMatrix
from mdly.multilinear import Multilinear
from mdly.representation import (Representation, adjoint_representation, derive_D_from_R1,
                                 semidirect_product, shift_representation, total_structure,
                                 verify_representation)


@pytest.fixture(params=["two", "three"])
def base(request, two, three):
    return {"two": two, "three": three}[request.param]


def test_adjoint_is_representation(base):
    r = adjoint_representation(base)
    assert verify_representation(r).ok


def test_adjoint_matrices_follow_brackets(two):
    r = adjoint_representation(two)
    # rho(e1) e2 = [e1, e2] = e1
    assert r.rho_matrix(0).column(1) == (1, 0)
    # theta(e2, e2) e1 = {e1, e2, e2} = e1
    assert r.theta_matrix(1, 1).column(0) == (1, 0)
    assert r.phi_v_matrix() == two.operator.matrix


def test_D_is_determined_by_rho_and_theta(base):
    r = adjoint_representation(base)
    assert derive_D_from_R1(base.algebra, r.rho, r.theta) == r.dee


def test_shift_gives_derivation_representation(base):
    r = shift_representation(adjoint_representation(base))
    assert r.lam == 0
    assert verify_representation(r).ok
    assert r.phi_v_matrix() == base.operator.matrix + RatMatrix.identity(base.dim)


def test_perturbed_phi_v_breaks_module_equations(base):
    r = adjoint_representation(base)
    bumped = r.phi_v_matrix() + RatMatrix.from_rows(
        [[1 if (i, j) == (0, 0) else 0 for j in range(base.dim)] for i in range(base.dim)])
    rep = verify_representation(r.with_phi_v(bumped))
    assert not rep.ok
    assert set(rep.failed()) <= {"phiV-rho", "phiV-theta", "phiV-D"}


def test_semidirect_product_is_mdly(base):
    for r in (adjoint_representation(base), Representation.zero(base, 2, [[1, 0], [3, -1]])):
        assert verify_representation(r).ok
        S = semidirect_product(r)
        assert S.dim == base.dim + r.module_dim
        assert S.verify().ok
        n = base.dim
        V = range(n, S.dim)
        assert all(not S.algebra.binary(u, v) for u in V for v in V)
        assert all(not S.algebra.ternary(a, u, v) and not S.algebra.ternary(u, v, a)
                   for a in range(S.dim) for u in V for v in V)


def test_from_matrices_roundtrip(two):
    r = adjoint_representation(two)
    n = two.dim
    rebuilt = Representation.from_matrices(
        two, n, [r.rho_matrix(i) for i in range(n)],
        [[r.theta_matrix(i, j) for j in range(n)] for i in range(n)],
        [[r.dee_matrix(i, j) for j in range(n)] for i in range(n)], r.phi_v_matrix())
    assert rebuilt == r


def test_non_representation_detected(three):
    # rho(e2) = Id on a 1-dimensional module clashes with phi(e2) = 7 e1 + ... in the rho compatibility
    rho = Multilinear.from_entries(2, [((1, 0), 0, 1)])
    r = Representation(three, 1, rho, Multilinear(3), derive_D_from_R1(three.algebra, rho, Multilinear(3)),
                       Multilinear(1))
    assert verify_representation(r).failed() == ["phiV-rho"]


def test_total_structure_with_twist_is_bilinear_extension(two):
    r = adjoint_representation(two)
    nu = Multilinear.from_entries(2, [((0, 1), 0, 1), ((1, 0), 0, -1)])
    T = total_structure(r, nu=nu)
    assert T.algebra.binary(0, 1) == {0: Fraction(1), 2: Fraction(1)}
    assert T.dim == 4


def test_shift_at_lambda_zero_is_identity(two):
    A = MDLYAlgebra(two.algebra, ModifiedOperator(0, enumerate_modified_operators(two.algebra, 0).point([1, 2])))
    r = adjoint_representation(A)
    assert shift_representation(r).phi_v_matrix() == r.phi_v_matrix()


def test_shift_of_zero_representation(three):
    r = Representation.zero(three, 2, [[0, 0], [0, 0]])
    s = shift_representation(r)
    assert s.phi_v_matrix() == RatMatrix.identity(2).scale(three.lam)
    assert verify_representation(s).ok


def test_three_dim_adjoint_D(ad_three):
    D = ad_three.dee_matrix(0, 1)
    assert D.column(0) == (0, 0, 1)
    assert not any(D.column(1)) and not any(D.column(2))


def test_adjoint_of_abelian_and_semidirect(two):
    ab = MDLYAlgebra(LYAlgebra.abelian(2), ModifiedOperator(0, RatMatrix.zeros(2, 2)))
    r = adjoint_representation(ab)
    assert verify_representation(r).ok
    assert r.rho.is_zero() and r.theta.is_zero() and r.dee.is_zero()
    S = semidirect_product(adjoint_representation(two))
    assert verify_representation(adjoint_representation(S)).ok


def test_semidirect_projection_recovers_base(base):
    S = semidirect_product(adjoint_representation(base))
    n = base.dim
    A = base.algebra
    for i in range(n):
        for j in range(n):
            assert {k: v for k, v in S.algebra.binary(i, j).items() if k < n} == A.binary(i, j)
            for k in range(n):
                assert {o: v for o, v in S.algebra.ternary(i, j, k).items() if o < n} == A.ternary(i, j, k)
    assert all(S.operator.matrix[a, b] == base.operator.matrix[a, b] for a in range(n) for b in range(n))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2))
def test_shift_iff_on_perturbations(i, j, bump):
    base = examples.three_dim_mdly()
    r = adjoint_representation(base)
    unit = RatMatrix.from_rows([[bump if (a, b) == (i, j) else 0 for b in range(3)] for a in range(3)])
    perturbed = r.with_phi_v(r.phi_v_matrix() + unit)
    assert verify_representation(perturbed).ok == verify_representation(shift_representation(perturbed)).ok


def test_r6_prime_never_fails_alone(base, rng):
    # random actions: whenever R1 and R6 hold, R6' holds too
    n = base.dim
    for _ in range(30):
        rho = Multilinear.from_entries(2, [((rng.randrange(n), 0), 0, rng.randint(-1, 1))])
        theta = Multilinear.from_entries(3, [((rng.randrange(n), rng.randrange(n), 0), 0, rng.randint(-1, 1))])
        r = Representation(base, 1, rho, theta, derive_D_from_R1(base.algebra, rho, theta), Multilinear(1))
        failed = verify_representation(r).failed()
        if "R1" not in failed and "R6" not in failed:
            assert "R6'" not in failed
