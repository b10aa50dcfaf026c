"""Small worked algebras and their operator families."""
from __future__ import annotations

from .algebra import LYAlgebra, MDLYAlgebra, ModifiedOperator
from .linalg import RatMatrix, as_fraction


def two_dim() -> LYAlgebra:
    """[e1,e2] = e1, {e1,e2,e2} = e1."""
    return LYAlgebra.from_brackets(2, {(0, 1): (1, 0)}, {(0, 1, 1): (1, 0)})


def three_dim() -> LYAlgebra:
    """[e1,e2] = e3, {e1,e2,e1} = e3."""
    return LYAlgebra.from_brackets(3, {(0, 1): (0, 0, 1)}, {(0, 1, 0): (0, 0, 1)})


def two_dim_family(k, k1, lam) -> RatMatrix:
    """[[k, k1], [0, -lam]]."""
    k, k1, lam = (as_fraction(x) for x in (k, k1, lam))
    return RatMatrix.from_rows([[k, k1], [0, -lam]])


def three_dim_family(k, k1, k2, k3, k4, lam) -> RatMatrix:
    """[[-lam, k1, 0], [k2, k, 0], [k3, k4, k]]; an operator only when k1 = 0."""
    k, k1, k2, k3, k4, lam = (as_fraction(x) for x in (k, k1, k2, k3, k4, lam))
    return RatMatrix.from_rows([[-lam, k1, 0], [k2, k, 0], [k3, k4, k]])


def two_dim_mdly(k=2, k1=3, lam=1) -> MDLYAlgebra:
    return MDLYAlgebra(two_dim(), ModifiedOperator(lam, two_dim_family(k, k1, lam)))


def three_dim_mdly(k=2, k2=7, k3=11, k4=13, lam=1) -> MDLYAlgebra:
    return MDLYAlgebra(three_dim(), ModifiedOperator(lam, three_dim_family(k, 0, k2, k3, k4, lam)))
