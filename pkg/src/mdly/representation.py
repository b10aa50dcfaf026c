"""Representations (V; rho, theta, D, phi_V) and the constructions built on them.

Module matrices use the column convention of :mod:`mdly.algebra`.  Internally
``rho`` is the map (x, u) -> rho(x)u, ``theta`` is (x, y, u) -> theta(x,y)u and
``dee`` is (x, y, u) -> D(x,y)u.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import LYAlgebra, MDLYAlgebra, ModifiedOperator, shift_to_derivation
from .errors import InputError
from .linalg import RatMatrix, as_fraction
from .multilinear import Multilinear
from .report import Report


def _action_from_matrices(mats: dict[tuple, RatMatrix]) -> Multilinear:
    arity = len(next(iter(mats))) + 1 if mats else 0
    m = Multilinear(arity)
    for key, mat in mats.items():
        for i in range(mat.rows):
            for j in range(mat.cols):
                v = mat[i, j]
                if v:
                    m.add_entry(tuple(key) + (j,), i, v)
    return m


def _action_matrix(action: Multilinear, key: tuple, m: int) -> RatMatrix:
    entries = [Fraction(0)] * (m * m)
    for j in range(m):
        for i, v in action(*key, j).items():
            entries[i * m + j] = v
    return RatMatrix(m, m, tuple(entries))


@dataclass(frozen=True, eq=False)
class Representation:
    base: MDLYAlgebra
    module_dim: int
    rho: Multilinear
    theta: Multilinear
    dee: Multilinear
    phi_v: Multilinear

    @classmethod
    def from_matrices(cls, base: MDLYAlgebra, module_dim: int, rho: Sequence, theta: Sequence,
                      dee: Sequence, phi_v) -> "Representation":
        """rho[i], theta[i][j], dee[i][j] are m x m matrices (nested lists or RatMatrix)."""
        n, m = base.dim, module_dim

        def mat(x) -> RatMatrix:
            x = x if isinstance(x, RatMatrix) else RatMatrix.from_rows(x, m) if m else RatMatrix.zeros(0, 0)
            if (x.rows, x.cols) != (m, m):
                raise InputError(f"module matrices must be {m}x{m}")
            return x

        if len(rho) != n or len(theta) != n or len(dee) != n:
            raise InputError(f"expected {n} action matrices per argument")
        rho_m = {(i,): mat(rho[i]) for i in range(n)}
        theta_m, dee_m = {}, {}
        for i in range(n):
            if len(theta[i]) != n or len(dee[i]) != n:
                raise InputError(f"theta and D must be {n}x{n} arrays of matrices")
            for j in range(n):
                theta_m[(i, j)] = mat(theta[i][j])
                dee_m[(i, j)] = mat(dee[i][j])
        return cls(base, m,
                   _action_from_matrices(rho_m) if n else Multilinear(2),
                   _action_from_matrices(theta_m) if n else Multilinear(3),
                   _action_from_matrices(dee_m) if n else Multilinear(3),
                   Multilinear.from_matrix(mat(phi_v).tolist()))

    @classmethod
    def zero(cls, base: MDLYAlgebra, module_dim: int, phi_v=None) -> "Representation":
        pv = Multilinear(1) if phi_v is None else Multilinear.from_matrix(
            (phi_v if isinstance(phi_v, RatMatrix) else RatMatrix.from_rows(phi_v)).tolist())
        return cls(base, module_dim, Multilinear(2), Multilinear(3), Multilinear(3), pv)

    @property
    def lam(self) -> Fraction:
        return self.base.lam

    def rho_matrix(self, i: int) -> RatMatrix:
        return _action_matrix(self.rho, (i,), self.module_dim)

    def theta_matrix(self, i: int, j: int) -> RatMatrix:
        return _action_matrix(self.theta, (i, j), self.module_dim)

    def dee_matrix(self, i: int, j: int) -> RatMatrix:
        return _action_matrix(self.dee, (i, j), self.module_dim)

    def phi_v_matrix(self) -> RatMatrix:
        m = self.module_dim
        entries = [Fraction(0)] * (m * m)
        for (j,), vec in self.phi_v.data.items():
            for i, v in vec.items():
                entries[i * m + j] = v
        return RatMatrix(m, m, tuple(entries))

    def with_phi_v(self, phi_v: RatMatrix) -> "Representation":
        return Representation(self.base, self.module_dim, self.rho, self.theta, self.dee,
                              Multilinear.from_matrix(phi_v.tolist()))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Representation) and self.base == other.base
                and self.module_dim == other.module_dim and self.rho == other.rho
                and self.theta == other.theta and self.dee == other.dee and self.phi_v == other.phi_v)


def representation_residuals(A: LYAlgebra, phi: Multilinear, lam, rho: Multilinear,
                             theta: Multilinear, dee: Multilinear, phi_v: Multilinear) -> dict[str, Multilinear]:
    br, tri = A.binary, A.ternary
    lam = as_fraction(lam)
    rr = rho.compose(1, rho)
    return {
        # (x,y,u)
        "R1": (dee - theta.permuted((1, 0, 2)) + theta + rho.compose(0, br)
               - rr + rr.permuted((1, 0, 2))),
        # (x,y,z,u)
        "R2": (dee.compose(0, br) + dee.compose(0, br).permuted((2, 0, 1, 3))
               + dee.compose(0, br).permuted((1, 2, 0, 3))),
        # (x,y,a,u)
        "R3": (theta.compose(0, br) - theta.compose(2, rho).permuted((0, 2, 1, 3))
               + theta.compose(2, rho).permuted((1, 2, 0, 3))),
        # (a,b,x,u)
        "R4": (dee.compose(2, rho) - rho.compose(1, dee).permuted((2, 0, 1, 3))
               - rho.compose(0, tri)),
        # (x,a,b,u)
        "R5": (theta.compose(1, br) - rho.compose(1, theta).permuted((1, 0, 2, 3))
               + rho.compose(1, theta).permuted((2, 0, 1, 3))),
        # (a,b,x,y,u)
        "R6": (dee.compose(2, theta) - theta.compose(2, dee).permuted((2, 3, 0, 1, 4))
               - theta.compose(0, tri) - theta.compose(1, tri).permuted((2, 0, 1, 3, 4))),
        "R6'": (dee.compose(2, dee) - dee.compose(2, dee).permuted((2, 3, 0, 1, 4))
                - dee.compose(0, tri) - dee.compose(1, tri).permuted((2, 0, 1, 3, 4))),
        # (a,x,y,z,u)
        "R7": (theta.compose(1, tri) - theta.compose(2, theta).permuted((2, 3, 0, 1, 4))
               + theta.compose(2, theta).permuted((1, 3, 0, 2, 4))
               - dee.compose(2, theta).permuted((1, 2, 0, 3, 4))),
        "phiV-rho": (rho.after(phi_v) - rho.compose(0, phi) - rho.compose(1, phi_v) - rho.scale(lam)),
        "phiV-theta": (theta.after(phi_v) - theta.compose(0, phi) - theta.compose(1, phi)
                  - theta.compose(2, phi_v) - theta.scale(2 * lam)),
        "phiV-D": (dee.after(phi_v) - dee.compose(0, phi) - dee.compose(1, phi)
                  - dee.compose(2, phi_v) - dee.scale(2 * lam)),
    }


def _check_shapes(r: Representation) -> None:
    n, m = r.base.dim, r.module_dim
    for name, act, arity in (("rho", r.rho, 2), ("theta", r.theta, 3), ("D", r.dee, 3), ("phi_V", r.phi_v, 1)):
        if act.arity != arity and act.data:
            raise InputError(f"{name} has arity {act.arity}, expected {arity}")
        for key, vec in act.data.items():
            if any(not 0 <= k < n for k in key[:-1]) or not 0 <= key[-1] < m or any(not 0 <= o < m for o in vec):
                raise InputError(f"{name} entry out of range at {key}")


def verify_representation(r: Representation) -> Report:
    """Check (R1)-(R7), (R6)' and the phi_V compatibilities on all basis tuples."""
    _check_shapes(r)
    rep = Report(subject="representation")
    res = representation_residuals(r.base.algebra, r.base.phi, r.lam, r.rho, r.theta, r.dee, r.phi_v)
    for name, residual in res.items():
        rep.add_residual(name, residual, r.module_dim)
    return rep


def adjoint_representation(A: MDLYAlgebra) -> Representation:
    """(g; ad, L, R, phi): rho(x)z = [x,z], D(x,y)z = {x,y,z}, theta(x,y)z = {z,x,y}."""
    tri = A.algebra.ternary
    return Representation(A, A.dim, A.algebra.binary.copy(), tri.permuted((2, 0, 1)), tri.copy(), A.phi)


def derive_D_from_R1(A: LYAlgebra, rho: Multilinear, theta: Multilinear) -> Multilinear:
    """D(x,y) = theta(y,x) - theta(x,y) - rho([x,y]) + rho(x)rho(y) - rho(y)rho(x)."""
    rr = rho.compose(1, rho)
    return (theta.permuted((1, 0, 2)) - theta - rho.compose(0, A.binary)
            + rr - rr.permuted((1, 0, 2)))


def shift_representation(r: Representation) -> Representation:
    """(rho, theta, D, phi_V + lambda Id) over the algebra with derivation phi + lambda Id.

    The result is a representation for lambda = 0, i.e. of a Lie-Yamaguti
    algebra with a derivation, exactly when ``r`` is one for lambda.
    """
    op = r.base.operator
    shifted = MDLYAlgebra(r.base.algebra, ModifiedOperator(0, shift_to_derivation(op)))
    phi_v = r.phi_v + Multilinear.identity(r.module_dim, r.lam)
    return Representation(shifted, r.module_dim, r.rho, r.theta, r.dee, phi_v)


def _relabel(m: Multilinear, slot_offsets: Sequence[int], out_offset: int, scale=1) -> Multilinear:
    res = Multilinear(m.arity)
    for key, vec in m.data.items():
        nk = tuple(k + o for k, o in zip(key, slot_offsets))
        for out, v in vec.items():
            res.add_entry(nk, out + out_offset, scale * v)
    return res


def total_structure(r: Representation, nu: Multilinear | None = None, psi: Multilinear | None = None,
                    chi: Multilinear | None = None) -> MDLYAlgebra:
    """Brackets and operator on g + V twisted by (nu, psi, chi); all None gives g x| V.

    [x+u, y+v] = [x,y] + rho(x)v - rho(y)u + nu(x,y)
    {x+u, y+v, z+w} = {x,y,z} + theta(y,z)u - theta(x,z)v + D(x,y)w + psi(x,y,z)
    phi(x+u) = phi(x) + chi(x) + phi_V(u)
    """
    A = r.base
    n, m = A.dim, r.module_dim
    br = _relabel(A.algebra.binary, (0, 0), 0)
    br = br + _relabel(r.rho, (0, n), n) + _relabel(r.rho, (0, n), n, -1).permuted((1, 0))
    tri = _relabel(A.algebra.ternary, (0, 0, 0), 0)
    tri = (tri + _relabel(r.dee, (0, 0, n), n)
           + _relabel(r.theta, (0, 0, n), n, -1).permuted((0, 2, 1))
           + _relabel(r.theta, (0, 0, n), n).permuted((1, 2, 0)))
    phi = _relabel(A.phi, (0,), 0) + _relabel(r.phi_v, (n,), n)
    if nu is not None:
        br = br + _relabel(nu, (0, 0), n)
    if psi is not None:
        tri = tri + _relabel(psi, (0, 0, 0), n)
    if chi is not None:
        phi = phi + _relabel(chi, (0,), n)
    mat = [[Fraction(0)] * (n + m) for _ in range(n + m)]
    for (j,), vec in phi.data.items():
        for i, v in vec.items():
            mat[i][j] = v
    return MDLYAlgebra(LYAlgebra(n + m, br, tri), ModifiedOperator(A.lam, RatMatrix.from_rows(mat, n + m)))


def semidirect_product(r: Representation) -> MDLYAlgebra:
    return total_structure(r)
