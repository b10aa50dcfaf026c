"""Lie-Yamaguti algebras given by structure constants, and modified
lambda-differential operators on them.

Conventions: ``[e_i, e_j] = sum_k c[i][j][k] e_k``,
``{e_i, e_j, e_k} = sum_l d[i][j][k][l] e_l`` and operator matrices act on
columns, ``phi(e_j) = sum_i M[i][j] e_i``.  Indices are 0-based here.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import AntisymmetryConflict, InputError
from .linalg import RatMatrix, as_fraction, kernel_basis, solve, vector
from .multilinear import Multilinear, cyclic_sum, dense, sparse, swap_args
from .report import Report

# ---------------------------------------------------------------------------
# identity terms, shared with the deformation equations where the outer and
# inner maps differ


def jacobi_term(outer: Multilinear, inner: Multilinear) -> Multilinear:
    """(x,y,z) -> cyclic sum of outer(inner(x, y), z)."""
    return cyclic_sum(outer.compose(0, inner))


def ly4_term(tri: Multilinear, br: Multilinear) -> Multilinear:
    """(x,y,z,a) -> cyclic sum over x,y,z of tri(br(x, y), z, a)."""
    return cyclic_sum(tri.compose(0, br))


def ly5_lhs(tri: Multilinear, br: Multilinear) -> Multilinear:
    """(a,b,x,y) -> tri(a, b, br(x, y))."""
    return tri.compose(2, br)


def ly5_rhs(br: Multilinear, tri: Multilinear) -> Multilinear:
    """(a,b,x,y) -> br(tri(a,b,x), y) + br(x, tri(a,b,y))."""
    return br.compose(0, tri) + br.compose(1, tri).permuted((2, 0, 1, 3))


def ly6_lhs(outer: Multilinear, inner: Multilinear) -> Multilinear:
    return outer.compose(2, inner)


def ly6_rhs(outer: Multilinear, inner: Multilinear) -> Multilinear:
    """(a,b,x,y,z) -> outer(inner(a,b,x),y,z) + outer(x,inner(a,b,y),z) + outer(x,y,inner(a,b,z))."""
    return (outer.compose(0, inner)
            + outer.compose(1, inner).permuted((2, 0, 1, 3, 4))
            + outer.compose(2, inner).permuted((2, 3, 0, 1, 4)))


def leibniz_rule(m: Multilinear, lin: Multilinear) -> Multilinear:
    """sum over slots of m with ``lin`` inserted in that slot."""
    out = Multilinear(m.arity)
    for s in range(m.arity):
        out = out + m.compose(s, lin)
    return out


# ---------------------------------------------------------------------------


def _label(key) -> str:
    """1-based index tuple without spaces, e.g. (1,2)."""
    return "(" + ",".join(str(k + 1) for k in key) + ")"


def antisymmetric_map(dim: int, arity: int, entries: Mapping[tuple, Sequence], what: str,
                    out_dim: int | None = None) -> Multilinear:
    """Build a map antisymmetric in its first two arguments from possibly
    redundant entries; conflicting redundant entries raise."""
    out_dim = dim if out_dim is None else out_dim
    m = Multilinear(arity)
    given: dict[tuple, tuple] = {}
    for key, vec in entries.items():
        key = tuple(int(k) for k in key)
        if len(key) != arity or any(not 0 <= k < dim for k in key):
            raise InputError(f"{what}: bad index tuple {tuple(k + 1 for k in key)}")
        vec = vector(vec)
        if len(vec) != out_dim:
            raise InputError(f"{what}: value at {tuple(k + 1 for k in key)} has length {len(vec)}, expected {out_dim}")
        if key[0] == key[1]:
            if any(vec):
                raise AntisymmetryConflict(
                    f"antisymmetry conflict at {_label(key)}: repeated first two arguments must give zero")
            continue
        canon = key if key[0] < key[1] else (key[1], key[0]) + key[2:]
        val = vec if key[0] < key[1] else tuple(-x for x in vec)
        if canon in given:
            if given[canon] != val:
                raise AntisymmetryConflict(
                    f"antisymmetry conflict at {_label(canon[:2])}"
                    + (f" (third argument {canon[2] + 1})" if arity == 3 else ""))
            continue
        given[canon] = val
    for canon, val in given.items():
        swapped = (canon[1], canon[0]) + canon[2:]
        for out, x in enumerate(val):
            if x:
                m.add_entry(canon, out, x)
                m.add_entry(swapped, out, -x)
    return m


def _dense_to_entries(t, arity: int, dim: int) -> dict[tuple, tuple]:
    entries = {}
    for key in itertools.product(range(dim), repeat=arity):
        node = t
        for k in key:
            node = node[k]
        if len(node) != dim:
            raise InputError(f"tensor slice at {key} has length {len(node)}, expected {dim}")
        if any(node):
            entries[key] = tuple(node)
    return entries


def _map_from_dense(t, arity: int, dim: int) -> Multilinear:
    m = Multilinear(arity)
    for key, vec in _dense_to_entries(t, arity, dim).items():
        for out, x in enumerate(vec):
            m.add_entry(key, out, as_fraction(x))
    return m


@dataclass(frozen=True, eq=False)
class LYAlgebra:
    """A finite-dimensional algebra with a binary and a ternary bracket.

    Build with :meth:`from_brackets` or :meth:`from_dense`; both fill in the
    antisymmetric partners of the given entries.  Whether the result really is
    Lie-Yamaguti is decided by :func:`verify_lya`.
    """

    dim: int
    binary: Multilinear
    ternary: Multilinear

    @classmethod
    def from_brackets(cls, dim: int, binary: Mapping[tuple, Sequence] = (),
                      ternary: Mapping[tuple, Sequence] = ()) -> "LYAlgebra":
        return cls(dim, antisymmetric_map(dim, 2, dict(binary), "binary bracket"),
                   antisymmetric_map(dim, 3, dict(ternary), "ternary bracket"))

    @classmethod
    def from_dense(cls, c, d) -> "LYAlgebra":
        dim = len(c)
        return cls.from_brackets(dim, _dense_to_entries(c, 2, dim), _dense_to_entries(d, 3, dim))

    @classmethod
    def abelian(cls, dim: int) -> "LYAlgebra":
        return cls(dim, Multilinear(2), Multilinear(3))

    def c(self, i: int, j: int, k: int) -> Fraction:
        return Fraction(self.binary(i, j).get(k, 0))

    def d(self, i: int, j: int, k: int, l: int) -> Fraction:
        return Fraction(self.ternary(i, j, k).get(l, 0))

    def dense_binary(self) -> list:
        n = self.dim
        return [[list(dense(self.binary(i, j), n)) for j in range(n)] for i in range(n)]

    def dense_ternary(self) -> list:
        n = self.dim
        return [[[list(dense(self.ternary(i, j, k), n)) for k in range(n)]
                 for j in range(n)] for i in range(n)]

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        return dense(self.binary.apply(sparse(x), sparse(y)), self.dim)

    def triple(self, x: Sequence, y: Sequence, z: Sequence) -> tuple:
        return dense(self.ternary.apply(sparse(x), sparse(y), sparse(z)), self.dim)

    def basis(self, i: int) -> tuple:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def __eq__(self, other) -> bool:
        return (isinstance(other, LYAlgebra) and self.dim == other.dim
                and self.binary == other.binary and self.ternary == other.ternary)

    def _check_shape(self) -> None:
        if self.binary.arity != 2 or self.ternary.arity != 3:
            raise InputError("binary bracket must have arity 2 and ternary bracket arity 3")
        for m in (self.binary, self.ternary):
            for key, vec in m.data.items():
                if any(not 0 <= k < self.dim for k in key) or any(not 0 <= o < self.dim for o in vec):
                    raise InputError(f"structure constant index out of range at {key}")


def ly_residuals(br: Multilinear, tri: Multilinear) -> dict[str, Multilinear]:
    return {
        "LY1": br + swap_args(br, 0, 1),
        "LY2": tri + swap_args(tri, 0, 1),
        "LY3": jacobi_term(br, br) + cyclic_sum(tri),
        "LY4": ly4_term(tri, br),
        "LY5": ly5_lhs(tri, br) - ly5_rhs(br, tri),
        "LY6": ly6_lhs(tri, tri) - ly6_rhs(tri, tri),
    }


def verify_lya(A: LYAlgebra) -> Report:
    """Check (LY1)-(LY6) on all basis tuples.  Empty report means Lie-Yamaguti."""
    A._check_shape()
    rep = Report(subject="Lie-Yamaguti axioms")
    for name, res in ly_residuals(A.binary, A.ternary).items():
        rep.add_residual(name, res, A.dim)
    return rep


def lya_from_lie(c) -> LYAlgebra:
    """Lie algebra (dense ``c[i][j][k]``) -> LYA with {x,y,z} = [[x,y],z]."""
    dim = len(c)
    br = _map_from_dense(c, 2, dim)
    anti = br + swap_args(br, 0, 1)
    if not anti.is_zero():
        key = min(anti.data)
        raise InputError(f"not antisymmetric at {tuple(k + 1 for k in key)}")
    jac = jacobi_term(br, br)
    if not jac.is_zero():
        key = min(jac.data)
        raise InputError(f"Jacobi identity fails at {tuple(k + 1 for k in key)}")
    return LYAlgebra(dim, br, br.compose(0, br))


def lya_from_leibniz(p) -> LYAlgebra:
    """Left Leibniz algebra x*(y*z) = (x*y)*z + y*(x*z), dense ``p[i][j][k]``,
    -> LYA with [x,y] = x*y - y*x and {x,y,z} = -(x*y)*z."""
    dim = len(p)
    star = _map_from_dense(p, 2, dim)
    lhs = star.compose(1, star)
    rhs = star.compose(0, star) + star.compose(1, star).permuted((1, 0, 2))
    bad = lhs - rhs
    if not bad.is_zero():
        key = min(bad.data)
        raise InputError(f"Leibniz identity fails at {tuple(k + 1 for k in key)}")
    br = star - swap_args(star, 0, 1)
    tri = star.compose(0, star).scale(-1)
    return LYAlgebra(dim, br, tri)


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ModifiedOperator:
    lam: Fraction
    matrix: RatMatrix

    def __post_init__(self):
        object.__setattr__(self, "lam", as_fraction(self.lam))
        if not isinstance(self.matrix, RatMatrix):
            object.__setattr__(self, "matrix", RatMatrix.from_rows(self.matrix))
        if self.matrix.rows != self.matrix.cols:
            raise InputError("operator matrix must be square")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def as_map(self) -> Multilinear:
        return Multilinear.from_matrix(self.matrix.tolist())

    def __call__(self, x: Sequence) -> tuple:
        return self.matrix @ x

    def __eq__(self, other) -> bool:
        return isinstance(other, ModifiedOperator) and self.lam == other.lam and self.matrix == other.matrix


def operator_residuals(br: Multilinear, tri: Multilinear, phi: Multilinear, lam) -> dict[str, Multilinear]:
    return {
        "phi-bracket": br.after(phi) - leibniz_rule(br, phi) - br.scale(lam),
        "phi-triple": tri.after(phi) - leibniz_rule(tri, phi) - tri.scale(2 * lam),
    }


def verify_modified_operator(A: LYAlgebra, op: ModifiedOperator) -> Report:
    if op.dim != A.dim:
        raise InputError(f"operator is {op.dim}x{op.dim}, algebra has dimension {A.dim}")
    rep = Report(subject=f"modified {op.lam}-differential operator")
    for name, res in operator_residuals(A.binary, A.ternary, op.as_map(), op.lam).items():
        rep.add_residual(name, res, A.dim)
    return rep


def shift_to_derivation(op: ModifiedOperator) -> RatMatrix:
    """phi + lambda * Id."""
    return op.matrix + RatMatrix.identity(op.dim).scale(op.lam)


def verify_derivation(A: LYAlgebra, matrix: RatMatrix) -> Report:
    rep = verify_modified_operator(A, ModifiedOperator(0, matrix))
    rep.subject = "derivation"
    return rep


@dataclass(frozen=True, eq=False)
class MDLYAlgebra:
    """A Lie-Yamaguti algebra together with a modified lambda-differential operator."""

    algebra: LYAlgebra
    operator: ModifiedOperator

    def __post_init__(self):
        if self.operator.dim != self.algebra.dim:
            raise InputError("operator size does not match algebra dimension")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def lam(self) -> Fraction:
        return self.operator.lam

    @property
    def phi(self) -> Multilinear:
        return self.operator.as_map()

    def verify(self) -> Report:
        rep = verify_lya(self.algebra)
        rep.subject = "modified lambda-differential Lie-Yamaguti algebra"
        rep.merge(verify_modified_operator(self.algebra, self.operator))
        return rep

    def __eq__(self, other) -> bool:
        return isinstance(other, MDLYAlgebra) and self.algebra == other.algebra and self.operator == other.operator


@dataclass(frozen=True)
class AffineSpace:
    """``particular + span(directions)``; here a set of operator matrices."""

    particular: RatMatrix
    directions: tuple

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def point(self, coeffs: Sequence) -> RatMatrix:
        out = self.particular
        for t, b in zip(coeffs, self.directions):
            out = out + b.scale(t)
        return out


def _matrix_from_coords(x: Sequence, n: int) -> RatMatrix:
    return RatMatrix(n, n, tuple(Fraction(v) for v in x))


def operator_system(A: LYAlgebra, lam) -> tuple[RatMatrix, list[Fraction]]:
    """Linear system L x = rhs in the n*n entries of phi (row-major) encoding the operator identities.

    The identities are affine in the entries of phi, so the system is
    assembled column by column from the residual of each matrix unit.
    """
    lam = as_fraction(lam)
    n = A.dim

    def residual(m: Multilinear) -> dict:
        out = {}
        for name, res in operator_residuals(A.binary, A.ternary, m, lam).items():
            for key, vec in res.data.items():
                for o, v in vec.items():
                    out[(name, key, o)] = v
        return out

    base = residual(Multilinear(1))
    columns = []
    for idx in range(n * n):
        i, j = divmod(idx, n)
        unit = Multilinear(1)
        unit.add_entry((j,), i, Fraction(1))
        r = residual(unit)
        col = {k: r.get(k, 0) - base.get(k, 0) for k in set(r) | set(base)}
        columns.append({k: v for k, v in col.items() if v})
    rows = sorted(set(base).union(*columns), key=repr)
    index = {k: i for i, k in enumerate(rows)}
    sparse_rows = [dict() for _ in rows]
    for j, col in enumerate(columns):
        for k, v in col.items():
            sparse_rows[index[k]][j] = v
    return RatMatrix.from_sparse_rows(sparse_rows, n * n), [-base.get(k, 0) for k in rows]


def enumerate_modified_operators(A: LYAlgebra, lam) -> AffineSpace:
    """All modified operators for the given lambda, as an affine space."""
    n = A.dim
    L, rhs = operator_system(A, lam)
    x = solve(L, rhs)
    if x is None:  # cannot happen: -lambda*Id always solves
        raise AssertionError("operator system inconsistent")
    return AffineSpace(_matrix_from_coords(x, n),
                       tuple(_matrix_from_coords(v, n) for v in kernel_basis(L)))
