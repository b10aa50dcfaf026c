"""Cocycles, coboundaries and cohomology dimensions of the LY and MDLY complexes."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cochains import CochainSpace, LYCochain, MDLYCochain, delta, matrix_of, mdly_size, partial
from .errors import InputError, UnsupportedDegree
from .linalg import RatMatrix, kernel_basis, rank, rank_naive, solve
from .representation import Representation

COMPLEXES = ("ly", "mdly")


@dataclass
class CohomologyReport:
    degree: int
    complex: str
    cochain_dim: int
    dimZ: int
    dimB: int
    kernel_basis: list = field(default_factory=list)
    representatives: list = field(default_factory=list)

    @property
    def dimH(self) -> int:
        return self.dimZ - self.dimB

    def summary(self) -> str:
        return (f"H^{self.degree}_{self.complex.upper()}: dim C = {self.cochain_dim}, "
                f"dim Z = {self.dimZ}, dim B = {self.dimB}, dim H = {self.dimH}")

    def to_dict(self) -> dict:
        return {"degree": self.degree, "complex": self.complex, "cochainDim": self.cochain_dim,
                "dimZ": self.dimZ, "dimB": self.dimB, "dimH": self.dimH}


def _op(kind: str) -> str:
    if kind not in COMPLEXES:
        raise InputError(f"complex must be one of {COMPLEXES}, got {kind!r}")
    return "delta" if kind == "ly" else "partial"


def differential(r: Representation, p: int, kind: str = "mdly", allow_large: bool = False) -> RatMatrix:
    return matrix_of(r, _op(kind), p, allow_large=allow_large)


def cochain_dim(r: Representation, p: int, kind: str = "mdly") -> int:
    n, m = r.base.dim, r.module_dim
    return CochainSpace(n, m, p).size if kind == "ly" else mdly_size(n, m, p)


def _wrap(r: Representation, p: int, kind: str, coords: Sequence):
    n, m = r.base.dim, r.module_dim
    if kind == "ly":
        return LYCochain(CochainSpace(n, m, p), tuple(coords))
    return MDLYCochain.from_coords(n, m, p, coords)


def cohomology_dim(r: Representation, p: int, kind: str = "mdly", representatives: bool = False,
                   oracle: bool = False, allow_large: bool = False) -> CohomologyReport:
    """dim Z^p, dim B^p and dim H^p; degree-1 cohomology is ker d^1.

    With ``oracle`` the ranks are recomputed by naive rational elimination and
    a mismatch raises ``AssertionError``.
    """
    if p < 1:
        raise UnsupportedDegree(f"degree must be >= 1, got {p}")
    d_p = differential(r, p, kind, allow_large)
    ker = kernel_basis(d_p)
    dimB = 0
    d_prev = None
    if p > 1:
        d_prev = differential(r, p - 1, kind, allow_large)
        dimB = rank(d_prev)
    if oracle:
        z_naive = d_p.cols - rank_naive(d_p)
        b_naive = rank_naive(d_prev) if d_prev is not None else 0
        if (z_naive, b_naive) != (len(ker), dimB):
            raise AssertionError(f"elimination mismatch: bareiss ({len(ker)}, {dimB}) vs naive ({z_naive}, {b_naive})")
    rep = CohomologyReport(p, kind, d_p.cols, len(ker), dimB)
    if representatives:
        rep.kernel_basis = [_wrap(r, p, kind, v) for v in ker]
        rep.representatives = [_wrap(r, p, kind, v) for v in _complement(ker, d_prev)]
    return rep


def _complement(ker: list, image: RatMatrix | None) -> list:
    """Kernel vectors that extend a basis of the image to a basis of the kernel."""
    if image is None:
        return list(ker)
    cols = [image.column(j) for j in range(image.cols)]
    current = rank(image) if image.cols else 0
    chosen = []
    for v in ker:
        trial = RatMatrix.from_columns(cols + [v], len(v))
        rk = rank(trial)
        if rk > current:
            cols.append(v)
            current = rk
            chosen.append(v)
    return chosen


def is_cocycle(r: Representation, c: MDLYCochain | LYCochain, literal: bool = False) -> tuple[bool, object]:
    """(True, None) when the differential of ``c`` vanishes, else (False, residual cochain)."""
    if isinstance(c, LYCochain):
        res = delta(r, c)
    else:
        res = partial(r, c, literal)
    if res.is_zero():
        return True, None
    return False, res


def cohomologous(r: Representation, c1: MDLYCochain, c2: MDLYCochain) -> LYCochain | None:
    """A 1-cochain w with d^1 w = c1 - c2, or None when the classes differ."""
    if c1.degree != 2 or c2.degree != 2:
        raise UnsupportedDegree("class comparison is implemented for degree-2 cochains only")
    diff = c1 - c2
    sol = solve(matrix_of(r, "partial", 1), diff.coords)
    if sol is None:
        return None
    return LYCochain(CochainSpace(r.base.dim, r.module_dim, 1), tuple(Fraction(x) for x in sol))


def coboundary(r: Representation, w: LYCochain) -> MDLYCochain:
    return partial(r, MDLYCochain(w))
