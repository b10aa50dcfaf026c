"""Sparse multilinear maps on basis indices.

A map of arity r is stored as ``{(i_1, ..., i_r): {out: coeff}}`` with zero
coefficients pruned.  Identities such as (LY6) are checked by composing these
maps and testing the residual for emptiness, which is much cheaper than dense
tensor contraction when structure constants are sparse.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

SparseVec = dict  # dict[int, Fraction]


def _add_into(acc: dict, vec: Mapping[int, Fraction], coef=1) -> None:
    for k, v in vec.items():
        s = acc.get(k, 0) + coef * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class Multilinear:
    __slots__ = ("arity", "data")

    def __init__(self, arity: int, data: dict | None = None):
        self.arity = arity
        self.data: dict[tuple, dict[int, Fraction]] = data if data is not None else {}

    @classmethod
    def from_entries(cls, arity: int, entries: Iterable[tuple[tuple, int, Fraction]]) -> "Multilinear":
        m = cls(arity)
        for key, out, coef in entries:
            m.add_entry(key, out, coef)
        return m

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[Fraction]]) -> "Multilinear":
        """Linear map with column convention: e_j -> sum_i M[i][j] e_i."""
        m = cls(1)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    m.add_entry((j,), i, v)
        return m

    @classmethod
    def identity(cls, n: int, scale=1) -> "Multilinear":
        m = cls(1)
        if scale:
            for i in range(n):
                m.data[(i,)] = {i: Fraction(scale)}
        return m

    def add_entry(self, key: tuple, out: int, coef) -> None:
        if not coef:
            return
        vec = self.data.setdefault(key, {})
        s = vec.get(out, 0) + coef
        if s:
            vec[out] = Fraction(s)
        else:
            del vec[out]
            if not vec:
                del self.data[key]

    def __call__(self, *key: int) -> dict[int, Fraction]:
        return self.data.get(key, {})

    def is_zero(self) -> bool:
        return not self.data

    def copy(self) -> "Multilinear":
        return Multilinear(self.arity, {k: dict(v) for k, v in self.data.items()})

    def _combine(self, other: "Multilinear", coef) -> "Multilinear":
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")
        out = self.copy()
        for key, vec in other.data.items():
            acc = out.data.setdefault(key, {})
            _add_into(acc, vec, coef)
            if not acc:
                del out.data[key]
        return out

    def __add__(self, other: "Multilinear") -> "Multilinear":
        return self._combine(other, 1)

    def __sub__(self, other: "Multilinear") -> "Multilinear":
        return self._combine(other, -1)

    def __neg__(self) -> "Multilinear":
        return self.scale(-1)

    def scale(self, s) -> "Multilinear":
        if not s:
            return Multilinear(self.arity)
        return Multilinear(self.arity, {k: {o: s * v for o, v in vec.items()} for k, vec in self.data.items()})

    def compose(self, slot: int, inner: "Multilinear") -> "Multilinear":
        """Plug ``inner`` into argument ``slot``; inner's arguments take its place."""
        if not 0 <= slot < self.arity:
            raise IndexError(slot)
        by_slot = defaultdict(list)
        for key, vec in self.data.items():
            by_slot[key[slot]].append((key, vec))
        res: dict[tuple, dict] = {}
        for ikey, ivec in inner.data.items():
            for o, c in ivec.items():
                for okey, ovec in by_slot.get(o, ()):
                    nk = okey[:slot] + ikey + okey[slot + 1:]
                    acc = res.setdefault(nk, {})
                    _add_into(acc, ovec, c)
        return Multilinear(self.arity - 1 + inner.arity, {k: v for k, v in res.items() if v})

    def after(self, lin: "Multilinear") -> "Multilinear":
        """Post-compose with a linear map: ``lin(self(...))``."""
        return lin.compose(0, self)

    def permuted(self, sigma: Sequence[int]) -> "Multilinear":
        """The map ``(v_0, ..., v_{r-1}) -> self(v_sigma(0), ..., v_sigma(r-1))``."""
        res: dict[tuple, dict] = {}
        r = self.arity
        for key, vec in self.data.items():
            nk = [0] * r
            for i in range(r):
                nk[sigma[i]] = key[i]
            res[tuple(nk)] = dict(vec)
        return Multilinear(r, res)

    def apply(self, *args: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Evaluate on sparse argument vectors."""
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        acc: dict[int, Fraction] = {}
        for key, vec in self.data.items():
            c = 1
            for a, k in zip(args, key):
                x = a.get(k)
                if not x:
                    break
                c *= x
            else:
                _add_into(acc, vec, c)
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Multilinear) and self.arity == other.arity and self.data == other.data

    def __repr__(self) -> str:
        return f"Multilinear(arity={self.arity}, nnz={sum(len(v) for v in self.data.values())})"


def cyclic_sum(m: Multilinear, positions: Sequence[int] = (0, 1, 2)) -> Multilinear:
    """Sum of ``m`` over cyclic permutations of the arguments at ``positions``.

    For positions (x, y, z) this is T(x,y,z) + T(z,x,y) + T(y,z,x).
    """
    a, b, c = positions
    ident = list(range(m.arity))
    s1 = list(ident)
    s1[a], s1[b], s1[c] = ident[c], ident[a], ident[b]
    s2 = list(ident)
    s2[a], s2[b], s2[c] = ident[b], ident[c], ident[a]
    return m + m.permuted(s1) + m.permuted(s2)


def swap_args(m: Multilinear, i: int, j: int) -> Multilinear:
    take = list(range(m.arity))
    take[i], take[j] = take[j], take[i]
    return m.permuted(take)


def sparse(vec: Sequence) -> dict[int, Fraction]:
    return {i: Fraction(v) for i, v in enumerate(vec) if v}


def dense(vec: Mapping[int, Fraction], n: int) -> tuple:
    return tuple(Fraction(vec.get(i, 0)) for i in range(n))
