"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Rank, kernel and solve go through
fraction-free (Bareiss) elimination on integer rows; :func:`rref_naive` is a
plain rational Gauss-Jordan kept as an independent oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Vector = tuple  # tuple[Fraction, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix, row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(as_fraction(x) for r in rows for x in r))

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Mapping[int, Fraction]], cols: int) -> "RatMatrix":
        entries = [Fraction(0)] * (len(rows) * cols)
        for i, row in enumerate(rows):
            for j, v in row.items():
                entries[i * cols + j] = as_fraction(v)
        return cls(len(rows), cols, tuple(entries))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        entries = [Fraction(0)] * (rows * len(columns))
        ncols = len(columns)
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, v in enumerate(col):
                if v:
                    entries[i * ncols + j] = as_fraction(v)
        return cls(rows, ncols, tuple(entries))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         tuple(self.entries[i * self.cols + j]
                               for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append({j: v for j, v in enumerate(r) if v})
        return out

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, s) -> "RatMatrix":
        s = as_fraction(s)
        return RatMatrix(self.rows, self.cols, tuple(s * a for a in self.entries))

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            right = other.sparse_rows()
            out = []
            for i in range(self.rows):
                acc: dict[int, Fraction] = {}
                for k, a in enumerate(self.row(i)):
                    if not a:
                        continue
                    for j, b in right[k].items():
                        acc[j] = acc.get(j, 0) + a * b
                out.append(acc)
            return RatMatrix.from_sparse_rows(out, other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} does not match {self.cols} columns")
        nz = [(j, as_fraction(x)) for j, x in enumerate(v) if x]
        c = self.cols
        e = self.entries
        return tuple(sum((e[i * c + j] * x for j, x in nz), Fraction(0)) for i in range(self.rows))

    def _same_shape(self, other: "RatMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")


def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row to coprime integers; zero rows are dropped."""
    out = []
    for r in rows:
        if not any(r):
            continue
        den = math.lcm(*(x.denominator for x in r))
        ints = [int(x * den) for x in r]
        g = math.gcd(*ints)
        out.append([x // g for x in ints])
    return out


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination.  Returns echelon rows and pivot columns."""
    a = rows
    nrows = len(a)
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        prow = a[r]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: RatMatrix) -> int:
    """Rank over the rationals by fraction-free elimination."""
    _, pivots = _bareiss_echelon(_integer_rows(m.row(i) for i in range(m.rows)), m.cols)
    return len(pivots)


def _back_substitute(ech: list[list[int]], pivots: list[int], ncols: int,
                     free_values: Mapping[int, Fraction], rhs: Sequence[Fraction] | None = None) -> list[Fraction]:
    x = [Fraction(0)] * ncols
    for j, v in free_values.items():
        x[j] = v
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        row = ech[r]
        s = Fraction(rhs[r]) if rhs is not None else Fraction(0)
        for j in range(c + 1, ncols):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[c] = s / row[c]
    return x


def kernel_basis(m: RatMatrix) -> list[Vector]:
    """Basis of the right null space; one vector per non-pivot column."""
    ech, pivots = _bareiss_echelon(_integer_rows(m.row(i) for i in range(m.rows)), m.cols)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        basis.append(tuple(_back_substitute(ech, pivots, m.cols, {f: Fraction(1)})))
    return basis


def solve(m: RatMatrix, b: Sequence) -> Vector | None:
    """One solution of ``m x = b`` (free variables set to zero), or None if inconsistent."""
    b = vector(b)
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    n = m.cols
    aug = _integer_rows(m.row(i) + (b[i],) for i in range(m.rows))
    ech, pivots = _bareiss_echelon(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    square = [row[:n] for row in ech]
    rhs = [Fraction(row[n]) for row in ech]
    return tuple(_back_substitute(square, pivots, n, {}, rhs))


def rref_naive(m: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Plain rational Gauss-Jordan elimination (oracle path)."""
    a = m.tolist()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def rank_naive(m: RatMatrix) -> int:
    return len(rref_naive(m)[1])


def solve_naive(m: RatMatrix, b: Sequence) -> Vector | None:
    b = vector(b)
    aug = RatMatrix.from_rows([list(m.row(i)) + [b[i]] for i in range(m.rows)], m.cols + 1)
    red, pivots = rref_naive(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for r, c in enumerate(pivots):
        x[c] = red[r][m.cols]
    return tuple(x)
