"""Yamaguti and modified-differential cochain complexes.

An LY cochain of degree ``p = k + 1 >= 2`` is a pair (f, g) with
``f(K_1, ..., K_k)`` and ``g(K_1, ..., K_k, z)`` taking values in V, each
``K_i = x_i ^ y_i`` a wedge of two elements.  Only canonical wedges e_i ^ e_j
with i < j are stored; degree 1 is Hom(g, V).

Coordinates are laid out lexicographically: f-block ``(pairs..., out)`` then
g-block ``(pairs..., z, out)``.  An MDLY cochain of degree p >= 2 stacks the
LY^p coordinates (top) over the LY^(p-1) coordinates (shadow).

Two independent code paths compute the maps: :func:`delta`, :func:`phi_map`
and :func:`partial` evaluate the formulas through :meth:`LYCochain.eval`,
while :func:`matrix_of` assembles the same maps entry by entry.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InputError, UnsupportedDegree
from .linalg import RatMatrix
from .multilinear import Multilinear, _add_into, sparse
from .representation import Representation

MAX_DEGREE = 4  # highest cochain degree produced without allow_large


@lru_cache(maxsize=None)
def wedge_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def _pair_lookup(n: int) -> dict:
    return {p: k for k, p in enumerate(wedge_pairs(n))}


def canonical_pair(n: int, i: int, j: int) -> tuple[int, int] | None:
    """(sign, index of e_min ^ e_max) for e_i ^ e_j, or None when i == j."""
    if i == j:
        return None
    if i < j:
        return 1, _pair_lookup(n)[(i, j)]
    return -1, _pair_lookup(n)[(j, i)]


@dataclass(frozen=True)
class CochainSpace:
    dim: int
    module_dim: int
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise UnsupportedDegree(f"cochain degree must be >= 1, got {self.degree}")

    @property
    def npairs(self) -> int:
        return self.degree - 1

    @property
    def nwedge(self) -> int:
        return self.dim * (self.dim - 1) // 2

    @property
    def f_size(self) -> int:
        if self.degree == 1:
            return self.dim * self.module_dim
        return self.nwedge ** self.npairs * self.module_dim

    @property
    def g_size(self) -> int:
        if self.degree == 1:
            return 0
        return self.nwedge ** self.npairs * self.dim * self.module_dim

    @property
    def size(self) -> int:
        return self.f_size + self.g_size

    def _pairs_offset(self, pairs: Sequence[int]) -> int:
        k = 0
        for p in pairs:
            k = k * self.nwedge + p
        return k

    def f_index(self, pairs: Sequence[int], out: int) -> int:
        return self._pairs_offset(pairs) * self.module_dim + out

    def g_index(self, pairs: Sequence[int], z: int, out: int) -> int:
        return self.f_size + (self._pairs_offset(pairs) * self.dim + z) * self.module_dim + out

    def index1(self, z: int, out: int) -> int:
        return z * self.module_dim + out

    def labels(self) -> list[tuple]:
        """Human-readable label per coordinate: ('f', pairs, out) / ('g', pairs, z, out)."""
        m, n = self.module_dim, self.dim
        if self.degree == 1:
            return [("f", (z,), o) for z in range(n) for o in range(m)]
        wp = wedge_pairs(n)
        out = []
        for ks in itertools.product(range(self.nwedge), repeat=self.npairs):
            out += [("f", tuple(wp[k] for k in ks), o) for o in range(m)]
        for ks in itertools.product(range(self.nwedge), repeat=self.npairs):
            for z in range(n):
                out += [("g", tuple(wp[k] for k in ks), z, o) for o in range(m)]
        return out


def mdly_size(dim: int, module_dim: int, degree: int) -> int:
    top = CochainSpace(dim, module_dim, degree).size
    return top if degree == 1 else top + CochainSpace(dim, module_dim, degree - 1).size


def random_coords(n: int, rng: random.Random, bound: int = 3, density: float = 1.0) -> tuple:
    return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) if rng.random() < density
                 else Fraction(0) for _ in range(n))


@dataclass(frozen=True)
class LYCochain:
    space: CochainSpace
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.space.size:
            raise InputError(f"cochain of degree {self.space.degree} needs {self.space.size} coordinates, "
                             f"got {len(self.coords)}")

    @classmethod
    def zero(cls, space: CochainSpace) -> "LYCochain":
        return cls(space, (Fraction(0),) * space.size)

    @classmethod
    def random(cls, space: CochainSpace, rng: random.Random, **kw) -> "LYCochain":
        return cls(space, random_coords(space.size, rng, **kw))

    @classmethod
    def indicator(cls, space: CochainSpace, k: int) -> "LYCochain":
        c = [Fraction(0)] * space.size
        c[k] = Fraction(1)
        return cls(space, tuple(c))

    @classmethod
    def from_linear(cls, f: Multilinear, dim: int, module_dim: int) -> "LYCochain":
        """Degree-1 cochain from a linear map g -> V."""
        sp = CochainSpace(dim, module_dim, 1)
        c = [Fraction(0)] * sp.size
        for (z,), vec in f.data.items():
            for o, v in vec.items():
                c[sp.index1(z, o)] = v
        return cls(sp, tuple(c))

    @classmethod
    def from_maps(cls, f: Multilinear, g: Multilinear, dim: int, module_dim: int) -> "LYCochain":
        """Degree-2 cochain from a bilinear f and trilinear g (values read on i < j)."""
        sp = CochainSpace(dim, module_dim, 2)
        c = [Fraction(0)] * sp.size
        for k, (i, j) in enumerate(wedge_pairs(dim)):
            for o, v in f(i, j).items():
                c[sp.f_index((k,), o)] = v
            for z in range(dim):
                for o, v in g(i, j, z).items():
                    c[sp.g_index((k,), z, o)] = v
        return cls(sp, tuple(c))

    def to_linear(self) -> Multilinear:
        sp = self.space
        if sp.degree != 1:
            raise InputError("to_linear needs a degree-1 cochain")
        m = Multilinear(1)
        for z in range(sp.dim):
            for o in range(sp.module_dim):
                m.add_entry((z,), o, self.coords[sp.index1(z, o)])
        return m

    def to_maps(self) -> tuple[Multilinear, Multilinear]:
        """(f, g) as antisymmetric bilinear / trilinear maps."""
        sp = self.space
        if sp.degree != 2:
            raise InputError("to_maps needs a degree-2 cochain")
        f, g = Multilinear(2), Multilinear(3)
        for k, (i, j) in enumerate(wedge_pairs(sp.dim)):
            for o in range(sp.module_dim):
                v = self.coords[sp.f_index((k,), o)]
                f.add_entry((i, j), o, v)
                f.add_entry((j, i), o, -v)
                for z in range(sp.dim):
                    v = self.coords[sp.g_index((k,), z, o)]
                    g.add_entry((i, j, z), o, v)
                    g.add_entry((j, i, z), o, -v)
        return f, g

    @property
    def degree(self) -> int:
        return self.space.degree

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "LYCochain") -> None:
        if self.space != other.space:
            raise InputError("cochains live in different spaces")

    def __add__(self, other: "LYCochain") -> "LYCochain":
        self._check(other)
        return LYCochain(self.space, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LYCochain") -> "LYCochain":
        self._check(other)
        return LYCochain(self.space, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LYCochain":
        return self.scale(-1)

    def scale(self, s) -> "LYCochain":
        return LYCochain(self.space, tuple(s * a for a in self.coords))

    # -- evaluation -------------------------------------------------------

    def _slot(self, u: dict, v: dict) -> dict:
        n = self.space.dim
        out: dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                cp = canonical_pair(n, i, j)
                if cp is None:
                    continue
                s, k = cp
                out[k] = out.get(k, 0) + s * a * b
        return {k: v for k, v in out.items() if v}

    def _value(self, slots: list[dict], z: dict | None) -> dict:
        sp = self.space
        m = sp.module_dim
        acc: dict[int, Fraction] = {}
        zs = [(None, 1)] if z is None else list(z.items())
        for combo in itertools.product(*(s.items() for s in slots)):
            coef = 1
            ks = []
            for k, a in combo:
                coef *= a
                ks.append(k)
            for zi, b in zs:
                base = sp.f_index(ks, 0) if zi is None else sp.g_index(ks, zi, 0)
                cb = coef * b
                for o in range(m):
                    x = self.coords[base + o]
                    if x:
                        acc[o] = acc.get(o, 0) + cb * x
        return {k: v for k, v in acc.items() if v}

    def value(self, *args: dict) -> dict:
        """Evaluate on sparse vectors; 2k arguments query f, 2k+1 query g."""
        sp = self.space
        if sp.degree == 1:
            if len(args) != 1:
                raise InputError(f"degree-1 cochain takes 1 argument, got {len(args)}")
            acc: dict[int, Fraction] = {}
            for zi, b in args[0].items():
                for o in range(sp.module_dim):
                    x = self.coords[sp.index1(zi, o)]
                    if x:
                        acc[o] = acc.get(o, 0) + b * x
            return {k: v for k, v in acc.items() if v}
        k = sp.npairs
        if len(args) == 2 * k:
            z = None
        elif len(args) == 2 * k + 1:
            z = args[-1]
        else:
            raise InputError(f"degree-{sp.degree} cochain takes {2 * k} (f) or {2 * k + 1} (g) arguments, "
                             f"got {len(args)}")
        slots = [self._slot(args[2 * i], args[2 * i + 1]) for i in range(k)]
        return self._value(slots, z)

    def eval(self, *args: Sequence) -> tuple:
        """Evaluate on dense vectors of the algebra; returns a dense module vector."""
        vals = self.value(*(sparse(a) for a in args))
        return tuple(Fraction(vals.get(o, 0)) for o in range(self.space.module_dim))


@dataclass(frozen=True)
class MDLYCochain:
    top: LYCochain
    shadow: LYCochain | None = None

    def __post_init__(self):
        d = self.top.degree
        if d == 1:
            if self.shadow is not None:
                raise InputError("degree-1 MDLY cochains have no shadow part")
        elif self.shadow is None or self.shadow.degree != d - 1:
            raise InputError(f"degree-{d} MDLY cochain needs a degree-{d - 1} shadow part")

    @property
    def degree(self) -> int:
        return self.top.degree

    @property
    def coords(self) -> tuple:
        return self.top.coords + (self.shadow.coords if self.shadow is not None else ())

    @classmethod
    def from_coords(cls, dim: int, module_dim: int, degree: int, coords: Sequence) -> "MDLYCochain":
        coords = tuple(Fraction(x) for x in coords)
        top = CochainSpace(dim, module_dim, degree)
        if degree == 1:
            return cls(LYCochain(top, coords))
        if len(coords) != mdly_size(dim, module_dim, degree):
            raise InputError(f"MDLY cochain of degree {degree} needs {mdly_size(dim, module_dim, degree)} "
                             f"coordinates, got {len(coords)}")
        return cls(LYCochain(top, coords[:top.size]),
                   LYCochain(CochainSpace(dim, module_dim, degree - 1), coords[top.size:]))

    @classmethod
    def zero(cls, dim: int, module_dim: int, degree: int) -> "MDLYCochain":
        return cls.from_coords(dim, module_dim, degree, (0,) * mdly_size(dim, module_dim, degree))

    @classmethod
    def random(cls, dim: int, module_dim: int, degree: int, rng: random.Random, **kw) -> "MDLYCochain":
        return cls.from_coords(dim, module_dim, degree,
                               random_coords(mdly_size(dim, module_dim, degree), rng, **kw))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _like(self, coords) -> "MDLYCochain":
        sp = self.top.space
        return MDLYCochain.from_coords(sp.dim, sp.module_dim, sp.degree, coords)

    def __add__(self, other: "MDLYCochain") -> "MDLYCochain":
        return self._like([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "MDLYCochain") -> "MDLYCochain":
        if self.degree != other.degree or len(self.coords) != len(other.coords):
            raise InputError("cochains live in different spaces")
        return self._like([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "MDLYCochain":
        return self._like([-a for a in self.coords])

    def scale(self, s) -> "MDLYCochain":
        return self._like([s * a for a in self.coords])


# ---------------------------------------------------------------------------
# functional path


def _basis(i: int) -> dict:
    return {i: Fraction(1)}


def _act(action: Multilinear, *args: dict) -> dict:
    return action.apply(*args)


class _Acc:
    """Accumulates sparse module vectors with signs."""

    def __init__(self):
        self.v: dict[int, Fraction] = {}

    def add(self, vec: dict, coef=1) -> None:
        if coef:
            _add_into(self.v, vec, coef)


def delta(r: Representation, c: LYCochain) -> LYCochain:
    """Yamaguti coboundary, degree p -> p + 1, evaluated directly on basis arguments."""
    A = r.base.algebra
    n, m = A.dim, r.module_dim
    sp = c.space
    if (sp.dim, sp.module_dim) != (n, m):
        raise InputError("cochain does not match the representation")
    out_sp = CochainSpace(n, m, sp.degree + 1)
    coords = [Fraction(0)] * out_sp.size
    wp = wedge_pairs(n)
    br, tri = A.binary, A.ternary
    rho, theta, dee = r.rho, r.theta, r.dee

    def put_f(ks, vec):
        for o, v in vec.items():
            coords[out_sp.f_index(ks, o)] = v

    def put_g(ks, z, vec):
        for o, v in vec.items():
            coords[out_sp.g_index(ks, z, o)] = v

    if sp.degree == 1:
        for k, (x, y) in enumerate(wp):
            ex, ey = _basis(x), _basis(y)
            acc = _Acc()
            acc.add(_act(rho, ex, c.value(ey)))
            acc.add(_act(rho, ey, c.value(ex)), -1)
            acc.add(c.value(br.apply(ex, ey)), -1)
            put_f((k,), acc.v)
            for z in range(n):
                ez = _basis(z)
                acc = _Acc()
                acc.add(_act(dee, ex, ey, c.value(ez)))
                acc.add(_act(theta, ey, ez, c.value(ex)))
                acc.add(_act(theta, ex, ez, c.value(ey)), -1)
                acc.add(c.value(tri.apply(ex, ey, ez)), -1)
                put_g((k,), z, acc.v)
        return LYCochain(out_sp, tuple(coords))

    q = sp.npairs  # input has q wedge slots, output q + 1
    sgn_q = -1 if q % 2 else 1
    for ks in itertools.product(range(len(wp)), repeat=q + 1):
        K = [(_basis(wp[k][0]), _basis(wp[k][1])) for k in ks]
        xs = [wp[k][0] for k in ks]
        ys = [wp[k][1] for k in ks]

        def flat(pairs):
            return [v for p in pairs for v in p]

        head = K[:q]
        xl, yl = K[q]
        # f part
        acc = _Acc()
        acc.add(_act(rho, xl, c.value(*flat(head), yl)), sgn_q)
        acc.add(_act(rho, yl, c.value(*flat(head), xl)), -sgn_q)
        acc.add(c.value(*flat(head), br.apply(xl, yl)), -sgn_q)
        for k in range(q):  # (-1)^(j+1) over 1-based slots j = k + 1
            rest = K[:k] + K[k + 1:]
            acc.add(_act(dee, K[k][0], K[k][1], c.value(*flat(rest))), (-1) ** k)
        for k in range(q + 1):
            for l in range(k + 1, q + 1):
                s = -1 if k % 2 == 0 else 1  # (-1)^(k+1) for 0-based k
                xk, yk = K[k]
                xl_, yl_ = K[l]
                rest = K[:k] + K[k + 1:]
                pos = l - 1
                t1 = tri.apply(xk, yk, xl_)
                t2 = tri.apply(xk, yk, yl_)
                acc.add(c.value(*flat(rest[:pos] + [(t1, yl_)] + rest[pos + 1:])), s)
                acc.add(c.value(*flat(rest[:pos] + [(xl_, t2)] + rest[pos + 1:])), s)
        put_f(ks, acc.v)
        # g part
        for z in range(n):
            ez = _basis(z)
            acc = _Acc()
            acc.add(_act(theta, yl, ez, c.value(*flat(head), xl)), sgn_q)
            acc.add(_act(theta, xl, ez, c.value(*flat(head), yl)), -sgn_q)
            for k in range(q + 1):
                rest = K[:k] + K[k + 1:]
                acc.add(_act(dee, K[k][0], K[k][1], c.value(*flat(rest), ez)), (-1) ** k)
            for k in range(q + 1):
                for l in range(k + 1, q + 1):
                    s = -1 if k % 2 == 0 else 1
                    xk, yk = K[k]
                    xl_, yl_ = K[l]
                    rest = K[:k] + K[k + 1:]
                    pos = l - 1
                    t1 = tri.apply(xk, yk, xl_)
                    t2 = tri.apply(xk, yk, yl_)
                    acc.add(c.value(*flat(rest[:pos] + [(t1, yl_)] + rest[pos + 1:]), ez), s)
                    acc.add(c.value(*flat(rest[:pos] + [(xl_, t2)] + rest[pos + 1:]), ez), s)
            for k in range(q + 1):
                rest = K[:k] + K[k + 1:]
                s = -1 if k % 2 == 0 else 1
                acc.add(c.value(*flat(rest), tri.apply(K[k][0], K[k][1], ez)), s)
            put_g(ks, z, acc.v)
        del xs, ys
    return LYCochain(out_sp, tuple(coords))


def _phi_coefficients(lam: Fraction, q: int, literal: bool) -> tuple[Fraction, Fraction]:
    """Scalar terms of Phi on the f- and g-components of a cochain with q wedge slots.

    The default is (arity - 1) * lambda, i.e. (2q - 1)lambda and 2q lambda;
    ``literal`` uses the bare integers 2q - 1 and 2q.
    """
    if literal:
        return Fraction(2 * q - 1), Fraction(2 * q)
    return (2 * q - 1) * lam, 2 * q * lam


def phi_map(r: Representation, c: LYCochain, literal: bool = False) -> LYCochain:
    """The cochain map Phi: insert phi in each argument, add the scalar term, subtract phi_V after."""
    A = r.base
    n, m = A.dim, r.module_dim
    sp = c.space
    phi, phi_v = A.phi, r.phi_v
    coords = [Fraction(0)] * sp.size
    if sp.degree == 1:
        for z in range(n):
            acc = _Acc()
            acc.add(c.value(phi(z)))
            acc.add(phi_v.apply(c.value(_basis(z))), -1)
            for o, v in acc.v.items():
                coords[sp.index1(z, o)] = v
        return LYCochain(sp, tuple(coords))
    q = sp.npairs
    cf, cg = _phi_coefficients(A.lam, q, literal)
    wp = wedge_pairs(n)
    for ks in itertools.product(range(len(wp)), repeat=q):
        args = [v for k in ks for v in (_basis(wp[k][0]), _basis(wp[k][1]))]
        acc = _Acc()
        for i in range(2 * q):
            acc.add(c.value(*(args[:i] + [phi.apply(args[i])] + args[i + 1:])))
        base = c.value(*args)
        acc.add(base, cf)
        acc.add(phi_v.apply(base), -1)
        for o, v in acc.v.items():
            coords[sp.f_index(ks, o)] = v
        for z in range(n):
            gargs = args + [_basis(z)]
            acc = _Acc()
            for i in range(2 * q + 1):
                acc.add(c.value(*(gargs[:i] + [phi.apply(gargs[i])] + gargs[i + 1:])))
            base = c.value(*gargs)
            acc.add(base, cg)
            acc.add(phi_v.apply(base), -1)
            for o, v in acc.v.items():
                coords[sp.g_index(ks, z, o)] = v
    return LYCochain(sp, tuple(coords))


def partial(r: Representation, c: MDLYCochain, literal: bool = False) -> MDLYCochain:
    """d^p(top, shadow) = (delta top, delta shadow + (-1)^p Phi top); d^1 f = (delta f, -Phi f)."""
    p = c.degree
    top = delta(r, c.top)
    ph = phi_map(r, c.top, literal).scale((-1) ** p)
    shadow = ph if c.shadow is None else delta(r, c.shadow) + ph
    return MDLYCochain(top, shadow)


# ---------------------------------------------------------------------------
# matrix path


def _action_entries(action: Multilinear) -> dict:
    """leading key -> list of (out, in, coeff)."""
    out: dict[tuple, list] = {}
    for key, vec in action.data.items():
        lst = out.setdefault(key[:-1], [])
        for o, v in vec.items():
            lst.append((o, key[-1], v))
    return out


def _check_degree(out_degree: int, allow_large: bool) -> None:
    if out_degree > MAX_DEGREE and not allow_large:
        raise UnsupportedDegree(
            f"maps into degree {out_degree} exceed the supported range (<= {MAX_DEGREE}); "
            "enable allow_large (--allow-large) to build them anyway")


def _delta_rows(r: Representation, degree: int) -> tuple[list[dict], int]:
    A = r.base.algebra
    n, m = A.dim, r.module_dim
    src = CochainSpace(n, m, degree)
    dst = CochainSpace(n, m, degree + 1)
    rows = [dict() for _ in range(dst.size)]
    wp = wedge_pairs(n)
    rho_e, theta_e, dee_e = (_action_entries(a) for a in (r.rho, r.theta, r.dee))
    br, tri = A.binary, A.ternary

    def add(row_base_fn, col_fn, coef, action_list):
        # action_list None means identity on V
        if action_list is None:
            for o in range(m):
                row = rows[row_base_fn(o)]
                col = col_fn(o)
                row[col] = row.get(col, 0) + coef
        else:
            for o, w, a in action_list:
                row = rows[row_base_fn(o)]
                col = col_fn(w)
                row[col] = row.get(col, 0) + coef * a

    if degree == 1:
        for k, (x, y) in enumerate(wp):
            fr = lambda o, k=k: dst.f_index((k,), o)
            add(fr, lambda w, y=y: src.index1(y, w), 1, rho_e.get((x,), []))
            add(fr, lambda w, x=x: src.index1(x, w), -1, rho_e.get((y,), []))
            for t, ct in br(x, y).items():
                add(fr, lambda w, t=t: src.index1(t, w), -ct, None)
            for z in range(n):
                gr = lambda o, k=k, z=z: dst.g_index((k,), z, o)
                add(gr, lambda w, z=z: src.index1(z, w), 1, dee_e.get((x, y), []))
                add(gr, lambda w, x=x: src.index1(x, w), 1, theta_e.get((y, z), []))
                add(gr, lambda w, y=y: src.index1(y, w), -1, theta_e.get((x, z), []))
                for t, ct in tri(x, y, z).items():
                    add(gr, lambda w, t=t: src.index1(t, w), -ct, None)
        return rows, src.size

    q = degree - 1
    sq = -1 if q % 2 else 1

    def substituted(ks, k, l):
        """(coef, new pair tuple) for rest-of-K with slot l hit by {x_k, y_k, .}."""
        xk, yk = wp[ks[k]]
        xl, yl = wp[ks[l]]
        rest = list(ks[:k] + ks[k + 1:])
        pos = l - 1
        out = []
        for t, ct in tri(xk, yk, xl).items():
            cp = canonical_pair(n, t, yl)
            if cp:
                out.append((ct * cp[0], tuple(rest[:pos] + [cp[1]] + rest[pos + 1:])))
        for t, ct in tri(xk, yk, yl).items():
            cp = canonical_pair(n, xl, t)
            if cp:
                out.append((ct * cp[0], tuple(rest[:pos] + [cp[1]] + rest[pos + 1:])))
        return out

    for ks in itertools.product(range(len(wp)), repeat=q + 1):
        head = ks[:q]
        xl, yl = wp[ks[q]]
        fr = lambda o, ks=ks: dst.f_index(ks, o)
        add(fr, lambda w: src.g_index(head, yl, w), sq, rho_e.get((xl,), []))
        add(fr, lambda w: src.g_index(head, xl, w), -sq, rho_e.get((yl,), []))
        for t, ct in br(xl, yl).items():
            add(fr, lambda w, t=t: src.g_index(head, t, w), -sq * ct, None)
        for k in range(q):
            rest = ks[:k] + ks[k + 1:]
            add(fr, lambda w, rest=rest: src.f_index(rest, w), (-1) ** k, dee_e.get(wp[ks[k]], []))
        subs = {}
        for k in range(q + 1):
            for l in range(k + 1, q + 1):
                s = -1 if k % 2 == 0 else 1
                subs[(k, l)] = [(s * c, nk) for c, nk in substituted(ks, k, l)]
        for lst in subs.values():
            for c, nk in lst:
                add(fr, lambda w, nk=nk: src.f_index(nk, w), c, None)
        for z in range(n):
            gr = lambda o, ks=ks, z=z: dst.g_index(ks, z, o)
            add(gr, lambda w: src.g_index(head, xl, w), sq, theta_e.get((yl, z), []))
            add(gr, lambda w: src.g_index(head, yl, w), -sq, theta_e.get((xl, z), []))
            for k in range(q + 1):
                rest = ks[:k] + ks[k + 1:]
                add(gr, lambda w, rest=rest, z=z: src.g_index(rest, z, w), (-1) ** k, dee_e.get(wp[ks[k]], []))
            for lst in subs.values():
                for c, nk in lst:
                    add(gr, lambda w, nk=nk, z=z: src.g_index(nk, z, w), c, None)
            for k in range(q + 1):
                rest = ks[:k] + ks[k + 1:]
                s = -1 if k % 2 == 0 else 1
                xk, yk = wp[ks[k]]
                for t, ct in tri(xk, yk, z).items():
                    add(gr, lambda w, rest=rest, t=t: src.g_index(rest, t, w), s * ct, None)
    return rows, src.size


def _phi_rows(r: Representation, degree: int, literal: bool) -> tuple[list[dict], int]:
    A = r.base
    n, m = A.dim, r.module_dim
    sp = CochainSpace(n, m, degree)
    rows = [dict() for _ in range(sp.size)]
    phi = A.phi
    pv = _action_entries(r.phi_v).get((), [])

    def bump(row, col, v):
        if v:
            rows[row][col] = rows[row].get(col, 0) + v

    if degree == 1:
        for z in range(n):
            for o in range(m):
                row = sp.index1(z, o)
                for t, v in phi(z).items():
                    bump(row, sp.index1(t, o), v)
                for oo, w, a in pv:
                    if oo == o:
                        bump(row, sp.index1(z, w), -a)
        return rows, sp.size

    q = degree - 1
    cf, cg = _phi_coefficients(A.lam, q, literal)
    wp = wedge_pairs(n)

    def slot_images(ks):
        """For each of the 2q arguments, the pair tuples after phi hits it."""
        out = []
        for i, k in enumerate(ks):
            x, y = wp[k]
            for t, v in phi(x).items():
                cp = canonical_pair(n, t, y)
                if cp:
                    out.append((v * cp[0], ks[:i] + (cp[1],) + ks[i + 1:]))
            for t, v in phi(y).items():
                cp = canonical_pair(n, x, t)
                if cp:
                    out.append((v * cp[0], ks[:i] + (cp[1],) + ks[i + 1:]))
        return out

    for ks in itertools.product(range(len(wp)), repeat=q):
        images = slot_images(ks)
        for o in range(m):
            row = sp.f_index(ks, o)
            for v, nk in images:
                bump(row, sp.f_index(nk, o), v)
            bump(row, sp.f_index(ks, o), cf)
            for oo, w, a in pv:
                if oo == o:
                    bump(row, sp.f_index(ks, w), -a)
        for z in range(n):
            for o in range(m):
                row = sp.g_index(ks, z, o)
                for v, nk in images:
                    bump(row, sp.g_index(nk, z, o), v)
                for t, v in phi(z).items():
                    bump(row, sp.g_index(ks, t, o), v)
                bump(row, sp.g_index(ks, z, o), cg)
                for oo, w, a in pv:
                    if oo == o:
                        bump(row, sp.g_index(ks, z, w), -a)
    return rows, sp.size


def _cached_matrix(r: Representation, op: str, degree: int, literal: bool) -> RatMatrix:
    # memoised on the (immutable) representation itself
    cache = r.__dict__.get("_matrix_cache")
    if cache is None:
        cache = {}
        object.__setattr__(r, "_matrix_cache", cache)
    key = (op, degree, literal)
    if key not in cache:
        cache[key] = _build_matrix(r, op, degree, literal)
    return cache[key]


def _build_matrix(r: Representation, op: str, degree: int, literal: bool) -> RatMatrix:
    n, m = r.base.dim, r.module_dim
    if op == "delta":
        rows, cols = _delta_rows(r, degree)
        return RatMatrix.from_sparse_rows(rows, cols)
    if op == "phi":
        rows, cols = _phi_rows(r, degree, literal)
        return RatMatrix.from_sparse_rows(rows, cols)
    if op == "partial":
        # [[delta^p, 0], [(-1)^p Phi^p, delta^(p-1)]]
        d_top = _cached_matrix(r, "delta", degree, literal)
        ph = _cached_matrix(r, "phi", degree, literal)
        sign = (-1) ** degree
        top_rows = d_top.sparse_rows()
        ph_rows = ph.sparse_rows()
        if degree == 1:
            rows = top_rows + [{j: sign * v for j, v in row.items()} for row in ph_rows]
            return RatMatrix.from_sparse_rows(rows, d_top.cols)
        d_sh = _cached_matrix(r, "delta", degree - 1, literal)
        off = d_top.cols
        rows = [dict(row) for row in top_rows]
        for row_ph, row_sh in zip(ph_rows, d_sh.sparse_rows()):
            row = {j: sign * v for j, v in row_ph.items()}
            for j, v in row_sh.items():
                row[off + j] = v
            rows.append(row)
        return RatMatrix.from_sparse_rows(rows, off + d_sh.cols)
    raise InputError(f"unknown operator {op!r}; expected 'delta', 'phi' or 'partial'")


def matrix_of(r: Representation, op: str, degree: int, literal: bool = False,
              allow_large: bool = False) -> RatMatrix:
    """Matrix of ``op`` in {'delta', 'phi', 'partial'} acting on degree ``degree``
    cochains, in the canonical coordinate bases."""
    if degree < 1:
        raise UnsupportedDegree(f"degree must be >= 1, got {degree}")
    _check_degree(degree + (0 if op == "phi" else 1), allow_large)
    return _cached_matrix(r, op, degree, literal)
