"""Truncated formal deformations of an MDLY algebra.

A deformation of order N is stored as the coefficient lists f_1..f_N,
g_1..g_N, phi_1..phi_N; the order-0 terms are the base brackets and operator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (MDLYAlgebra, jacobi_term, leibniz_rule, ly4_term, ly5_lhs, ly5_rhs, ly6_lhs,
                      ly6_rhs)
from .cochains import CochainSpace, LYCochain, MDLYCochain
from .cohomology import cohomology_dim, is_cocycle
from .errors import InputError
from .linalg import RatMatrix, solve
from .multilinear import Multilinear, cyclic_sum, swap_args
from .report import Report
from .representation import adjoint_representation


def _as_map(x, arity: int) -> Multilinear:
    if isinstance(x, Multilinear):
        if x.arity != arity and x.data:
            raise InputError(f"expected a map of arity {arity}, got {x.arity}")
        return x if x.arity == arity else Multilinear(arity)
    if arity == 1:
        m = x if isinstance(x, RatMatrix) else RatMatrix.from_rows(x)
        return Multilinear.from_matrix(m.tolist())
    raise InputError(f"cannot read arity-{arity} data of type {type(x).__name__}")


@dataclass(frozen=True, eq=False)
class TruncatedDeformation:
    base: MDLYAlgebra
    f_seq: tuple
    g_seq: tuple
    phi_seq: tuple

    def __post_init__(self):
        object.__setattr__(self, "f_seq", tuple(_as_map(f, 2) for f in self.f_seq))
        object.__setattr__(self, "g_seq", tuple(_as_map(g, 3) for g in self.g_seq))
        object.__setattr__(self, "phi_seq", tuple(_as_map(p, 1) for p in self.phi_seq))
        if not (len(self.f_seq) == len(self.g_seq) == len(self.phi_seq)) or not self.f_seq:
            raise InputError("f, g and phi sequences must have the same length >= 1")
        n = self.base.dim
        for seq in (self.f_seq, self.g_seq, self.phi_seq):
            for m in seq:
                for key, vec in m.data.items():
                    if any(not 0 <= k < n for k in key) or any(not 0 <= o < n for o in vec):
                        raise InputError(f"deformation entry out of range at {key}")

    @classmethod
    def zero(cls, base: MDLYAlgebra, order: int = 1) -> "TruncatedDeformation":
        return cls(base, (Multilinear(2),) * order, (Multilinear(3),) * order, (Multilinear(1),) * order)

    @classmethod
    def from_infinitesimal(cls, base: MDLYAlgebra, c: MDLYCochain) -> "TruncatedDeformation":
        f, g = c.top.to_maps()
        return cls(base, (f,), (g,), (c.shadow.to_linear(),))

    @property
    def order(self) -> int:
        return len(self.f_seq)

    def f(self, i: int) -> Multilinear:
        return self.base.algebra.binary if i == 0 else self.f_seq[i - 1]

    def g(self, i: int) -> Multilinear:
        return self.base.algebra.ternary if i == 0 else self.g_seq[i - 1]

    def phi(self, i: int) -> Multilinear:
        return self.base.phi if i == 0 else self.phi_seq[i - 1]

    def truncate(self, order: int) -> "TruncatedDeformation":
        return TruncatedDeformation(self.base, self.f_seq[:order], self.g_seq[:order], self.phi_seq[:order])

    def infinitesimal(self) -> MDLYCochain:
        """((f_1, g_1), phi_1) as a degree-2 MDLY cochain with adjoint coefficients."""
        f1, g1, p1 = self.f_seq[0], self.g_seq[0], self.phi_seq[0]
        if not (f1 + swap_args(f1, 0, 1)).is_zero() or not (g1 + swap_args(g1, 0, 1)).is_zero():
            raise InputError("f_1 and g_1 must be antisymmetric in their first two arguments")
        n = self.base.dim
        return MDLYCochain(LYCochain.from_maps(f1, g1, n, n), LYCochain.from_linear(p1, n, n))


def order_residuals(d: TruncatedDeformation, n: int) -> dict[str, Multilinear]:
    """Residuals of the coefficient-of-t^n equations; all zero iff order n holds."""
    lam = d.base.lam
    F, G, P = d.f, d.g, d.phi
    rng = range(n + 1)
    res = {
        "antisymmetry": F(n) + swap_args(F(n), 0, 1),
        "antisymmetry'": G(n) + swap_args(G(n), 0, 1),
        "LY3": sum_maps((jacobi_term(F(i), F(n - i)) for i in rng), cyclic_sum(G(n))),
        "LY4": sum_maps(ly4_term(G(i), F(n - i)) for i in rng),
        "LY5": sum_maps(ly5_lhs(G(i), F(n - i)) - ly5_rhs(F(i), G(n - i)) for i in rng),
        "LY6": sum_maps(ly6_lhs(G(i), G(n - i)) - ly6_rhs(G(i), G(n - i)) for i in rng),
        "phi-bracket": sum_maps((F(n - i).after(P(i)) - leibniz_rule(F(i), P(n - i)) for i in rng),
                          F(n).scale(-lam)),
        "phi-triple": sum_maps((G(n - i).after(P(i)) - leibniz_rule(G(i), P(n - i)) for i in rng),
                          G(n).scale(-2 * lam)),
    }
    return res


def sum_maps(terms, start: Multilinear | None = None) -> Multilinear:
    acc = start
    for t in terms:
        acc = t if acc is None else acc + t
    return acc


@dataclass
class DeformationReport:
    orders: list[Report] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.orders)

    @property
    def first_failure(self) -> int | None:
        return next((n for n, r in enumerate(self.orders) if not r.ok), None)

    def summary(self) -> str:
        return "\n".join(r.summary() for r in self.orders)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "orders": [r.to_dict() for r in self.orders]}


_NAMES = {"antisymmetry'": "antisymmetry"}


def verify_deformation(d: TruncatedDeformation, orders: Sequence[int] | None = None) -> DeformationReport:
    """Check the coefficient-of-t^n equations for each n <= order (or the given orders)."""
    dim = d.base.dim
    out = DeformationReport()
    for n in (range(d.order + 1) if orders is None else orders):
        rep = Report(subject=f"order {n}")
        for name, res in order_residuals(d, n).items():
            rep.add_residual(_NAMES.get(name, name), res, dim)
        out.orders.append(rep)
    return out


def infinitesimal_cocycle_check(d: TruncatedDeformation) -> bool:
    ok, _ = is_cocycle(adjoint_representation(d.base), d.infinitesimal())
    return ok


# ---------------------------------------------------------------------------
# equivalences


def _series_compose(outer: list, slot: int, inner: list, order: int) -> list:
    out = []
    for k in range(order + 1):
        acc = Multilinear(outer[0].arity)
        for i in range(k + 1):
            if i < len(outer) and k - i < len(inner):
                acc = acc + outer[i].compose(slot, inner[k - i])
        out.append(acc)
    return out


def _series_after(series: list, lin: list, order: int) -> list:
    out = []
    for k in range(order + 1):
        acc = Multilinear(series[0].arity)
        for i in range(k + 1):
            if i < len(lin) and k - i < len(series):
                acc = acc + series[k - i].after(lin[i])
        out.append(acc)
    return out


def apply_equivalence(d: TruncatedDeformation, psi1) -> TruncatedDeformation:
    """Transport the deformation along Psi_t = Id + t psi1, truncated at d.order.

    f'_t = Psi_t o f_t o (Psi_t^-1 x Psi_t^-1), likewise for g_t, and
    phi'_t = Psi_t o phi_t o Psi_t^-1, with Psi_t^-1 = sum_k (-psi1)^k t^k.
    """
    N = d.order
    n = d.base.dim
    psi = _as_map(psi1, 1)
    ident = Multilinear.identity(n)
    inv = [ident]
    for _ in range(N):
        inv.append(inv[-1].after(psi.scale(-1)))
    fwd = [ident, psi]

    def transport(series: list) -> list:
        for slot in range(series[0].arity):
            series = _series_compose(series, slot, inv, N)
        return _series_after(series, fwd, N)

    fs = transport([d.f(i) for i in range(N + 1)])
    gs = transport([d.g(i) for i in range(N + 1)])
    ps = transport([d.phi(i) for i in range(N + 1)])
    return TruncatedDeformation(d.base, tuple(fs[1:]), tuple(gs[1:]), tuple(ps[1:]))


def apply_equivalence_order1(d: TruncatedDeformation, psi1) -> TruncatedDeformation:
    """Order-1 transform by the difference formulas:
    f_1 - f'_1 = f_0(psi x, y) + f_0(x, psi y) - psi f_0(x, y), same for g_1,
    phi_1 - phi'_1 = phi psi - psi phi."""
    psi = _as_map(psi1, 1)
    f0, g0, phi = d.f(0), d.g(0), d.phi(0)
    f1 = d.f(1) - (leibniz_rule(f0, psi) - f0.after(psi))
    g1 = d.g(1) - (leibniz_rule(g0, psi) - g0.after(psi))
    p1 = d.phi(1) - (psi.after(phi) - phi.after(psi))
    return TruncatedDeformation(d.base, (f1,), (g1,), (p1,))


# ---------------------------------------------------------------------------
# rigidity and the order-extension step


@dataclass
class RigidityReport:
    dimH2: int
    dimZ2: int
    dimB2: int

    @property
    def rigid(self) -> bool:
        return self.dimH2 == 0

    @property
    def verdict(self) -> str:
        if self.rigid:
            return "rigid (sufficient condition met)"
        return f"inconclusive: dimH^2 = {self.dimH2} > 0"

    def summary(self) -> str:
        return f"{self.verdict} (dim Z^2 = {self.dimZ2}, dim B^2 = {self.dimB2})"


def rigidity_report(A: MDLYAlgebra, oracle: bool = False) -> RigidityReport:
    rep = cohomology_dim(adjoint_representation(A), 2, "mdly", oracle=oracle)
    return RigidityReport(rep.dimH, rep.dimZ, rep.dimB)


def _flatten(res: dict[str, Multilinear]) -> dict:
    out = {}
    for name, m in res.items():
        for key, vec in m.data.items():
            for o, v in vec.items():
                out[(name, key, o)] = v
    return out


def _unit_maps(n: int) -> list[tuple[Multilinear, Multilinear, Multilinear]]:
    """Basis of degree-2 MDLY cochains as (f, g, phi) maps in coordinate order."""
    units = []
    sp = CochainSpace(n, n, 2)
    total = sp.size + CochainSpace(n, n, 1).size
    for k in range(total):
        e = [0] * total
        e[k] = 1
        c = MDLYCochain.from_coords(n, n, 2, e)
        f, g = c.top.to_maps()
        units.append((f, g, c.shadow.to_linear()))
    return units


def extend_order(d: TruncatedDeformation) -> TruncatedDeformation | None:
    """Solve for (f_{N+1}, g_{N+1}, phi_{N+1}) making order N+1 hold, or None if obstructed.

    The order-(N+1) equations are affine in the new coefficients; their linear
    part is built column by column on the cochain basis.
    """
    n = d.base.dim
    N = d.order
    zero = TruncatedDeformation(d.base, d.f_seq + (Multilinear(2),), d.g_seq + (Multilinear(3),),
                                d.phi_seq + (Multilinear(1),))
    r0 = _flatten(order_residuals(zero, N + 1))
    units = _unit_maps(n)
    cols = []
    for f, g, p in units:
        trial = TruncatedDeformation(d.base, d.f_seq + (f,), d.g_seq + (g,), d.phi_seq + (p,))
        r = _flatten(order_residuals(trial, N + 1))
        cols.append({k: r.get(k, 0) - r0.get(k, 0) for k in set(r) | set(r0)})
    keys = sorted({k for c in cols for k, v in c.items() if v} | set(r0), key=repr)
    if not keys:
        sol = [0] * len(units)
    else:
        mat = RatMatrix.from_rows([[c.get(k, 0) for c in cols] for k in keys], len(cols))
        sol = solve(mat, [-r0.get(k, 0) for k in keys])
        if sol is None:
            return None
    c = MDLYCochain.from_coords(n, n, 2, sol)
    f, g = c.top.to_maps()
    return TruncatedDeformation(d.base, d.f_seq + (f,), d.g_seq + (g,), d.phi_seq + (c.shadow.to_linear(),))
