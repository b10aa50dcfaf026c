"""Abelian extensions of an MDLY algebra by a representation.

The total space is g + V with basis e_1..e_n (the g-block) followed by
e_{n+1}..e_{n+m} (the V-block).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LYAlgebra, MDLYAlgebra, ModifiedOperator
from .cochains import LYCochain, MDLYCochain
from .cohomology import cohomologous, is_cocycle
from .errors import InputError, NotACocycle
from .linalg import RatMatrix
from .multilinear import Multilinear, swap_args
from .report import Report
from .representation import Representation, total_structure, verify_representation


@dataclass(frozen=True, eq=False)
class ExtensionCocycle:
    nu: Multilinear   # (x, y) -> V
    psi: Multilinear  # (x, y, z) -> V
    chi: Multilinear  # x -> V

    @classmethod
    def zero(cls) -> "ExtensionCocycle":
        return cls(Multilinear(2), Multilinear(3), Multilinear(1))

    @classmethod
    def from_cochain(cls, c: MDLYCochain) -> "ExtensionCocycle":
        if c.degree != 2:
            raise InputError("extension data is a degree-2 cochain")
        nu, psi = c.top.to_maps()
        return cls(nu, psi, c.shadow.to_linear())

    def to_cochain(self, dim: int, module_dim: int) -> MDLYCochain:
        if not (self.nu + swap_args(self.nu, 0, 1)).is_zero():
            raise InputError("nu must be antisymmetric")
        if not (self.psi + swap_args(self.psi, 0, 1)).is_zero():
            raise InputError("psi must be antisymmetric in its first two arguments")
        return MDLYCochain(LYCochain.from_maps(self.nu, self.psi, dim, module_dim),
                           LYCochain.from_linear(self.chi, dim, module_dim))

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExtensionCocycle) and self.nu == other.nu
                and self.psi == other.psi and self.chi == other.chi)


@dataclass(frozen=True, eq=False)
class AbelianExtension:
    total: MDLYAlgebra
    base_dim: int
    module_dim: int

    def __post_init__(self):
        if self.total.dim != self.base_dim + self.module_dim:
            raise InputError("block sizes do not add up to the total dimension")

    @property
    def g_block(self) -> range:
        return range(self.base_dim)

    @property
    def v_block(self) -> range:
        return range(self.base_dim, self.base_dim + self.module_dim)

    def canonical_section(self) -> RatMatrix:
        n, m = self.base_dim, self.module_dim
        return RatMatrix.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n + m)], n)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AbelianExtension) and self.total == other.total
                and (self.base_dim, self.module_dim) == (other.base_dim, other.module_dim))


def block_report(E: AbelianExtension) -> Report:
    """V must be an abelian ideal stable under the operator."""
    n = E.base_dim
    rep = Report(subject="abelian ideal")
    br, tri, phi = E.total.algebra.binary, E.total.algebra.ternary, E.total.phi
    V = set(E.v_block)
    dim = E.total.dim

    def dense(vec):
        return tuple(Fraction(vec.get(i, 0)) for i in range(dim))

    def escapes(vec):
        return any(k < n for k, v in vec.items() if v)

    for key, vec in br.data.items():
        if key[0] in V and key[1] in V:
            rep.add_violation("[V,V] = 0", key, dense(vec))
        elif (key[0] in V or key[1] in V) and escapes(vec):
            rep.add_violation("[g,V] in V", key, dense(vec))
    for key, vec in tri.data.items():
        inside = sum(k in V for k in key)
        if inside >= 2:
            rep.add_violation("{V,V,.} = 0", key, dense(vec))
        elif inside == 1 and escapes(vec):
            rep.add_violation("{g,g,V} in V", key, dense(vec))
    for (j,), vec in phi.data.items():
        if j in V and escapes(vec):
            rep.add_violation("phi(V) in V", (j,), dense(vec))
    return rep


def extension_structure(r: Representation, c: ExtensionCocycle) -> AbelianExtension:
    """The brackets and operator on g + V twisted by (nu, psi, chi), unchecked."""
    return AbelianExtension(total_structure(r, c.nu, c.psi, c.chi), r.base.dim, r.module_dim)


def verify_extension(E: AbelianExtension) -> Report:
    """Full MDLY verification of the total algebra plus the ideal conditions."""
    rep = E.total.verify()
    rep.subject = "abelian extension"
    rep.merge(block_report(E))
    return rep


def build_extension(r: Representation, c: ExtensionCocycle) -> AbelianExtension:
    """Extension from a 2-cocycle; rejects non-cocycles with the residual of d^2."""
    n, m = r.base.dim, r.module_dim
    ok, residual = is_cocycle(r, c.to_cochain(n, m))
    if not ok:
        parts = []
        top, shadow = residual.top, residual.shadow
        if not top.is_zero():
            parts.append("delta^2(nu, psi)")
        if not shadow.is_zero():
            parts.append("delta^1(chi) + Phi^2(nu, psi)")
        raise NotACocycle(f"not a 2-cocycle: nonzero {' and '.join(parts)}", residual)
    E = extension_structure(r, c)
    check = verify_extension(E)
    if not check.ok:
        raise AssertionError("cocycle produced an invalid extension:\n" + check.summary())
    return E


def _check_section(E: AbelianExtension, s: RatMatrix) -> None:
    n, m = E.base_dim, E.module_dim
    if (s.rows, s.cols) != (n + m, n):
        raise InputError(f"section must be a {n + m}x{n} matrix")
    for i in range(n):
        for j in range(n):
            if s[i, j] != (1 if i == j else 0):
                raise InputError("p o s is not the identity on g")


def cocycle_from_section(E: AbelianExtension, s: RatMatrix | None = None
                         ) -> tuple[Representation, ExtensionCocycle]:
    """Read off (V; rho, theta, D, phi_V) and (nu, psi, chi) through a section s."""
    n, m = E.base_dim, E.module_dim
    s = E.canonical_section() if s is None else s
    _check_section(E, s)
    br, tri, phi_hat = E.total.algebra.binary, E.total.algebra.ternary, E.total.phi
    s_map = Multilinear.from_matrix(s.tolist())

    def unit(k):
        return {k: Fraction(1)}

    def sx(i):
        return s_map(i)

    def g_part(vec):
        return {k: v for k, v in vec.items() if k < n and v}

    def v_part(vec):
        return {k - n: v for k, v in vec.items() if k >= n and v}

    def lift(vec_g):
        return s_map.apply(vec_g)

    def sub(a, b):
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0) - v
        return {k: v for k, v in out.items() if v}

    base_br, base_tri = Multilinear(2), Multilinear(3)
    nu, psi, chi = Multilinear(2), Multilinear(3), Multilinear(1)
    rho, theta, dee, phi_v = Multilinear(2), Multilinear(3), Multilinear(3), Multilinear(1)
    base_phi = [[Fraction(0)] * n for _ in range(n)]
    for x in range(n):
        img = phi_hat.apply(sx(x))
        for k, v in g_part(img).items():
            base_phi[k][x] = v
        for k, v in v_part(sub(img, lift(g_part(img)))).items():
            chi.add_entry((x,), k, v)
        for y in range(n):
            b = br.apply(sx(x), sx(y))
            for k, v in g_part(b).items():
                base_br.add_entry((x, y), k, v)
            for k, v in v_part(sub(b, lift(g_part(b)))).items():
                nu.add_entry((x, y), k, v)
            for z in range(n):
                t = tri.apply(sx(x), sx(y), sx(z))
                for k, v in g_part(t).items():
                    base_tri.add_entry((x, y, z), k, v)
                for k, v in v_part(sub(t, lift(g_part(t)))).items():
                    psi.add_entry((x, y, z), k, v)
        for u in range(m):
            eu = unit(n + u)
            for k, v in v_part(br.apply(sx(x), eu)).items():
                rho.add_entry((x, u), k, v)
            for y in range(n):
                for k, v in v_part(tri.apply(eu, sx(x), sx(y))).items():
                    theta.add_entry((x, y, u), k, v)
                for k, v in v_part(tri.apply(sx(x), sx(y), eu)).items():
                    dee.add_entry((x, y, u), k, v)
    for u in range(m):
        for k, v in v_part(phi_hat(n + u)).items():
            phi_v.add_entry((u,), k, v)
    base = MDLYAlgebra(LYAlgebra(n, base_br, base_tri),
                       ModifiedOperator(E.total.lam, RatMatrix.from_rows(base_phi, n)))
    r = Representation(base, m, rho, theta, dee, phi_v)
    return r, ExtensionCocycle(nu, psi, chi)


def perturbed_section(E: AbelianExtension, omega: RatMatrix) -> RatMatrix:
    """s'(x) = x + omega(x) for omega an m x n matrix."""
    n, m = E.base_dim, E.module_dim
    if (omega.rows, omega.cols) != (m, n):
        raise InputError(f"omega must be {m}x{n}")
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows += [list(omega.row(i)) for i in range(m)]
    return RatMatrix.from_rows(rows, n)


@dataclass
class Classification:
    equivalent: bool
    witness: LYCochain | None = None

    def summary(self) -> str:
        if not self.equivalent:
            return "inequivalent"
        w = self.witness.coords
        label = "0" if not any(w) else "(" + ", ".join(str(x) for x in w) + ")"
        return f"equivalent, witness ω = {label}"


def classify(r: Representation, c1: ExtensionCocycle, c2: ExtensionCocycle) -> Classification:
    """Extensions from c1 and c2 are equivalent iff c1 - c2 = d^1(omega)."""
    n, m = r.base.dim, r.module_dim
    a, b = c1.to_cochain(n, m), c2.to_cochain(n, m)
    for name, c in (("first", a), ("second", b)):
        ok, _ = is_cocycle(r, c)
        if not ok:
            raise NotACocycle(f"the {name} cochain is not a 2-cocycle")
    w = cohomologous(r, a, b)
    return Classification(w is not None, w)


def eta_omega(E1: AbelianExtension, omega: LYCochain) -> RatMatrix:
    """x + u -> x + omega(x) + u as an (n+m) x (n+m) matrix."""
    n, m = E1.base_dim, E1.module_dim
    rows = [[Fraction(1 if i == j else 0) for j in range(n + m)] for i in range(n + m)]
    for x in range(n):
        for o, v in omega.to_linear()(x).items():
            rows[n + o][x] = v
    return RatMatrix.from_rows(rows, n + m)


def is_homomorphism(A: MDLYAlgebra, B: MDLYAlgebra, f: RatMatrix) -> bool:
    """f(A-structure) = B-structure(f, ...) on all basis tuples, and f phi_A = phi_B f."""
    fm = Multilinear.from_matrix(f.tolist())
    a, b = A.algebra, B.algebra
    return (a.binary.after(fm) == b.binary.compose(0, fm).compose(1, fm)
            and a.ternary.after(fm) == b.ternary.compose(0, fm).compose(1, fm).compose(2, fm)
            and A.phi.after(fm) == fm.after(B.phi))
