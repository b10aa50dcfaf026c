"""JSON documents for algebras, operators, representations, deformations and cocycles.

Indices in files are 1-based; every scalar is an exact rational written as a
string ("p/q") or an integer.  Unlisted entries are zero and the antisymmetric
partner of every bracket entry is implied.  The structural schema lives in
``mdly/data/schema.json``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

from jsonschema import Draft202012Validator

from .algebra import LYAlgebra, MDLYAlgebra, ModifiedOperator, antisymmetric_map
from .cochains import CochainSpace, LYCochain, MDLYCochain, wedge_pairs
from .deformation import TruncatedDeformation
from .errors import InputError
from .extension import AbelianExtension, ExtensionCocycle
from .linalg import RatMatrix
from .multilinear import Multilinear
from .representation import Representation, derive_D_from_R1

VERSION = 1


@lru_cache(maxsize=1)
def schema() -> dict:
    return json.loads(resources.files("mdly").joinpath("data/schema.json").read_text(encoding="utf-8"))


def parse_scalar(x, where: str = "") -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"{where}: scalars must be strings like '3/4' or integers, got {x!r}")
    try:
        return Fraction(x.replace(" ", "") if isinstance(x, str) else x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: bad rational {x!r}") from exc


def fmt(x: Fraction) -> str:
    return str(Fraction(x))


def _loc(path) -> str:
    return "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in path).lstrip(".") or "<root>"


def check_schema(doc: Any) -> None:
    errors = sorted(Draft202012Validator(schema()).iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        raise InputError(f"{_loc(e.absolute_path)}: {e.message}")


def read_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    check_schema(doc)
    return doc


def bundled(name: str) -> Path:
    """Path of a bundled example document, e.g. ``bundled('lyg-2dim')``."""
    p = resources.files("mdly").joinpath(f"data/{name}.json")
    return Path(str(p))


# ---------------------------------------------------------------------------
# parsing


def _matrix(rows, n: int, m: int, where: str) -> RatMatrix:
    if len(rows) != n or any(len(r) != m for r in rows):
        raise InputError(f"{where}: expected a {n}x{m} matrix")
    return RatMatrix.from_rows([[parse_scalar(x, where) for x in r] for r in rows], m)


def _entries(items, arity: int, dim: int, where: str, out_dim: int) -> dict[tuple, tuple]:
    out: dict[tuple, tuple] = {}
    for k, e in enumerate(items or ()):
        at = f"{where}[{k}]"
        args = tuple(e["args"])
        if len(args) != arity:
            raise InputError(f"{at}.args: expected {arity} indices, got {len(args)}")
        if any(not 1 <= a <= dim for a in args):
            raise InputError(f"{at}.args: index out of range 1..{dim}")
        if len(e["value"]) != out_dim:
            raise InputError(f"{at}.value: expected {out_dim} coefficients, got {len(e['value'])}")
        key = tuple(a - 1 for a in args)
        val = tuple(parse_scalar(x, f"{at}.value") for x in e["value"])
        if key in out and out[key] != val:
            raise InputError(f"{at}: duplicate entry for {args} with a different value")
        out[key] = val
    return out


def _antisym(items, arity: int, dim: int, where: str, out_dim: int | None = None) -> Multilinear:
    out_dim = dim if out_dim is None else out_dim
    return antisymmetric_map(dim, arity, _entries(items, arity, dim, where, out_dim), where, out_dim)


def _plain(items, arity: int, dim: int, where: str, out_dim: int) -> Multilinear:
    m = Multilinear(arity)
    for key, vec in _entries(items, arity, dim, where, out_dim).items():
        for o, v in enumerate(vec):
            m.add_entry(key, o, v)
    return m


def _dim(doc: dict) -> int:
    if "dim" not in doc:
        raise InputError("dim: required")
    return doc["dim"]


def parse_algebra(doc: dict) -> LYAlgebra:
    n = _dim(doc)
    return LYAlgebra(n, _antisym(doc.get("binary"), 2, n, "binary"),
                     _antisym(doc.get("ternary"), 3, n, "ternary"))


def parse_operator(doc: dict) -> ModifiedOperator | None:
    op = doc.get("operator")
    if op is None:
        return None
    n = _dim(doc)
    return ModifiedOperator(parse_scalar(op["lambda"], "operator.lambda"),
                            _matrix(op["matrix"], n, n, "operator.matrix"))


def _action(items, nargs: int, n: int, m: int, where: str) -> Multilinear:
    act = Multilinear(nargs + 1)
    seen = set()
    for k, e in enumerate(items or ()):
        at = f"{where}[{k}]"
        args = tuple(e["args"])
        if len(args) != nargs or any(not 1 <= a <= n for a in args):
            raise InputError(f"{at}.args: expected {nargs} indices in 1..{n}")
        if args in seen:
            raise InputError(f"{at}: duplicate entry for {args}")
        seen.add(args)
        mat = _matrix(e["matrix"], m, m, f"{at}.matrix")
        for i in range(m):
            for j in range(m):
                if mat[i, j]:
                    act.add_entry(tuple(a - 1 for a in args) + (j,), i, mat[i, j])
    return act


def parse_representation(doc: dict, base: MDLYAlgebra) -> Representation | None:
    rep = doc.get("representation")
    if rep is None:
        return None
    n, m = base.dim, rep["moduleDim"]
    rho = _action(rep.get("rho"), 1, n, m, "representation.rho")
    theta = _action(rep.get("theta"), 2, n, m, "representation.theta")
    if "D" in rep:
        dee = _action(rep["D"], 2, n, m, "representation.D")
    else:
        dee = derive_D_from_R1(base.algebra, rho, theta)
    phi_v = _matrix(rep["phiV"], m, m, "representation.phiV") if "phiV" in rep else RatMatrix.zeros(m, m)
    return Representation(base, m, rho, theta, dee, Multilinear.from_matrix(phi_v.tolist()))


def parse_deformation(doc: dict, base: MDLYAlgebra) -> TruncatedDeformation | None:
    block = doc.get("deformation")
    if block is None:
        return None
    n = base.dim
    fs, gs, ps = [], [], []
    for k, t in enumerate(block["terms"]):
        at = f"deformation.terms[{k}]"
        fs.append(_antisym(t.get("f"), 2, n, f"{at}.f"))
        gs.append(_antisym(t.get("g"), 3, n, f"{at}.g"))
        phi = _matrix(t["phi"], n, n, f"{at}.phi") if "phi" in t else RatMatrix.zeros(n, n)
        ps.append(Multilinear.from_matrix(phi.tolist()))
    return TruncatedDeformation(base, tuple(fs), tuple(gs), tuple(ps))


def parse_cocycle(doc: dict, n: int, m: int) -> ExtensionCocycle:
    for key, want in (("dim", n), ("moduleDim", m)):
        if key in doc and doc[key] != want:
            raise InputError(f"{key}: cocycle file has {doc[key]}, expected {want}")
    return ExtensionCocycle(_antisym(doc.get("nu"), 2, n, "nu", m),
                            _antisym(doc.get("psi"), 3, n, "psi", m),
                            _plain(doc.get("chi"), 1, n, "chi", m))


def _cochain_part(block: dict, sp: CochainSpace, where: str) -> LYCochain:
    """Entries: 'f' args are the 2k flattened wedge arguments, 'g' args add z."""
    n, m = sp.dim, sp.module_dim
    coords = [Fraction(0)] * sp.size
    if sp.degree == 1:
        for key, val in _entries(block.get("f"), 1, n, f"{where}.f", m).items():
            for o, v in enumerate(val):
                coords[sp.index1(key[0], o)] = v
        return LYCochain(sp, tuple(coords))
    k = sp.npairs
    lookup = {p: i for i, p in enumerate(wedge_pairs(n))}
    for part, arity in (("f", 2 * k), ("g", 2 * k + 1)):
        for key, val in _entries(block.get(part), arity, n, f"{where}.{part}", m).items():
            ks = []
            for i in range(k):
                pair = key[2 * i:2 * i + 2]
                if pair not in lookup:
                    raise InputError(f"{where}.{part}: wedge arguments must be increasing, got "
                                     f"{tuple(a + 1 for a in pair)}")
                ks.append(lookup[pair])
            for o, v in enumerate(val):
                idx = sp.f_index(ks, o) if part == "f" else sp.g_index(ks, key[-1], o)
                coords[idx] = v
    return LYCochain(sp, tuple(coords))


def parse_cochain(block: dict, n: int, m: int) -> LYCochain | MDLYCochain:
    p, kind = block["degree"], block["complex"]
    top = _cochain_part(block, CochainSpace(n, m, p), "cochain")
    if kind == "ly":
        return top
    if p == 1:
        return MDLYCochain(top)
    return MDLYCochain(top, _cochain_part(block.get("shadow", {}), CochainSpace(n, m, p - 1), "cochain.shadow"))


@dataclass
class Document:
    raw: dict
    algebra: LYAlgebra
    operator: ModifiedOperator | None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def mdly(self, lam_default=None) -> MDLYAlgebra:
        op = self.operator
        if op is None:
            if lam_default is None:
                raise InputError("operator: required for this command")
            op = ModifiedOperator(lam_default, RatMatrix.zeros(self.dim, self.dim))
        return MDLYAlgebra(self.algebra, op)


def load_document(path: str | Path) -> Document:
    doc = read_json(path)
    return Document(doc, parse_algebra(doc), parse_operator(doc))


# ---------------------------------------------------------------------------
# serialization


def _vec(vec: dict, n: int) -> list[str]:
    return [fmt(vec.get(i, 0)) for i in range(n)]


def _mat(m: RatMatrix) -> list[list[str]]:
    return [[fmt(x) for x in row] for row in m.tolist()]


def _map_entries(m: Multilinear, out_dim: int, canonical: bool) -> list[dict]:
    """Sorted entries; with ``canonical`` only keys with first < second are written."""
    out = []
    for key in sorted(m.data):
        if canonical and key[0] >= key[1]:
            continue
        vec = m.data[key]
        if any(vec.values()):
            out.append({"args": [k + 1 for k in key], "value": _vec(vec, out_dim)})
    return out


def operator_to_doc(op: ModifiedOperator) -> dict:
    return {"lambda": fmt(op.lam), "matrix": _mat(op.matrix)}


def algebra_to_doc(A: LYAlgebra | MDLYAlgebra, name: str | None = None) -> dict:
    alg = A.algebra if isinstance(A, MDLYAlgebra) else A
    doc: dict = {"version": VERSION}
    if name:
        doc["name"] = name
    doc["dim"] = alg.dim
    doc["binary"] = _map_entries(alg.binary, alg.dim, True)
    doc["ternary"] = _map_entries(alg.ternary, alg.dim, True)
    if isinstance(A, MDLYAlgebra):
        doc["operator"] = operator_to_doc(A.operator)
    return doc


def _action_doc(act: Multilinear, nargs: int, n: int, m: int) -> list[dict]:
    out = []
    for args in sorted({key[:-1] for key in act.data}):
        rows = [[Fraction(0)] * m for _ in range(m)]
        for j in range(m):
            for i, v in act(*args, j).items():
                rows[i][j] = v
        if any(any(r) for r in rows):
            out.append({"args": [a + 1 for a in args], "matrix": [[fmt(x) for x in r] for r in rows]})
    return out


def representation_to_doc(r: Representation) -> dict:
    n, m = r.base.dim, r.module_dim
    return {"moduleDim": m,
            "rho": _action_doc(r.rho, 1, n, m),
            "theta": _action_doc(r.theta, 2, n, m),
            "D": _action_doc(r.dee, 2, n, m),
            "phiV": _mat(r.phi_v_matrix())}


def deformation_to_doc(d: TruncatedDeformation) -> dict:
    n = d.base.dim
    terms = []
    for f, g, p in zip(d.f_seq, d.g_seq, d.phi_seq):
        mat = RatMatrix.from_rows([[p(j).get(i, 0) for j in range(n)] for i in range(n)], n)
        terms.append({"f": _map_entries(f, n, True), "g": _map_entries(g, n, True), "phi": _mat(mat)})
    return {"terms": terms}


def cocycle_to_doc(c: ExtensionCocycle, n: int, m: int) -> dict:
    return {"version": VERSION, "dim": n, "moduleDim": m,
            "nu": _map_entries(c.nu, m, True),
            "psi": _map_entries(c.psi, m, True),
            "chi": _map_entries(c.chi, m, False)}


def extension_to_doc(E: AbelianExtension, name: str | None = None) -> dict:
    doc = algebra_to_doc(E.total, name)
    doc["blocks"] = {"g": [i + 1 for i in E.g_block], "V": [i + 1 for i in E.v_block]}
    return doc


def _cochain_part_doc(c: LYCochain) -> dict:
    sp = c.space
    m = sp.module_dim
    wp = wedge_pairs(sp.dim)
    out: dict = {"f": [], "g": []}
    if sp.degree == 1:
        for z in range(sp.dim):
            vec = [c.coords[sp.index1(z, o)] for o in range(m)]
            if any(vec):
                out["f"].append({"args": [z + 1], "value": [fmt(x) for x in vec]})
        del out["g"]
        return out
    for ks in itertools.product(range(len(wp)), repeat=sp.npairs):
        args = [a + 1 for k in ks for a in wp[k]]
        vec = [c.coords[sp.f_index(ks, o)] for o in range(m)]
        if any(vec):
            out["f"].append({"args": args, "value": [fmt(x) for x in vec]})
        for z in range(sp.dim):
            vec = [c.coords[sp.g_index(ks, z, o)] for o in range(m)]
            if any(vec):
                out["g"].append({"args": args + [z + 1], "value": [fmt(x) for x in vec]})
    return out


def cochain_to_doc(c: LYCochain | MDLYCochain) -> dict:
    if isinstance(c, LYCochain):
        return {"degree": c.degree, "complex": "ly", **_cochain_part_doc(c)}
    doc = {"degree": c.degree, "complex": "mdly", **_cochain_part_doc(c.top)}
    if c.shadow is not None:
        doc["shadow"] = _cochain_part_doc(c.shadow)
    return doc


def _dump(x, indent: int) -> str:
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(x, dict):
        if not x:
            return "{}"
        body = ",\n".join(f"{inner}{json.dumps(k)}: {_dump(v, indent + 2)}" for k, v in x.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(x, list):
        if all(not isinstance(v, (dict, list)) for v in x):
            return json.dumps(x)
        body = ",\n".join(inner + _dump(v, indent + 2) for v in x)
        return "[\n" + body + "\n" + pad + "]"
    return json.dumps(x)


def dumps(doc) -> str:
    """JSON with scalar lists kept on one line."""
    return _dump(doc, 0) + "\n"
