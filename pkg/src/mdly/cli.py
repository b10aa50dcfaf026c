"""Command-line interface: ``mdly <command> ...``.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import os
import random
import sys

from . import io
from .algebra import enumerate_modified_operators, verify_lya, verify_modified_operator
from .cochains import MDLYCochain, matrix_of, partial
from .cohomology import cohomology_dim
from .deformation import infinitesimal_cocycle_check, rigidity_report, verify_deformation
from .errors import InputError, NotACocycle
from .extension import build_extension, classify
from .report import Report
from .representation import Representation, adjoint_representation, verify_representation

SEED_ENV = "MDLY_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {raw!r}")


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(io.dumps(payload))
    else:
        print(text)


def _representation(doc: io.Document, args, lam_default=0) -> Representation:
    base = doc.mdly(lam_default)
    if getattr(args, "adjoint", False):
        return adjoint_representation(base)
    r = io.parse_representation(doc.raw, base)
    if r is None:
        raise InputError("representation: missing (add a representation block or pass --adjoint)")
    return r


def _require_verified(reports: list[Report]) -> None:
    bad = [r for r in reports if not r.ok]
    if bad:
        raise _Violation("\n".join(r.summary() for r in bad))


class _Violation(Exception):
    """A precondition of the command is mathematically false (exit 1)."""


# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    doc = io.load_document(args.file)
    reports = [verify_lya(doc.algebra)]
    if doc.operator is not None:
        reports.append(verify_modified_operator(doc.algebra, doc.operator))
    if "representation" in doc.raw:
        if doc.operator is None:
            raise InputError("representation: needs an operator block")
        reports.append(verify_representation(io.parse_representation(doc.raw, doc.mdly())))
    ok = all(r.ok for r in reports)
    _emit(args, {"ok": ok, "reports": [r.to_dict() for r in reports]},
          "\n".join(r.summary() for r in reports) + ("\nvalid" if ok else "\nINVALID"))
    return 0 if ok else 1


def cmd_cohomology(args) -> int:
    doc = io.load_document(args.file)
    r = _representation(doc, args)
    _require_verified([r.base.verify(), verify_representation(r)])
    rep = cohomology_dim(r, args.degree, args.complex, representatives=args.representatives,
                         oracle=args.oracle, allow_large=args.allow_large)
    payload = rep.to_dict()
    text = rep.summary()
    if args.representatives:
        payload["representatives"] = [io.cochain_to_doc(c) for c in rep.representatives]
        text += "\nrepresentatives:\n" + io.dumps(payload["representatives"]).rstrip()
    _emit(args, payload, text)
    return 0


def cmd_enumerate(args) -> int:
    doc = io.load_document(args.file)
    lam = io.parse_scalar(args.lam, "--lambda")
    space = enumerate_modified_operators(doc.algebra, lam)
    payload = {"lambda": io.fmt(lam), "dimension": space.dimension,
               "particular": io._mat(space.particular),
               "directions": [io._mat(b) for b in space.directions]}

    def show(m):
        return "\n".join("  [" + ", ".join(io.fmt(x) for x in row) + "]" for row in m.tolist())

    lines = [f"modified {io.fmt(lam)}-differential operators: affine space of dimension {space.dimension}",
             "particular:", show(space.particular)]
    for k, b in enumerate(space.directions, 1):
        lines += [f"direction {k}:", show(b)]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_deform_check(args) -> int:
    doc = io.load_document(args.file)
    base = doc.mdly()
    d = io.parse_deformation(doc.raw, base)
    if d is None:
        raise InputError("deformation: missing")
    rep = verify_deformation(d)
    payload = rep.to_dict()
    lines = [rep.summary()]
    try:
        cocycle = infinitesimal_cocycle_check(d)
    except InputError as exc:
        cocycle, lines = False, lines + [f"infinitesimal: {exc}"]
    payload["infinitesimalCocycle"] = cocycle
    lines.append(f"infinitesimal is a 2-cocycle: {'yes' if cocycle else 'no'}")
    if args.rigidity:
        rg = rigidity_report(base)
        payload["rigidity"] = {"dimH2": rg.dimH2, "verdict": rg.verdict}
        lines.append(rg.summary())
    _emit(args, payload, "\n".join(lines))
    return 0 if rep.ok else 1


def cmd_rigidity(args) -> int:
    doc = io.load_document(args.file)
    base = doc.mdly()
    _require_verified([base.verify()])
    rg = rigidity_report(base, oracle=args.oracle)
    _emit(args, {"dimH2": rg.dimH2, "dimZ2": rg.dimZ2, "dimB2": rg.dimB2, "verdict": rg.verdict},
          rg.summary())
    return 0


def cmd_extend(args) -> int:
    doc = io.load_document(args.file)
    r = _representation(doc, args)
    _require_verified([r.base.verify(), verify_representation(r)])
    c = io.parse_cocycle(io.read_json(args.cocycle), r.base.dim, r.module_dim)
    try:
        E = build_extension(r, c)
    except NotACocycle as exc:
        raise _Violation(str(exc))
    text = io.dumps(io.extension_to_doc(E))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_classify(args) -> int:
    doc = io.load_document(args.file)
    r = _representation(doc, args)
    _require_verified([r.base.verify(), verify_representation(r)])
    n, m = r.base.dim, r.module_dim
    c1 = io.parse_cocycle(io.read_json(args.cocycle1), n, m)
    c2 = io.parse_cocycle(io.read_json(args.cocycle2), n, m)
    try:
        verdict = classify(r, c1, c2)
    except NotACocycle as exc:
        raise _Violation(str(exc))
    payload = {"equivalent": verdict.equivalent}
    if verdict.witness is not None:
        payload["witness"] = io.cochain_to_doc(verdict.witness)
    _emit(args, payload, verdict.summary())
    return 0


def cmd_check_complex(args) -> int:
    """Sample random cochains and check d o d = 0 and that both code paths agree."""
    doc = io.load_document(args.file)
    r = _representation(doc, args)
    seed = default_seed() if args.seed is None else args.seed
    rng = random.Random(seed)
    n, m = r.base.dim, r.module_dim
    failures = 0
    for p in range(1, args.max_degree):
        for _ in range(args.samples):
            c = MDLYCochain.random(n, m, p, rng)
            dc = partial(r, c)
            via_matrix = matrix_of(r, "partial", p) @ list(c.coords)
            if tuple(via_matrix) != dc.coords:
                failures += 1
                print(f"degree {p}: matrix and formula paths disagree")
            if not partial(r, dc).is_zero():
                failures += 1
                print(f"degree {p}: d(d c) != 0")
    _emit(args, {"seed": seed, "samples": args.samples, "failures": failures},
          f"seed {seed}: {args.samples} samples per degree 1..{args.max_degree - 1}, {failures} failure(s)")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mdly", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="algebra document (JSON)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    command("validate", cmd_validate, "verify algebra, operator and representation")

    p = command("cohomology", cmd_cohomology, "cohomology dimensions")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--complex", choices=("ly", "mdly"), default="mdly")
    p.add_argument("--adjoint", action="store_true", help="use the adjoint representation")
    p.add_argument("--representatives", action="store_true", help="print cocycles spanning H^p")
    p.add_argument("--oracle", action="store_true", help="cross-check ranks by naive elimination")
    p.add_argument("--allow-large", action="store_true", help="permit degrees above the default limit")

    p = command("enumerate-operators", cmd_enumerate, "all modified operators for a given lambda")
    p.add_argument("--lambda", dest="lam", required=True, help="rational, e.g. 1 or -2/3")

    p = command("deform-check", cmd_deform_check, "verify a truncated deformation")
    p.add_argument("--rigidity", action="store_true", help="also report dim H^2")

    p = command("rigidity", cmd_rigidity, "rigidity criterion via dim H^2")
    p.add_argument("--oracle", action="store_true")

    p = command("extend", cmd_extend, "abelian extension from a 2-cocycle")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--adjoint", action="store_true")
    p.add_argument("--output", "-o")

    p = command("classify", cmd_classify, "compare two extension cocycles")
    p.add_argument("--cocycle1", required=True)
    p.add_argument("--cocycle2", required=True)
    p.add_argument("--adjoint", action="store_true")

    p = command("check-complex", cmd_check_complex, "randomized complex self-check")
    p.add_argument("--adjoint", action="store_true")
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--max-degree", type=int, default=3, choices=(2, 3, 4))
    p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _Violation as exc:
        print(str(exc), file=sys.stdout)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
