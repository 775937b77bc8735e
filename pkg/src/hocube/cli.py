"""Command line front end.

JSON goes to stdout with sorted keys and compact separators so identical
inputs produce identical bytes; DOT only when asked for; everything
diagnostic goes to stderr.  Exit codes: 0 success, 1 failed checks,
2 malformed input, 3 axiom violations, 4 internal invariant failures.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cubical as cub
from .errors import AxiomError, FormatError, InvariantError
from .homology import components, cubical_chains, homology_groups
from .lattice import null_sequences, unpointed_version, validate
from .monoidal import product, tensor
from .pi1 import pi1
from .simplicial import triangulate
from .toda import ChainDiagram, bracket
from .wcon import (augmentation, obstruction_complexes, obstruction_domain,
                   pi0_report, pointed_relative_model, w_construction)


def _emit(data):
    sys.stdout.write(json.dumps(data, sort_keys=True,
                                separators=(",", ":")) + "\n")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON in {path}: line {exc.lineno} "
                          f"column {exc.colno}")


def _load_category(path):
    return validate(_load_json(path))


def _slot(C, u, v):
    """The requested mapping complex, through the unpointed resolution."""
    C.homset(u, v)                       # object-name validation
    if C.pointed:
        C, _ = unpointed_version(C)
    return w_construction(C).slot(u, v)


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args):
    C = _load_category(args.file)
    _emit({"ok": True, "objects": len(C.objects),
           "morphisms": len(C.morphisms),
           "user_morphisms": len(C.user_morphisms),
           "pointed": C.pointed, "lattice": C.is_lattice,
           "length": C.length})


def cmd_homset(args):
    C = _load_category(args.file)
    _emit({"from": args.src, "to": args.dst,
           "hom": [m.mid for m in C.homset(args.src, args.dst)]})


def cmd_w(args):
    M = _slot(_load_category(args.file), args.src, args.dst)
    if args.cells:
        _emit(M.complex.to_json())
    else:
        _emit({"counts": list(M.complex.counts())})


def cmd_triangulate(args):
    M = _slot(_load_category(args.file), args.src, args.dst)
    T = triangulate(M.complex)
    if args.format == "dot":
        sys.stdout.write(T.to_dot())
        return
    S = T.sset
    cells = []
    for s in S.cells():
        n = S.dim(s)
        cells.append({
            "dim": n,
            "label": S.label(s),
            "faces": [[t, list(w)] for (t, w) in
                      (S.face(s, i) for i in range(n + 1))] if n else [],
        })
    _emit({"counts": list(S.counts()), "cells": cells})


def cmd_homology(args):
    C = _load_category(args.file)
    C.homset(args.src, args.dst)
    if args.pointed:
        M = pointed_relative_model(C).slot(args.src, args.dst)
    else:
        M = _slot(C, args.src, args.dst)
    h = homology_groups(cubical_chains(M.complex))
    _emit({"from": args.src, "to": args.dst,
           "homology": {str(n): grp for n, grp in h.items()}})


def cmd_jgamma(args):
    C = _load_category(args.file)
    J = null_sequences(C, reduced=True)
    _emit({"J": [list(ch.ids()) for ch in J]})


def cmd_domain(args):
    K, summary = obstruction_domain(_load_category(args.file))
    _emit({"counts": list(K.counts()),
           "homology": {str(n): grp for n, grp in summary.items()}})


def cmd_check(args):
    C = _load_category(args.file)
    failures = []
    checks = 0

    def run(name, fn):
        nonlocal checks
        checks += 1
        try:
            fn()
        except AssertionError as exc:
            failures.append(f"{name}: {exc or 'failed'}")
        except (AxiomError, InvariantError) as exc:
            failures.append(f"{name}: {exc}")

    U = unpointed_version(C)[0] if C.pointed else C
    diag = w_construction(U)
    run("w.check", diag.check)
    for (u, v) in sorted(diag.slots):
        run(f"pi0[{u}->{v}]",
            lambda u=u, v=v: _assert_pi0(diag, U, u, v))
        run(f"acyclic[{u}->{v}]",
            lambda u=u, v=v: _assert_acyclic(diag.slot(u, v).complex))
    run("augmentation", lambda: [m.check() for m in
                                 augmentation(diag).values()])
    if C.pointed:
        P = pointed_relative_model(C)
        run("pointed.check", P.check)
        if C.is_lattice:
            # the constructor cross-checks complement vs J and the
            # away-from-the-main-slot isomorphisms internally
            run("obstruction", lambda: obstruction_complexes(C))
    if failures:
        _emit({"ok": False, "checks": checks, "failures": failures})
        return 1
    _emit({"ok": True, "checks": checks})
    return 0


def _assert_pi0(diag, C, u, v):
    rep = pi0_report(diag, u, v)
    assert len(rep) == len(C.homset(u, v)), \
        f"{len(rep)} components vs {len(C.homset(u, v))} morphisms"


def _assert_acyclic(K):
    root, comps = components(K)
    for r in comps:
        part = [c for c in K.cells() if root[c] == r]
        S, _ = cub.subcomplex(K, part)
        h = homology_groups(cubical_chains(S))
        assert h[0] == "Z" and all(g == "0" for n, g in h.items() if n), \
            f"component of {K.label(r)} is not acyclic: {h}"
        assert pi1(S).is_trivial, \
            f"component of {K.label(r)} has nontrivial pi1"


def _cube_spec(token):
    """Parse ``I<n>``, ``bI<n>`` or ``h<n>:<i>:<eps>``."""
    try:
        if token.startswith("bI"):
            return cub.boundary_cube(int(token[2:]))
        if token.startswith("I"):
            return cub.standard_cube(int(token[1:]))
        if token.startswith("h"):
            n, i, eps = (int(x) for x in token[1:].split(":"))
            return cub.horn(n, i, eps)
    except (ValueError, AssertionError):
        pass
    raise FormatError(f"bad cube spec {token!r}; use I<n>, bI<n> or "
                      "h<n>:<i>:<eps>", field="--args")


def cmd_cube(args):
    op = args.op
    want = {"standard": 1, "boundary": 1, "horn": 3,
            "tensor": 2, "product": 2}[op]
    if len(args.args) != want:
        raise FormatError(f"--op {op} needs {want} argument(s)",
                          field="--args")
    if op in ("standard", "boundary", "horn"):
        try:
            nums = [int(x) for x in args.args]
        except ValueError:
            raise FormatError("numeric arguments expected", field="--args")
        try:
            if op == "standard":
                K = cub.standard_cube(nums[0])
            elif op == "boundary":
                K = cub.boundary_cube(nums[0])
            else:
                K = cub.horn(*nums)
        except (AssertionError, ValueError, IndexError):
            raise FormatError(f"invalid arguments for --op {op}: "
                              f"{' '.join(args.args)}", field="--args")
    else:
        A, B = (_cube_spec(t) for t in args.args)
        K = (tensor(A, B) if op == "tensor" else product(A, B)).complex
    h = homology_groups(cubical_chains(K))
    _emit({"op": op, "counts": list(K.counts()),
           "homology": {str(n): grp for n, grp in h.items()},
           "complex": K.to_json()})


def cmd_toda(args):
    D = ChainDiagram.from_json(_load_json(args.file))
    _emit(bracket(D).to_json())


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="hocube",
        description="finite cubical homotopy computations on lattice "
                    "categories and chain diagrams")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def lattice_cmd(name, fn, help_, pair=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="lattice JSON file")
        if pair:
            p.add_argument("--from", dest="src", required=True,
                           metavar="U", help="source object")
            p.add_argument("--to", dest="dst", required=True,
                           metavar="V", help="target object")
        p.set_defaults(fn=fn)
        return p

    lattice_cmd("validate", cmd_validate, "validate a lattice file")
    lattice_cmd("homset", cmd_homset, "list a hom-set", pair=True)
    pw = lattice_cmd("w", cmd_w, "one mapping complex of the W-construction",
                     pair=True)
    g = pw.add_mutually_exclusive_group()
    g.add_argument("--cells", action="store_true",
                   help="full complex JSON instead of the census")
    g.add_argument("--counts", action="store_true",
                   help="cell census only (default)")
    pt = lattice_cmd("triangulate", cmd_triangulate,
                     "triangulated mapping complex", pair=True)
    pt.add_argument("--format", choices=("dot", "json"), default="json")
    ph = lattice_cmd("homology", cmd_homology,
                     "homology of a mapping complex", pair=True)
    ph.add_argument("--pointed", action="store_true",
                    help="use the pointed relative model")
    lattice_cmd("jgamma", cmd_jgamma,
                "reduced maximal null sequences of a pointed lattice")
    lattice_cmd("domain", cmd_domain,
                "obstruction domain wedge and its homology")
    lattice_cmd("check", cmd_check, "run the full invariant suite")

    pc = sub.add_parser("cube", help="cubical constructor utilities")
    pc.add_argument("--op", required=True,
                    choices=("standard", "boundary", "horn", "tensor",
                             "product"))
    pc.add_argument("--args", nargs="+", required=True,
                    help="operation arguments, e.g. 3 or I1 bI2 h3:1:0")
    pc.set_defaults(fn=cmd_cube)

    pd = sub.add_parser("toda", help="evaluate the bracket of a diagram")
    pd.add_argument("file", help="diagram JSON file")
    pd.set_defaults(fn=cmd_toda)
    return ap


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args) or 0
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 2
    except AxiomError as exc:
        print("axiom violations:", file=sys.stderr)
        for line in exc.report:
            print(f"  - {line}", file=sys.stderr)
        return 3
    except InvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
