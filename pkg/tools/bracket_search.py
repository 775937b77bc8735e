#!/usr/bin/env python3
"""Brute-force scan for nonvanishing mod-2 brackets on tiny diagrams.

Enumerates every diagram ``C3 -> C2 -> C1 -> C0`` over GF(2) whose four
complexes live in degrees ``0..DEG_MAX`` and have total rank at most
``--total-rank``, together with every triple of chain maps, and evaluates
the bracket wherever nullhomotopies for both composites exist.

Two regimes:

* ``strict``   -- only triples with ``g.h = 0`` and ``f.g = 0`` on the nose.
  This branch is empty by a two-line argument: strict vanishing makes the
  chosen homotopies degree ``+1`` cycles of their mapping complexes, so the
  representative ``f.H - G.h`` is a combination of the very elements that
  generate the indeterminacy subgroup, and the bracket is absorbed.  The
  scan double-checks the argument computationally.
* ``homotopy`` -- composites only required to be nullhomotopic.  Here the
  representative can escape in principle; the scan reports any witness.

Every hit is printed as diagram JSON; the exit status is 0 either way, with
a summary on stderr.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from hocube.homology import ChainComplex
from hocube.toda import (ChainDiagram, bracket, _g2_solve, _hom_basis,
                         _hom_boundary, _unflatten)


def _matrices(rows, cols):
    if rows == 0 or cols == 0:
        yield None
        return
    for bits in itertools.product((0, 1), repeat=rows * cols):
        yield [list(bits[i * cols:(i + 1) * cols]) for i in range(rows)]


def _mul(A, B):
    if A is None or B is None:
        return None
    return [[sum(a * b for a, b in zip(row, col)) & 1
             for col in zip(*B)] for row in A]


def _nonzero(A):
    return A is not None and any(any(r) for r in A)


def complexes(total, deg_max):
    """All GF(2) complexes on degrees ``0..deg_max`` with the given rank."""
    out = []
    for ranks in itertools.product(range(total + 1), repeat=deg_max + 1):
        if sum(ranks) != total:
            continue
        diff_slots = [n for n in range(1, deg_max + 1)
                      if ranks[n] and ranks[n - 1]]
        choices = [list(_matrices(ranks[n - 1], ranks[n]))
                   for n in diff_slots]
        for combo in itertools.product(*choices):
            diffs = dict(zip(diff_slots, combo))
            ok = True
            for n in diff_slots:
                if n + 1 in diffs and _nonzero(_mul(diffs[n], diffs[n + 1])):
                    ok = False
                    break
            if ok:
                out.append((ranks, {n: m for n, m in diffs.items()
                                    if _nonzero(m)}))
    return out


def chain_maps(src, tgt, deg_max):
    """Degreewise GF(2) matrices commuting with both differentials."""
    sranks, sdiffs = src
    tranks, tdiffs = tgt
    partial = [{}]
    for n in range(deg_max + 1):
        grown = []
        for cand in _matrices(tranks[n], sranks[n]):
            square_src = _mul(cand, sdiffs.get(n)) if n else None
            square_tgt = _mul(tdiffs.get(n), cand) if n else None
            for before in partial:
                if n:
                    prev = before.get(n - 1)
                    lhs = square_tgt
                    rhs = _mul(prev, sdiffs.get(n)) if prev is not None \
                        else None
                    la = lhs if _nonzero(lhs) else None
                    ra = rhs if _nonzero(rhs) else None
                    if (la is None) != (ra is None) or \
                            (la is not None and la != ra):
                        continue
                nxt = dict(before)
                if _nonzero(cand):
                    nxt[n] = cand
                grown.append(nxt)
        partial = grown
    return partial


def _to_complex(data):
    ranks, diffs = data
    return ChainComplex({n: r for n, r in enumerate(ranks) if r},
                        {n: m for n, m in diffs.items()}, check=False)


def _compose(outer, inner, odata, idata, deg_max):
    oranks = odata[0]
    out = {}
    for n in range(deg_max + 1):
        m = _mul(outer.get(n), inner.get(n))
        if _nonzero(m):
            out[n] = m
    return out


def _witness(src, tgt, rhs):
    """A degree ``+1`` map ``K`` with ``dK + Kd = rhs``, or ``None``."""
    basis1, basis0, d1 = _hom_boundary(src, tgt, 1, True)
    vec = []
    for j, p, q in basis0:
        mat = rhs.get(j)
        vec.append(mat[p][q] if mat is not None else 0)
    if not basis1:
        return {} if not any(vec) else None
    sol = _g2_solve(d1, vec, len(basis1))
    if sol is None:
        return None
    return _unflatten(sol, src, tgt, 1, basis1)


def scan(total_rank, deg_max, mode, progress=False):
    budgets = [t for t in itertools.product(range(1, total_rank + 1),
                                            repeat=4)
               if sum(t) <= total_rank]
    found = []
    checked = 0
    skipped = 0
    pool = {s: complexes(s, deg_max)
            for s in range(1, total_rank - 2)}
    map_cache = {}

    def maps_between(a, b):
        key = (a[0], tuple(sorted((n, tuple(map(tuple, m)))
                                  for n, m in a[1].items())),
               b[0], tuple(sorted((n, tuple(map(tuple, m)))
                                  for n, m in b[1].items())))
        if key not in map_cache:
            map_cache[key] = chain_maps(a, b, deg_max)
        return map_cache[key]

    for s3, s2, s1, s0 in budgets:
        for c3 in pool[s3]:
            for c0 in pool[s0]:
                # a nonzero class needs Hom(C3, C0) in degree +1
                if not any(c3[0][j] and c0[0][j + 1]
                           for j in range(deg_max)):
                    skipped += 1
                    continue
                C3, C0 = _to_complex(c3), _to_complex(c0)
                for c2 in pool[s2]:
                    C2 = _to_complex(c2)
                    for c1 in pool[s1]:
                        C1 = _to_complex(c1)
                        for g in maps_between(c2, c1):
                            for h in maps_between(c3, c2):
                                gh = _compose(g, h, c2, c3, deg_max)
                                if mode == "strict" and gh:
                                    continue
                                H = _witness(C3, C1, gh)
                                if H is None:
                                    continue
                                for f in maps_between(c1, c0):
                                    fg = _compose(f, g, c1, c2, deg_max)
                                    if mode == "strict" and fg:
                                        continue
                                    G = _witness(C2, C0, fg)
                                    if G is None:
                                        continue
                                    d = ChainDiagram(C3, C2, C1, C0,
                                                     h, g, f, H, G, True)
                                    res = bracket(d)
                                    checked += 1
                                    if not res.vanishes:
                                        found.append((d, res))
                                        print(json.dumps(d.to_json(),
                                                         sort_keys=True))
                        if progress and checked and checked % 50000 == 0:
                            print(f"...{checked} diagrams so far",
                                  file=sys.stderr)
    return checked, skipped, found


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--total-rank", type=int, default=6,
                    help="bound on the summed rank of all four complexes")
    ap.add_argument("--deg-max", type=int, default=3,
                    help="complexes live in degrees 0..DEG_MAX")
    ap.add_argument("--mode", choices=("strict", "homotopy"),
                    default="strict")
    ap.add_argument("--progress", action="store_true")
    args = ap.parse_args(argv)
    checked, skipped, found = scan(args.total_rank, args.deg_max, args.mode,
                                   args.progress)
    print(f"[{args.mode}] total rank <= {args.total_rank}, degrees "
          f"0..{args.deg_max}: {checked} diagrams evaluated, "
          f"{skipped} Hom-empty pairs skipped, "
          f"{len(found)} with a nonvanishing bracket", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
