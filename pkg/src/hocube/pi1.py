"""Edge-path fundamental group of a cubical set.

Generators are the nondegenerate 1-cells in the component of the base
vertex; a breadth-first spanning tree contributes one trivializing relator
per tree edge, and every 2-cell contributes the relator tracing its
boundary: along the ``(1,0)``-face, then the ``(2,1)``-face, then back
against the ``(1,1)``- and ``(2,0)``-faces.  Faces that land on degenerate
edges are identity steps and are skipped.

``simplify_presentation`` applies conservative Tietze moves.  It recognizes
the trivial group, free groups, and free abelian groups when the reduction
reaches such a normal form; anything else is returned as-is with
``recognized=None``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .homology import components
from .intmat import smith_normal_form


@dataclass
class Presentation:
    """A finite group presentation with signed-index relator words.

    ``relators`` entries are tuples of nonzero ints: ``+k`` is the ``k``-th
    generator (1-based), ``-k`` its inverse.  ``recognized`` is one of
    ``None``, ``"trivial"``, ``"free"``, ``"free_abelian"``; ``rank`` is
    set for the latter two.
    """

    generators: list
    relators: list
    recognized: str | None = None
    rank: int | None = None

    def relator_words(self):
        out = []
        for r in self.relators:
            parts = []
            for g in r:
                name = self.generators[abs(g) - 1]
                parts.append(name if g > 0 else f"{name}^-1")
            out.append(".".join(parts) if parts else "1")
        return out

    @property
    def is_trivial(self):
        return self.recognized == "trivial"

    @property
    def is_infinite_cyclic(self):
        return self.recognized in ("free", "free_abelian") and self.rank == 1

    def abelianization(self):
        """Invariants of the abelianized group: ``(betti, torsion_tuple)``."""
        n = len(self.generators)
        if n == 0:
            return (0, ())
        rows = []
        for r in self.relators:
            row = [0] * n
            for g in r:
                row[abs(g) - 1] += 1 if g > 0 else -1
            rows.append(row)
        if not rows:
            return (n, ())
        inv, rank = smith_normal_form(rows)
        return (n - rank, tuple(d for d in inv if d > 1))


def pi1_presentation(K, base=None):
    """Presentation of the edge-path group at ``base`` (default: basepoint
    or the smallest 0-cell)."""
    if base is None:
        base = K.basepoint if K.basepoint is not None else min(K.cells(0))
    root, _ = components(K)
    comp = root[base]

    edges = [e for e in K.cells(1) if root[e] == comp]
    gen_index = {e: k + 1 for k, e in enumerate(edges)}

    def ends(e):
        return K.face(e, 1, 0)[0], K.face(e, 1, 1)[0]

    # breadth-first spanning tree; tree edges become trivial relators
    adj = {}
    for e in edges:
        s, t = ends(e)
        adj.setdefault(s, []).append((t, e))
        adj.setdefault(t, []).append((s, e))
    seen = {base}
    tree_edges = set()
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for w, e in sorted(adj.get(v, [])):
            if w not in seen:
                seen.add(w)
                tree_edges.add(e)
                queue.append(w)

    relators = [(gen_index[e],) for e in sorted(tree_edges)]

    for c in K.cells(2):
        if root[c] != comp:
            continue
        word = []
        for (i, eps), sign in (((1, 0), 1), ((2, 1), 1), ((1, 1), -1), ((2, 0), -1)):
            tgt, w = K.face(c, i, eps)
            if w:
                continue
            word.append(sign * gen_index[tgt])
        relators.append(tuple(word))

    labels = [K.label(e) if K.label(e) is not None else f"e{e}" for e in edges]
    return Presentation(labels, relators)


def _free_reduce_cyclic(word):
    out = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return tuple(out)


def _canonical(word):
    """Canonical form of a cyclic word up to rotation and inversion."""
    if not word:
        return ()
    best = None
    inv = tuple(-g for g in reversed(word))
    for w in (word, inv):
        for k in range(len(w)):
            cand = w[k:] + w[:k]
            if best is None or cand < best:
                best = cand
    return best


def _substitute(word, gen, repl):
    """Replace generator ``gen`` (positive index) by the word ``repl``."""
    out = []
    for g in word:
        if g == gen:
            out.extend(repl)
        elif g == -gen:
            out.extend(-x for x in reversed(repl))
        else:
            out.append(g)
    return tuple(out)


def simplify_presentation(pres, max_rounds=50, max_total_length=20000):
    """Tietze simplification; returns a new :class:`Presentation`."""
    gens = list(range(1, len(pres.generators) + 1))
    names = {k: pres.generators[k - 1] for k in gens}
    relators = [tuple(r) for r in pres.relators]

    def cleanup(rels):
        seen = {}
        for r in rels:
            r = _free_reduce_cyclic(r)
            if not r:
                continue
            seen.setdefault(_canonical(r), r)
        return list(seen.values())

    relators = cleanup(relators)
    for _ in range(max_rounds):
        changed = False

        # kill generators forced trivial by length-1 relators
        for r in list(relators):
            if len(r) == 1:
                g = abs(r[0])
                if g in gens:
                    gens.remove(g)
                relators = cleanup(
                    [tuple(x for x in rel if abs(x) != g) for rel in relators])
                changed = True
                break
        if changed:
            continue

        # length-2 relators identify one generator with another's inverse
        for r in list(relators):
            if len(r) == 2 and abs(r[0]) != abs(r[1]):
                a, b = r
                # b = a^{-1}; eliminate the higher-numbered generator
                tgt, repl = (b, (-a,)) if abs(b) > abs(a) else (a, (-b,))
                g = abs(tgt)
                rep = repl if tgt > 0 else tuple(-x for x in reversed(repl))
                relators = cleanup(
                    [_substitute(rel, g, rep) for rel in relators])
                gens.remove(g)
                changed = True
                break
        if changed:
            continue

        # eliminate a generator occurring exactly once in some relator
        best = None
        for ri, r in enumerate(relators):
            counts = {}
            for g in r:
                counts[abs(g)] = counts.get(abs(g), 0) + 1
            for g, c in counts.items():
                if c == 1:
                    total = sum(sum(1 for x in rel if abs(x) == g)
                                for rel in relators)
                    cost = (len(r) - 1) * (total - 1)
                    if best is None or cost < best[0]:
                        best = (cost, ri, g)
        if best is not None:
            _, ri, g = best
            r = relators[ri]
            k = next(i for i, x in enumerate(r) if abs(x) == g)
            rot = r[k:] + r[:k]
            # rot = g^s * w  =>  g^s = w^{-1}
            s = 1 if rot[0] > 0 else -1
            w = rot[1:]
            repl = tuple(-x for x in reversed(w)) if s > 0 else w
            new = [_substitute(rel, g, repl) for i, rel in enumerate(relators)
                   if i != ri]
            if sum(len(x) for x in new) <= max_total_length:
                relators = cleanup(new)
                gens.remove(g)
                continue
        break

    remaining = sorted(gens)
    renum = {g: i + 1 for i, g in enumerate(remaining)}
    out_relators = [tuple((renum[abs(g)] if g > 0 else -renum[abs(g)])
                          for g in r)
                    for r in relators]
    out = Presentation([names[g] for g in remaining], out_relators)

    n = len(remaining)
    if n == 0:
        out.recognized, out.rank = "trivial", 0
    elif not out_relators:
        out.recognized, out.rank = "free", n
    else:
        # free abelian: exactly the commutators of every generator pair
        want = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
        got = set()
        ok = True
        for r in out_relators:
            if len(r) != 4:
                ok = False
                break
            a, b = abs(r[0]), abs(r[1])
            if _canonical(r) != _canonical((a, b, -a, -b)):
                ok = False
                break
            got.add((min(a, b), max(a, b)))
        if ok and got == want:
            out.recognized, out.rank = "free_abelian", n
    return out


def pi1(K, base=None):
    """Convenience wrapper: presentation plus its simplification."""
    raw = pi1_presentation(K, base)
    return simplify_presentation(raw)
