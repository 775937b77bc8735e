"""Finite simplicial sets, triangulation of cubical sets, and the truncated
cubical singular functor.

Simplicial sets use the same normalized architecture as
:mod:`hocube.cubical`: only nondegenerate simplices are stored, and every
face is a reference ``(cell, word)`` where ``word`` is the sorted tuple of
*collapse positions* (the unique surjection of the simplex category with
those repeats).  Operators are monotone maps stored as value tuples; all
derived structure is resolved by :meth:`SimplicialSet.sapply`.

The triangulation of a cubical set has, over each nondegenerate ``n``-cell,
one nondegenerate ``q``-simplex per strict chain of length ``q+1`` from the
bottom to the top vertex of ``{0,1}^n``; in particular ``n!`` top simplices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import boxmaps as bm
from .errors import AxiomError, FormatError, InvariantError


def epi_tuple(n, S):
    """The surjection ``[n] -> [n - |S|]`` collapsing each ``s in S`` onto
    ``s+1``; as a tuple of length ``n + 1``."""
    out = []
    drop = 0
    S = set(S)
    for v in range(n + 1):
        out.append(v - drop)
        if v in S:
            drop += 1
    return tuple(out)


def sword_compose(outer, inner, n):
    """Repeat set of ``e_inner . e_outer`` out of ``[n]``.

    ``outer`` collapses ``[n]``; ``inner`` collapses the quotient.
    """
    e1 = epi_tuple(n, outer)
    e2 = epi_tuple(n - len(outer), inner)
    comp = tuple(e2[v] for v in e1)
    return tuple(v for v in range(n) if comp[v] == comp[v + 1])


class SimplicialSet:
    """A finite simplicial set presented by nondegenerate simplices."""

    def __init__(self, dims, faces, labels=None, basepoint=None):
        self._dims = list(dims)
        self._faces = [list(f) for f in faces]
        self.labels = list(labels) if labels is not None else [None] * len(dims)
        self.basepoint = basepoint
        self._by_dim = {}
        for c, d in enumerate(self._dims):
            self._by_dim.setdefault(d, []).append(c)

    @property
    def n_cells(self):
        return len(self._dims)

    def dim(self, c):
        return self._dims[c]

    @property
    def dimension(self):
        return max(self._dims) if self._dims else -1

    def cells(self, n=None):
        if n is None:
            return range(len(self._dims))
        return list(self._by_dim.get(n, ()))

    def counts(self):
        if not self._dims:
            return ()
        top = self.dimension
        return tuple(len(self._by_dim.get(n, ())) for n in range(top + 1))

    def face(self, c, i):
        n = self._dims[c]
        assert 0 <= i <= n
        return self._faces[c][i]

    def label(self, c):
        return self.labels[c]

    def cell_by_label(self, lab):
        return self.labels.index(lab)

    def ref_dim(self, ref):
        c, word = ref
        return self._dims[c] + len(word)

    # -- operator resolution -------------------------------------------

    def sapply(self, c, f):
        """Value of the monotone operator ``f : [q] -> [dim c]`` on ``c``.

        ``f`` is a value tuple of length ``q + 1``; the result is a
        normalized reference of dimension ``q``.
        """
        while True:
            m = self._dims[c]
            vals = set(f)
            miss = None
            for v in range(m + 1):
                if v not in vals:
                    miss = v
                    break
            if miss is None:
                word = tuple(v for v in range(len(f) - 1) if f[v] == f[v + 1])
                return (c, word)
            tgt, w = self.face(c, miss)
            f = tuple((v if v < miss else v - 1) for v in f)
            if w:
                e = epi_tuple(m - 1, w)
                f = tuple(e[v] for v in f)
            c = tgt

    def ref_sapply(self, ref, f):
        c, S = ref
        if S:
            e = epi_tuple(self.ref_dim(ref), S)
            f = tuple(e[v] for v in f)
        return self.sapply(c, f)

    def sface_ref(self, ref, i):
        n = self.ref_dim(ref)
        delta = tuple(v for v in range(n + 1) if v != i)
        return self.ref_sapply(ref, delta)

    def sdegenerate_ref(self, ref, i):
        c, S = ref
        n = self.ref_dim(ref)
        sigma = tuple(min(v, i) if v <= i else v - 1 for v in range(n + 2))
        return self.ref_sapply(ref, sigma)

    def refs(self, n):
        out = []
        for p in range(n, -1, -1):
            for c in self.cells(p):
                for word in itertools.combinations(range(n), n - p):
                    out.append((c, word))
        return out

    def check(self):
        bad = []
        for c in range(self.n_cells):
            n = self._dims[c]
            expected = n + 1 if n else 0
            if len(self._faces[c]) != expected:
                bad.append(f"simplex {c}: expected {expected} faces")
                continue
            if n == 0:
                continue
            for i in range(n + 1):
                ref = self.face(c, i)
                if self.ref_dim(ref) != n - 1:
                    bad.append(f"simplex {c}: face {i} has wrong dimension")
            if n < 2:
                continue
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    left = self.sface_ref(self.face(c, j), i)
                    right = self.sface_ref(self.face(c, i), j - 1)
                    if left != right:
                        bad.append(f"simplex {c}: d_{i} d_{j} != d_{j - 1} d_{i}")
        if bad:
            raise AxiomError("simplicial identities fail", report=bad)

    def to_dot(self, marked_edges=(), name="sset"):
        """DOT digraph of the 2-skeleton; ``marked_edges`` drawn dashed.

        Edges are oriented from face 1 (source) to face 0 (target).
        """
        marked = set(marked_edges)
        lines = [f"digraph {name} {{"]
        for v in self.cells(0):
            lab = self.label(v) if self.label(v) is not None else str(v)
            lines.append(f'  v{v} [label="{lab}"];')
        for e in self.cells(1):
            src = self.face(e, 1)[0]
            tgt = self.face(e, 0)[0]
            style = " [style=dashed]" if e in marked else ""
            lines.append(f"  v{src} -> v{tgt}{style};")
        ntri = len(self.cells(2))
        lines.append(f'  label="{ntri} triangles in dimension 2";')
        lines.append("}")
        return "\n".join(lines) + "\n"


class SCellMap:
    """A simplicial map stored on nondegenerate simplices."""

    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)

    def __call__(self, c):
        return self.mapping[c]

    def apply_ref(self, ref):
        c, word = ref
        tgt, tword = self.mapping[c]
        n = self.source.ref_dim(ref)
        return (tgt, sword_compose(word, tword, n))

    def check(self):
        bad = []
        for c in range(self.source.n_cells):
            n = self.source.dim(c)
            img = self.mapping.get(c)
            if img is None:
                bad.append(f"simplex {c} has no image")
                continue
            if self.target.ref_dim(img) != n:
                bad.append(f"simplex {c}: image dimension mismatch")
                continue
            for i in range(n + 1) if n else ():
                left = self.apply_ref(self.source.face(c, i))
                right = self.target.sface_ref(img, i)
                if left != right:
                    bad.append(f"simplex {c}: face {i} not preserved")
        if bad:
            raise AxiomError("not a simplicial map", report=bad)

    def is_iso(self):
        if self.source.n_cells != self.target.n_cells:
            return False
        seen = set()
        for c in range(self.source.n_cells):
            tgt, word = self.mapping[c]
            if word:
                return False
            seen.add(tgt)
        return len(seen) == self.source.n_cells


def delta(n):
    """The standard ``n``-simplex; labels are vertex strings like ``"02"``."""
    dims = []
    faces = []
    labels = []
    ids = {}
    for k in range(n + 1):
        for vs in itertools.combinations(range(n + 1), k + 1):
            ids[vs] = len(dims)
            dims.append(k)
            labels.append("".join(map(str, vs)))
            faces.append(None)
    for vs, c in ids.items():
        faces[c] = [(ids[vs[:i] + vs[i + 1:]], ()) for i in range(len(vs))] \
            if len(vs) > 1 else []
    S = SimplicialSet(dims, faces, labels)
    return S


def simplicial_maps(X, Y, bound=None):
    """All simplicial maps ``X -> Y`` by backtracking over cells of ``X``."""
    cells = sorted(X.cells(), key=lambda c: (X.dim(c), c))
    refs_by_dim = {n: Y.refs(n) for n in {X.dim(c) for c in cells}}
    if bound is not None:
        work = X.n_cells * max((len(v) for v in refs_by_dim.values()), default=0)
        if work > bound:
            raise InvariantError(f"map enumeration bound {bound} exceeded")
    assigned = {}
    out = []

    def sub_ref(ref):
        c, word = ref
        tgt, tword = assigned[c]
        n = X.ref_dim(ref)
        return (tgt, sword_compose(word, tword, n))

    def consistent(c, cand):
        n = X.dim(c)
        for i in range(n + 1) if n else ():
            if sub_ref(X.face(c, i)) != Y.sface_ref(cand, i):
                return False
        return True

    def rec(k):
        if k == len(cells):
            out.append(SCellMap(X, Y, dict(assigned)))
            return
        c = cells[k]
        for cand in refs_by_dim[X.dim(c)]:
            assigned[c] = cand
            if consistent(c, cand):
                rec(k + 1)
        del assigned[c]

    rec(0)
    return out


# ---------------------------------------------------------------------------
# triangulation


def _strict_chains(n, lo=None, hi=None):
    """Strict monotone chains in ``{0,1}^n`` from ``lo`` to ``hi``.

    ``None`` endpoints mean unconstrained.  Chains are tuples of bit
    tuples, enumerated in a deterministic order.
    """
    verts = list(itertools.product((0, 1), repeat=n))

    def leq(a, b):
        return all(x <= y for x, y in zip(a, b))

    out = []

    def rec(chain):
        last = chain[-1]
        if hi is None or last == hi:
            out.append(tuple(chain))
        for v in verts:
            if v != last and leq(last, v):
                chain.append(v)
                rec(chain)
                chain.pop()

    starts = [lo] if lo is not None else verts
    for s in starts:
        rec([s])
    return out


class Triangulation:
    """The simplicial triangulation of a cubical set.

    ``sset`` is the simplicial set; ``simplices[s]`` is the pair
    ``(cubical cell, strict bottom-to-top chain)`` behind simplex ``s``;
    ``index`` inverts it.
    """

    def __init__(self, K):
        self.source = K
        simplices = []
        index = {}
        dims = []
        labels = []
        for n in range(K.dimension + 1):
            for c in K.cells(n):
                bot = (0,) * n
                top = (1,) * n
                for chain in _strict_chains(n, bot, top):
                    index[(c, chain)] = len(simplices)
                    simplices.append((c, chain))
                    dims.append(len(chain) - 1)
                    lab = K.label(c)
                    if lab is None:
                        labels.append(None)
                    elif n == 0:
                        labels.append(lab)
                    else:
                        labels.append(f"{lab}:" + "|".join(
                            "".join(map(str, v)) for v in chain))
        self.simplices = simplices
        self.index = index
        order = sorted(range(len(simplices)), key=lambda s: (dims[s], s))
        newid = {s: t for t, s in enumerate(order)}
        self.simplices = [simplices[s] for s in order]
        self.index = {k: newid[v] for k, v in index.items()}
        dims = [dims[s] for s in order]
        labels = [labels[s] for s in order]
        faces = []
        for s, (c, chain) in enumerate(self.simplices):
            row = []
            if len(chain) > 1:
                for i in range(len(chain)):
                    sub = chain[:i] + chain[i + 1:]
                    row.append(self.chain_ref(c, sub))
            faces.append(row)
        bp = None
        if K.basepoint is not None:
            bp = self.index[(K.basepoint, ((),) * 1)]
        self.sset = SimplicialSet(dims, faces, labels, bp)

    def chain_ref(self, c, chain):
        """Normalized simplicial reference of a weak chain over cell ``c``.

        ``chain`` is any monotone (possibly repeating) sequence of vertices
        of ``{0,1}^dim(c)``; the result is a reference into ``sset``.
        """
        K = self.source
        q = len(chain) - 1
        epi = list(range(q + 1))
        while True:
            keep = [chain[0]]
            coll = [0]
            for v in range(1, len(chain)):
                if chain[v] == chain[v - 1]:
                    coll.append(coll[-1])
                else:
                    keep.append(chain[v])
                    coll.append(coll[-1] + 1)
            chain = tuple(keep)
            epi = [coll[e] for e in epi]
            n = K.dim(c)
            const = None
            for a in range(n):
                vals = {v[a] for v in chain}
                if len(vals) == 1:
                    const = (a, vals.pop())
                    break
            if const is None:
                word = tuple(v for v in range(len(epi) - 1)
                             if epi[v] == epi[v + 1])
                return (self.index[(c, chain)], word)
            a, eps = const
            tgt, w = K.face(c, a + 1, eps)
            wset = set(w)
            chain = tuple(
                tuple(x for k, x in enumerate(v[:a] + v[a + 1:], start=1)
                      if k not in wset)
                for v in chain)
            c = tgt

    def to_dot(self, name="triangulation"):
        """DOT of the 2-skeleton; diagonal edges (spanning more than one
        cube axis) are dashed."""
        marked = set()
        for s in self.sset.cells(1):
            c, chain = self.simplices[s]
            if len(chain) == 2:
                dist = sum(1 for x, y in zip(chain[0], chain[1]) if x != y)
                if dist > 1:
                    marked.add(s)
        return self.sset.to_dot(marked_edges=marked, name=name)


def triangulate(K):
    return Triangulation(K)


# ---------------------------------------------------------------------------
# simplicial product (levelwise)


class SProductPair:
    def __init__(self, X, Y, complex_, pairs, index, proj_X, proj_Y):
        self.X = X
        self.Y = Y
        self.complex = complex_
        self.pairs = pairs
        self.index = index
        self.proj_X = proj_X
        self.proj_Y = proj_Y


def sproduct(X, Y):
    """The levelwise product of two simplicial sets (categorical product)."""
    top = X.dimension + Y.dimension
    pairs = []
    index = {}
    dims = []
    labels = []
    for n in range(top + 1):
        refsX = X.refs(n)
        refsY = Y.refs(n)
        for rA in refsX:
            wA = set(rA[1])
            for rB in refsY:
                if wA & set(rB[1]):
                    continue
                index[(rA, rB)] = len(pairs)
                dims.append(n)
                la, lb = X.label(rA[0]), Y.label(rB[0])
                labels.append(f"{la}|{lb}" if la is not None and lb is not None
                              else None)
                pairs.append((rA, rB))

    def normalize(rA, rB):
        common = tuple(sorted(set(rA[1]) & set(rB[1])))
        a = (rA[0], bm.word_strip(rA[1], common))
        b = (rB[0], bm.word_strip(rB[1], common))
        return (index[(a, b)], common)

    faces = []
    for c, (rA, rB) in enumerate(pairs):
        n = dims[c]
        faces.append([normalize(X.sface_ref(rA, i), Y.sface_ref(rB, i))
                      for i in range(n + 1)] if n else [])
    P = SimplicialSet(dims, faces, labels)
    if X.basepoint is not None and Y.basepoint is not None:
        P.basepoint = index[((X.basepoint, ()), (Y.basepoint, ()))]
    P.check()
    projX = SCellMap(P, X, {c: rA for c, (rA, rB) in enumerate(pairs)})
    projY = SCellMap(P, Y, {c: rB for c, (rA, rB) in enumerate(pairs)})
    return SProductPair(X, Y, P, pairs, index, projX, projY)


def triangulation_product_iso(K, L):
    """The chain-splitting isomorphism ``T(K (x) L) -> TK x TL``.

    Returns ``(T_of_tensor, product_pair, iso)``.
    """
    from .monoidal import tensor

    TP = tensor(K, L)
    T_KL = triangulate(TP.complex)
    TK = triangulate(K)
    TL = triangulate(L)
    SP = sproduct(TK.sset, TL.sset)
    mapping = {}
    for s, (cell, chain) in enumerate(T_KL.simplices):
        a, b = TP.pairs[cell]
        j = K.dim(a)
        chainA = tuple(v[:j] for v in chain)
        chainB = tuple(v[j:] for v in chain)
        rA = TK.chain_ref(a, chainA)
        rB = TL.chain_ref(b, chainB)
        common = tuple(sorted(set(rA[1]) & set(rB[1])))
        nA = (rA[0], bm.word_strip(rA[1], common))
        nB = (rB[0], bm.word_strip(rB[1], common))
        mapping[s] = (SP.index[(nA, nB)], common)
    iso = SCellMap(T_KL.sset, SP.complex, mapping)
    return T_KL, SP, iso


# ---------------------------------------------------------------------------
# the truncated cubical singular functor


def simplicial_cube(n):
    """The simplicial ``n``-cube: the nerve of the poset ``{0,1}^n``.

    Nondegenerate simplices are all strict chains; every face is again
    nondegenerate, so face words are always empty.
    """
    chains = sorted(_strict_chains(n), key=lambda ch: (len(ch), ch))
    index = {ch: s for s, ch in enumerate(chains)}
    dims = [len(ch) - 1 for ch in chains]
    faces = [[(index[ch[:i] + ch[i + 1:]], ()) for i in range(len(ch))]
             if len(ch) > 1 else [] for ch in chains]
    labels = ["|".join("".join(map(str, v)) for v in ch) for ch in chains]
    S = SimplicialSet(dims, faces, labels)
    S.chain_index = index
    S.chains = chains
    return S


@dataclass
class SingularCubical:
    """The cubical singular complex of a simplicial set, truncated.

    ``complex`` is the cubical set; ``tables[c]`` records, for each
    nondegenerate ``n``-cell ``c``, the simplicial map out of the
    simplicial ``n``-cube as a tuple of target references indexed by the
    canonical simplex order of :func:`simplicial_cube`.
    """
    complex: object
    tables: list
    cubes: dict


def _eval_weak(X, table, cube, weak_chain):
    """Value of a stored map on a weak chain: strip repeats, look up the
    strict part, then re-degenerate at the repeat positions."""
    keep = [weak_chain[0]]
    repeats = []
    for v in range(1, len(weak_chain)):
        if weak_chain[v] == weak_chain[v - 1]:
            repeats.append(v - 1)
        else:
            keep.append(weak_chain[v])
    c, w = table[cube.chain_index[tuple(keep)]]
    word = sword_compose(tuple(repeats), w, len(weak_chain) - 1)
    return (c, word)


def singular_cub(X, N, bound=None):
    """The cubical singular complex of ``X``, truncated at dimension ``N``.

    ``n``-cells are simplicial maps from the simplicial ``n``-cube to
    ``X``; faces precompose with cube facet inclusions; degeneracies are
    detected and normalized away.
    """
    from .cubical import CubicalSet

    cubes = {n: simplicial_cube(n) for n in range(N + 1)}
    maps_by_dim = {}
    for n in range(N + 1):
        maps = simplicial_maps(cubes[n], X, bound)
        tables = [tuple(f.mapping[s] for s in range(cubes[n].n_cells))
                  for f in maps]
        maps_by_dim[n] = sorted(tables)

    # classify tables: new nondegenerate cells get ids, while tables that
    # arise by degenerating a lower cell resolve to a reference over it
    cell_list = []
    table_ref = {}
    for n in range(N + 1):
        cube = cubes[n]
        deg = {}
        for cid, (p, base_table) in enumerate(cell_list):
            if p >= n:
                continue
            for word in itertools.combinations(range(1, n + 1), n - p):
                wset = set(word)
                tab = []
                for ch in cube.chains:
                    weak = tuple(
                        tuple(x for k, x in enumerate(v, start=1)
                              if k not in wset)
                        for v in ch)
                    tab.append(_eval_weak(X, base_table, cubes[p], weak))
                deg[tuple(tab)] = (cid, word)
        for table in maps_by_dim[n]:
            if table in deg:
                table_ref[(n, table)] = deg[table]
            else:
                cid = len(cell_list)
                cell_list.append((n, table))
                table_ref[(n, table)] = (cid, ())

    dims = [n for (n, _) in cell_list]
    faces = []
    for (n, table) in cell_list:
        cube = cubes[n]
        row = []
        for i in range(1, n + 1):
            for eps in (0, 1):
                sub = []
                for ch in cubes[n - 1].chains:
                    lifted = tuple(v[:i - 1] + (eps,) + v[i - 1:] for v in ch)
                    sub.append(table[cube.chain_index[lifted]])
                row.append(table_ref[(n - 1, tuple(sub))])
        faces.append(row)
    C = CubicalSet(dims, faces)
    C.check()
    return SingularCubical(C, [t for (_, t) in cell_list], cubes)


@dataclass
class AdjunctionReport:
    cubical_maps: int
    simplicial_maps: int
    agree: bool


def adjunction_check(K, X, bound=None):
    """Count cubical maps ``K -> S_cub(X)`` against simplicial ``TK -> X``.

    The two counts agree for every finite ``K`` and ``X`` (the functors are
    adjoint); the report records both numbers.
    """
    from .cubical import cubical_maps

    S = singular_cub(X, max(K.dimension, 0), bound)
    nc = len(cubical_maps(K, S.complex, bound))
    ns = len(simplicial_maps(triangulate(K).sset, X, bound))
    return AdjunctionReport(nc, ns, nc == ns)
