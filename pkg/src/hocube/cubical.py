"""Finite cubical sets in normalized (nondegenerate) form.

A complex stores only nondegenerate cells.  Every cell of dimension ``n`` has
``2n`` codimension-one faces, each recorded as a *reference*: a pair
``(cell, word)`` where ``word`` is the sorted tuple of axes along which the
nondegenerate ``cell`` is degenerated to reach dimension ``n-1``.  All other
structure maps are derived from these by the operator calculus in
:mod:`hocube.boxmaps`.

Cells are integers ``0..N-1``, ordered by dimension (ties broken by
construction order), so iteration is deterministic.
"""

from __future__ import annotations

import itertools
import json
from collections import deque

from . import boxmaps as bm
from .errors import AxiomError, FormatError, InvariantError


class CubicalSet:
    """A finite cubical set presented by nondegenerate cells and faces.

    Build with :class:`CubicalBuilder` or one of the constructors below
    (``standard_cube``, ``boundary_cube``, ``horn`` ...).
    """

    def __init__(self, dims, faces, labels=None, basepoint=None):
        self._dims = list(dims)
        self._faces = [list(f) for f in faces]
        self.labels = list(labels) if labels is not None else [None] * len(dims)
        self.basepoint = basepoint
        self._by_dim = {}
        for c, d in enumerate(self._dims):
            self._by_dim.setdefault(d, []).append(c)

    # -- basic queries -------------------------------------------------

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
        """Cell counts per dimension as a tuple, degree 0 upward."""
        if not self._dims:
            return ()
        top = self.dimension
        return tuple(len(self._by_dim.get(n, ())) for n in range(top + 1))

    def face(self, c, i, eps):
        """Stored face ``d_i^eps`` of cell ``c`` as a reference ``(cell, word)``."""
        n = self._dims[c]
        assert 1 <= i <= n and eps in (0, 1)
        return self._faces[c][2 * (i - 1) + eps]

    def label(self, c):
        return self.labels[c]

    def cell_by_label(self, lab):
        return self.labels.index(lab)

    # -- derived structure ---------------------------------------------

    def ref_dim(self, ref):
        c, word = ref
        return self._dims[c] + len(word)

    def apply(self, c, f, n):
        """Value of the operator ``f : I^n -> I^m`` on cell ``c`` (dim m).

        Returns a normalized reference.  Peels constants off ``f`` one at a
        time, resolving each through the stored face table.
        """
        while True:
            k = bm.first_const(f)
            if k is None:
                return (c, bm.unused_axes(f, n))
            eps = bm.const_eps(f[k])
            tgt, word = self.face(c, k + 1, eps)
            rest = f[:k] + f[k + 1:]
            m = self._dims[c] - 1
            f = bm.compose(rest, bm.deletion(m, word)) if word else rest
            c = tgt

    def ref_apply(self, ref, f, n):
        """Value of ``f : I^n -> I^m`` on the reference ``ref`` (dim m)."""
        c, word = ref
        if word:
            f = bm.compose(f, bm.deletion(self.ref_dim(ref), word))
        return self.apply(c, f, n)

    def face_ref(self, ref, i, eps):
        """Face ``d_i^eps`` of a reference, normalized."""
        c, word = ref
        kind, *rest = bm.face_in_word(word, i)
        if kind == "cancel":
            return (c, rest[0])
        inner, new_word = rest
        tgt, fword = self.face(c, inner, eps)
        return (tgt, bm.wcompose(new_word, fword))

    def degenerate_ref(self, ref, i):
        c, word = ref
        return (c, bm.word_insert(word, i))

    def refs(self, n):
        """All references of dimension ``n``, in deterministic order."""
        out = []
        for p in range(n, -1, -1):
            for c in self.cells(p):
                for word in itertools.combinations(range(1, n + 1), n - p):
                    out.append((c, word))
        return out

    # -- validation ----------------------------------------------------

    def check(self):
        """Verify the cubical face identities on every cell; raise on failure."""
        bad = []
        for c in range(self.n_cells):
            n = self._dims[c]
            if len(self._faces[c]) != 2 * n:
                bad.append(f"cell {c}: expected {2 * n} faces")
                continue
            for i in range(1, n + 1):
                for eps in (0, 1):
                    tgt, word = self.face(c, i, eps)
                    if self.ref_dim((tgt, word)) != n - 1:
                        bad.append(f"cell {c}: face ({i},{eps}) has wrong dimension")
            if n < 2:
                continue
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    for eps in (0, 1):
                        for dlt in (0, 1):
                            left = self.face_ref(self.face(c, j, dlt), i, eps)
                            right = self.face_ref(self.face(c, i, eps), j - 1, dlt)
                            if left != right:
                                bad.append(
                                    f"cell {c}: d_{i}^{eps} d_{j}^{dlt} != "
                                    f"d_{j - 1}^{dlt} d_{i}^{eps}"
                                )
        if bad:
            raise AxiomError("cubical identities fail", report=bad)

    # -- serialization -------------------------------------------------

    def to_json(self):
        cells = []
        for c in range(self.n_cells):
            entry = {"id": c, "dim": self._dims[c]}
            if self.labels[c] is not None:
                entry["label"] = self.labels[c]
            entry["faces"] = [
                {"i": i, "eps": eps, "cell": self.face(c, i, eps)[0],
                 "word": list(self.face(c, i, eps)[1])}
                for i in range(1, self._dims[c] + 1) for eps in (0, 1)
            ]
            cells.append(entry)
        out = {"cells": cells}
        if self.basepoint is not None:
            out["basepoint"] = self.basepoint
        return out

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "cells" not in data:
            raise FormatError("expected an object with a 'cells' list", field="cells")
        raw = data["cells"]
        if not isinstance(raw, list):
            raise FormatError("'cells' must be a list", field="cells")
        n_cells = len(raw)
        dims = [None] * n_cells
        labels = [None] * n_cells
        for entry in raw:
            if not isinstance(entry, dict) or "id" not in entry or "dim" not in entry:
                raise FormatError("cell entries need 'id' and 'dim'", field="cells")
            c = entry["id"]
            if not isinstance(c, int) or not (0 <= c < n_cells) or dims[c] is not None:
                raise FormatError(f"bad or duplicate cell id {c!r}", field="cells.id")
            if not isinstance(entry["dim"], int) or entry["dim"] < 0:
                raise FormatError(f"bad dimension for cell {c}", field="cells.dim")
            dims[c] = entry["dim"]
            labels[c] = entry.get("label")
        faces = [[None] * (2 * d) for d in dims]
        for entry in raw:
            c = entry["id"]
            n = dims[c]
            for fe in entry.get("faces", []):
                for key in ("i", "eps", "cell", "word"):
                    if key not in fe:
                        raise FormatError(f"face entry of cell {c} lacks {key!r}",
                                          field="cells.faces")
                i, eps, tgt, word = fe["i"], fe["eps"], fe["cell"], fe["word"]
                if not (isinstance(i, int) and 1 <= i <= n) or eps not in (0, 1):
                    raise FormatError(f"bad face slot ({i!r},{eps!r}) on cell {c}",
                                      field="cells.faces")
                if not (isinstance(tgt, int) and 0 <= tgt < n_cells):
                    raise FormatError(f"face target {tgt!r} out of range", field="cells.faces")
                if (not isinstance(word, list)
                        or any(not isinstance(a, int) for a in word)
                        or list(sorted(set(word))) != word
                        or dims[tgt] + len(word) != n - 1):
                    raise FormatError(f"bad degeneracy word {word!r} on cell {c}",
                                      field="cells.faces.word")
                faces[c][2 * (i - 1) + eps] = (tgt, tuple(word))
        for c in range(n_cells):
            if any(f is None for f in faces[c]):
                raise FormatError(f"cell {c} is missing face entries", field="cells.faces")
        bp = data.get("basepoint")
        if bp is not None and not (isinstance(bp, int) and 0 <= bp < n_cells and dims[bp] == 0):
            raise FormatError("basepoint must be the id of a 0-cell", field="basepoint")
        K = cls(dims, faces, labels, bp)
        K.check()
        return K

    def to_json_str(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")) + "\n"


class CubicalBuilder:
    """Incremental construction of a :class:`CubicalSet`."""

    def __init__(self):
        self._dims = []
        self._faces = []
        self._labels = []
        self.basepoint = None

    def add_cell(self, dim, label=None):
        c = len(self._dims)
        self._dims.append(dim)
        self._faces.append([None] * (2 * dim))
        self._labels.append(label)
        return c

    def set_face(self, c, i, eps, target, word=()):
        self._faces[c][2 * (i - 1) + eps] = (target, tuple(word))

    def build(self, check=True):
        """Finish the complex; ``self.built_ids`` maps builder ids to final ids."""
        order = sorted(range(len(self._dims)), key=lambda c: (self._dims[c], c))
        newid = {c: k for k, c in enumerate(order)}
        self.built_ids = newid
        dims = [self._dims[c] for c in order]
        labels = [self._labels[c] for c in order]
        faces = []
        for c in order:
            row = []
            for f in self._faces[c]:
                if f is None:
                    raise AxiomError(f"cell {c} has an unset face")
                row.append((newid[f[0]], f[1]))
            faces.append(row)
        bp = newid[self.basepoint] if self.basepoint is not None else None
        K = CubicalSet(dims, faces, labels, bp)
        if check:
            K.check()
        return K


class CellMap:
    """A map of cubical sets, stored on nondegenerate cells.

    ``mapping[c]`` is the reference in the target that the nondegenerate cell
    ``c`` of the source is sent to.
    """

    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)

    def __call__(self, c):
        return self.mapping[c]

    def apply_ref(self, ref):
        c, word = ref
        tgt, tword = self.mapping[c]
        return (tgt, bm.wcompose(word, tword))

    def check(self):
        """Verify naturality: the map commutes with every face operator."""
        bad = []
        for c in range(self.source.n_cells):
            n = self.source.dim(c)
            img = self.mapping.get(c)
            if img is None:
                bad.append(f"cell {c} has no image")
                continue
            if self.target.ref_dim(img) != n:
                bad.append(f"cell {c}: image dimension mismatch")
                continue
            for i in range(1, n + 1):
                for eps in (0, 1):
                    left = self.apply_ref(self.source.face(c, i, eps))
                    right = self.target.face_ref(img, i, eps)
                    if left != right:
                        bad.append(f"cell {c}: face ({i},{eps}) not preserved")
        if bad:
            raise AxiomError("not a cubical map", report=bad)

    def compose(self, other):
        """``self`` after ``other`` (``other`` maps into ``self.source``)."""
        assert other.target is self.source
        mapping = {c: self.apply_ref(other.mapping[c]) for c in other.mapping}
        return CellMap(other.source, self.target, mapping)

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


# ---------------------------------------------------------------------------
# standard complexes


def standard_cube(n):
    """The standard ``n``-cube: cells are words over {0,1,*}.

    A cell with ``k`` stars (free axes) has dimension ``k``; the ``(i,eps)``
    face fills the ``i``-th star with ``eps``.  Labels are the words
    themselves, e.g. ``"0*1"``; the unique top cell is ``"*" * n``.
    """
    b = CubicalBuilder()
    ids = {}
    for k in range(n + 1):
        for stars in itertools.combinations(range(n), k):
            starset = set(stars)
            for fill in itertools.product("01", repeat=n - k):
                it = iter(fill)
                tup = tuple("*" if p in starset else next(it) for p in range(n))
                ids[tup] = b.add_cell(k, "".join(tup) if n else "pt")
    for tup, c in ids.items():
        stars = [p for p, ch in enumerate(tup) if ch == "*"]
        for i, p in enumerate(stars, start=1):
            for eps in (0, 1):
                face = list(tup)
                face[p] = str(eps)
                b.set_face(c, i, eps, ids[tuple(face)])
    if n == 0:
        b.basepoint = 0
    return b.build()


def _subcomplex_of_cube(n, keep_top):
    """Subcomplex of the standard n-cube spanned by the cells in ``keep_top``."""
    K = standard_cube(n)
    return subcomplex(K, keep_top)[0]


def boundary_cube(n):
    """The boundary of the standard ``n``-cube (all cells except the top)."""
    K = standard_cube(n)
    top = K.cells(n)
    keep = [c for c in K.cells() if c not in top]
    return subcomplex(K, keep)[0]


def horn(n, i, eps):
    """The open box: boundary of the n-cube minus the open (i,eps)-facet."""
    K = standard_cube(n)
    sub, _ = subcomplex(K, [c for c in K.cells() if K.dim(c) < n])
    omit = None
    # the facet of the top cell at (i, eps): stars everywhere except slot i-1
    for c in sub.cells(n - 1):
        lab = sub.label(c)
        stars = [p for p, ch in enumerate(lab) if ch == "*"]
        filled = [p for p, ch in enumerate(lab) if ch != "*"]
        if len(filled) == 1 and lab[filled[0]] == str(eps):
            # facet with constant eps at position p corresponds to axis i
            # where i-1 = p counted among all positions
            if filled[0] == i - 1:
                omit = c
    assert omit is not None
    keep = [c for c in sub.cells() if c != omit]
    return subcomplex(sub, keep)[0]


def interval():
    return standard_cube(1)


def point():
    return standard_cube(0)


# ---------------------------------------------------------------------------
# subcomplexes, skeleta, disjoint unions


def subcomplex(K, cells):
    """The subcomplex generated by ``cells``; returns ``(S, inclusion)``.

    The inclusion is a :class:`CellMap` from ``S`` into ``K``.
    """
    keep = set()
    stack = list(cells)
    while stack:
        c = stack.pop()
        if c in keep:
            continue
        keep.add(c)
        for tgt, _ in K._faces[c]:
            if tgt not in keep:
                stack.append(tgt)
    order = sorted(keep, key=lambda c: (K.dim(c), c))
    newid = {c: k for k, c in enumerate(order)}
    dims = [K.dim(c) for c in order]
    labels = [K.label(c) for c in order]
    faces = [[(newid[t], w) for t, w in K._faces[c]] for c in order]
    bp = None
    if K.basepoint is not None and K.basepoint in keep:
        bp = newid[K.basepoint]
    S = CubicalSet(dims, faces, labels, bp)
    incl = CellMap(S, K, {newid[c]: (c, ()) for c in keep})
    return S, incl


def skeleton(K, n):
    """The ``n``-skeleton of ``K`` with its inclusion."""
    return subcomplex(K, [c for c in K.cells() if K.dim(c) <= n])


def disjoint_union(K, L):
    """Disjoint union; returns ``(M, inj_K, inj_L)``."""
    b = CubicalBuilder()
    mapK = {c: b.add_cell(K.dim(c), K.label(c)) for c in K.cells()}
    mapL = {c: b.add_cell(L.dim(c), L.label(c)) for c in L.cells()}
    for c in K.cells():
        for i in range(1, K.dim(c) + 1):
            for eps in (0, 1):
                t, w = K.face(c, i, eps)
                b.set_face(mapK[c], i, eps, mapK[t], w)
    for c in L.cells():
        for i in range(1, L.dim(c) + 1):
            for eps in (0, 1):
                t, w = L.face(c, i, eps)
                b.set_face(mapL[c], i, eps, mapL[t], w)
    if K.basepoint is not None:
        b.basepoint = mapK[K.basepoint]
    M = b.build(check=False)
    ids = b.built_ids
    injK = CellMap(K, M, {c: (ids[mapK[c]], ()) for c in K.cells()})
    injL = CellMap(L, M, {c: (ids[mapL[c]], ()) for c in L.cells()})
    return M, injK, injL


# ---------------------------------------------------------------------------
# quotients


def quotient(K, pairs):
    """Identify cells of ``K`` along ``pairs`` of references.

    ``pairs`` is an iterable of reference pairs ``((c, word), (c', word'))``
    of equal dimension.  Returns ``(Q, proj)`` with ``proj`` the projection
    :class:`CellMap` from ``K`` onto the quotient.

    The congruence is closed under faces.  Identifications that would force
    two *differently degenerate* references to coincide without being images
    of a common identification are rejected with :class:`InvariantError`
    (such presentations fall outside normalized form).
    """
    parent = list(range(K.n_cells))
    killed = {}

    def find(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def canon(ref):
        c, word = ref
        c = find(c)
        while c in killed:
            c2, w2 = killed[c]
            c2 = find(c2)
            word = bm.wcompose(word, w2)
            c = c2
        return (c, word)

    def stored_faces(c):
        n = K.dim(c)
        return [K.face(c, i, eps) for i in range(1, n + 1) for eps in (0, 1)]

    def ref_faces(ref):
        n = K.ref_dim(ref)
        return [K.face_ref(ref, i, eps) for i in range(1, n + 1) for eps in (0, 1)]

    q = deque()
    for r1, r2 in pairs:
        r1 = (r1, ()) if isinstance(r1, int) else (r1[0], tuple(r1[1]))
        r2 = (r2, ()) if isinstance(r2, int) else (r2[0], tuple(r2[1]))
        if K.ref_dim(r1) != K.ref_dim(r2):
            raise FormatError("identified references have different dimensions")
        q.append((r1, r2))

    pending = []
    while q:
        r1, r2 = q.popleft()
        r1, r2 = canon(r1), canon(r2)
        if r1 == r2:
            continue
        (c1, w1), (c2, w2) = r1, r2
        if not w1 and not w2:
            a, b = min(c1, c2), max(c1, c2)
            parent[b] = a
            for f1, f2 in zip(stored_faces(a), stored_faces(b)):
                q.append((f1, f2))
        elif w1 and w2:
            for f1, f2 in zip(ref_faces(r1), ref_faces(r2)):
                q.append((f1, f2))
            pending.append((r1, r2))
        else:
            live, dead = (c1, r2) if not w1 else (c2, r1)
            killed[live] = dead
            for f1, f2 in zip(stored_faces(live), ref_faces((live, ()))):
                # faces of the live cell must match faces of its replacement
                pass
            for f1, f2 in zip(stored_faces(live), ref_faces(dead)):
                q.append((f1, f2))

    for r1, r2 in pending:
        if canon(r1) != canon(r2):
            raise InvariantError(
                "identification forces two distinct degenerate references "
                f"to coincide: {r1} ~ {r2}")

    live = [c for c in range(K.n_cells) if find(c) == c and c not in killed]
    order = sorted(live, key=lambda c: (K.dim(c), c))
    newid = {c: k for k, c in enumerate(order)}

    def translate(ref):
        c, word = canon(ref)
        return (newid[c], word)

    dims = [K.dim(c) for c in order]
    labels = [K.label(c) for c in order]
    faces = [[translate(f) for f in K._faces[c]] for c in order]
    bp = None
    if K.basepoint is not None:
        bp = translate((K.basepoint, ()))[0]
    Q = CubicalSet(dims, faces, labels, bp)
    Q.check()
    proj = CellMap(K, Q, {c: translate((c, ())) for c in K.cells()})
    proj.check()
    return Q, proj


# ---------------------------------------------------------------------------
# maps between complexes


def cubical_maps(K, C, bound=None):
    """All cubical maps ``K -> C`` as :class:`CellMap` objects.

    Enumerates by backtracking over cells of ``K`` in dimension order.  With
    ``bound`` set, raises :class:`InvariantError` once the search would assign
    more than ``bound`` cells' worth of combined work (a safety valve for the
    adjunction checks).
    """
    cells = sorted(K.cells(), key=lambda c: (K.dim(c), c))
    refs_by_dim = {}
    for n in {K.dim(c) for c in cells}:
        refs_by_dim[n] = C.refs(n)
    if bound is not None and K.n_cells * max((len(v) for v in refs_by_dim.values()), default=0) > bound:
        raise InvariantError(f"map enumeration bound {bound} exceeded")
    assigned = {}
    out = []

    def sub_ref(ref):
        c, word = ref
        tgt, tword = assigned[c]
        return (tgt, bm.wcompose(word, tword))

    def consistent(c, cand):
        n = K.dim(c)
        for i in range(1, n + 1):
            for eps in (0, 1):
                want = sub_ref(K.face(c, i, eps))
                got = C.face_ref(cand, i, eps)
                if want != got:
                    return False
        return True

    def rec(k):
        if k == len(cells):
            out.append(CellMap(K, C, dict(assigned)))
            return
        c = cells[k]
        for cand in refs_by_dim[K.dim(c)]:
            assigned[c] = cand
            if consistent(c, cand):
                rec(k + 1)
        del assigned[c]

    rec(0)
    return out
