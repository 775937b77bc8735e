"""Tensor and levelwise product of cubical sets, and the comparison map.

The tensor ``K (x) L`` concatenates cube axes: its nondegenerate ``n``-cells
are pairs ``(a, b)`` with ``dim a + dim b = n``, the first block of axes
running through ``a``.  The product ``K x L`` is the levelwise presheaf
product: its nondegenerate ``n``-cells are pairs of ``n``-dimensional
references with disjoint degeneracy words.  ``theta`` compares the two,
induced by the projections that collapse the complementary tensor factor.
"""

from __future__ import annotations

import itertools

from . import boxmaps as bm
from .cubical import CellMap, CubicalSet
from .errors import InvariantError


class TensorPair:
    """The tensor product together with its pairing data.

    ``pairs[c]`` is the ``(a, b)`` pair of factor cells behind cell ``c``;
    ``index`` inverts it.  ``proj_K`` and ``proj_L`` are the cubical maps
    collapsing the other factor.
    """

    def __init__(self, K, L, complex_, pairs, index, proj_K, proj_L):
        self.K = K
        self.L = L
        self.complex = complex_
        self.pairs = pairs
        self.index = index
        self.proj_K = proj_K
        self.proj_L = proj_L


def tensor(K, L):
    """The tensor product of two cubical sets as a :class:`TensorPair`."""
    dims = []
    labels = []
    pairs = []
    index = {}
    order = []
    for n in range(K.dimension + L.dimension + 1):
        for j in range(n + 1):
            for a in K.cells(j):
                for b in L.cells(n - j):
                    index[(a, b)] = len(order)
                    order.append((a, b))
                    dims.append(n)
                    pairs.append((a, b))
                    la, lb = K.label(a), L.label(b)
                    labels.append(f"{la}|{lb}" if la is not None and lb is not None
                                  else None)
    faces = []
    for (a, b) in order:
        j, k = K.dim(a), L.dim(b)
        row = []
        for i in range(1, j + k + 1):
            for eps in (0, 1):
                if i <= j:
                    fa, wa = K.face(a, i, eps)
                    row.append((index[(fa, b)], wa))
                else:
                    fb, wb = L.face(b, i - j, eps)
                    row.append((index[(a, fb)], tuple(w + j for w in wb)))
        faces.append(row)
    T = CubicalSet(dims, faces, labels)
    if K.basepoint is not None and L.basepoint is not None:
        T.basepoint = index[(K.basepoint, L.basepoint)]
    T.check()
    projK = CellMap(T, K, {
        c: (a, tuple(range(K.dim(a) + 1, K.dim(a) + L.dim(b) + 1)))
        for c, (a, b) in enumerate(pairs)})
    projL = CellMap(T, L, {
        c: (b, tuple(range(1, K.dim(a) + 1)))
        for c, (a, b) in enumerate(pairs)})
    return TensorPair(K, L, T, pairs, index, projK, projL)


def tensor_unit():
    from .cubical import point
    return point()


def left_unitor(K):
    """Isomorphism ``I^0 (x) K -> K``."""
    TP = tensor(tensor_unit(), K)
    return TP, CellMap(TP.complex, K,
                       {c: (b, ()) for c, (a, b) in enumerate(TP.pairs)})


def right_unitor(K):
    """Isomorphism ``K (x) I^0 -> K``."""
    TP = tensor(K, tensor_unit())
    return TP, CellMap(TP.complex, K,
                       {c: (a, ()) for c, (a, b) in enumerate(TP.pairs)})


def associator(K, L, M):
    """The isomorphism ``(K (x) L) (x) M -> K (x) (L (x) M)``.

    Returns ``(left, right, iso)`` where ``left`` and ``right`` are the two
    iterated :class:`TensorPair` structures and ``iso`` the relabelling
    cubical map between their complexes.
    """
    KL = tensor(K, L)
    left = tensor(KL.complex, M)
    LM = tensor(L, M)
    right = tensor(K, LM.complex)
    mapping = {}
    for c, (ab, m) in enumerate(left.pairs):
        a, b = KL.pairs[ab]
        mapping[c] = (right.index[(a, LM.index[(b, m)])], ())
    iso = CellMap(left.complex, right.complex, mapping)
    return left, right, iso


def tensor_symmetry(K, L):
    """Block-swap bijection ``K (x) L -> L (x) K`` with its axis permutations.

    There is no swap morphism in the cube category, so this is not a cubical
    map: each cell carries the axis permutation relating the two sides.
    Returns ``(TKL, TLK, bij, perms)`` where ``bij[c]`` is the matching cell
    and ``perms[c]`` maps axes of ``c`` to axes of ``bij[c]`` (1-based
    tuple: entry ``i-1`` is the image of axis ``i``).
    """
    TKL = tensor(K, L)
    TLK = tensor(L, K)
    bij = {}
    perms = {}
    for c, (a, b) in enumerate(TKL.pairs):
        j, k = K.dim(a), L.dim(b)
        bij[c] = TLK.index[(b, a)]
        perms[c] = tuple(list(range(k + 1, k + j + 1)) + list(range(1, k + 1)))
    return TKL, TLK, bij, perms


def induced_perm(perm, i):
    """Permutation induced on face axes when axis ``i`` is consumed."""
    n = len(perm)
    pi = perm[i - 1]
    out = []
    for x in range(1, n + 1):
        if x == i:
            continue
        y = perm[x - 1]
        out.append(y if y < pi else y - 1)
    return tuple(out)


def permute_word(word, perm):
    return tuple(sorted(perm[a - 1] for a in word))


# ---------------------------------------------------------------------------
# levelwise product


class ProductPair:
    """The levelwise product with its pairing data.

    ``pairs[c]`` is the pair of references ``(ref_K, ref_L)`` (equal
    dimension, disjoint degeneracy words) behind cell ``c``; ``index``
    inverts it; ``proj_K`` / ``proj_L`` are the projection maps.
    """

    def __init__(self, K, L, complex_, pairs, index, proj_K, proj_L):
        self.K = K
        self.L = L
        self.complex = complex_
        self.pairs = pairs
        self.index = index
        self.proj_K = proj_K
        self.proj_L = proj_L

    def normalize(self, refA, refB):
        """Normalized reference of an arbitrary same-dimension ref pair."""
        common = tuple(sorted(set(refA[1]) & set(refB[1])))
        a = (refA[0], bm.word_strip(refA[1], common))
        b = (refB[0], bm.word_strip(refB[1], common))
        return (self.index[(a, b)], common)


def product(K, L):
    """The levelwise product of two cubical sets as a :class:`ProductPair`."""
    top = K.dimension + L.dimension
    pairs = []
    index = {}
    dims = []
    labels = []
    for n in range(top + 1):
        refsK = K.refs(n)
        refsL = L.refs(n)
        for rA in refsK:
            wA = set(rA[1])
            for rB in refsL:
                if wA & set(rB[1]):
                    continue
                index[(rA, rB)] = len(pairs)
                dims.append(n)
                la, lb = K.label(rA[0]), L.label(rB[0])
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
        row = []
        for i in range(1, n + 1):
            for eps in (0, 1):
                fA = K.face_ref(rA, i, eps)
                fB = L.face_ref(rB, i, eps)
                row.append(normalize(fA, fB))
        faces.append(row)
    P = CubicalSet(dims, faces, labels)
    if K.basepoint is not None and L.basepoint is not None:
        P.basepoint = index[((K.basepoint, ()), (L.basepoint, ()))]
    P.check()
    projK = CellMap(P, K, {c: rA for c, (rA, rB) in enumerate(pairs)})
    projL = CellMap(P, L, {c: rB for c, (rA, rB) in enumerate(pairs)})
    return ProductPair(K, L, P, pairs, index, projK, projL)


# ---------------------------------------------------------------------------
# the comparison map


def theta(K, L, TP=None, PP=None):
    """The natural comparison ``K (x) L -> K x L``.

    Sends the tensor cell ``a (x) b`` to the pair of its projections.
    Returns ``(TP, PP, map)``; pass precomputed pairs to reuse them.
    """
    if TP is None:
        TP = tensor(K, L)
    if PP is None:
        PP = product(K, L)
    mapping = {}
    for c, (a, b) in enumerate(TP.pairs):
        j, k = K.dim(a), L.dim(b)
        refA = (a, tuple(range(j + 1, j + k + 1)))
        refB = (b, tuple(range(1, j + 1)))
        mapping[c] = (PP.index[(refA, refB)], ())
    return TP, PP, CellMap(TP.complex, PP.complex, mapping)
