"""Chain complexes and integral homology.

Boundary conventions:

* cubical:    ``d = sum_i (-1)^i (d_i^1 - d_i^0)`` on nondegenerate cells,
  with faces that land on degenerate references contributing zero;
* simplicial: ``d = sum_i (-1)^i d_i`` (vertices ``0..n``), degenerate faces
  again contributing zero.

Homology is computed over the integers via Smith normal form: free rank by
the rank formula, torsion from the invariant factors of the next boundary.
"""

from __future__ import annotations

from .errors import InvariantError
from .intmat import smith_normal_form


class ChainComplex:
    """A bounded chain complex of finitely generated free abelian groups.

    ``ranks`` maps degree to rank; ``boundaries[n]`` is the matrix of
    ``d_n : C_n -> C_{n-1}`` as a list of rows (``ranks[n-1] x ranks[n]``).
    Missing boundaries are zero.
    """

    def __init__(self, ranks, boundaries, check=True):
        self.ranks = {n: r for n, r in ranks.items() if r}
        self.boundaries = {n: [list(r) for r in mat]
                           for n, mat in boundaries.items()}
        if check:
            self.check()

    def degrees(self):
        return sorted(self.ranks)

    def rank(self, n):
        return self.ranks.get(n, 0)

    @property
    def top_degree(self):
        return max(self.ranks) if self.ranks else -1

    def boundary(self, n):
        """Matrix of ``d_n`` (rank(n-1) x rank(n)), zero-filled if absent."""
        mat = self.boundaries.get(n)
        rows, cols = self.rank(n - 1), self.rank(n)
        if mat is None:
            return [[0] * cols for _ in range(rows)]
        if len(mat) != rows or (rows and any(len(r) != cols for r in mat)):
            raise InvariantError(f"boundary {n} has wrong shape")
        return mat

    def check(self):
        for n in list(self.ranks):
            d_n = self.boundary(n)
            d_prev = self.boundary(n - 1)
            if not d_prev or not d_n:
                continue
            for row in _mul(d_prev, d_n):
                if any(row):
                    raise InvariantError(f"d_{n - 1} d_{n} != 0")

    def homology(self, n=None):
        """Homology groups: ``{n: (betti, torsion)}`` or a single pair.

        ``torsion`` is the tuple of invariant factors greater than 1.
        """
        if n is not None:
            return self._homology_at(n)
        degs = self.degrees()
        if not degs:
            return {}
        return {k: self._homology_at(k) for k in range(0, max(degs) + 1)}

    def _homology_at(self, n):
        c_n = self.rank(n)
        if c_n == 0:
            return (0, ())
        _, r_n = smith_normal_form(self.boundary(n)) if self.rank(n - 1) else ([], 0)
        inv, r_next = ([], 0)
        if self.rank(n + 1):
            inv, r_next = smith_normal_form(self.boundary(n + 1))
        betti = c_n - r_n - r_next
        torsion = tuple(d for d in inv if d > 1)
        return (betti, torsion)


def _mul(A, B):
    if not A or not B:
        return []
    n = len(B[0])
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(n)]
            for i in range(len(A))]


def homology_groups(C):
    """Readable summary: ``{n: "Z^b + Z/d + ..."}`` for every degree."""
    out = {}
    for n, (b, tors) in sorted(C.homology().items()):
        parts = []
        if b == 1:
            parts.append("Z")
        elif b > 1:
            parts.append(f"Z^{b}")
        parts.extend(f"Z/{d}" for d in tors)
        out[n] = " + ".join(parts) if parts else "0"
    return out


# ---------------------------------------------------------------------------
# chains of cubical and simplicial sets


def cubical_chains(K, check=True):
    """Normalized chain complex of a cubical set."""
    index = {}
    ranks = {}
    for c in K.cells():
        n = K.dim(c)
        index[c] = ranks.get(n, 0)
        ranks[n] = ranks.get(n, 0) + 1
    boundaries = {}
    for n in sorted(ranks):
        if n == 0 or ranks.get(n - 1, 0) == 0:
            continue
        mat = [[0] * ranks[n] for _ in range(ranks[n - 1])]
        for c in K.cells(n):
            col = index[c]
            for i in range(1, n + 1):
                sign = -1 if i % 2 else 1
                for eps, s in ((1, sign), (0, -sign)):
                    tgt, word = K.face(c, i, eps)
                    if not word:
                        mat[index[tgt]][col] += s
        boundaries[n] = mat
    return ChainComplex(ranks, boundaries, check=check)


def simplicial_chains(S, check=True):
    """Normalized chain complex of a simplicial set."""
    index = {}
    ranks = {}
    for c in S.cells():
        n = S.dim(c)
        index[c] = ranks.get(n, 0)
        ranks[n] = ranks.get(n, 0) + 1
    boundaries = {}
    for n in sorted(ranks):
        if n == 0 or ranks.get(n - 1, 0) == 0:
            continue
        mat = [[0] * ranks[n] for _ in range(ranks[n - 1])]
        for c in S.cells(n):
            col = index[c]
            for i in range(0, n + 1):
                tgt, word = S.face(c, i)
                if not word:
                    mat[index[tgt]][col] += -1 if i % 2 else 1
        boundaries[n] = mat
    return ChainComplex(ranks, boundaries, check=check)


def components(K):
    """Connected components via the 1-skeleton.

    Returns ``(root, comps)``: ``root[c]`` is a representative 0-cell for
    every cell ``c``, and ``comps`` lists the distinct representatives.
    """
    parent = {c: c for c in K.cells()}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra

    for c in K.cells():
        for i in range(1, K.dim(c) + 1):
            for eps in (0, 1):
                union(c, K.face(c, i, eps)[0])
    root = {c: find(c) for c in K.cells()}
    comps = sorted({find(c) for c in K.cells(0)})
    return root, comps
