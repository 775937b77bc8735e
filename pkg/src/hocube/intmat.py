"""Integer matrix utilities: Smith normal form, kernels, solving.

Matrices are lists of rows of Python ints.  The diagonal-only Smith form —
the hot path for homology ranks and torsion — dispatches to the compiled
kernel when it was built and the entries fit in int64; everything else
(transforms, kernels, solving) runs in exact arbitrary precision.

Set ``HOCUBE_PURE_PYTHON=1`` to force the pure implementation.
"""

from __future__ import annotations

import os

from . import _snf_py

try:  # pragma: no cover - exercised via snf_backend()
    from . import _snf_cy
except ImportError:  # pragma: no cover
    _snf_cy = None

_FORCE_PURE = bool(os.environ.get("HOCUBE_PURE_PYTHON"))


def snf_backend():
    """Name of the backend the diagonal SNF will try first."""
    if _snf_cy is not None and not _FORCE_PURE:
        return "compiled"
    return "pure"


def smith_normal_form(rows):
    """Invariant factors and rank: ``(invariants, rank)``.

    ``invariants`` are the nonzero diagonal entries of the Smith form,
    positive, each dividing the next.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0 or n == 0:
        return [], 0
    if _snf_cy is not None and not _FORCE_PURE:
        try:
            return _snf_cy.snf_diag(rows)
        except OverflowError:
            pass
    return _snf_py.snf_diag(rows)


def rank(rows):
    return smith_normal_form(rows)[1]


# ---------------------------------------------------------------------------
# transform-tracking Smith form (always exact / pure)


def snf_with_transforms(rows):
    """Full Smith data ``(diag, rank, U, V)`` with ``U A V`` diagonal.

    ``U`` is ``m x m`` unimodular, ``V`` is ``n x n`` unimodular, and the
    product ``U A V`` has ``diag`` (positive, divisibility chain) on the
    leading diagonal and zeros elsewhere.
    """
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    t = 0
    while True:
        pi = pj = -1
        pv = 0
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (pv == 0 or -pv < a < pv):
                    pi, pj, pv = i, j, abs(a)
        if pv == 0:
            break
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            for row in V:
                row[t], row[pj] = row[pj], row[t]
        while True:
            restart = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        for j in range(n):
                            A[i][j] -= q * A[t][j]
                        for j in range(m):
                            U[i][j] -= q * U[t][j]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        U[t], U[i] = U[i], U[t]
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        for i in range(m):
                            A[i][j] -= q * A[i][t]
                        for i in range(n):
                            V[i][j] -= q * V[i][t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        for row in V:
                            row[t], row[j] = row[j], row[t]
                        restart = True
                        break
            if restart:
                continue
            d = A[t][t]
            bad = False
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % d:
                        for k in range(n):
                            A[t][k] += A[i][k]
                        for k in range(m):
                            U[t][k] += U[i][k]
                        bad = True
                        break
                if bad:
                    break
            if not bad:
                break
        if A[t][t] < 0:
            for j in range(n):
                A[t][j] = -A[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1
    diag = [A[k][k] for k in range(t)]
    return diag, t, U, V


def kernel_basis(rows, n_cols=None):
    """Basis (list of length-n vectors) of the integer kernel of ``A``."""
    m = len(rows)
    n = len(rows[0]) if m else (n_cols or 0)
    if n_cols is not None:
        n = n_cols
    if m == 0:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    _, r, _, V = snf_with_transforms(rows)
    return [[V[i][k] for i in range(n)] for k in range(r, n)]


def matvec(rows, x):
    return [sum(a * b for a, b in zip(row, x)) for row in rows]


def matmul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    n = len(B[0])
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(n)]
            for i in range(len(A))]


def solve(rows, b):
    """An integer solution ``x`` of ``A x = b``, or ``None``.

    ``rows`` may be empty (then ``b`` must be empty / zero).
    """
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    diag, r, U, V = snf_with_transforms(rows)
    y = matvec(U, b)
    xp = [0] * n
    for k in range(m):
        if k < r:
            if y[k] % diag[k]:
                return None
            if k < n:
                xp[k] = y[k] // diag[k]
        elif y[k]:
            return None
    return matvec(V, xp)


def solve_matrix(rows, B_cols):
    """Solve ``A x = b`` for each column in ``B_cols``; None if any fails."""
    out = []
    for b in B_cols:
        x = solve(rows, b)
        if x is None:
            return None
        out.append(x)
    return out


def in_image(rows, b):
    return solve(rows, b) is not None


def nonzero_columns(rows):
    if not rows:
        return []
    return [j for j in range(len(rows[0])) if any(r[j] for r in rows)]
