"""Pure-Python Smith normal form, diagonal part only.

Reference implementation over arbitrary-precision integers.  The compiled
kernel in ``_snf_cy`` mirrors this algorithm over int64 and defers to this
one (via OverflowError) when entries threaten to leave the safe range.

Algorithm: repeatedly pick the nonzero entry of smallest absolute value as
pivot, clear its row and column by division with remainder (swapping the
remainder into the pivot slot, which strictly shrinks it), then force the
pivot to divide the rest of the matrix before moving to the next diagonal
slot.
"""


def snf_diag(rows):
    """Invariant factors of an integer matrix.

    Returns ``(invariants, rank)`` where ``invariants`` is the list of
    nonzero diagonal entries of the Smith normal form, each positive and
    dividing the next.
    """
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    t = 0
    while True:
        pi = pj = -1
        pv = 0
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                a = Ai[j]
                if a and (pv == 0 or -pv < a < pv):
                    pi, pj, pv = i, j, abs(a)
                    if pv == 1:
                        break
            if pv == 1:
                break
        if pv == 0:
            break
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        while True:
            restart = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        Ai, At = A[i], A[t]
                        for j in range(t, n):
                            Ai[j] -= q * At[j]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        for i in range(t, m):
                            A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        restart = True
                        break
            if restart:
                continue
            d = A[t][t]
            bad = False
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % d:
                        At = A[t]
                        for k in range(t, n):
                            At[k] += Ai[k]
                        bad = True
                        break
                if bad:
                    break
            if not bad:
                break
        if A[t][t] < 0:
            for j in range(t, n):
                A[t][j] = -A[t][j]
        t += 1
    return [A[k][k] for k in range(t)], t
