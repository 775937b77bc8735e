# cython: language_level=3
"""Compiled Smith-normal-form kernel (diagonal part, int64).

Same pivoting strategy as ``_snf_py.snf_diag``.  All products are guarded:
if any operand leaves the safe range the kernel raises OverflowError and the
caller falls back to the arbitrary-precision implementation.
"""

import numpy as np

cdef long long GUARD = 1073741824          # 2**30: max |operand| in a product
cdef long long BIG = 2305843009213693952   # 2**61: max |entry| allowed at all


cdef inline long long _llabs(long long x):
    return -x if x < 0 else x


def snf_diag(rows):
    """Invariant factors and rank of an integer matrix (int64 fast path)."""
    cdef long long[:, ::1] A
    arr = np.array(rows, dtype=np.int64, copy=True)
    if arr.ndim != 2:
        arr = arr.reshape(len(rows), -1)
    A = arr
    cdef Py_ssize_t m = A.shape[0]
    cdef Py_ssize_t n = A.shape[1]
    cdef Py_ssize_t t = 0, i, j, k, pi, pj
    cdef long long a, pv, q, d, tmp
    cdef bint restart, bad
    while True:
        pi = -1
        pj = -1
        pv = 0
        for i in range(t, m):
            for j in range(t, n):
                a = A[i, j]
                if a != 0 and (pv == 0 or _llabs(a) < pv):
                    pi = i
                    pj = j
                    pv = _llabs(a)
                    if pv == 1:
                        break
            if pv == 1:
                break
        if pv == 0:
            break
        if pi != t:
            for j in range(n):
                tmp = A[t, j]; A[t, j] = A[pi, j]; A[pi, j] = tmp
        if pj != t:
            for i in range(m):
                tmp = A[i, t]; A[i, t] = A[i, pj]; A[i, pj] = tmp
        while True:
            restart = False
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    q = A[i, t] // A[t, t]
                    if q != 0:
                        if _llabs(q) > GUARD:
                            raise OverflowError("snf entry growth")
                        for j in range(t, n):
                            a = A[t, j]
                            if _llabs(a) > GUARD or _llabs(A[i, j]) > BIG:
                                raise OverflowError("snf entry growth")
                            A[i, j] = A[i, j] - q * a
                    if A[i, t] != 0:
                        for j in range(n):
                            tmp = A[t, j]; A[t, j] = A[i, j]; A[i, j] = tmp
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    q = A[t, j] // A[t, t]
                    if q != 0:
                        if _llabs(q) > GUARD:
                            raise OverflowError("snf entry growth")
                        for i in range(t, m):
                            a = A[i, t]
                            if _llabs(a) > GUARD or _llabs(A[i, j]) > BIG:
                                raise OverflowError("snf entry growth")
                            A[i, j] = A[i, j] - q * a
                    if A[t, j] != 0:
                        for i in range(m):
                            tmp = A[i, t]; A[i, t] = A[i, j]; A[i, j] = tmp
                        restart = True
                        break
            if restart:
                continue
            d = A[t, t]
            bad = False
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i, j] % d != 0:
                        for k in range(t, n):
                            if _llabs(A[t, k]) > BIG or _llabs(A[i, k]) > BIG:
                                raise OverflowError("snf entry growth")
                            A[t, k] = A[t, k] + A[i, k]
                        bad = True
                        break
                if bad:
                    break
            if not bad:
                break
        if A[t, t] < 0:
            for j in range(t, n):
                A[t, j] = -A[t, j]
        t += 1
    return [int(A[k, k]) for k in range(t)], int(t)
