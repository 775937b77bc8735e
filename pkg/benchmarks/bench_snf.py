"""Compare the compiled Smith-normal-form kernel against the pure fallback.

Times both implementations on the same matrices.  Two input families:

* boundary matrices of standard cubes -- sparse, entries +-1, exactly the
  shape of matrix every homology call produces; and
* dense random matrices, where exact elimination suffers genuine
  coefficient explosion and the compiled int64 kernel is expected to bail
  out to arbitrary precision.

Run as ``python3 benchmarks/bench_snf.py``.
"""

import random
import time

from hocube import _snf_py
from hocube.cubical import standard_cube
from hocube.homology import cubical_chains
from hocube.intmat import snf_backend

try:
    from hocube import _snf_cy
except ImportError:
    _snf_cy = None


def _best(fn, M, reps=3):
    out = None
    best = None
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn(M)
        dt = time.perf_counter() - t0
        if best is None or dt < best:
            best = dt
    return out, best


def bench_boundaries():
    print("boundary matrices of I^n (sparse, entries +-1)")
    print(f"{'matrix':>18} {'size':>9} {'pure':>9} {'compiled':>9} {'speedup':>8}")
    for n in (4, 5, 6, 7):
        C = cubical_chains(standard_cube(n), check=False)
        for k in (2, 3):
            M = C.boundary(k)
            if not M or not M[0]:
                continue
            shape = f"{len(M)}x{len(M[0])}"
            rp, tp = _best(_snf_py.snf_diag, M)
            if _snf_cy is None:
                print(f"{'d(I^%d) deg %d' % (n, k):>18} {shape:>9} {tp:8.4f}s {'n/a':>9}")
                continue
            rc, tc = _best(_snf_cy.snf_diag, M)
            assert rc == rp, f"backend disagreement on d(I^{n}) deg {k}"
            print(f"{'d(I^%d) deg %d' % (n, k):>18} {shape:>9} {tp:8.4f}s {tc:8.4f}s {tp / tc:7.1f}x")


def bench_dense():
    print()
    print("dense random matrices (span +-4): growth past int64 forces fallback")
    rng = random.Random(2024)
    for size in (12, 16, 20, 24):
        trials, overflowed = 20, 0
        tp_total = 0.0
        for _ in range(trials):
            M = [[rng.randint(-4, 4) for _ in range(size)] for _ in range(size)]
            t0 = time.perf_counter()
            _snf_py.snf_diag(M)
            tp_total += time.perf_counter() - t0
            if _snf_cy is not None:
                try:
                    _snf_cy.snf_diag(M)
                except OverflowError:
                    overflowed += 1
        print(f"  {size}x{size}: pure total {tp_total:.3f}s over {trials} matrices, "
              f"compiled overflowed on {overflowed}/{trials}")


def main():
    print(f"active backend for this interpreter: {snf_backend()}")
    if _snf_cy is None:
        print("compiled kernel not built; timing the pure fallback only")
    print()
    bench_boundaries()
    bench_dense()


if __name__ == "__main__":
    main()
