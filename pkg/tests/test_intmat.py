import random

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_form as sympy_snf

from hocube import _snf_py, intmat


def sympy_invariants(rows):
    m = len(rows)
    n = len(rows[0]) if m else 0
    dm = DomainMatrix([[ZZ(x) for x in r] for r in rows], (m, n), ZZ)
    d = sympy_snf(dm).to_list()
    out = []
    for k in range(min(m, n)):
        v = int(d[k][k])
        if v:
            out.append(abs(v))
    return sorted(out, key=lambda v: (v != 1, v))


def random_matrix(rng, m, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def test_known_small_cases():
    assert intmat.smith_normal_form([[1, 1], [1, 1]]) == ([1], 1)
    assert intmat.smith_normal_form([[2]]) == ([2], 1)
    assert intmat.smith_normal_form([[0, 0], [0, 0]]) == ([], 0)
    assert intmat.smith_normal_form([]) == ([], 0)
    assert intmat.smith_normal_form([[2, 0], [0, 3]]) == ([1, 6], 2)


def test_divisibility_chain():
    rng = random.Random(5)
    for _ in range(200):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        diag, r = intmat.smith_normal_form(random_matrix(rng, m, n))
        assert r == len(diag)
        assert all(d > 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0


def test_against_sympy():
    rng = random.Random(6)
    for _ in range(150):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = random_matrix(rng, m, n)
        diag, r = intmat.smith_normal_form(rows)
        expect = sympy_invariants(rows)
        assert sorted(diag, key=lambda v: (v != 1, v)) == expect


def test_pure_and_compiled_agree():
    # the Smith form is canonical, so both backends must return exactly
    # the same invariants whatever pivot paths they take internally
    rng = random.Random(8)
    for _ in range(100):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        rows = random_matrix(rng, m, n, -30, 30)
        got = intmat.smith_normal_form(rows)
        assert tuple(got) == tuple(_snf_py.snf_diag(rows))


def test_big_integers_fall_back():
    rows = [[10 ** 30, 2], [3, 10 ** 25]]
    diag, r = intmat.smith_normal_form(rows)
    assert r == 2
    assert sorted(diag, key=lambda v: (v != 1, v)) == sympy_invariants(rows)


def test_transforms_certify():
    rng = random.Random(9)
    for _ in range(150):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = random_matrix(rng, m, n)
        diag, r, U, V = intmat.snf_with_transforms(rows)
        # U A V must be the diagonal matrix
        D = intmat.matmul(intmat.matmul(U, rows), V)
        for i in range(m):
            for j in range(n):
                want = diag[i] if i == j and i < r else 0
                assert D[i][j] == want
        # U and V are unimodular
        assert intmat.smith_normal_form(U) == ([1] * m, m)
        assert intmat.smith_normal_form(V) == ([1] * n, n)
        assert (diag, r) == intmat.smith_normal_form(rows)


def test_kernel_basis():
    rng = random.Random(10)
    for _ in range(100):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = random_matrix(rng, m, n)
        ker = intmat.kernel_basis(rows)
        _, r = intmat.smith_normal_form(rows)
        assert len(ker) == n - r
        for v in ker:
            assert all(x == 0 for x in intmat.matvec(rows, v))
        # kernel vectors are linearly independent over Z
        if ker:
            _, kr = intmat.smith_normal_form([list(col) for col in zip(*ker)])
            assert kr == len(ker)


def test_solve():
    rng = random.Random(12)
    for _ in range(150):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = random_matrix(rng, m, n)
        x0 = [rng.randint(-4, 4) for _ in range(n)]
        b = intmat.matvec(rows, x0)
        x = intmat.solve(rows, b)
        assert x is not None
        assert intmat.matvec(rows, x) == b
    # insolvable instance: 2x = 1
    assert intmat.solve([[2]], [1]) is None
    assert intmat.in_image([[2]], [4])


def test_solve_matrix():
    A = [[1, 0], [0, 2]]
    cols = [[1, 0], [0, 2]]
    X = intmat.solve_matrix(A, cols)
    assert X == [[1, 0], [0, 1]]
    assert intmat.solve_matrix(A, [[0, 1]]) is None
