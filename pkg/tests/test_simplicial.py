import math
import random

import pytest

from hocube import cubical as cub
from hocube import monoidal as mon
from hocube import simplicial as simp
from hocube.errors import AxiomError, InvariantError
from hocube.homology import (cubical_chains, homology_groups,
                             simplicial_chains)


def test_epi_tuple():
    assert simp.epi_tuple(2, ()) == (0, 1, 2)
    assert simp.epi_tuple(2, (0,)) == (0, 0, 1)
    assert simp.epi_tuple(3, (0, 2)) == (0, 0, 1, 1)


def test_sword_compose_against_tuples():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 6)
        outer = tuple(sorted(rng.sample(range(n), rng.randint(0, n))))
        rest = n - len(outer)
        inner = tuple(sorted(rng.sample(range(rest), rng.randint(0, rest))))
        got = simp.sword_compose(outer, inner, n)
        e1 = simp.epi_tuple(n, outer)
        e2 = simp.epi_tuple(rest, inner)
        comp = tuple(e2[v] for v in e1)
        assert simp.epi_tuple(n, got) == comp


def test_delta_counts():
    for n in range(5):
        D = simp.delta(n)
        D.check()
        assert D.counts() == tuple(math.comb(n + 1, k + 1) for k in range(n + 1))


def test_delta_homology():
    for n in range(4):
        H = simplicial_chains(simp.delta(n)).homology()
        assert H[0] == (1, ())
        assert all(v == (0, ()) for k, v in H.items() if k > 0)


def test_simplicial_cube_counts():
    assert simp.simplicial_cube(0).counts() == (1,)
    assert simp.simplicial_cube(1).counts() == (2, 1)
    assert simp.simplicial_cube(2).counts() == (4, 5, 2)
    C3 = simp.simplicial_cube(3)
    C3.check()
    assert C3.counts() == (8, 19, 18, 6)


def test_sapply_identities():
    D = simp.delta(2)
    top = D.cell_by_label("012")
    # vertex picking via a constant-ish monotone map
    v, w = D.sapply(top, (1,))
    assert D.label(v) == "1" and w == ()
    # a degenerate operator
    v, w = D.sapply(top, (0, 0, 2))
    assert D.label(v) == "02" and w == (0,)


def test_sface_ref_identities_random():
    rng = random.Random(29)
    D = simp.delta(3)
    refs = D.refs(3)
    for _ in range(300):
        ref = rng.choice(refs)
        i = rng.randint(0, 2)
        j = rng.randint(i + 1, 3)
        left = D.sface_ref(D.sface_ref(ref, j), i)
        right = D.sface_ref(D.sface_ref(ref, i), j - 1)
        assert left == right


def test_simplicial_maps_delta1():
    D1 = simp.delta(1)
    maps = simp.simplicial_maps(D1, D1)
    assert len(maps) == 3
    for f in maps:
        f.check()
    nondeg_images = [f for f in maps if f.mapping[D1.cell_by_label("01")][1] == ()]
    assert len(nondeg_images) == 1


def test_simplicial_maps_counts_delta2():
    D1, D2 = simp.delta(1), simp.delta(2)
    # monotone vertex maps [1] -> [2]: 6 of them
    assert len(simp.simplicial_maps(D1, D2)) == 6
    # and [2] -> [1]: 4
    assert len(simp.simplicial_maps(D2, D1)) == 4


def test_triangulate_cube_census():
    T = simp.triangulate(cub.standard_cube(2))
    T.sset.check()
    assert T.sset.counts() == (4, 5, 2)
    for n in range(1, 5):
        T = simp.triangulate(cub.standard_cube(n))
        assert len(T.sset.cells(n)) == math.factorial(n)


def test_triangulate_preserves_homology():
    I = cub.standard_cube(1)
    v0, v1 = I.cell_by_label("0"), I.cell_by_label("1")
    circle, _ = cub.quotient(I, [((v0, ()), (v1, ()))])
    cases = [cub.standard_cube(2), cub.boundary_cube(2), cub.boundary_cube(3),
             cub.horn(2, 1, 0), circle]
    for K in cases:
        T = simp.triangulate(K)
        T.sset.check()
        assert (homology_groups(cubical_chains(K))
                == homology_groups(simplicial_chains(T.sset)))


def test_triangulation_chain_ref_weak_chains():
    K = cub.standard_cube(2)
    T = simp.triangulate(K)
    top = K.cells(2)[0]
    # a weak chain with a repeat normalizes to a degenerate reference
    ref = T.chain_ref(top, ((0, 0), (0, 0), (1, 1)))
    assert T.sset.ref_dim(ref) == 2
    assert ref[1] == (0,)
    # a chain constant on an axis factors through the face
    ref = T.chain_ref(top, ((0, 0), (0, 1)))
    cell, word = ref
    assert word == ()
    c, chain = T.simplices[cell]
    assert K.label(c) == "0*"


def test_triangulation_product_iso():
    cases = [
        (cub.standard_cube(1), cub.standard_cube(1)),
        (cub.standard_cube(1), cub.boundary_cube(2)),
        (cub.horn(2, 1, 0), cub.standard_cube(1)),
        (cub.standard_cube(2), cub.standard_cube(1)),
    ]
    for K, L in cases:
        T_KL, SP, iso = simp.triangulation_product_iso(K, L)
        iso.check()
        assert iso.is_iso()


def test_sproduct_of_deltas():
    D1 = simp.delta(1)
    SP = simp.sproduct(D1, D1)
    SP.complex.check()
    assert SP.complex.counts() == (4, 5, 2)
    SP.proj_X.check()
    SP.proj_Y.check()
    H = simplicial_chains(SP.complex).homology()
    assert H[0] == (1, ()) and H[1] == (0, ()) and H[2] == (0, ())


def test_sproduct_matches_triangulated_square():
    # Delta[1] x Delta[1] is the triangulated square
    D1 = simp.delta(1)
    SP = simp.sproduct(D1, D1)
    T = simp.triangulate(cub.standard_cube(2))
    assert SP.complex.counts() == T.sset.counts()


def test_singular_cub_of_delta1():
    D1 = simp.delta(1)
    S = simp.singular_cub(D1, 1)
    assert S.complex.counts() == (2, 1)
    # at the next level the monotone min and max maps {0,1}^2 -> {0,1}
    # appear: they factor through neither axis projection, so the nerve of
    # [1] has two nondegenerate singular squares
    S = simp.singular_cub(D1, 2)
    S.complex.check()
    assert S.complex.counts() == (2, 1, 2)


def test_singular_cub_of_delta2():
    D2 = simp.delta(2)
    S = simp.singular_cub(D2, 2)
    S.complex.check()
    counts = S.complex.counts()
    assert counts[0] == 3 and counts[1] == 3
    # degrees below the truncation stay correct; the top degree carries
    # unkilled cycles, which is the expected truncation artifact
    H = cubical_chains(S.complex).homology()
    assert H[0] == (1, ()) and H[1] == (0, ())


def test_adjunction_counts():
    D1 = simp.delta(1)
    rep = simp.adjunction_check(cub.standard_cube(1), D1)
    assert (rep.cubical_maps, rep.simplicial_maps) == (3, 3)
    assert rep.agree


def test_adjunction_more_pairs():
    pairs = [
        (cub.standard_cube(0), simp.delta(1)),
        (cub.standard_cube(1), simp.delta(2)),
        (cub.boundary_cube(2), simp.delta(1)),
        (cub.horn(2, 2, 1), simp.delta(1)),
    ]
    for K, X in pairs:
        rep = simp.adjunction_check(K, X)
        assert rep.agree, (K.counts(), X.counts(), rep)


def test_adjunction_bound():
    with pytest.raises(InvariantError):
        simp.adjunction_check(cub.standard_cube(2), simp.delta(2), bound=10)


def test_to_dot_marks_diagonals():
    T = simp.triangulate(cub.standard_cube(2))
    dot = T.to_dot()
    assert dot.count("style=dashed") == 1
    assert "digraph" in dot


def test_scellmap_rejects_bad():
    D1 = simp.delta(1)
    e = D1.cell_by_label("01")
    v0, v1 = D1.cell_by_label("0"), D1.cell_by_label("1")
    bad = simp.SCellMap(D1, D1, {v0: (v0, ()), v1: (v0, ()), e: (e, ())})
    with pytest.raises(AxiomError):
        bad.check()
