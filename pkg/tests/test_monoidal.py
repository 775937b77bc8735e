import itertools

import pytest

from hocube import cubical as cub
from hocube import monoidal as mon
from hocube.homology import cubical_chains, homology_groups


def tensor_by_gluing(K, L):
    """Oracle: build the tensor as a quotient of disjoint standard cubes."""
    b = cub.CubicalBuilder()
    tops = {}
    facets = {}
    for a in K.cells():
        for bb in L.cells():
            n = K.dim(a) + L.dim(bb)
            cube = cub.standard_cube(n)
            ids = {c: b.add_cell(cube.dim(c)) for c in cube.cells()}
            for c in cube.cells():
                for i in range(1, cube.dim(c) + 1):
                    for eps in (0, 1):
                        t, w = cube.face(c, i, eps)
                        b.set_face(ids[c], i, eps, ids[t], w)
            top = cube.cells(n)[0]
            tops[(a, bb)] = ids[top]
            facets[(a, bb)] = {(i, eps): ids[cube.face(top, i, eps)[0]]
                               for i in range(1, n + 1) for eps in (0, 1)}
    M = b.build(check=False)
    tr = b.built_ids
    pairs = []
    for (a, bb), facet_map in facets.items():
        j = K.dim(a)
        for (i, eps), facet in facet_map.items():
            if i <= j:
                fa, wa = K.face(a, i, eps)
                other = (tr[tops[(fa, bb)]], wa)
            else:
                fb, wb = L.face(bb, i - j, eps)
                other = (tr[tops[(a, fb)]], tuple(w + j for w in wb))
            pairs.append(((tr[facet], ()), other))
    Q, _ = cub.quotient(M, pairs)
    return Q


def test_tensor_interval_interval_is_square():
    TP = mon.tensor(cub.standard_cube(1), cub.standard_cube(1))
    assert TP.complex.counts() == (4, 4, 1)
    TP.complex.check()
    H = homology_groups(cubical_chains(TP.complex))
    assert H == {0: "Z", 1: "0", 2: "0"}
    TP.proj_K.check()
    TP.proj_L.check()


def test_tensor_counts_interval_boundary_square():
    TP = mon.tensor(cub.standard_cube(1), cub.boundary_cube(2))
    assert TP.complex.counts() == (8, 12, 4)
    TP.complex.check()
    TP.proj_K.check()
    TP.proj_L.check()


def test_tensor_unit_isos():
    for K in (cub.standard_cube(2), cub.boundary_cube(2), cub.horn(2, 1, 1)):
        TPl, unitl = mon.left_unitor(K)
        assert unitl.is_iso()
        unitl.check()
        TPr, unitr = mon.right_unitor(K)
        assert unitr.is_iso()
        unitr.check()


def test_associator_is_cubical_iso():
    K = cub.standard_cube(1)
    L = cub.boundary_cube(2)
    M = cub.standard_cube(1)
    left, right, iso = mon.associator(K, L, M)
    assert iso.is_iso()
    iso.check()


def test_tensor_with_empty_slot_dims():
    pt = cub.point()
    TP = mon.tensor(pt, pt)
    assert TP.complex.counts() == (1,)


def test_tensor_cells_match_gluing_oracle():
    cases = [
        (cub.standard_cube(1), cub.standard_cube(1)),
        (cub.standard_cube(1), cub.boundary_cube(2)),
        (cub.boundary_cube(2), cub.standard_cube(1)),
        (cub.horn(2, 2, 0), cub.standard_cube(1)),
    ]
    for K, L in cases:
        TP = mon.tensor(K, L)
        glued = tensor_by_gluing(K, L)
        assert glued.counts() == TP.complex.counts()
        assert (homology_groups(cubical_chains(glued))
                == homology_groups(cubical_chains(TP.complex)))


def test_product_interval_interval_cells():
    PP = mon.product(cub.standard_cube(1), cub.standard_cube(1))
    assert PP.complex.counts() == (4, 5, 2)
    PP.complex.check()
    PP.proj_K.check()
    PP.proj_L.check()
    # the extra edge is the diagonal: both components nondegenerate
    e = PP.K.cells(1)[0]
    diag = [c for c, (rA, rB) in enumerate(PP.pairs)
            if PP.complex.dim(c) == 1 and rA == (e, ()) and rB == (e, ())]
    assert len(diag) == 1
    # the two squares are transposes of one another
    sq = [PP.pairs[c] for c in PP.complex.cells(2)]
    assert ((e, (1,)), (e, (2,))) in sq and ((e, (2,)), (e, (1,))) in sq


def test_product_homology_interval_interval():
    # the two shuffle squares share all four boundary edges, so their
    # difference is a 2-cycle: the product is a wedge of a circle (the
    # diagonal) and a 2-sphere
    PP = mon.product(cub.standard_cube(1), cub.standard_cube(1))
    H = homology_groups(cubical_chains(PP.complex))
    assert H == {0: "Z", 1: "Z", 2: "Z"}


def test_product_with_point_is_identity():
    for K in (cub.standard_cube(2), cub.boundary_cube(2)):
        PP = mon.product(K, cub.point())
        assert PP.complex.counts() == K.counts()
        assert PP.proj_K.is_iso()


def test_product_symmetry_levelwise():
    K, L = cub.standard_cube(1), cub.boundary_cube(2)
    P1 = mon.product(K, L)
    P2 = mon.product(L, K)
    swap = cub.CellMap(P1.complex, P2.complex,
                       {c: (P2.index[(rB, rA)], ())
                        for c, (rA, rB) in enumerate(P1.pairs)})
    assert swap.is_iso()
    swap.check()


def test_theta_is_natural():
    cases = [
        (cub.standard_cube(1), cub.standard_cube(1)),
        (cub.standard_cube(1), cub.boundary_cube(2)),
        (cub.horn(2, 1, 0), cub.standard_cube(1)),
    ]
    for K, L in cases:
        TP, PP, th = mon.theta(K, L)
        th.check()
        # compatible with the projections on both sides
        for c in TP.complex.cells():
            via_p = PP.proj_K.apply_ref(th.mapping[c])
            assert via_p == TP.proj_K.mapping[c]
            via_p = PP.proj_L.apply_ref(th.mapping[c])
            assert via_p == TP.proj_L.mapping[c]


def test_theta_injective_not_surjective():
    TP, PP, th = mon.theta(cub.standard_cube(1), cub.standard_cube(1))
    images = {th.mapping[c] for c in TP.complex.cells()}
    assert len(images) == TP.complex.n_cells
    assert all(w == () for _, w in images)
    # missed: the diagonal edge and the transposed shuffle square
    assert PP.complex.n_cells - len(images) == 2


def test_theta_square_image():
    # the square of the tensor lands on the shuffle square whose first
    # component depends on the first axis only
    K = cub.standard_cube(1)
    TP, PP, th = mon.theta(K, K)
    e = K.cells(1)[0]
    c = TP.index[(e, e)]
    img, word = th.mapping[c]
    assert word == ()
    assert PP.pairs[img] == ((e, (2,)), (e, (1,)))


def test_symmetry_bijection_face_equivariance():
    cases = [
        (cub.standard_cube(1), cub.standard_cube(1)),
        (cub.standard_cube(1), cub.boundary_cube(2)),
        (cub.standard_cube(2), cub.standard_cube(1)),
    ]
    for K, L in cases:
        TKL, TLK, bij, perms = mon.tensor_symmetry(K, L)
        assert len(set(bij.values())) == TKL.complex.n_cells
        for c in TKL.complex.cells():
            n = TKL.complex.dim(c)
            p = perms[c]
            for i in range(1, n + 1):
                for eps in (0, 1):
                    t, w = TKL.complex.face(c, i, eps)
                    t2, w2 = TLK.complex.face(bij[c], p[i - 1], eps)
                    assert t2 == bij[t]
                    assert w2 == mon.permute_word(w, mon.induced_perm(p, i))


def test_theta_commutes_with_switch_up_to_axis_permutation():
    # theta . switch equals (levelwise swap) . theta once the cube axes of
    # the product side are re-indexed by the block permutation
    K, L = cub.standard_cube(1), cub.boundary_cube(2)
    TKL, TLK, bij, perms = mon.tensor_symmetry(K, L)
    _, PKL, thKL = mon.theta(K, L, TP=TKL)
    _, PLK, thLK = mon.theta(L, K, TP=TLK)
    for c, (a, b) in enumerate(TKL.pairs):
        p = perms[c]
        img, w = thKL.mapping[c]
        assert w == ()
        rA, rB = PKL.pairs[img]
        swapped = ((rB[0], mon.permute_word(rB[1], p)),
                   (rA[0], mon.permute_word(rA[1], p)))
        img2, w2 = thLK.mapping[bij[c]]
        assert w2 == ()
        assert PLK.pairs[img2] == swapped
