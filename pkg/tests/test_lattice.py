import glob
import json
import os

import pytest

from hocube.errors import AxiomError, FormatError, InvariantError
from hocube.lattice import (FiniteCategory, Morphism, MorphismChain, chains,
                            free_chain_lattice, null_sequences,
                            unpointed_version, validate)

LATTICE_DIR = os.path.join(os.path.dirname(__file__), "..", "lattices")


def load(name):
    with open(os.path.join(LATTICE_DIR, name)) as fh:
        return json.load(fh)


def corpus():
    return sorted(glob.glob(os.path.join(LATTICE_DIR, "*.json")))


def test_corpus_all_validates():
    assert len(corpus()) >= 10
    for path in corpus():
        with open(path) as fh:
            C = validate(json.load(fh))
        assert isinstance(C, FiniteCategory)


def test_generator_matches_corpus_files():
    assert load("gamma3.json") == free_chain_lattice(3)
    assert load("gamma5.json") == free_chain_lattice(5)
    assert load("free_chain4.json") == free_chain_lattice(4, pointed=False)


def test_free_chain_lengths():
    for n in range(2, 6):
        C = validate(free_chain_lattice(n))
        assert C.length == n
        assert C.pointed
    for n in range(1, 6):
        F = validate(free_chain_lattice(n, pointed=False))
        assert F.length == n
        # free category on a chain: one morphism per object pair
        assert len(F.user_morphisms) == (n + 1) * n // 2


def test_pointed_single_arrow_chain_is_invalid():
    # n = 1 pointed: the generator would be a second maximal morphism
    with pytest.raises(AxiomError):
        validate(free_chain_lattice(1))


def test_homset_gamma3():
    C = validate(load("gamma3.json"))
    assert [m.mid for m in C.homset("v3", "v0")] == ["zero"]
    assert C.homset("v0", "v3") == []
    assert [m.mid for m in C.homset("v1", "v0")] == ["phi1", "zero"]
    with pytest.raises(FormatError):
        C.homset("v9", "v0")


def test_homset_square_free():
    C = validate(load("square_free.json"))
    assert [m.mid for m in C.homset("vi", "vf")] == ["phimax"]
    assert C.phi_max.mid == "phimax"
    assert C.length == 2


def test_zero_absorbs():
    C = validate(load("gamma3.json"))
    phi2 = C.morphism("phi2")
    z = C.zero("v3", "v2")
    assert C.compose(z, phi2).zero
    assert C.compose(z, phi2).src == "v3"
    assert C.compose(phi2, C.zero("v1", "v0")).zero
    with pytest.raises(InvariantError):
        C.compose(phi2, phi2)


def test_chains_gamma3():
    C = validate(load("gamma3.json"))
    nz = chains(C, "v3", "v0", exact_length=3, nonzero_only=True)
    assert len(nz) == 1
    assert nz[0].ids() == ("phi1", "phi2", "phi3")
    assert nz[0].source == "v3" and nz[0].target == "v0"
    assert chains(C, "v3", "v0", exact_length=4) == []
    # with zero constituents: 2 choices per slot
    assert len(chains(C, "v3", "v0", exact_length=3)) == 8
    assert len(chains(C, "v3", "v0", maximal=True)) == 8


def test_chains_commuting_square():
    C = validate(load("square_free.json"))
    two = chains(C, "vi", "vf", exact_length=2)
    assert len(two) == 2
    assert {c.arrows[0].mid for c in two} == {"phia", "phib"}
    assert all(c.composite(C).mid == "phimax" for c in two)


def test_chains_compose_into_homset():
    for path in corpus():
        with open(path) as fh:
            C = validate(json.load(fh))
        for u in C.objects:
            for v in C.objects:
                hom = {m for m in C.homset(u, v)}
                for c in chains(C, u, v):
                    assert c.composite(C) in hom


def test_null_sequences_gamma3():
    C = validate(load("gamma3.json"))
    J = null_sequences(C, reduced=True)
    assert [list(c.ids()) for c in J] == [["phi1", "phi2", "phi3"]]
    assert J[0].is_reduced(C)
    assert [c.ids() for c in null_sequences(C)] == [c.ids() for c in J]


def test_null_sequences_seminull_variant():
    C = validate(load("gamma3_seminull.json"))
    assert null_sequences(C, reduced=True) == []
    unred = null_sequences(C)
    assert len(unred) == 1
    assert not unred[0].is_reduced(C)
    adj = unred[0].adjacent_composites(C)
    assert [m.zero for m in adj] == [True, False]


def test_null_sequences_double_bracket():
    C = validate(load("doublebracket.json"))
    J = null_sequences(C, reduced=True)
    assert [list(c.ids()) for c in J] == [["phi1", "phi2", "phi3"],
                                          ["psi1", "psi2", "psi3"]]


def test_null_sequences_subset_chain():
    for path in corpus():
        with open(path) as fh:
            C = validate(json.load(fh))
        if not (C.pointed and C.is_lattice):
            continue
        red = {c.ids() for c in null_sequences(C, reduced=True)}
        unred = {c.ids() for c in null_sequences(C)}
        maximal = {c.ids() for c in chains(C, C.v_init, C.v_fin, maximal=True)}
        assert red <= unred <= maximal


def test_null_sequences_need_pointed_lattice():
    with pytest.raises(AxiomError):
        null_sequences(validate(load("square_free.json")))
    with pytest.raises(AxiomError):
        null_sequences(validate(load("nonzero_comp.json")))


def test_length_against_longest_path():
    # independent traversal: DP over the comparability DAG
    for path in corpus():
        with open(path) as fh:
            C = validate(json.load(fh))
        if not C.is_lattice:
            continue
        memo = {}

        def longest(u):
            if u == C.v_fin:
                return 0
            if u not in memo:
                memo[u] = max((1 + longest(v) for v in C.objects
                               if C.homset(u, v)
                               and (v == C.v_fin or C.prec(v, C.v_fin))),
                              default=-10**9)
            return memo[u]

        assert C.length == longest(C.v_init)


def test_unpointed_version_gamma3():
    C = validate(load("gamma3.json"))
    Cp, iota = unpointed_version(C)
    assert sorted(m.mid for m in Cp.user_morphisms) == [
        "phi1", "phi1*phi2", "phi1*phi2*phi3", "phi2", "phi2*phi3", "phi3"]
    hom = Cp.homset("v3", "v0")
    assert [m.mid for m in hom] == ["phi1*phi2*phi3"]
    assert iota["phi1*phi2*phi3"].zero
    assert iota["phi1"].mid == "phi1"


def test_unpointed_version_all_nonzero_is_inclusion():
    C = validate(load("nonzero_comp.json"))
    Cp, iota = unpointed_version(C)
    assert sorted(m.mid for m in Cp.user_morphisms) == ["f", "g", "h"]
    assert all(iota[m].mid == m for m in ("f", "g", "h"))
    assert Cp.compose(Cp.morphism("f"), Cp.morphism("g")).mid == "h"


def test_unpointed_version_surviving_relation():
    # the diamond identifies the 3-step word with the phib route
    C = validate(load("diamond.json"))
    Cp, _ = unpointed_version(C)
    assert len(Cp.homset("vi", "vf")) == 2


def test_unpointed_version_functorial():
    for name in ("gamma3.json", "gamma4_seminull.json", "diamond.json",
                 "doublebracket.json", "nonzero_comp.json"):
        C = validate(load(name))
        Cp, iota = unpointed_version(C)
        for x in Cp.user_morphisms:
            for y in Cp.user_morphisms:
                if x.dst != y.src:
                    continue
                xy = Cp.compose(x, y)
                assert iota[xy.mid] == C.compose(iota[x.mid], iota[y.mid])


def test_unpointed_version_needs_pointed():
    with pytest.raises(AxiomError):
        unpointed_version(validate(load("square_free.json")))


def test_validate_rejects_self_map():
    data = {"objects": ["u"], "morphisms": [
        {"id": "f", "src": "u", "dst": "u"}], "compose": []}
    with pytest.raises(AxiomError) as err:
        validate(data)
    assert any("self-map" in r for r in err.value.report)


def test_validate_rejects_cycle():
    data = {"objects": ["u", "v"],
            "morphisms": [{"id": "f", "src": "u", "dst": "v"},
                          {"id": "g", "src": "v", "dst": "u"}],
            "compose": []}
    with pytest.raises(AxiomError) as err:
        validate(data)
    assert any("cycle" in r for r in err.value.report)


def test_validate_rejects_missing_entry():
    data = {"objects": ["u", "a", "v"],
            "morphisms": [{"id": "f", "src": "u", "dst": "a"},
                          {"id": "g", "src": "a", "dst": "v"}],
            "compose": []}
    with pytest.raises(AxiomError) as err:
        validate(data)
    assert any("missing table entry: (f, g)" in r for r in err.value.report)


def test_validate_rejects_nonassociative_table():
    data = {"objects": ["u", "a", "b", "v"],
            "morphisms": [{"id": "f", "src": "u", "dst": "a"},
                          {"id": "g", "src": "a", "dst": "b"},
                          {"id": "h", "src": "b", "dst": "v"},
                          {"id": "fg", "src": "u", "dst": "b"},
                          {"id": "gh", "src": "a", "dst": "v"},
                          {"id": "x", "src": "u", "dst": "v"},
                          {"id": "y", "src": "u", "dst": "v"}],
            "compose": [{"first": "f", "then": "g", "equals": "fg"},
                        {"first": "g", "then": "h", "equals": "gh"},
                        {"first": "fg", "then": "h", "equals": "x"},
                        {"first": "f", "then": "gh", "equals": "y"}]}
    with pytest.raises(AxiomError) as err:
        validate(data)
    assert any("associativity: (f, g, h)" in r for r in err.value.report)


def test_validate_rejects_bad_lattices():
    base = {"objects": ["vi", "w", "vf"],
            "morphisms": [{"id": "f", "src": "vi", "dst": "vf"}],
            "compose": [], "v_init": "vi", "v_fin": "vf"}
    with pytest.raises(AxiomError) as err:
        validate(base)
    assert any("unreachable object: w" in r for r in err.value.report)

    two = {"objects": ["vi", "vf"],
           "morphisms": [{"id": "f", "src": "vi", "dst": "vf"},
                         {"id": "g", "src": "vi", "dst": "vf"}],
           "compose": [], "v_init": "vi", "v_fin": "vf"}
    with pytest.raises(AxiomError) as err:
        validate(two)
    assert any("non-unique phi_max" in r for r in err.value.report)

    pointed = {"objects": ["vi", "vf"],
               "morphisms": [{"id": "f", "src": "vi", "dst": "vf"}],
               "compose": [], "pointed": True,
               "v_init": "vi", "v_fin": "vf"}
    with pytest.raises(AxiomError) as err:
        validate(pointed)
    assert any("non-unique phi_max" in r for r in err.value.report)

    degenerate = {"objects": ["v"], "morphisms": [], "compose": [],
                  "v_init": "v", "v_fin": "v"}
    with pytest.raises(AxiomError):
        validate(degenerate)


def test_validate_rejects_reserved_and_duplicate_ids():
    data = {"objects": ["u", "v"],
            "morphisms": [{"id": "zero", "src": "u", "dst": "v"}],
            "compose": []}
    with pytest.raises(AxiomError) as err:
        validate(data)
    assert any("reserved" in r for r in err.value.report)

    data = {"objects": ["u", "v"],
            "morphisms": [{"id": "f", "src": "u", "dst": "v"},
                          {"id": "f", "src": "u", "dst": "v"}],
            "compose": []}
    with pytest.raises(AxiomError) as err:
        validate(data)
    assert any("duplicate morphism id" in r for r in err.value.report)


def test_validate_rejects_zero_composite_in_unpointed():
    data = {"objects": ["u", "a", "v"],
            "morphisms": [{"id": "f", "src": "u", "dst": "a"},
                          {"id": "g", "src": "a", "dst": "v"}],
            "compose": [{"first": "f", "then": "g", "equals": "zero"}]}
    with pytest.raises(AxiomError) as err:
        validate(data)
    assert any("unpointed" in r for r in err.value.report)


def test_validate_format_errors():
    with pytest.raises(FormatError):
        validate([])
    with pytest.raises(FormatError):
        validate({"objects": ["u"]})
    with pytest.raises(FormatError):
        validate({"objects": ["u"], "morphisms": [{"id": "f"}]})
    with pytest.raises(FormatError):
        validate({"objects": ["u"], "morphisms": [], "v_init": "u"})
    with pytest.raises(FormatError):
        validate({"objects": [], "morphisms": []})


def test_morphism_chain_api():
    C = validate(load("gamma3.json"))
    arrows = (C.morphism("phi3"), C.morphism("phi2"), C.morphism("phi1"))
    c = MorphismChain(arrows)
    assert len(c) == 3
    assert c.composite(C).zero
    assert c.is_null(C) and c.is_reduced(C)
    with pytest.raises(InvariantError):
        MorphismChain((C.morphism("phi1"), C.morphism("phi3")))
    with pytest.raises(InvariantError):
        MorphismChain(())


def test_zero_chain_is_not_null():
    C = validate(load("gamma3.json"))
    z = MorphismChain((C.zero("v3", "v1"), C.morphism("phi1")))
    assert z.composite(C).zero
    assert not z.is_null(C)


def test_roundtrip_to_dict():
    data = load("gamma4.json")
    assert validate(data).to_dict() == data
