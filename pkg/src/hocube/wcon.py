"""Cubical mapping complexes resolving a finite composition category.

``w_construction`` expands a finite category (explicit composition table, no
self-maps) into a diagram of cubical sets: the mapping complex between two
objects has one nondegenerate ``k``-cell per *word* — a composable chain of
morphisms split into tensor blocks at some of its gaps — with ``k`` the
number of free (unsplit) gaps.  A 0-face composes the two morphisms adjacent
to a free gap through the table; a 1-face splits the word there.  Word
concatenation induces the composition cell maps, and the total-composite
augmentation collapses every component onto the hom-set element it resolves.

``pointed_relative_model`` is the variant for pointed lattices: every word
containing a zero morphism is collapsed to a basepoint, and any axis whose
adjacent composite is nonzero is composed away, leaving the basepoint plus
the words of fully reduced chains.  ``obstruction_complexes`` and
``obstruction_domain`` extract the resulting cell bookkeeping: the reduced
maximal null words are the top cells of the main slot, and the union of
their boundaries is a wedge of spheres one dimension down.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cubical import CellMap, CubicalBuilder, CubicalSet, subcomplex
from .errors import AxiomError, InvariantError
from .homology import components, cubical_chains, homology_groups
from .lattice import MorphismChain, chains, null_sequences
from .monoidal import tensor


def _disp(m):
    # zero morphisms all share the id "zero"; keep labels unambiguous
    return f"0[{m.src},{m.dst}]" if m.zero else m.mid


@dataclass(frozen=True)
class WCell:
    """A word: a morphism chain with tensor splits at some gap indices.

    ``chain`` is in application order (``chain[0]`` leaves the source);
    ``splits`` is a set of gap indices ``1..N-1`` separating blocks.  Every
    free gap contributes one cube axis, in ascending gap order, so the
    dimension is ``N - 1 - len(splits)``.
    """

    chain: tuple
    splits: frozenset

    @property
    def dim(self):
        return len(self.chain) - 1 - len(self.splits)

    @property
    def source(self):
        return self.chain[0].src

    @property
    def target(self):
        return self.chain[-1].dst

    def gaps(self):
        """Free gaps in ascending order; the ``a``-th is cube axis ``a``."""
        return [g for g in range(1, len(self.chain)) if g not in self.splits]

    def blocks(self):
        """The tensor blocks as chains, in application order."""
        out, start = [], 0
        for g in sorted(self.splits) + [len(self.chain)]:
            out.append(MorphismChain(self.chain[start:g]))
            start = g
        return out

    def axis_block(self, a):
        """``(block index, local axis)`` of global axis ``a``."""
        g = self.gaps()[a - 1]
        bounds = [0] + sorted(self.splits)
        j = max(i for i, s in enumerate(bounds) if s < g)
        return j, g - bounds[j]

    @property
    def label(self):
        # blocks and the morphisms inside them read from the target end
        return "".join(
            "(" + " ".join(_disp(m) for m in reversed(b.arrows)) + ")"
            for b in reversed(self.blocks()))

    def composite(self, C):
        return MorphismChain(self.chain).composite(C)


def _compose_gap(C, w, g):
    ch = w.chain
    m = C.compose(ch[g - 1], ch[g])
    return WCell(ch[:g - 1] + (m,) + ch[g + 1:],
                 frozenset(s if s < g else s - 1 for s in w.splits))


def _split_gap(w, g):
    return WCell(w.chain, w.splits | {g})


@dataclass
class MappingComplex:
    """One slot of an enriched diagram: a cubical set whose nondegenerate
    cells are words (``cells[c]`` is ``None`` only for a basepoint)."""

    source: str
    target: str
    complex: CubicalSet
    cells: list
    index: dict

    def word(self, c):
        return self.cells[c]

    @property
    def basepoint(self):
        return self.complex.basepoint


def _word_subsets(ch):
    gaps = range(1, len(ch.arrows))
    for r in range(len(ch.arrows)):
        for s in itertools.combinations(gaps, r):
            yield WCell(tuple(ch.arrows), frozenset(s))


def _w_slot(C, u, v):
    words = [w for ch in chains(C, u, v) for w in _word_subsets(ch)]
    b = CubicalBuilder()
    ids = {w: b.add_cell(w.dim, w.label) for w in words}
    for w in words:
        for a, g in enumerate(w.gaps(), start=1):
            b.set_face(ids[w], a, 0, ids[_compose_gap(C, w, g)])
            b.set_face(ids[w], a, 1, ids[_split_gap(w, g)])
    K = b.build()
    cells = [None] * K.n_cells
    index = {}
    for w, c in ids.items():
        cells[b.built_ids[c]] = w
        index[w] = b.built_ids[c]
    return MappingComplex(u, v, K, cells, index)


def _pw_slot(C, u, v):
    words = [w for ch in chains(C, u, v, nonzero_only=True)
             if all(m.zero for m in ch.adjacent_composites(C))
             for w in _word_subsets(ch)]
    b = CubicalBuilder()
    bp = b.add_cell(0, "0")
    b.basepoint = bp
    ids = {w: b.add_cell(w.dim, w.label) for w in words}
    for w in words:
        for a, g in enumerate(w.gaps(), start=1):
            # the adjacent composite is zero, so the 0-face sits at the
            # basepoint, fully degenerate
            b.set_face(ids[w], a, 0, bp, tuple(range(1, w.dim)))
            b.set_face(ids[w], a, 1, ids[_split_gap(w, g)])
    K = b.build()
    cells = [None] * K.n_cells
    index = {}
    for w, c in ids.items():
        cells[b.built_ids[c]] = w
        index[w] = b.built_ids[c]
    return MappingComplex(u, v, K, cells, index)


@dataclass
class EnrichedDiagram:
    """Mapping complexes for every comparable pair plus composition maps.

    ``compositions[(u, w, v)]`` maps the tensor of the ``(u, w)`` and
    ``(w, v)`` slots into the ``(u, v)`` slot; ``tensors`` keeps the
    :class:`~hocube.monoidal.TensorPair` structures behind their sources.
    """

    category: object
    slots: dict
    pointed: bool = False
    compositions: dict = field(default_factory=dict)
    tensors: dict = field(default_factory=dict)

    def slot(self, u, v):
        if (u, v) in self.slots:
            return self.slots[(u, v)]
        # empty hom-set: the empty mapping complex
        return MappingComplex(u, v, CubicalSet([], []), [], {})

    def composition(self, u, w, v):
        return self.compositions[(u, w, v)]

    def census(self):
        return {f"{u}->{v}": list(M.complex.counts())
                for (u, v), M in sorted(self.slots.items())}

    def check(self):
        for M in self.slots.values():
            M.complex.check()
        for cm in self.compositions.values():
            cm.check()
        bad = _associativity_failures(self)
        if bad:
            raise AxiomError("composition maps are not associative", report=bad)

    def to_json(self):
        slots = {f"{u}->{v}": M.complex.to_json()
                 for (u, v), M in sorted(self.slots.items())}
        comps = {}
        for (u, w, v), cm in sorted(self.compositions.items()):
            TP = self.tensors[(u, w, v)]
            A, B, T = self.slots[(u, w)], self.slots[(w, v)], self.slots[(u, v)]
            comps[f"{u}*{w}*{v}"] = [
                {"first": A.complex.label(a), "second": B.complex.label(b),
                 "image": {"cell": T.complex.label(cm.mapping[c][0]),
                           "word": list(cm.mapping[c][1])}}
                for c, (a, b) in enumerate(TP.pairs)]
        return {"pointed": self.pointed, "slots": slots, "compositions": comps}


def tensor_map(TP_src, TP_dst, f, g):
    """The tensor ``f (x) g`` of two cell maps between tensor complexes."""
    mapping = {}
    for c, (a, b) in enumerate(TP_src.pairs):
        a2, wa = f.mapping[a]
        b2, wb = g.mapping[b]
        ja = f.source.dim(a)
        mapping[c] = (TP_dst.index[(a2, b2)], wa + tuple(ja + x for x in wb))
    return CellMap(TP_src.complex, TP_dst.complex, mapping)


def _identity_map(K):
    return CellMap(K, K, {c: (c, ()) for c in K.cells()})


def _image_ref(C, pointed, T, wa, wb):
    if wa is None or wb is None:
        d = (wa.dim if wa else 0) + (wb.dim if wb else 0)
        return (T.basepoint, tuple(range(1, d + 1)))
    n1 = len(wa.chain)
    if pointed:
        j = C.compose(wa.chain[-1], wb.chain[0])
        if not j.zero:
            # composing the junction keeps the word fully reduced: the new
            # neighbours absorb a zero adjacent composite on either side
            chain = wa.chain[:-1] + (j,) + wb.chain[1:]
            splits = wa.splits | {n1 - 1 + s for s in wb.splits}
            return (T.index[WCell(chain, frozenset(splits))], ())
    chain = wa.chain + wb.chain
    splits = wa.splits | {n1} | {n1 + s for s in wb.splits}
    return (T.index[WCell(chain, frozenset(splits))], ())


def _build_compositions(diag):
    C = diag.category
    keys = sorted(diag.slots)
    for (u, w) in keys:
        for (w2, v) in keys:
            if w2 != w:
                continue
            A, B = diag.slots[(u, w)], diag.slots[(w, v)]
            T = diag.slots[(u, v)]
            TP = tensor(A.complex, B.complex)
            mapping = {
                c: _image_ref(C, diag.pointed, T, A.cells[a], B.cells[b])
                for c, (a, b) in enumerate(TP.pairs)}
            diag.tensors[(u, w, v)] = TP
            diag.compositions[(u, w, v)] = CellMap(TP.complex, T.complex,
                                                   mapping)


def _associativity_failures(diag):
    slots, comp, tens = diag.slots, diag.compositions, diag.tensors
    bad = []
    for (u, w, x) in sorted(comp):
        for v in sorted({b for (a, b) in slots if a == x}):
            if (w, x, v) not in comp:
                continue
            A, Cc = slots[(u, w)], slots[(x, v)]
            TP_ab, TP_bc = tens[(u, w, x)], tens[(w, x, v)]
            left_src = tensor(TP_ab.complex, Cc.complex)
            right_src = tensor(A.complex, TP_bc.complex)
            left = comp[(u, x, v)].compose(
                tensor_map(left_src, tens[(u, x, v)], comp[(u, w, x)],
                           _identity_map(Cc.complex)))
            right = comp[(u, w, v)].compose(
                tensor_map(right_src, tens[(u, w, v)],
                           _identity_map(A.complex), comp[(w, x, v)]))
            for cell, (ab, c) in enumerate(left_src.pairs):
                a, b = TP_ab.pairs[ab]
                other = right_src.index[(a, TP_bc.index[(b, c)])]
                if left.mapping[cell] != right.mapping[other]:
                    bad.append(f"triple ({u},{w},{x},{v}) cell {cell}")
    return bad


def w_construction(C):
    """The word-resolution diagram of a validated finite category."""
    if any(m.src == m.dst for m in C.morphisms):
        raise AxiomError("category has self-maps; the word complexes "
                         "would be infinite")
    slots = {}
    for u in C.objects:
        for v in C.objects:
            if u != v and C.homset(u, v):
                slots[(u, v)] = _w_slot(C, u, v)
    diag = EnrichedDiagram(C, slots, pointed=False)
    _build_compositions(diag)
    return diag


def pointed_relative_model(C):
    """The basepointed diagram of fully reduced words of a pointed category.

    Equivalent to quotienting ``w_construction(C)`` slotwise: words with a
    zero constituent collapse to the basepoint, and a word with a nonzero
    adjacent composite at a free gap is identified with the degeneracy of
    its composed 0-face there (so only fully reduced chains survive).
    """
    if not C.pointed:
        raise AxiomError("pointed_relative_model needs a pointed category")
    slots = {}
    for u in C.objects:
        for v in C.objects:
            if u != v and C.homset(u, v):
                slots[(u, v)] = _pw_slot(C, u, v)
    diag = EnrichedDiagram(C, slots, pointed=True)
    _build_compositions(diag)
    return diag


def augmentation(diag):
    """Total-composite cell maps onto the discrete hom-set complexes.

    Returns ``{(u, v): CellMap}``; each map sends a word to the vertex of
    its composite, fully degenerately.
    """
    C = diag.category
    out = {}
    for (u, v), M in sorted(diag.slots.items()):
        hom = C.homset(u, v)
        disc = CubicalSet([0] * len(hom), [[] for _ in hom],
                          [_disp(m) for m in hom])
        vid = {m: i for i, m in enumerate(hom)}
        if diag.pointed:
            disc.basepoint = vid[C.zero(u, v)]
        mapping = {}
        for c, w in enumerate(M.cells):
            m = C.zero(u, v) if w is None else w.composite(C)
            mapping[c] = (vid[m], tuple(range(1, M.complex.dim(c) + 1)))
        out[(u, v)] = CellMap(M.complex, disc, mapping)
    return out


def pi0_report(diag, u, v):
    """Components of the ``(u, v)`` slot against the hom-set.

    Returns ``{component root: morphism}`` and raises
    :class:`InvariantError` unless components biject with ``Hom(u, v)``.
    """
    C = diag.category
    M = diag.slot(u, v)
    root, comps = components(M.complex)
    by_root = {r: set() for r in comps}
    for c in range(M.complex.n_cells):
        w = M.cells[c]
        m = C.zero(u, v) if w is None else w.composite(C)
        by_root[root[c]].add(m)
    for r, ms in by_root.items():
        if len(ms) != 1:
            raise InvariantError(
                f"component {r} of ({u},{v}) mixes composites {sorted(ms)}")
    achieved = {next(iter(ms)) for ms in by_root.values()}
    if achieved != set(C.homset(u, v)) or len(achieved) != len(comps):
        raise InvariantError(
            f"components of ({u},{v}) do not match the hom-set")
    return {r: next(iter(ms)) for r, ms in by_root.items()}


def slot_dot(M, name="mapping"):
    """DOT digraph of the 2-skeleton of a mapping complex.

    Edges run from the split end (1-face) to the composed end (0-face).
    """
    K = M.complex
    lines = [f"digraph {name} {{"]
    for v in K.cells(0):
        lab = K.label(v) if K.label(v) is not None else str(v)
        lines.append(f'  c{v} [label="{lab}"];')
    for e in K.cells(1):
        src = K.face(e, 1, 1)[0]
        tgt = K.face(e, 1, 0)[0]
        lines.append(f'  c{src} -> c{tgt} [label="{K.label(e)}"];')
    lines.append(f'  label="{len(K.cells(2))} squares in dimension 2";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# obstruction bookkeeping


def _sub_slot(M, gen):
    S, incl = subcomplex(M.complex, gen)
    cells = [M.cells[incl.mapping[c][0]] for c in range(S.n_cells)]
    index = {w: c for c, w in enumerate(cells) if w is not None}
    return MappingComplex(M.source, M.target, S, cells, index)


def _rebuilt(C, slots):
    diag = EnrichedDiagram(C, slots, pointed=True)
    _build_compositions(diag)
    return diag


@dataclass
class ObstructionComplexes:
    """Cell bookkeeping around the reduced maximal null words.

    ``w_rel`` is the pointed model; ``w_hat`` drops its top cells at the
    main slot (one per entry of ``j``); ``r`` keeps only the boundaries of
    those top cells there and bare basepoints elsewhere.  ``complement``
    lists the labels of the dropped cells and ``slot_iso`` records where
    ``w_hat`` agrees with ``w_rel`` cell for cell.
    """

    j: list
    unreduced: list
    w_rel: EnrichedDiagram
    w_hat: EnrichedDiagram
    r: EnrichedDiagram
    main: tuple
    complement: list
    slot_iso: dict


def obstruction_complexes(C):
    if not C.pointed or not C.is_lattice:
        raise AxiomError("obstruction bookkeeping needs a pointed lattice")
    if C.length < 2:
        raise AxiomError("lattice length below 2: no operation order")
    w_rel = pointed_relative_model(C)
    j = null_sequences(C, reduced=True)
    unreduced = [ch for ch in null_sequences(C) if not ch.is_reduced(C)]
    main = (C.v_init, C.v_fin)
    M = w_rel.slots[main]
    top = C.length - 1

    hat_slots = dict(w_rel.slots)
    hat_slots[main] = _sub_slot(
        M, [c for c in M.complex.cells() if M.complex.dim(c) < top])
    w_hat = _rebuilt(C, hat_slots)

    r_slots = {}
    for key, S in w_rel.slots.items():
        gen = [S.basepoint]
        if key == main:
            for ch in j:
                c = S.index[WCell(tuple(ch.arrows), frozenset())]
                gen.extend(t for t, _ in S.complex._faces[c])
        r_slots[key] = _sub_slot(S, gen)
    r = _rebuilt(C, r_slots)

    complement = [M.complex.label(c) for c in M.complex.cells(top)]
    want = {WCell(tuple(ch.arrows), frozenset()).label for ch in j}
    if set(complement) != want or len(complement) != len(j):
        raise InvariantError(
            "top cells of the main slot do not match the reduced null words")
    slot_iso = {}
    for key, S in w_rel.slots.items():
        H = w_hat.slots[key]
        slot_iso[key] = (H.complex.counts() == S.complex.counts()
                         and [H.complex.label(c) for c in H.complex.cells()]
                         == [S.complex.label(c) for c in S.complex.cells()])
    if any(not iso for key, iso in slot_iso.items() if key != main):
        raise InvariantError("cell mismatch away from the main slot")
    return ObstructionComplexes(j, unreduced, w_rel, w_hat, r, main,
                                complement, slot_iso)


def obstruction_domain(C):
    """The wedge the top obstruction lives on, with its homology summary.

    Returns ``(K, summary)``: the union of the boundaries of the reduced
    maximal null cells in the pointed model (their composed facets already
    sit at the basepoint) and ``homology_groups`` of its chains.
    """
    oc = obstruction_complexes(C)
    K = oc.r.slots[oc.main].complex
    return K, homology_groups(cubical_chains(K))
