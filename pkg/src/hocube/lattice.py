"""Finite categories given by explicit composition tables.

A category here has named objects, named nonidentity morphisms, and a
composition table listing ``then . first`` for every composable pair.
``validate`` checks the quasi-lattice axioms (no self-maps, no cycles,
total associative table) and, when initial/final objects are designated,
the lattice axioms (unique maximal morphism, every object on a path from
``v_init`` to ``v_fin``).

Pointed categories carry an implicit zero object: every comparable pair
``u < v`` gets a reserved zero morphism whose id is ``"zero"``, and table
entries may name it.  Zero absorbs under composition.

The module also enumerates composable chains and (reduced) null
sequences, and computes the unpointed version: the category of formal
composition words of nonzero morphisms, modulo the relations whose three
participants are all nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import AxiomError, FormatError, InvariantError


class Morphism(NamedTuple):
    mid: str
    src: str
    dst: str
    zero: bool = False

    def __str__(self):
        return self.mid


@dataclass(frozen=True)
class MorphismChain:
    """A composable sequence of morphisms, stored in application order
    (``arrows[0]`` leaves the source).  Serialized target-first."""

    arrows: tuple

    def __post_init__(self):
        if not self.arrows:
            raise InvariantError("empty chain")
        for a, b in zip(self.arrows, self.arrows[1:]):
            if a.dst != b.src:
                raise InvariantError(f"chain break: {a.mid} then {b.mid}")

    def __len__(self):
        return len(self.arrows)

    @property
    def source(self):
        return self.arrows[0].src

    @property
    def target(self):
        return self.arrows[-1].dst

    def ids(self):
        """Morphism ids, listed from the target end (serialization order)."""
        return tuple(m.mid for m in reversed(self.arrows))

    def composite(self, C):
        return C.compose_chain(self.arrows)

    def adjacent_composites(self, C):
        return tuple(C.compose(a, b)
                     for a, b in zip(self.arrows, self.arrows[1:]))

    def is_null(self, C):
        return (self.composite(C).zero
                and not any(m.zero for m in self.arrows))

    def is_reduced(self, C):
        return (self.is_null(C)
                and all(m.zero for m in self.adjacent_composites(C)))

    def _key(self):
        return tuple((m.mid, m.src, m.dst) for m in reversed(self.arrows))


class FiniteCategory:
    """Validated composition-table category; build via :func:`validate`."""

    def __init__(self, objects, user_morphisms, table, pointed,
                 prec, v_init=None, v_fin=None, phi_max=None, length=None,
                 source=None):
        self.objects = list(objects)
        self.user_morphisms = list(user_morphisms)
        self.pointed = pointed
        self._prec = prec
        self.v_init = v_init
        self.v_fin = v_fin
        self.phi_max = phi_max
        self.length = length
        self._source = source

        self.zero_morphisms = []
        if pointed:
            for u in self.objects:
                for v in sorted(prec[u]):
                    self.zero_morphisms.append(Morphism("zero", u, v, True))
        self.morphisms = self.user_morphisms + self.zero_morphisms

        self._by_id = {m.mid: m for m in self.user_morphisms}
        self._zero = {(m.src, m.dst): m for m in self.zero_morphisms}
        self._hom = {}
        self._out = {u: [] for u in self.objects}
        for m in sorted(self.morphisms, key=lambda m: (m.zero, m.mid, m.dst)):
            self._hom.setdefault((m.src, m.dst), []).append(m)
            self._out[m.src].append(m)
        # resolve table entries to Morphism values
        self.table = {}
        for (a, b), c in table.items():
            f, g = self._by_id[a], self._by_id[b]
            self.table[(a, b)] = (self._zero[(f.src, g.dst)] if c == "zero"
                                  else self._by_id[c])

    @property
    def is_lattice(self):
        return self.v_init is not None

    def morphism(self, mid):
        try:
            return self._by_id[mid]
        except KeyError:
            raise FormatError(f"unknown morphism: {mid}", field="morphisms")

    def zero(self, u, v):
        try:
            return self._zero[(u, v)]
        except KeyError:
            raise InvariantError(f"no zero morphism {u} -> {v}")

    def prec(self, u, v):
        return v in self._prec[u]

    def homset(self, u, v):
        for x in (u, v):
            if x not in self._prec:
                raise FormatError(f"unknown object: {x}", field="objects")
        return list(self._hom.get((u, v), []))

    def compose(self, f, g):
        """Composite of ``f`` then ``g`` (i.e. g.f)."""
        if f.dst != g.src:
            raise InvariantError(f"not composable: {f.mid} then {g.mid}")
        if f.zero or g.zero:
            return self.zero(f.src, g.dst)
        try:
            return self.table[(f.mid, g.mid)]
        except KeyError:
            raise InvariantError(f"missing composite: ({f.mid}, {g.mid})")

    def compose_chain(self, arrows):
        total = arrows[0]
        for m in arrows[1:]:
            total = self.compose(total, m)
        return total

    def to_dict(self):
        return dict(self._source) if self._source else None


def _reachability(objects, morphisms):
    direct = {u: set() for u in objects}
    for m in morphisms:
        direct[m.src].add(m.dst)
    reach = {}
    for u in objects:
        seen = set()
        stack = list(direct[u])
        while stack:
            w = stack.pop()
            if w in seen:
                continue
            seen.add(w)
            stack.extend(direct[w])
        reach[u] = seen
    return reach


def validate(data):
    """Build a :class:`FiniteCategory` from the JSON dict format, checking
    the quasi-lattice (and, if designated, lattice) axioms.

    Raises :class:`FormatError` for structural problems and
    :class:`AxiomError` (with a ``report`` list) for axiom violations.
    """
    if not isinstance(data, dict):
        raise FormatError("category description must be an object")
    for key, typ in (("objects", list), ("morphisms", list)):
        if key not in data:
            raise FormatError(f"missing key: {key}", field=key)
        if not isinstance(data[key], typ):
            raise FormatError(f"{key} must be a list", field=key)
    objects = data["objects"]
    if not objects or not all(isinstance(o, str) for o in objects):
        raise FormatError("objects must be a nonempty list of strings",
                          field="objects")
    raw_mors = []
    for k, m in enumerate(data["morphisms"]):
        if not isinstance(m, dict) or not {"id", "src", "dst"} <= set(m):
            raise FormatError(f"morphisms[{k}] needs id/src/dst",
                              field="morphisms")
        if not all(isinstance(m[x], str) for x in ("id", "src", "dst")):
            raise FormatError(f"morphisms[{k}] fields must be strings",
                              field="morphisms")
        raw_mors.append((m["id"], m["src"], m["dst"]))
    raw_table = []
    for k, t in enumerate(data.get("compose", [])):
        if not isinstance(t, dict) or not {"first", "then", "equals"} <= set(t):
            raise FormatError(f"compose[{k}] needs first/then/equals",
                              field="compose")
        raw_table.append((t["first"], t["then"], t["equals"]))
    pointed = data.get("pointed", False)
    if not isinstance(pointed, bool):
        raise FormatError("pointed must be a boolean", field="pointed")
    v_init, v_fin = data.get("v_init"), data.get("v_fin")
    if (v_init is None) != (v_fin is None):
        raise FormatError("v_init and v_fin must be given together",
                          field="v_init")

    report = []
    if len(set(objects)) != len(objects):
        report.append("duplicate object names")
    seen_ids = set()
    morphisms = []
    for mid, src, dst in raw_mors:
        if mid == "zero":
            report.append('reserved id "zero" used for a morphism')
        if mid in seen_ids:
            report.append(f"duplicate morphism id: {mid}")
        seen_ids.add(mid)
        for x in (src, dst):
            if x not in objects:
                report.append(f"unknown object {x} in morphism {mid}")
        if src == dst:
            report.append(f"self-map: {mid}")
        morphisms.append(Morphism(mid, src, dst))
    if report:
        raise AxiomError("invalid category", report=report)

    by_id = {m.mid: m for m in morphisms}
    reach = _reachability(objects, morphisms)
    for u in objects:
        if u in reach[u]:
            report.append(f"cycle through object: {u}")
    if report:
        raise AxiomError("invalid category", report=report)

    table = {}
    for first, then, equals in raw_table:
        ok = True
        for mid in (first, then):
            if mid not in by_id:
                report.append(f"unknown morphism {mid} in table")
                ok = False
        if not ok:
            continue
        f, g = by_id[first], by_id[then]
        if f.dst != g.src:
            report.append(f"table pair not composable: ({first}, {then})")
            continue
        if equals == "zero":
            if not pointed:
                report.append(
                    f'"zero" composite ({first}, {then}) in unpointed category')
        elif equals not in by_id:
            report.append(f"unknown composite {equals} for ({first}, {then})")
        else:
            h = by_id[equals]
            if (h.src, h.dst) != (f.src, g.dst):
                report.append(
                    f"composite endpoints wrong: ({first}, {then}) = {equals}")
        if (first, then) in table:
            report.append(f"duplicate table entry: ({first}, {then})")
        table[(first, then)] = equals
    for f in morphisms:
        for g in morphisms:
            if f.dst == g.src and (f.mid, g.mid) not in table:
                report.append(f"missing table entry: ({f.mid}, {g.mid})")
    if report:
        raise AxiomError("invalid category", report=report)

    # associativity, with zero absorbing
    def comp(a, b):
        if a == "zero" or b == "zero":
            return "zero"
        return table[(a, b)]

    for f in morphisms:
        for g in morphisms:
            if f.dst != g.src:
                continue
            fg = table[(f.mid, g.mid)]
            for h in morphisms:
                if g.dst != h.src:
                    continue
                gh = table[(g.mid, h.mid)]
                if comp(fg, h.mid) != comp(f.mid, gh):
                    report.append(
                        f"associativity: ({f.mid}, {g.mid}, {h.mid})")
    if report:
        raise AxiomError("invalid category", report=report)

    phi_max = length = None
    if v_init is not None:
        for x in (v_init, v_fin):
            if x not in objects:
                report.append(f"unknown object: {x}")
        if v_init == v_fin:
            report.append("v_init equals v_fin")
        if report:
            raise AxiomError("invalid lattice", report=report)
        for w in objects:
            if w != v_init and w not in reach[v_init]:
                report.append(f"unreachable object: {w} (from v_init)")
            if w != v_fin and v_fin not in reach[w]:
                report.append(f"unreachable object: {w} (to v_fin)")
        direct = [m for m in morphisms
                  if (m.src, m.dst) == (v_init, v_fin)]
        if pointed:
            # the unique maximal morphism must be the zero map
            if v_fin not in reach[v_init]:
                report.append("v_fin not reachable from v_init")
            for m in direct:
                report.append(f"non-unique phi_max: {m.mid} besides zero")
        else:
            if len(direct) != 1:
                report.append(
                    f"non-unique phi_max: found {len(direct)} morphisms "
                    "v_init -> v_fin")
        if report:
            raise AxiomError("invalid lattice", report=report)

    C = FiniteCategory(objects, morphisms, table, pointed, reach,
                       v_init, v_fin, source=data)
    if v_init is not None:
        C.phi_max = (C.zero(v_init, v_fin) if pointed
                     else C.homset(v_init, v_fin)[0])
        C.length = max(len(ch) for ch in chains(C, v_init, v_fin))
    return C


def chains(C, u, v, exact_length=None, maximal=False, nonzero_only=False):
    """All composable sequences of morphisms from ``u`` to ``v``, in a
    deterministic (target-first lexicographic) order."""
    for x in (u, v):
        if x not in C._prec:
            raise FormatError(f"unknown object: {x}", field="objects")
    found = []

    def extend(here, arrows):
        if here == v and arrows:
            found.append(MorphismChain(tuple(arrows)))
        for m in C._out[here]:
            if nonzero_only and m.zero:
                continue
            if m.dst != v and v not in C._prec[m.dst]:
                continue
            arrows.append(m)
            extend(m.dst, arrows)
            arrows.pop()

    extend(u, [])
    if exact_length is not None:
        found = [c for c in found if len(c) == exact_length]
    if maximal and found:
        top = max(len(c) for c in found)
        found = [c for c in found if len(c) == top]
    found.sort(key=MorphismChain._key)
    return found


def null_sequences(C, reduced=False):
    """Maximal-length chains of nonzero morphisms from ``v_init`` to
    ``v_fin`` with zero total composite; ``reduced`` additionally requires
    every adjacent composite to vanish."""
    if not C.pointed:
        raise AxiomError("null sequences need a pointed lattice",
                         report=["category is not pointed"])
    if not C.is_lattice:
        raise AxiomError("null sequences need a designated lattice",
                         report=["v_init/v_fin missing"])
    out = [c for c in chains(C, C.v_init, C.v_fin,
                             exact_length=C.length, nonzero_only=True)
           if c.is_null(C)]
    if reduced:
        out = [c for c in out if c.is_reduced(C)]
    return out


def _word_universe(C):
    words = []

    def extend(word, here):
        for m in C._out[here]:
            if m.zero:
                continue
            words.append(word + (m,))
            extend(word + (m,), m.dst)

    for u in C.objects:
        extend((), u)
    return words


def unpointed_version(C):
    """The category of formal composition words of nonzero morphisms,
    modulo relations among nonzero composites; returns ``(Cprime, iota)``
    where ``iota`` maps each word-morphism id to its composite in ``C``."""
    if not C.pointed:
        raise AxiomError("unpointed version needs a pointed category",
                         report=["category is not pointed"])
    words = _word_universe(C)
    parent = {w: w for w in words}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for w in words:
        for i in range(len(w) - 1):
            h = C.compose(w[i], w[i + 1])
            if not h.zero:
                union(w, w[:i] + (h,) + w[i + 2:])

    classes = {}
    for w in words:
        classes.setdefault(find(w), []).append(w)

    def class_key(w):
        return (len(w), tuple(m.mid for m in reversed(w)))

    rep = {root: min(members, key=class_key)
           for root, members in classes.items()}

    def word_id(w):
        return w[0].mid if len(w) == 1 else "*".join(
            m.mid for m in reversed(w))

    ids = {root: word_id(r) for root, r in rep.items()}
    roots = sorted(rep, key=lambda root: class_key(rep[root]))
    mor_dicts = [{"id": ids[root], "src": rep[root][0].src,
                  "dst": rep[root][-1].dst} for root in roots]
    entries = []
    for ra in rep.values():
        for rb in rep.values():
            if ra[-1].dst == rb[0].src:
                entries.append({"first": word_id(ra), "then": word_id(rb),
                                "equals": ids[find(ra + rb)]})
    Cprime = validate({"objects": list(C.objects), "morphisms": mor_dicts,
                       "compose": entries, "pointed": False})
    iota = {ids[root]: C.compose_chain(r) for root, r in rep.items()}
    return Cprime, iota


def free_chain_lattice(n, pointed=True):
    """JSON-style description of the linear lattice with ``n`` generators
    ``phi{k}: v{k} -> v{k-1}``.  Pointed: all adjacent composites zero.
    Unpointed: the free category, with composite ``c{a}{b}: v{a} -> v{b}``
    for every jump of at least 2."""
    if n < 1:
        raise FormatError("need at least one generator")
    objects = [f"v{k}" for k in range(n, -1, -1)]

    def name(a, b):
        return f"phi{a}" if a - b == 1 else f"c{a}{b}"

    gens = [{"id": f"phi{k}", "src": f"v{k}", "dst": f"v{k-1}"}
            for k in range(n, 0, -1)]
    if pointed:
        compose = [{"first": f"phi{k+1}", "then": f"phi{k}", "equals": "zero"}
                   for k in range(n - 1, 0, -1)]
        return {"objects": objects, "morphisms": gens, "compose": compose,
                "pointed": True, "v_init": f"v{n}", "v_fin": "v0"}
    mors = gens + [{"id": name(a, b), "src": f"v{a}", "dst": f"v{b}"}
                   for a in range(n, 1, -1) for b in range(a - 2, -1, -1)]
    compose = [{"first": name(a, b), "then": name(b, c),
                "equals": name(a, c)}
               for a in range(n, 1, -1) for b in range(a - 1, 0, -1)
               for c in range(b - 1, -1, -1)]
    return {"objects": objects, "morphisms": mors, "compose": compose,
            "pointed": False, "v_init": f"v{n}", "v_fin": "v0"}
