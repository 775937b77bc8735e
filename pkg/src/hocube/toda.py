"""Toda-style brackets for three consecutive chain maps.

A diagram packages chain complexes ``C3 -> C2 -> C1 -> C0`` with chain maps
``h, g, f`` and chosen nullhomotopies ``H`` (witnessing ``g.h ~ 0``) and ``G``
(witnessing ``f.g ~ 0``).  The combination ``f.H - G.h`` is then a degree ``+1``
cycle of the mapping complex ``Hom(C3, C0)`` under the differential

    D(phi) = d . phi - (-1)^{|phi|} phi . d,

and its homology class, read modulo the subgroup swept out by re-choosing the
two homotopies, is the bracket the evaluator reports.  Coefficients are the
integers by default; a flag switches everything to arithmetic mod 2.

Matrices are lists of rows; graded maps are dicts ``degree -> matrix`` with
missing degrees meaning zero, matching the chain-complex conventions used by
the homology routines.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AxiomError, FormatError, InvariantError
from .homology import ChainComplex
from .intmat import kernel_basis, matmul, snf_with_transforms, solve, solve_matrix

_NAMES = ("C3", "C2", "C1", "C0")


# ---------------------------------------------------------------------------
# small matrix helpers (integer or mod-2 according to the diagram flag)


def _zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def _mm(A, B, mod2):
    C = matmul(A, B)
    if mod2:
        return [[x & 1 for x in row] for row in C]
    return C


def _msub(A, B, mod2):
    if mod2:
        return [[(x + y) & 1 for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def _madd(A, B, mod2):
    if mod2:
        return _msub(A, B, True)
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def _is_zero(A):
    return all(not x for row in A for x in row)


def _shaped(M, rows, cols):
    """Zero-pad a product back to ``rows x cols``.

    Composites through a rank-zero degree come out of ``matmul`` with the
    column count lost; the true composite is the zero matrix of the stated
    shape.
    """
    if len(M) == rows and all(len(r) == cols for r in M):
        return M
    out = _zeros(rows, cols)
    for i, row in enumerate(M):
        for j, x in enumerate(row):
            out[i][j] = x
    return out


# ---------------------------------------------------------------------------
# GF(2) linear algebra (the integer case goes through intmat)


def _g2_rref(rows, ncols):
    """Row-reduce over GF(2); returns (reduced_rows, pivot_columns)."""
    mat = [[x & 1 for x in row] for row in rows if any(x & 1 for x in row)]
    pivots = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                mat[i] = [(a + b) & 1 for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    return mat[:r], pivots


def _g2_kernel(rows, ncols):
    red, pivots = _g2_rref(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        v = [0] * ncols
        v[j] = 1
        for i, p in enumerate(pivots):
            v[p] = red[i][j]
        basis.append(v)
    return basis


def _g2_solve(rows, b, ncols):
    aug = [list(row) + [bi & 1] for row, bi in zip(rows, b)]
    red, pivots = _g2_rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return x


def _g2_reduce_mod(span_rows, v):
    """Canonical coset representative of ``v`` modulo the row span."""
    red, pivots = _g2_rref(span_rows, len(v))
    v = [x & 1 for x in v]
    for row, p in zip(red, pivots):
        if v[p]:
            v = [(a + b) & 1 for a, b in zip(v, row)]
    return v


# ---------------------------------------------------------------------------
# diagram


@dataclass
class ChainDiagram:
    """Three composable chain maps with nullhomotopies for both composites.

    ``h: C3 -> C2``, ``g: C2 -> C1``, ``f: C1 -> C0`` are degree-0 chain
    maps; ``H: C3 -> C1`` and ``G: C2 -> C0`` have degree ``+1`` and satisfy
    ``d.H + H.d = g.h`` and ``d.G + G.d = f.g``.  ``mod2`` switches all
    arithmetic (including the validation identities) to GF(2).
    """

    c3: ChainComplex
    c2: ChainComplex
    c1: ChainComplex
    c0: ChainComplex
    h: dict
    g: dict
    f: dict
    H: dict
    G: dict
    mod2: bool = False

    def complexes(self):
        return {"C3": self.c3, "C2": self.c2, "C1": self.c1, "C0": self.c0}

    # -- construction -------------------------------------------------------

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise FormatError("diagram must be an object")
        coeff = data.get("coefficients", "Z")
        if coeff not in ("Z", "mod2"):
            raise FormatError("coefficients must be 'Z' or 'mod2'",
                              field="coefficients")
        mod2 = coeff == "mod2"
        comps = data.get("complexes")
        if not isinstance(comps, dict):
            raise FormatError("missing complexes object", field="complexes")
        built = {}
        for name in _NAMES:
            spec = comps.get(name)
            if not isinstance(spec, dict):
                raise FormatError(f"missing complex {name}",
                                  field=f"complexes.{name}")
            ranks = _degree_dict(spec.get("ranks"), f"complexes.{name}.ranks",
                                 scalar=True)
            bnds = _degree_dict(spec.get("boundaries", {}),
                                f"complexes.{name}.boundaries")
            if mod2:
                bnds = {n: [[x & 1 for x in row] for row in mat]
                        for n, mat in bnds.items()}
            built[name] = ChainComplex(ranks, bnds, check=False)
        maps = data.get("maps")
        if not isinstance(maps, dict):
            raise FormatError("missing maps object", field="maps")
        hty = data.get("homotopies")
        if not isinstance(hty, dict):
            raise FormatError("missing homotopies object", field="homotopies")
        graded = {}
        for group, key in (("maps", "h"), ("maps", "g"), ("maps", "f"),
                           ("homotopies", "H"), ("homotopies", "G")):
            src = maps if group == "maps" else hty
            entry = src.get(key, {})
            graded[key] = _degree_dict(entry, f"{group}.{key}")
            if mod2:
                graded[key] = {n: [[x & 1 for x in row] for row in mat]
                               for n, mat in graded[key].items()}
        return cls(built["C3"], built["C2"], built["C1"], built["C0"],
                   graded["h"], graded["g"], graded["f"],
                   graded["H"], graded["G"], mod2)

    def to_json(self):
        comps = {}
        for name, C in self.complexes().items():
            comps[name] = {
                "ranks": {str(n): r for n, r in sorted(C.ranks.items())},
                "boundaries": {str(n): [list(r) for r in mat]
                               for n, mat in sorted(C.boundaries.items())},
            }
        return {
            "coefficients": "mod2" if self.mod2 else "Z",
            "complexes": comps,
            "maps": {k: _json_graded(getattr(self, k)) for k in ("h", "g", "f")},
            "homotopies": {k: _json_graded(getattr(self, k))
                           for k in ("H", "G")},
        }

    # -- validation ---------------------------------------------------------

    def validate(self):
        """Raise ``AxiomError`` listing every failed identity."""
        report = []
        for name, C in self.complexes().items():
            report.extend(_check_complex(name, C, self.mod2))
        if report:           # shapes are off; identities would misfire
            raise AxiomError("chain diagram axioms fail", report=report)
        for key, src, tgt in (("h", self.c3, self.c2),
                              ("g", self.c2, self.c1),
                              ("f", self.c1, self.c0)):
            report.extend(_check_graded_shape(key, getattr(self, key),
                                              src, tgt, 0))
        for key, src, tgt in (("H", self.c3, self.c1),
                              ("G", self.c2, self.c0)):
            report.extend(_check_graded_shape(key, getattr(self, key),
                                              src, tgt, 1))
        if report:
            raise AxiomError("chain diagram axioms fail", report=report)
        for key, src, tgt in (("h", self.c3, self.c2),
                              ("g", self.c2, self.c1),
                              ("f", self.c1, self.c0)):
            report.extend(_check_chain_map(key, getattr(self, key),
                                           src, tgt, self.mod2))
        report.extend(_check_homotopy("H", self.H, self.g, self.h,
                                      self.c3, self.c2, self.c1, self.mod2))
        report.extend(_check_homotopy("G", self.G, self.f, self.g,
                                      self.c2, self.c1, self.c0, self.mod2))
        if report:
            raise AxiomError("chain diagram axioms fail", report=report)
        return self


def _json_graded(mats):
    return {str(n): [list(r) for r in mat] for n, mat in sorted(mats.items())}


def _degree_dict(entry, field, scalar=False):
    """Parse ``{degree: matrix-or-int}`` with string or int degree keys."""
    if not isinstance(entry, dict):
        raise FormatError("expected an object keyed by degree", field=field)
    out = {}
    for key, val in entry.items():
        try:
            n = int(key)
        except (TypeError, ValueError):
            raise FormatError(f"bad degree key {key!r}", field=field)
        if n < 0:
            raise FormatError("negative degree", field=f"{field}.{key}")
        if scalar:
            if not isinstance(val, int) or isinstance(val, bool) or val < 0:
                raise FormatError("rank must be a nonnegative integer",
                                  field=f"{field}.{key}")
            if val:
                out[n] = val
            continue
        if (not isinstance(val, list)
                or any(not isinstance(row, list) for row in val)
                or any(not isinstance(x, int) or isinstance(x, bool)
                       for row in val for x in row)):
            raise FormatError("matrix must be a list of integer rows",
                              field=f"{field}.{key}")
        if any(val) and any(len(row) != len(val[0]) for row in val):
            raise FormatError("ragged matrix", field=f"{field}.{key}")
        if val and any(any(row) for row in val):
            out[n] = [list(row) for row in val]
    return out


def _check_complex(name, C, mod2):
    lines = []
    for n in sorted(C.boundaries):
        mat = C.boundaries[n]
        rows, cols = C.rank(n - 1), C.rank(n)
        if len(mat) != rows or any(len(r) != cols for r in mat):
            lines.append(f"{name}: boundary at degree {n} has shape "
                         f"{len(mat)}x{len(mat[0]) if mat else 0}, "
                         f"expected {rows}x{cols}")
    if lines:
        return lines
    for n in sorted(C.ranks):
        if C.rank(n - 1) and C.rank(n):
            sq = _mm(C.boundary(n - 1), C.boundary(n), mod2)
            if not _is_zero(sq):
                lines.append(f"{name}: d.d != 0 out of degree {n}")
    return lines


def _check_graded_shape(key, mats, src, tgt, degree):
    lines = []
    for n in sorted(mats):
        mat = mats[n]
        rows, cols = tgt.rank(n + degree), src.rank(n)
        if len(mat) != rows or any(len(r) != cols for r in mat):
            lines.append(f"{key}: matrix at degree {n} has shape "
                         f"{len(mat)}x{len(mat[0]) if mat else 0}, expected "
                         f"{rows}x{cols} (degree mismatch)")
    return lines


def _graded(mats, src, tgt, degree, n):
    mat = mats.get(n)
    rows, cols = tgt.rank(n + degree), src.rank(n)
    if mat is None:
        return _zeros(rows, cols)
    return mat


def _check_chain_map(key, mats, src, tgt, mod2):
    lines = []
    for n in sorted(set(src.ranks) | set(mats)):
        rows, cols = tgt.rank(n - 1), src.rank(n)
        left = _shaped(_mm(tgt.boundary(n), _graded(mats, src, tgt, 0, n),
                           mod2), rows, cols)
        right = _shaped(_mm(_graded(mats, src, tgt, 0, n - 1),
                            src.boundary(n), mod2), rows, cols)
        if not _is_zero(_msub(left, right, mod2)):
            lines.append(f"{key}: not a chain map at degree {n}")
    return lines


def _check_homotopy(key, hty, outer, inner, src, mid, tgt, mod2):
    # wants  d.K + K.d = outer.inner  degreewise, K of degree +1
    lines = []
    degrees = set(src.ranks) | set(hty)
    for n in sorted(degrees):
        rows, cols = tgt.rank(n), src.rank(n)
        lhs = _madd(_shaped(_mm(tgt.boundary(n + 1),
                                _graded(hty, src, tgt, 1, n), mod2),
                            rows, cols),
                    _shaped(_mm(_graded(hty, src, tgt, 1, n - 1),
                                src.boundary(n), mod2), rows, cols), mod2)
        rhs = _shaped(_mm(_graded(outer, mid, tgt, 0, n),
                          _graded(inner, src, mid, 0, n), mod2), rows, cols)
        if not _is_zero(_msub(lhs, rhs, mod2)):
            lines.append(f"{key}: homotopy identity fails at degree {n}")
    return lines


# ---------------------------------------------------------------------------
# mapping complexes


def _hom_basis(A, B, k):
    """Matrix units spanning ``Hom(A, B)_k`` as triples ``(j, p, q)``."""
    out = []
    for j in sorted(A.ranks):
        for p in range(B.rank(j + k)):
            for q in range(A.rank(j)):
                out.append((j, p, q))
    return out


def _hom_boundary(A, B, k, mod2):
    """Matrix of ``D : Hom_k -> Hom_{k-1}`` over the matrix-unit bases."""
    dom = _hom_basis(A, B, k)
    cod = _hom_basis(A, B, k - 1)
    pos = {t: i for i, t in enumerate(cod)}
    sign = 1 if (k % 2 or mod2) else -1      # -(-1)^k on the postcompose term
    mat = _zeros(len(cod), len(dom))
    for col, (j, p, q) in enumerate(dom):
        dB = B.boundary(j + k)
        for pp in range(B.rank(j + k - 1)):
            if dB[pp][p]:
                mat[pos[(j, pp, q)]][col] += dB[pp][p]
        dA = A.boundary(j + 1)
        for qq in range(A.rank(j + 1)):
            if dA[q][qq]:
                mat[pos[(j + 1, p, qq)]][col] += sign * dA[q][qq]
    if mod2:
        mat = [[x & 1 for x in row] for row in mat]
    return dom, cod, mat


def _flatten(mats, basis):
    vec = []
    for j, p, q in basis:
        mat = mats.get(j)
        vec.append(mat[p][q] if mat is not None else 0)
    return vec


def _unflatten(vec, src, tgt, degree, basis):
    out = {}
    for (j, p, q), x in zip(basis, vec):
        if x:
            out.setdefault(j, _zeros(tgt.rank(j + degree), src.rank(j)))
            out[j][p][q] = x
    return out


def _compose_after(fmap, mats, src, mid, tgt, mod2):
    """Degreewise ``f . phi`` for ``phi`` of degree ``+1``."""
    out = {}
    for n in sorted(src.ranks):
        mat = _shaped(_mm(_graded(fmap, mid, tgt, 0, n + 1),
                          _graded(mats, src, mid, 1, n), mod2),
                      tgt.rank(n + 1), src.rank(n))
        if not _is_zero(mat):
            out[n] = mat
    return out


def _compose_before(mats, hmap, src, mid, tgt, mod2):
    """Degreewise ``phi . h`` for ``phi`` of degree ``+1``."""
    out = {}
    for n in sorted(src.ranks):
        mat = _shaped(_mm(_graded(mats, mid, tgt, 1, n),
                          _graded(hmap, src, mid, 0, n), mod2),
                      tgt.rank(n + 1), src.rank(n))
        if not _is_zero(mat):
            out[n] = mat
    return out


def _cycles(A, B, mod2):
    """Basis of the degree ``+1`` cycles of ``Hom(A, B)``."""
    basis1, _, d1 = _hom_boundary(A, B, 1, mod2)
    if mod2:
        return basis1, _g2_kernel(d1, len(basis1))
    return basis1, kernel_basis(d1, n_cols=len(basis1))


def _group_desc(betti, torsion, mod2):
    if mod2:
        return f"(Z/2)^{betti}" if betti else "0"
    parts = []
    if betti == 1:
        parts.append("Z")
    elif betti > 1:
        parts.append(f"Z^{betti}")
    parts.extend(f"Z/{d}" for d in torsion)
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# the bracket


@dataclass
class BracketResult:
    """Outcome of evaluating the bracket of a diagram.

    ``representative`` is the degreewise matrix of ``f.H - G.h``;
    ``class_coords`` are its coordinates in the canonical (Smith-form)
    presentation of ``H_1 Hom(C3, C0)``; ``indeterminacy`` lists generators
    of the allowed subgroup in the same coordinates; ``vanishes`` says
    whether the representative lies in indeterminacy plus boundaries.
    """

    representative: dict
    class_coords: list
    group: str
    indeterminacy: list
    vanishes: bool
    mod2: bool

    def to_json(self):
        return {
            "coefficients": "mod2" if self.mod2 else "Z",
            "representative": _json_graded(self.representative),
            "group": self.group,
            "class": list(self.class_coords),
            "indeterminacy": [list(v) for v in self.indeterminacy],
            "vanishes": self.vanishes,
        }


def representative(diagram):
    """Degreewise matrices of ``f.H - G.h`` (degree ``+1``)."""
    d = diagram
    out = {}
    for n in sorted(d.c3.ranks):
        rows, cols = d.c0.rank(n + 1), d.c3.rank(n)
        fh = _shaped(_mm(_graded(d.f, d.c1, d.c0, 0, n + 1),
                         _graded(d.H, d.c3, d.c1, 1, n), d.mod2), rows, cols)
        gh = _shaped(_mm(_graded(d.G, d.c2, d.c0, 1, n),
                         _graded(d.h, d.c3, d.c2, 0, n), d.mod2), rows, cols)
        mat = _msub(fh, gh, d.mod2)
        if not _is_zero(mat):
            out[n] = mat
    return out


def bracket(diagram):
    """Evaluate the bracket; raises if the diagram fails validation."""
    d = diagram.validate()
    mod2 = d.mod2
    rep = representative(d)
    basis1, basis0, d1 = _hom_boundary(d.c3, d.c0, 1, mod2)
    basis2, _, d2 = _hom_boundary(d.c3, d.c0, 2, mod2)
    theta = _flatten(rep, basis1)
    if basis0:
        bd = matvec_rows(d1, theta)
        if mod2:
            bd = [x & 1 for x in bd]
        if any(bd):
            raise InvariantError("bracket representative is not a cycle")

    # cycle coordinates of the representative
    if mod2:
        Z = _g2_kernel(d1, len(basis1))
    else:
        Z = kernel_basis(d1, n_cols=len(basis1))
    Zmat = [[z[i] for z in Z] for i in range(len(basis1))]
    if mod2:
        a = _g2_solve(Zmat, theta, len(Z)) if Z else ([] if not any(theta) else None)
    else:
        a = solve(Zmat, theta) if Z else ([] if not any(theta) else None)
    if a is None:
        raise InvariantError("cycle coordinates for the representative "
                             "could not be found")
    a = a[:len(Z)]

    # relations: boundaries from Hom_2, written in the cycle basis
    bcols = [[d2[i][j] for i in range(len(basis1))] for j in range(len(basis2))]
    if mod2:
        rel = [_g2_solve(Zmat, c, len(Z)) for c in bcols]
    else:
        rel = solve_matrix(Zmat, bcols) if bcols else []
    if rel is None or any(r is None for r in rel):
        raise InvariantError("boundary is not spanned by cycles")
    rel = [r[:len(Z)] for r in rel]

    # indeterminacy generators: push cycles of Hom(C3,C1) along f,
    # pull cycles of Hom(C2,C0) back along h
    gens = []
    b31, cyc31 = _cycles(d.c3, d.c1, mod2)
    for v in cyc31:
        phi = _unflatten(v, d.c3, d.c1, 1, b31)
        gens.append(_flatten(
            _compose_after(d.f, phi, d.c3, d.c1, d.c0, mod2), basis1))
    b20, cyc20 = _cycles(d.c2, d.c0, mod2)
    for v in cyc20:
        phi = _unflatten(v, d.c2, d.c0, 1, b20)
        gens.append(_flatten(
            _compose_before(phi, d.h, d.c3, d.c2, d.c0, mod2), basis1))

    # vanishing: representative in the span of generators and boundaries
    span = gens + bcols
    Amat = [[v[i] for v in span] for i in range(len(basis1))]
    if mod2:
        x = _g2_solve(Amat, theta, len(span)) if span else (
            [] if not any(theta) else None)
    else:
        x = solve(Amat, theta) if span else ([] if not any(theta) else None)
    vanishes = x is not None

    if mod2:
        coords, group, ind = _present_mod2(Z, rel, a, gens, Zmat, basis1)
    else:
        coords, group, ind = _present_int(Z, rel, a, gens, Zmat)
    return BracketResult(rep, coords, group, ind, vanishes, mod2)


def matvec_rows(rows, x):
    return [sum(a * b for a, b in zip(row, x)) for row in rows]


def _present_int(Z, rel, a, gens, Zmat):
    """Class coordinates and indeterminacy generators over the integers."""
    z = len(Z)
    Rmat = [[r[i] for r in rel] for i in range(z)]
    diag, r, U, _ = snf_with_transforms(Rmat) if rel else ([], 0, _ident(z), [])
    betti = z - r
    torsion = tuple(x for x in diag if x > 1)

    def canonical(vec):
        c = matvec_rows(U, vec) if U else []
        out = []
        for i in range(z):
            if i < r:
                m = diag[i]
                out.append(c[i] % m if m > 1 else 0)
            else:
                out.append(c[i])
        return out

    coords = canonical(a)
    # subgroup generated by the images of gens together with the relations:
    # a deterministic lattice basis via the Smith transform
    cols = []
    for gvec in gens:
        gc = solve(Zmat, gvec) if Z else []
        if gc is None:
            raise InvariantError("indeterminacy generator is not a cycle")
        cols.append(gc[:len(Z)])
    cols.extend(rel)
    ind = []
    if cols and z:
        M = [[c[i] for c in cols] for i in range(z)]
        dg, rk, UM, _ = snf_with_transforms(M)
        inv = solve_matrix(UM, _ident(len(UM)))
        for i in range(rk):
            basis_vec = [dg[i] * inv[i][j] for j in range(z)]
            cv = canonical(basis_vec)
            if any(cv) and cv not in ind:
                ind.append(cv)
    return coords, _group_desc(betti, torsion, False), sorted(ind)


def _present_mod2(Z, rel, a, gens, Zmat, basis1):
    """Class coordinates and indeterminacy basis over GF(2)."""
    z = len(Z)
    rel_rows = [list(r) for r in rel]
    betti = z - len(_g2_rref(rel_rows, z)[0]) if z else 0
    coords = _g2_reduce_mod(rel_rows, a) if z else []
    ind = []
    gcols = []
    for gvec in gens:
        gc = _g2_solve(Zmat, gvec, z) if z else []
        if gc is None:
            raise InvariantError("indeterminacy generator is not a cycle")
        gcols.append(gc)
    span, _ = _g2_rref(gcols + rel_rows, z) if z else ([], [])
    for row in span:
        cv = _g2_reduce_mod(rel_rows, row)
        if any(cv) and cv not in ind:
            ind.append(cv)
    return coords, _group_desc(betti, (), True), sorted(ind)


def _ident(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# suspension and naturality


def suspend_complex(C):
    """Shift degrees up by one and negate every boundary matrix."""
    ranks = {n + 1: r for n, r in C.ranks.items()}
    bnds = {n + 1: [[-x for x in row] for row in mat]
            for n, mat in C.boundaries.items()}
    return ChainComplex(ranks, bnds, check=False)


def suspend_diagram(diagram):
    """Suspend every complex; homotopies pick up a sign so identities hold."""
    d = diagram

    def shift(mats, negate=False):
        if negate and not d.mod2:
            return {n + 1: [[-x for x in row] for row in mat]
                    for n, mat in mats.items()}
        return {n + 1: [list(row) for row in mat] for n, mat in mats.items()}

    return ChainDiagram(suspend_complex(d.c3), suspend_complex(d.c2),
                        suspend_complex(d.c1), suspend_complex(d.c0),
                        shift(d.h), shift(d.g), shift(d.f),
                        shift(d.H, negate=True), shift(d.G, negate=True),
                        d.mod2)


def suspension_class(diagram):
    """Bracket of the suspended diagram (degree shifted, boundary negated)."""
    return bracket(suspend_diagram(diagram))


def precompose(diagram, c3_new, t):
    """Restrict along a chain map ``t : C3' -> C3``.

    Produces the diagram with ``h.t`` and ``H.t`` in place of ``h`` and
    ``H``; the representative becomes the old one composed with ``t``.
    """
    d = diagram
    bad = _check_graded_shape("t", t, c3_new, d.c3, 0) or \
        _check_chain_map("t", t, c3_new, d.c3, d.mod2)
    if bad:
        raise AxiomError("precomposition map is not a chain map", report=bad)
    ht = {}
    Ht = {}
    for n in sorted(c3_new.ranks):
        m1 = _shaped(_mm(_graded(d.h, d.c3, d.c2, 0, n),
                         _graded(t, c3_new, d.c3, 0, n), d.mod2),
                     d.c2.rank(n), c3_new.rank(n))
        if not _is_zero(m1):
            ht[n] = m1
        m2 = _shaped(_mm(_graded(d.H, d.c3, d.c1, 1, n),
                         _graded(t, c3_new, d.c3, 0, n), d.mod2),
                     d.c1.rank(n + 1), c3_new.rank(n))
        if not _is_zero(m2):
            Ht[n] = m2
    return ChainDiagram(c3_new, d.c2, d.c1, d.c0, ht, d.g, d.f, Ht, d.G,
                        d.mod2)


# ---------------------------------------------------------------------------
# a worked instance with a nonvanishing bracket


def golden_diagram():
    """Rank-5 integer diagram whose bracket generates ``Z`` mod ``2Z``.

    ``C3 = Z<x>`` and ``C2 = Z<y>`` sit in degree 0, ``C1`` is
    ``Z<z1> --2--> Z<z0>``, and ``C0 = Z<w>`` sits in degree 1.  With
    ``h(x) = 2y``, ``g(y) = z0``, ``f(z1) = w``, ``H(x) = z1`` and ``G = 0``
    the representative sends ``x`` to ``w`` while the indeterminacy is
    ``2Z``, so the class ``1`` cannot be absorbed.
    """
    c3 = ChainComplex({0: 1}, {})
    c2 = ChainComplex({0: 1}, {})
    c1 = ChainComplex({0: 1, 1: 1}, {1: [[2]]})
    c0 = ChainComplex({1: 1}, {})
    return ChainDiagram(c3, c2, c1, c0,
                        h={0: [[2]]}, g={0: [[1]]}, f={1: [[1]]},
                        H={0: [[1]]}, G={}, mod2=False)
