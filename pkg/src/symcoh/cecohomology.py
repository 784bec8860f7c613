"""The Chevalley-Eilenberg complex and its relative cousin, exactly.

Cochains C^n(g; a) are alternating n-linear maps into a module a, stored as
one coordinate block per n-subset of the basis (subsets in lexicographic
order).  The differential is the standard 0-indexed Koszul formula

    (dw)(x_0,...,x_n) = sum_i (-1)^i x_i . w(...,x_i^,...)
                      + sum_{i<j} (-1)^{i+j} w([x_i,x_j],...,x_i^,...,x_j^,...)

(hats mark omitted arguments).  Insertion and the Lie derivative follow the
conventions

    (i_y w)(x_1,...,x_{n-1}) = w(y, x_1, ..., x_{n-1})
    (th_y w)(x_1,...,x_n)    = sum_i w(x_1,...,[x_i,y],...,x_n) + y . w(...)

and the three satisfy Cartan's rule th_y = i_y d + d i_y, which the test
suite asserts on randomized algebras; that joint check is what pins the sign
conventions.

The relative complex of a pair (g, h) keeps the cochains killed by every
i_y and th_y for y in h.  Cohomology is computed degree by degree with exact
integer elimination: at each degree the non-pivot coordinates of the incoming
image echelon give a complement W of im(d) inside C^n, the differential is
restricted to W, its kernel vectors are automatically representatives that
are independent modulo coboundaries, and its column echelon feeds the next
degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import (
    DegreeZero,
    DimensionMismatch,
    NonTrivialCoefficients,
    NotHorizontal,
    SizeLimit,
)
from .liealg import (
    CartanDecomposition,
    CoefficientModule,
    LieAlgebra,
    dual_pair,
    subalgebra_check,
    trivial_module,
)
from .matrices import (
    Matrix,
    SpanSolver,
    clear_denominators,
    eliminate,
    kernel_basis,
    rank as matrix_rank,
    reduce_against,
)

__all__ = [
    "DEFAULT_MAX_EXTERIOR_DIM",
    "Cochain",
    "cochain",
    "full_complex",
    "FullComplex",
    "RelativeComplex",
    "relative_complex",
    "ce_differential",
    "d_apply",
    "insertion",
    "lie_derivative",
    "cup_product",
    "cohomology",
    "CohomologyResult",
    "ComparisonMap",
    "relative_to_absolute_map",
    "transport_to_dual",
    "NczReport",
    "is_ncz",
    "odd_generation_check",
]

DEFAULT_MAX_EXTERIOR_DIM = 1 << 22


# ---------------------------------------------------------------------------
# cochain coordinates
# ---------------------------------------------------------------------------

class CochainSpace:
    """Subset bookkeeping for C^n(g; a)."""

    __slots__ = ("n", "mdim", "subsets", "index", "dim")

    def __init__(self, gdim: int, mdim: int, n: int, limit: int):
        total = comb(gdim, n) * mdim
        if total > limit:
            raise SizeLimit(total, limit)
        self.n = n
        self.mdim = mdim
        self.subsets = list(itertools.combinations(range(gdim), n))
        self.index = {s: i for i, s in enumerate(self.subsets)}
        self.dim = total

    def coord(self, subset, comp: int = 0) -> int:
        return self.index[tuple(subset)] * self.mdim + comp


class Cochain:
    """A sparse element of C^n(g; a)."""

    __slots__ = ("algebra", "module", "degree", "coords")

    def __init__(self, algebra: LieAlgebra, module: CoefficientModule, degree: int, coords: dict):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "module", module)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coords", {c: Fraction(v) for c, v in coords.items() if v})

    def __setattr__(self, *a):
        raise AttributeError("Cochain is immutable")

    def space(self, limit: int = DEFAULT_MAX_EXTERIOR_DIM) -> CochainSpace:
        return CochainSpace(self.algebra.dim, self.module.dim, self.degree, limit)

    def is_zero(self) -> bool:
        return not self.coords

    def value(self, subset, comp: int = 0) -> Fraction:
        """Coordinate at an ascending basis subset."""
        sp = self.space()
        return self.coords.get(sp.coord(subset, comp), Fraction(0))

    def evaluate(self, indices) -> list[Fraction]:
        """Evaluate on a tuple of basis indices (any order; repeats give 0)."""
        indices = list(indices)
        if len(indices) != self.degree:
            raise DimensionMismatch("expected %d arguments" % self.degree)
        if len(set(indices)) != len(indices):
            return [Fraction(0)] * self.module.dim
        order = sorted(range(len(indices)), key=lambda t: indices[t])
        inversions = sum(
            1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b]
        )
        sign = -1 if inversions % 2 else 1
        sp = self.space()
        base = sp.index[tuple(sorted(indices))] * sp.mdim
        return [sign * self.coords.get(base + a, Fraction(0)) for a in range(self.module.dim)]

    def __add__(self, other):
        assert isinstance(other, Cochain) and other.degree == self.degree
        assert other.algebra is self.algebra and other.module is self.module
        out = dict(self.coords)
        for c, v in other.coords.items():
            w = out.get(c, Fraction(0)) + v
            if w:
                out[c] = w
            elif c in out:
                del out[c]
        return Cochain(self.algebra, self.module, self.degree, out)

    def scale(self, s) -> "Cochain":
        s = Fraction(s)
        return Cochain(self.algebra, self.module, self.degree,
                       {c: s * v for c, v in self.coords.items()} if s else {})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree == other.degree and self.algebra == other.algebra
                and self.coords == other.coords)

    def __repr__(self):
        return "<Cochain deg=%d, %d nonzero coords>" % (self.degree, len(self.coords))


def cochain(g: LieAlgebra, module: CoefficientModule, degree: int, values: dict) -> Cochain:
    """Build a cochain from {subset: scalar} or {(subset, comp): scalar}."""
    sp = CochainSpace(g.dim, module.dim, degree, DEFAULT_MAX_EXTERIOR_DIM)
    coords = {}
    for key, v in values.items():
        if key and isinstance(key[0], tuple):
            subset, comp = key
        else:
            subset, comp = key, 0
        coords[sp.coord(tuple(subset), comp)] = Fraction(v)
    return Cochain(g, module, degree, coords)


# ---------------------------------------------------------------------------
# differential, insertion, Lie derivative
# ---------------------------------------------------------------------------

def _brackets_by_target(g: LieAlgebra) -> dict:
    """k -> [(i, j, c)] over i < j with [x_i, x_j] having x_k-component c."""
    out: dict[int, list] = {}
    for (i, j), comp in g.structure_table().items():
        for k, c in comp.items():
            out.setdefault(k, []).append((i, j, c))
    return out


def _insert_position(subset: tuple, x: int) -> int:
    """Position x would occupy in the ascending subset (x not in subset)."""
    pos = 0
    for s in subset:
        if s < x:
            pos += 1
        else:
            break
    return pos


def d_apply(w: Cochain, limit: int = DEFAULT_MAX_EXTERIOR_DIM) -> Cochain:
    """The differential of a single cochain, computed from its support."""
    g, module, n = w.algebra, w.module, w.degree
    mdim = module.dim
    sp = CochainSpace(g.dim, mdim, n, limit)
    sp1 = CochainSpace(g.dim, mdim, n + 1, limit)
    by_target = _brackets_by_target(g)
    out: dict[int, Fraction] = {}

    def add(coord, v):
        u = out.get(coord, Fraction(0)) + v
        if u:
            out[coord] = u
        elif coord in out:
            del out[coord]

    items = sorted(w.coords.items())
    for coord, v in items:
        sidx, comp = divmod(coord, mdim)
        S = sp.subsets[sidx]
        sset = set(S)
        # bracket terms: replace k in S by a pair (i, j) with c_{ij}^k != 0
        for qpos, k in enumerate(S):
            rest = sset - {k}
            for (i, j, c) in by_target.get(k, ()):
                if i in rest or j in rest:
                    continue
                T = tuple(sorted(rest | {i, j}))
                ipos = T.index(i)
                jpos = T.index(j)
                sign = -1 if (ipos + jpos + qpos) % 2 else 1
                add(sp1.index[T] * mdim + comp, sign * c * v)
        # module action terms: extend S by one element t acting through rho(t)
        if not module.trivial:
            for t in range(g.dim):
                if t in sset:
                    continue
                T = tuple(sorted(S + (t,)))
                tpos = T.index(t)
                sign = -1 if tpos % 2 else 1
                rho = module.action[t]
                base = sp1.index[T] * mdim
                for a in range(mdim):
                    entry = rho.entry(a, comp)
                    if entry:
                        add(base + a, sign * entry * v)
    return Cochain(g, module, n + 1, out)


def ce_differential(g: LieAlgebra, module: CoefficientModule, n: int,
                    limit: int = DEFAULT_MAX_EXTERIOR_DIM) -> Matrix:
    """Matrix of d: C^n -> C^{n+1} in subset coordinates.

    >>> from .liealg import new_lie_algebra, trivial_module
    >>> sl2 = new_lie_algebra({(0, 1): [(1, 2)], (0, 2): [(2, -2)], (1, 2): [(0, 1)]})
    >>> d1 = ce_differential(sl2, trivial_module(sl2), 1)
    >>> d1.entry(1, 0)   # (d h*)(h, f) has no h*-component... row (h,f), col h*
    Fraction(0, 1)
    """
    cols = full_complex(g, module, limit).differential_columns(n, None)
    sp1 = CochainSpace(g.dim, module.dim, n + 1, limit)
    spn = CochainSpace(g.dim, module.dim, n, limit)
    entries = {}
    for cidx, col in enumerate(cols):
        for r, v in col.items():
            entries[(r, cidx)] = v
    return Matrix(sp1.dim, spn.dim, entries)


def insertion(y: Sequence, w: Cochain) -> Cochain:
    """i_y: plug y into the first slot; degree drops by one."""
    if w.degree == 0:
        raise DegreeZero("cannot insert into a degree-0 cochain")
    g, module = w.algebra, w.module
    if len(y) != g.dim:
        raise DimensionMismatch("vector length %d, expected %d" % (len(y), g.dim))
    mdim = module.dim
    sp = CochainSpace(g.dim, mdim, w.degree, DEFAULT_MAX_EXTERIOR_DIM)
    sp1 = CochainSpace(g.dim, mdim, w.degree - 1, DEFAULT_MAX_EXTERIOR_DIM)
    yv = [Fraction(v) for v in y]
    out: dict[int, Fraction] = {}
    for coord, v in w.coords.items():
        sidx, comp = divmod(coord, mdim)
        S = sp.subsets[sidx]
        for pos, j in enumerate(S):
            if not yv[j]:
                continue
            rest = S[:pos] + S[pos + 1:]
            c = sp1.coord(rest, comp)
            sign = -1 if pos % 2 else 1
            u = out.get(c, Fraction(0)) + sign * yv[j] * v
            if u:
                out[c] = u
            elif c in out:
                del out[c]
    return Cochain(g, module, w.degree - 1, out)


def _replacement_table(g: LieAlgebra, y: Sequence) -> dict:
    """k -> {t: coefficient of x_k in [x_t, y]}."""
    out: dict[int, dict] = {}
    yv = [Fraction(v) for v in y]
    for (i, j), comp in g.structure_table().items():
        for k, c in comp.items():
            if yv[j]:
                out.setdefault(k, {}).setdefault(i, Fraction(0))
                out[k][i] += c * yv[j]
            if yv[i]:
                out.setdefault(k, {}).setdefault(j, Fraction(0))
                out[k][j] -= c * yv[i]
    return {k: {t: v for t, v in d.items() if v} for k, d in out.items()}


def lie_derivative(y: Sequence, w: Cochain) -> Cochain:
    """th_y: rotate each argument by [., y], plus the module action of y."""
    g, module = w.algebra, w.module
    if len(y) != g.dim:
        raise DimensionMismatch("vector length %d, expected %d" % (len(y), g.dim))
    mdim = module.dim
    sp = CochainSpace(g.dim, mdim, w.degree, DEFAULT_MAX_EXTERIOR_DIM)
    repl = _replacement_table(g, y)
    rho = None
    if not module.trivial:
        for j, yj in enumerate(y):
            if yj:
                term = module.action[j].scale(Fraction(yj))
                rho = term if rho is None else rho + term
    out: dict[int, Fraction] = {}

    def add(coord, v):
        u = out.get(coord, Fraction(0)) + v
        if u:
            out[coord] = u
        elif coord in out:
            del out[coord]

    for coord, v in w.coords.items():
        sidx, comp = divmod(coord, mdim)
        S = sp.subsets[sidx]
        sset = set(S)
        for qpos, k in enumerate(S):
            for t, coef in repl.get(k, {}).items():
                if t == k:
                    add(coord, coef * v)
                    continue
                if t in sset:
                    continue
                T = tuple(sorted((sset - {k}) | {t}))
                ipos = T.index(t)
                sign = -1 if (ipos + qpos) % 2 else 1
                add(sp.coord(T, comp), sign * coef * v)
        if rho is not None:
            base = sidx * mdim
            for a in range(mdim):
                entry = rho.entry(a, comp)
                if entry:
                    add(base + a, entry * v)
    return Cochain(g, module, w.degree, out)


def cup_product(w: Cochain, e: Cochain) -> Cochain:
    """Alternating shuffle product; trivial one-dimensional coefficients only."""
    if w.algebra != e.algebra:
        raise DimensionMismatch("cup product over different algebras")
    for c in (w, e):
        if not (c.module.trivial and c.module.dim == 1):
            raise NonTrivialCoefficients("cup product needs the trivial 1-dim module")
    g = w.algebra
    p, q = w.degree, e.degree
    spp = CochainSpace(g.dim, 1, p, DEFAULT_MAX_EXTERIOR_DIM)
    spq = CochainSpace(g.dim, 1, q, DEFAULT_MAX_EXTERIOR_DIM)
    spu = CochainSpace(g.dim, 1, p + q, DEFAULT_MAX_EXTERIOR_DIM)
    out: dict[int, Fraction] = {}
    for ci, vi in w.coords.items():
        S = spp.subsets[ci]
        sset = set(S)
        for cj, vj in e.coords.items():
            T = spq.subsets[cj]
            if sset & set(T):
                continue
            U = tuple(sorted(S + T))
            inv = 0
            for s in S:
                for t in T:
                    if s > t:
                        inv += 1
            sign = -1 if inv % 2 else 1
            c = spu.index[U]
            u = out.get(c, Fraction(0)) + sign * vi * vj
            if u:
                out[c] = u
            elif c in out:
                del out[c]
    return Cochain(g, w.module, p + q, out)


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------

class FullComplex:
    """C^*(g; a) with columns of d produced on demand."""

    def __init__(self, g: LieAlgebra, module: CoefficientModule,
                 limit: int = DEFAULT_MAX_EXTERIOR_DIM):
        if module.algebra is not g and module.algebra != g:
            raise DimensionMismatch("module is over a different algebra")
        self.algebra = g
        self.module = module
        self.limit = limit
        self._spaces: dict[int, CochainSpace] = {}
        self._by_target = _brackets_by_target(g)

    def space(self, n: int) -> CochainSpace:
        if n not in self._spaces:
            self._spaces[n] = CochainSpace(self.algebra.dim, self.module.dim, n, self.limit)
        return self._spaces[n]

    def space_dim(self, n: int) -> int:
        if n < 0:
            return 0
        return self.space(n).dim

    def differential_columns(self, n: int, cols) -> list[dict]:
        """Sparse columns of d_n for the requested coordinate indices.

        ``cols`` is a list of degree-n coordinate indices (None for all).
        Iterates the (n+1)-subsets once and pushes entries into the wanted
        columns; the per-column cost never depends on how many columns were
        skipped.
        """
        g, module = self.algebra, self.module
        mdim = module.dim
        spn = self.space(n)
        sp1 = self.space(n + 1)
        if cols is None:
            cols = list(range(spn.dim))
        colpos = {c: i for i, c in enumerate(cols)}
        out = [dict() for _ in cols]

        def add(col_coord, row_coord, v):
            i = colpos.get(col_coord)
            if i is None:
                return
            d = out[i]
            u = d.get(row_coord, Fraction(0)) + v
            if u:
                d[row_coord] = u
            elif row_coord in d:
                del d[row_coord]

        for tidx, T in enumerate(sp1.subsets):
            tset = set(T)
            rowbase = tidx * mdim
            for ipos in range(len(T)):
                ti = T[ipos]
                for jpos in range(ipos + 1, len(T)):
                    tj = T[jpos]
                    comp = g.bracket_basis(ti, tj)
                    if not comp:
                        continue
                    rest = tset - {ti, tj}
                    pair_sign = -1 if (ipos + jpos) % 2 else 1
                    for k, c in comp.items():
                        if k in rest:
                            continue
                        S = tuple(sorted(rest | {k}))
                        qpos = S.index(k)
                        sign = -pair_sign if qpos % 2 else pair_sign
                        colbase = spn.index[S] * mdim
                        for a in range(mdim):
                            add(colbase + a, rowbase + a, sign * c)
                if not module.trivial:
                    S = T[:ipos] + T[ipos + 1:]
                    colbase = spn.index[S] * mdim
                    slot_sign = -1 if ipos % 2 else 1
                    rho = module.action[ti]
                    for a in range(mdim):
                        for b in range(mdim):
                            entry = rho.entry(a, b)
                            if entry:
                                add(colbase + b, rowbase + a, slot_sign * entry)
        return out

    def include(self, n: int, vec: dict) -> Cochain:
        return Cochain(self.algebra, self.module, n, dict(vec))

    def describe(self) -> str:
        return "full complex of %r" % (self.algebra,)


def full_complex(g: LieAlgebra, module: CoefficientModule | None = None,
                 limit: int = DEFAULT_MAX_EXTERIOR_DIM) -> FullComplex:
    return FullComplex(g, module if module is not None else trivial_module(g), limit)


class RelativeComplex:
    """Cochains of (g, h): killed by i_y and th_y for every y spanning h.

    Bases are computed through max_degree + 1 so that ranks at max_degree are
    available; ``d_columns[n]`` holds the differential in the internal basis
    coordinates, certified by solving d(basis vector) in the span of the next
    degree's basis.
    """

    def __init__(self, g: LieAlgebra, h_basis, module: CoefficientModule,
                 max_degree: int, limit: int = DEFAULT_MAX_EXTERIOR_DIM):
        self.algebra = g
        self.module = module
        self.h_basis = subalgebra_check(g, h_basis)
        self.max_degree = max_degree
        self.limit = limit
        self._full = FullComplex(g, module, limit)
        h_idx = []
        adapted = True
        for vec in self.h_basis:
            nz = [i for i, v in enumerate(vec) if v]
            if len(nz) == 1:
                h_idx.append(nz[0])
            else:
                adapted = False
                break
        self.adapted = adapted and len(set(h_idx)) == len(h_idx)
        self._h_index_set = set(h_idx) if self.adapted else None
        self.bases: list[list[dict]] = []
        for n in range(max_degree + 2):
            if n > g.dim:
                self.bases.append([])
            else:
                self.bases.append(self._basis_at(n))
        self.d_columns: list[list[dict]] = []
        for n in range(max_degree + 1):
            self.d_columns.append(self._differential_at(n))

    # -- construction ------------------------------------------------------

    def _horizontal_coords(self, n: int) -> list[int]:
        sp = self._full.space(n)
        mdim = self.module.dim
        out = []
        H = self._h_index_set
        for idx, S in enumerate(sp.subsets):
            if any(s in H for s in S):
                continue
            base = idx * mdim
            out.extend(range(base, base + mdim))
        return out

    def _basis_at(self, n: int) -> list[dict]:
        g, module = self.algebra, self.module
        sp = self._full.space(n)
        mdim = module.dim
        if self.adapted:
            horiz = self._horizontal_coords(n)
        else:
            horiz = None

        if horiz is not None:
            candidate_coords = horiz
        else:
            candidate_coords = list(range(sp.dim))
        if not candidate_coords:
            return []

        # Constraint rows: the full stacked system {i_y, th_y : y in h},
        # applied to the candidate coordinates.
        rows: dict[int, dict] = {}
        row_count = 0
        columns = []
        for pos, coord in enumerate(candidate_coords):
            unit = Cochain(g, module, n, {coord: Fraction(1)})
            col: dict[int, Fraction] = {}
            offset = 0
            for y in self.h_basis:
                if n > 0 and horiz is None:
                    iy = insertion(y, unit)
                    for c, v in iy.coords.items():
                        col[offset + c] = v
                    offset += self._full.space(n - 1).dim
                ty = lie_derivative(y, unit)
                for c, v in ty.coords.items():
                    col[offset + c] = v
                offset += sp.dim
            columns.append(col)
            row_count = offset
        m = Matrix(row_count, len(candidate_coords),
                   {(r, j): v for j, col in enumerate(columns) for r, v in col.items()})
        kb = kernel_basis(m)
        out = []
        for vec in kb:
            out.append({candidate_coords[i]: Fraction(v) for i, v in enumerate(vec) if v})
        return out

    def _differential_at(self, n: int) -> list[dict]:
        nxt = self.bases[n + 1]
        solver = SpanSolver(nxt) if nxt else None
        cols = []
        for vec in self.bases[n]:
            dw = d_apply(Cochain(self.algebra, self.module, n, vec), self.limit)
            if dw.is_zero():
                cols.append({})
                continue
            assert solver is not None, "relative complex not closed under d"
            coeffs = solver.solve(dw.coords)
            assert coeffs is not None, "relative complex not closed under d"
            cols.append({i: v for i, v in enumerate(coeffs) if v})
        return cols

    # -- complex protocol --------------------------------------------------

    def space_dim(self, n: int) -> int:
        if n < 0 or n >= len(self.bases):
            return 0
        return len(self.bases[n])

    def differential_columns(self, n: int, cols) -> list[dict]:
        allcols = self.d_columns[n]
        if cols is None:
            return [dict(c) for c in allcols]
        return [dict(allcols[c]) for c in cols]

    def include(self, n: int, vec: dict) -> Cochain:
        out: dict[int, Fraction] = {}
        for i, v in vec.items():
            for c, w in self.bases[n][i].items():
                u = out.get(c, Fraction(0)) + Fraction(v) * w
                if u:
                    out[c] = u
                elif c in out:
                    del out[c]
        return Cochain(self.algebra, self.module, n, out)

    def project(self, w: Cochain) -> dict | None:
        """Internal coordinates of a cochain lying in the relative subspace."""
        solver = SpanSolver(self.bases[w.degree]) if self.bases[w.degree] else None
        if solver is None:
            return None if w.coords else {}
        coeffs = solver.solve(w.coords)
        if coeffs is None:
            return None
        return {i: v for i, v in enumerate(coeffs) if v}

    def describe(self) -> str:
        return "relative complex of a pair over %r" % (self.algebra,)


def relative_complex(g: LieAlgebra, h_basis, module: CoefficientModule | None = None,
                     max_degree: int | None = None,
                     limit: int = DEFAULT_MAX_EXTERIOR_DIM) -> RelativeComplex:
    h_basis = [list(v) for v in h_basis]
    if module is None:
        module = trivial_module(g)
    if max_degree is None:
        max_degree = g.dim - len(h_basis)
    return RelativeComplex(g, h_basis, module, max_degree, limit)


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------

@dataclass
class _DegreeData:
    betti: int
    rank_out: int                      # rank of d_n
    representatives: list              # sparse dicts over this degree's coords
    incoming_echelon: list             # echelon of im d_{n-1} over this degree's coords
    complement: list                   # coordinate indices spanning a complement of im d_{n-1}


@dataclass
class CohomologyResult:
    """Betti numbers, certified representatives and the elimination data
    needed to compare classes against coboundaries later."""

    complex: object
    max_degree: int
    degrees: dict = field(default_factory=dict)

    def betti(self, n: int) -> int:
        if n < 0 or n > self.max_degree:
            return 0
        return self.degrees[n].betti

    def betti_list(self) -> list[int]:
        return [self.betti(n) for n in range(self.max_degree + 1)]

    def differential_rank(self, n: int) -> int:
        if n < 0 or n > self.max_degree:
            return 0
        return self.degrees[n].rank_out

    def representatives(self, n: int) -> list[Cochain]:
        """Representatives as cochains of the ambient algebra."""
        return [self.complex.include(n, vec) for vec in self.degrees[n].representatives]

    def representative_vectors(self, n: int) -> list[dict]:
        return [dict(v) for v in self.degrees[n].representatives]

    def class_coordinates(self, w: Cochain) -> list[Fraction] | None:
        """Coordinates of [w] in the representative basis of its degree.

        The cochain must be closed and must lie in this result's complex
        (for a relative result: in the relative subspace).  Returns None when
        w is not in the complex; asserts if w is not closed.
        """
        n = w.degree
        data = self.degrees[n]
        if isinstance(self.complex, RelativeComplex):
            vec = self.complex.project(w)
            if vec is None:
                return None
        else:
            vec = dict(w.coords)
        rem, _ = reduce_against(data.incoming_echelon, vec)
        if not rem:
            return [Fraction(0)] * data.betti
        assert data.representatives, "closed cochain not spanned by representatives"
        coeffs = SpanSolver(data.representatives).solve(rem)
        assert coeffs is not None, "closed cochain not spanned by representatives"
        return coeffs

    def verify(self) -> bool:
        """Re-certify closedness and independence-mod-exact of every
        representative (used by the test suite)."""
        for n in range(self.max_degree + 1):
            data = self.degrees[n]
            for vec in data.representatives:
                w = self.complex.include(n, vec)
                dw = d_apply(w)
                assert dw.is_zero(), "representative at degree %d is not closed" % n
                rem, _ = reduce_against(data.incoming_echelon, vec)
                assert rem, "representative at degree %d is a coboundary" % n
            if data.representatives:
                assert SpanSolver(data.representatives).rank == len(data.representatives)
        return True


def cohomology(cplx, max_degree: int, policy: str = "markowitz") -> CohomologyResult:
    """Chain the per-degree eliminations described in the module docstring."""
    result = CohomologyResult(cplx, max_degree)
    incoming: list = []
    for n in range(max_degree + 1):
        dim_n = cplx.space_dim(n)
        pivot = {c for (c, _r, _a) in incoming}
        complement = [c for c in range(dim_n) if c not in pivot]
        cols = cplx.differential_columns(n, complement)
        rows = []
        mults = []
        for col in cols:
            ints, mult = clear_denominators(col)
            rows.append(ints)
            mults.append(mult)
        aug = [{i: 1} for i in range(len(rows))]
        data = eliminate(rows, aug, policy=policy)
        reps = []
        for _i, combo in data.zeros:
            vec = {complement[pos]: u * mults[pos] for pos, u in combo.items()}
            ints, _ = clear_denominators(vec)
            if ints:
                lead = ints[min(ints)]
                if lead < 0:
                    ints = {c: -v for c, v in ints.items()}
            reps.append(ints)
        result.degrees[n] = _DegreeData(
            betti=len(reps),
            rank_out=len(data.echelon),
            representatives=reps,
            incoming_echelon=incoming,
            complement=complement,
        )
        incoming = data.echelon
    return result


# ---------------------------------------------------------------------------
# comparison map, dual transport, n.c.z.
# ---------------------------------------------------------------------------

@dataclass
class ComparisonMap:
    degree: int
    matrix: Matrix
    injective: bool


def relative_to_absolute_map(rel_result: CohomologyResult, full_result: CohomologyResult,
                             n: int) -> ComparisonMap:
    """The map on degree-n cohomology induced by including relative cocycles.

    Expressed in the two representative bases; injective iff the matrix has
    full column rank.
    """
    rel_cplx = rel_result.complex
    full_cplx = full_result.complex
    assert rel_cplx.algebra == full_cplx.algebra
    cols = []
    brel = rel_result.betti(n)
    bfull = full_result.betti(n)
    for vec in rel_result.degrees[n].representatives:
        w = rel_cplx.include(n, vec)
        coords = full_result.class_coordinates(w)
        assert coords is not None
        cols.append(coords)
    entries = {}
    for j, col in enumerate(cols):
        for i, v in enumerate(col):
            if v:
                entries[(i, j)] = v
    matrix = Matrix(bfull, brel, entries)
    return ComparisonMap(n, matrix, matrix_rank(matrix) == brel)


def transport_to_dual(dec: CartanDecomposition, w: Cochain,
                      dual_and_dec: tuple[LieAlgebra, CartanDecomposition] | None = None) -> Cochain:
    """Move a horizontal relative cochain of (g, k) to the pair (g_u, k).

    On the underlying alternating maps this is the identity: the two
    horizontal cochain spaces are literally equal.  In coordinates the
    cochain is re-expressed on the dual's ordered basis (k part first).
    Raises NotHorizontal when some insertion against k fails to vanish, and
    re-verifies th-invariance on the dual side.
    """
    if not w.module.trivial:
        raise NonTrivialCoefficients("dual transport is defined for trivial coefficients")
    g = dec.parent
    assert w.algebra == g, "cochain is not over the decomposition's algebra"
    for a, y in enumerate(dec.k_basis):
        if w.degree > 0 and not insertion(y, w).is_zero():
            raise NotHorizontal("insertion of k-basis vector %d does not vanish" % a)
    if dual_and_dec is None:
        dual_and_dec = dual_pair(dec)
    dual, dec_u = dual_and_dec
    nk = len(dec.k_basis)
    mdim = w.module.dim
    sp = CochainSpace(g.dim, mdim, w.degree, DEFAULT_MAX_EXTERIOR_DIM)
    dual_module = trivial_module(dual, mdim)

    if dec.is_adapted:
        # pure relabeling: parent index -> position in (k..., p...) ordering
        relabel = {}
        for a, i in enumerate(dec.k_indices):
            relabel[i] = a
        for b, i in enumerate(dec.p_indices):
            relabel[i] = nk + b
        sp_u = CochainSpace(dual.dim, mdim, w.degree, DEFAULT_MAX_EXTERIOR_DIM)
        out = {}
        for coord, v in w.coords.items():
            sidx, comp = divmod(coord, mdim)
            S = sp.subsets[sidx]
            mapped = [relabel[s] for s in S]
            order = sorted(range(len(mapped)), key=lambda t: mapped[t])
            inv = sum(1 for a in range(len(order)) for b in range(a + 1, len(order))
                      if order[a] > order[b])
            sign = -1 if inv % 2 else 1
            # absorb the scale of non-unit (but adapted) basis vectors
            scale = Fraction(1)
            for pos, i in enumerate(S):
                if i in dec.k_indices:
                    scale *= dec.k_basis[dec.k_indices.index(i)][i]
                else:
                    scale *= dec.p_basis[dec.p_indices.index(i)][i]
            out[sp_u.coord(tuple(sorted(mapped)), comp)] = sign * scale * v
        result = Cochain(dual, dual_module, w.degree, out)
    else:
        # evaluate w multilinearly on the chosen (k..., p...) basis vectors
        cols = dec.k_basis + dec.p_basis
        sp_u = CochainSpace(dual.dim, mdim, w.degree, DEFAULT_MAX_EXTERIOR_DIM)
        out = {}
        for U in sp_u.subsets:
            vals = _evaluate_multilinear(w, [cols[u] for u in U])
            base = sp_u.index[U] * mdim
            for a, v in enumerate(vals):
                if v:
                    out[base + a] = v
        result = Cochain(dual, dual_module, w.degree, out)

    unit = lambda i: [Fraction(1) if t == i else Fraction(0) for t in range(dual.dim)]
    for i in range(nk):
        assert lie_derivative(unit(i), result).is_zero(), \
            "transported cochain lost th-invariance on the dual side"
    return result


def _evaluate_multilinear(w: Cochain, vectors) -> list[Fraction]:
    g, module = w.algebra, w.module
    mdim = module.dim
    sp = CochainSpace(g.dim, mdim, w.degree, DEFAULT_MAX_EXTERIOR_DIM)
    out = [Fraction(0)] * mdim
    supports = [[(i, Fraction(v)) for i, v in enumerate(vec) if v] for vec in vectors]
    for picks in itertools.product(*supports):
        idxs = [i for i, _v in picks]
        if len(set(idxs)) != len(idxs):
            continue
        coef = Fraction(1)
        for _i, v in picks:
            coef *= v
        vals = w.evaluate(idxs)
        for a in range(mdim):
            if vals[a]:
                out[a] += coef * vals[a]
    return out


@dataclass
class NczReport:
    max_degree: int
    per_degree: dict                 # n -> bool (kappa injective at n)
    overall: bool
    odd_generation: bool | None      # None when the cross-path was skipped
    relative: CohomologyResult
    full: CohomologyResult

    def verdict(self, n: int) -> bool:
        return self.per_degree[n]


def is_ncz(g: LieAlgebra, k_basis, module: CoefficientModule | None = None,
           max_degree: int | None = None, limit: int = DEFAULT_MAX_EXTERIOR_DIM,
           policy: str = "markowitz") -> NczReport:
    """Per-degree injectivity of the relative-to-absolute comparison map.

    With trivial one-dimensional coefficients the odd-generation criterion is
    evaluated as an independent second path and the two overall verdicts are
    asserted equal.
    """
    k_basis = [list(v) for v in k_basis]
    if module is None:
        module = trivial_module(g)
    if max_degree is None:
        max_degree = g.dim - len(k_basis)
    rel = cohomology(relative_complex(g, k_basis, module, max_degree, limit), max_degree, policy)
    full = cohomology(FullComplex(g, module, limit), max_degree, policy)
    per_degree = {}
    for n in range(max_degree + 1):
        per_degree[n] = relative_to_absolute_map(rel, full, n).injective
    overall = all(per_degree.values())
    odd = None
    if module.trivial and module.dim == 1:
        odd = odd_generation_check(rel, max_degree)
        assert odd == overall, (
            "comparison-map and odd-generation verdicts disagree (%r vs %r)" % (overall, odd)
        )
    return NczReport(max_degree, per_degree, overall, odd, rel, full)


def odd_generation_check(rel_result: CohomologyResult, top_degree: int) -> bool:
    """Is the relative cohomology ring generated by 1 and odd-degree classes?

    Odd degrees hold their own generators, so the test bites in even degrees:
    every even class must be a combination of cup products of lower odd
    representatives.  Products run over subsets of the odd classes (an odd
    class squares to zero), exhaustively up to the requested degree.
    """
    cplx = rel_result.complex
    module = cplx.module
    if not (module.trivial and module.dim == 1):
        raise NonTrivialCoefficients("odd generation check needs the trivial 1-dim module")
    odd_classes = []
    for n in range(1, top_degree + 1, 2):
        for w in rel_result.representatives(n):
            odd_classes.append((n, w))
    for n in range(2, top_degree + 1, 2):
        b = rel_result.betti(n)
        if b == 0:
            continue
        coords = []
        for combo_size in range(2, n + 1):
            for combo in itertools.combinations(range(len(odd_classes)), combo_size):
                degs = sum(odd_classes[i][0] for i in combo)
                if degs != n:
                    continue
                prod = odd_classes[combo[0]][1]
                for i in combo[1:]:
                    prod = cup_product(prod, odd_classes[i][1])
                cc = rel_result.class_coordinates(prod)
                assert cc is not None, "product of relative classes left the relative subspace"
                if any(cc):
                    coords.append(cc)
        if not coords:
            return False
        entries = {(i, j): v for j, col in enumerate(coords) for i, v in enumerate(col) if v}
        m = Matrix(b, len(coords), entries)
        if matrix_rank(m) != b:
            return False
    return True
