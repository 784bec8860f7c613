"""Finite-dimensional real Lie algebras given by exact structure constants.

An algebra is its bracket table: [x_i, x_j] = sum_k c_{ij}^k x_k with all
c rational.  Construction validates antisymmetry and the Jacobi identity on
every basis triple, so downstream code never has to doubt d o d = 0.

Also here: coefficient modules (finite-dimensional rational actions),
Cartan-type decompositions g = k (+) p with the three bracket inclusions
certified, and the compact-dual algebra obtained by flipping the sign of the
[p,p] bracket.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .errors import (
    BracketViolation,
    DimensionMismatch,
    JacobiViolation,
    NotARepresentation,
    NotASubalgebra,
    NotComplementary,
    NotSemisimple,
    ValidationFailure,
)
from .matrices import Matrix, SpanSolver, det, invert, rank
from .scalars import format_rational, rat

__all__ = [
    "LieAlgebra",
    "CoefficientModule",
    "CartanDecomposition",
    "new_lie_algebra",
    "bracket",
    "killing_form",
    "is_semisimple",
    "is_negative_definite",
    "validate_decomposition",
    "compact_dual",
    "dual_pair",
    "subalgebra_check",
    "trivial_module",
    "module_from_matrices",
    "algebra_to_json",
    "algebra_from_json",
    "decomposition_from_json",
    "module_from_json",
]


class LieAlgebra:
    """Immutable bracket table over an ordered basis.

    The table maps (i, j) with i < j to {k: c_{ij}^k}; the other triangle is
    implied by antisymmetry and the diagonal is zero.
    """

    __slots__ = ("dim", "basis_labels", "_table")

    def __init__(self, dim: int, table: dict, basis_labels=None, _skip_validation=False):
        object.__setattr__(self, "dim", dim)
        if basis_labels is None:
            basis_labels = tuple("x%d" % i for i in range(dim))
        else:
            basis_labels = tuple(str(s) for s in basis_labels)
            if len(basis_labels) != dim:
                raise DimensionMismatch("%d labels for dimension %d" % (len(basis_labels), dim))
        object.__setattr__(self, "basis_labels", basis_labels)
        clean = {}
        for (i, j), comp in table.items():
            assert 0 <= i < j < dim
            entry = {k: Fraction(v) for k, v in comp.items() if v}
            if entry:
                clean[(i, j)] = entry
        object.__setattr__(self, "_table", clean)
        if not _skip_validation:
            self._check_jacobi()

    def __setattr__(self, *a):
        raise AttributeError("LieAlgebra is immutable")

    # -- basic bracket machinery -------------------------------------------

    def bracket_basis(self, i: int, j: int) -> dict:
        """[x_i, x_j] as a sparse coordinate dict."""
        if i == j:
            return {}
        if i < j:
            return dict(self._table.get((i, j), {}))
        return {k: -v for k, v in self._table.get((j, i), {}).items()}

    def bracket(self, x: Sequence, y: Sequence) -> list[Fraction]:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("vectors must have length %d" % self.dim)
        out = [Fraction(0)] * self.dim
        xs = [(i, Fraction(v)) for i, v in enumerate(x) if v]
        ys = [(j, Fraction(v)) for j, v in enumerate(y) if v]
        for i, xv in xs:
            for j, yv in ys:
                if i == j:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    out[k] += xv * yv * c
        return out

    def ad_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ad(x) = [x, -] in the basis."""
        entries = {}
        xs = [(i, Fraction(v)) for i, v in enumerate(x) if v]
        for j in range(self.dim):
            for i, xv in xs:
                if i == j:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    key = (k, j)
                    w = entries.get(key, Fraction(0)) + xv * c
                    if w:
                        entries[key] = w
                    elif key in entries:
                        del entries[key]
        return Matrix(self.dim, self.dim, entries)

    def _check_jacobi(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                bij = self.bracket_basis(i, j)
                for k in range(j + 1, self.dim):
                    # [[xi,xj],xk] + [[xj,xk],xi] + [[xk,xi],xj]
                    res = [Fraction(0)] * self.dim
                    for a, coeffs in ((k, bij), (i, self.bracket_basis(j, k)), (j, self.bracket_basis(k, i))):
                        for t, c in coeffs.items():
                            for s, c2 in self.bracket_basis(t, a).items():
                                res[s] += c * c2
                    if any(res):
                        raise JacobiViolation(i, j, k, res)

    # -- serialization ------------------------------------------------------

    def structure_table(self) -> dict:
        """Copy of the i<j bracket table (for tests and the dual check)."""
        return {ij: dict(comp) for ij, comp in self._table.items()}

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    def __repr__(self):
        return "<LieAlgebra dim=%d (%s)>" % (self.dim, ", ".join(self.basis_labels))


def new_lie_algebra(structure, dim=None, basis_labels=None) -> LieAlgebra:
    """Build and validate an algebra from structure constants.

    ``structure`` is either a dict {(i, j): [(k, scalar), ...]} on the i < j
    triangle, or a full square table t[i][j] = [(k, scalar), ...] whose lower
    triangle must be the exact negative of the upper one.

    >>> sl2 = new_lie_algebra({(0, 1): [(1, 2)], (0, 2): [(2, -2)], (1, 2): [(0, 1)]},
    ...                       basis_labels=("h", "e", "f"))
    >>> sl2.bracket([0, 1, 0], [0, 0, 1])
    [Fraction(1, 1), Fraction(0, 1), Fraction(0, 1)]
    """
    table: dict = {}

    def _accumulate(i, j, pairs):
        entry = table.setdefault((i, j), {})
        for k, v in pairs:
            entry[k] = entry.get(k, Fraction(0)) + rat(v)

    if isinstance(structure, dict):
        maxidx = -1
        for (i, j), pairs in structure.items():
            if i == j:
                if any(rat(v) for _k, v in pairs):
                    raise ValidationFailure("nonzero bracket [x_%d, x_%d]" % (i, j))
                continue
            a, b = (i, j) if i < j else (j, i)
            sign = 1 if i < j else -1
            _accumulate(a, b, [(k, sign * rat(v)) for k, v in pairs])
            maxidx = max(maxidx, i, j, *(k for k, _v in pairs)) if pairs else max(maxidx, i, j)
        if dim is None:
            dim = maxidx + 1
    else:
        rows = list(structure)
        if dim is None:
            dim = len(rows)
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise DimensionMismatch("structure table must be %d x %d" % (dim, dim))
        for i in range(dim):
            for j in range(dim):
                pairs = [(k, rat(v)) for k, v in rows[i][j]]
                if i == j:
                    if any(v for _k, v in pairs):
                        raise ValidationFailure("nonzero bracket [x_%d, x_%d]" % (i, i))
                    continue
                if i < j:
                    _accumulate(i, j, pairs)
                else:
                    upper = {k: rat(v) for k, v in rows[j][i]}
                    lower = {k: v for k, v in pairs if v}
                    if {k: -v for k, v in lower.items()} != {k: v for k, v in upper.items() if v}:
                        raise ValidationFailure(
                            "antisymmetry fails between entries (%d,%d) and (%d,%d)" % (i, j, j, i)
                        )
    if dim is None or dim < 0:
        raise DimensionMismatch("could not infer a dimension")
    for (i, j) in table:
        if not (0 <= i < j < dim):
            raise DimensionMismatch("bracket index (%d,%d) outside dimension %d" % (i, j, dim))
        for k in table[(i, j)]:
            if not 0 <= k < dim:
                raise DimensionMismatch("bracket target %d outside dimension %d" % (k, dim))
    return LieAlgebra(dim, table, basis_labels)


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> list[Fraction]:
    return g.bracket(x, y)


def killing_form(g: LieAlgebra) -> Matrix:
    """B(x_i, x_j) = trace(ad x_i o ad x_j), as an exact symmetric matrix."""
    ads = []
    for i in range(g.dim):
        e = [Fraction(0)] * g.dim
        e[i] = Fraction(1)
        ads.append(g.ad_matrix(e).row_dicts())
    entries = {}
    for i in range(g.dim):
        for j in range(i, g.dim):
            tr = Fraction(0)
            rows_i, rows_j = ads[i], ads[j]
            for a in range(g.dim):
                row = rows_i[a]
                for b, v in row.items():
                    w = rows_j[b].get(a)
                    if w:
                        tr += v * w
            if tr:
                entries[(i, j)] = tr
                if i != j:
                    entries[(j, i)] = tr
    return Matrix(g.dim, g.dim, entries)


def is_semisimple(g: LieAlgebra) -> bool:
    return rank(killing_form(g)) == g.dim


def is_negative_definite(m: Matrix) -> bool:
    """Sylvester's criterion: leading principal minors alternate in sign."""
    if m.nrows != m.ncols:
        raise DimensionMismatch("definiteness of a non-square matrix")
    for s in range(1, m.nrows + 1):
        sub = Matrix(s, s, {(i, j): m.entry(i, j) for i in range(s) for j in range(s) if m.entry(i, j)})
        d = det(sub)
        if (s % 2 == 1 and d >= 0) or (s % 2 == 0 and d <= 0):
            return False
    return True


# ---------------------------------------------------------------------------
# coefficient modules
# ---------------------------------------------------------------------------

class CoefficientModule:
    """A finite-dimensional module with rational action matrices.

    ``action[i]`` is the matrix of x_i acting on the module; the commutator
    rule rho([x,y]) = rho(x)rho(y) - rho(y)rho(x) is checked on all basis
    pairs at construction.
    """

    __slots__ = ("algebra", "dim", "action", "trivial")

    def __init__(self, algebra: LieAlgebra, action: Sequence[Matrix]):
        action = tuple(action)
        if len(action) != algebra.dim:
            raise DimensionMismatch("need one action matrix per basis element")
        mdim = action[0].nrows if action else 0
        for a in action:
            if a.nrows != mdim or a.ncols != mdim:
                raise DimensionMismatch("action matrices must be square of equal size")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "dim", mdim)
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "trivial", all(a.is_zero() for a in action))
        for i in range(algebra.dim):
            for j in range(i + 1, algebra.dim):
                lhs = Matrix.zeros(mdim, mdim)
                for k, c in algebra.bracket_basis(i, j).items():
                    lhs = lhs + action[k].scale(c)
                rhs = action[i] * action[j] - action[j] * action[i]
                if lhs != rhs:
                    raise NotARepresentation(i, j)

    def __setattr__(self, *a):
        raise AttributeError("CoefficientModule is immutable")

    def __repr__(self):
        kind = "trivial" if self.trivial else "nontrivial"
        return "<CoefficientModule dim=%d (%s)>" % (self.dim, kind)


def trivial_module(g: LieAlgebra, dim: int = 1) -> CoefficientModule:
    return CoefficientModule(g, [Matrix.zeros(dim, dim) for _ in range(g.dim)])


def module_from_matrices(g: LieAlgebra, mats: Sequence[Sequence[Sequence]]) -> CoefficientModule:
    return CoefficientModule(g, [Matrix.from_rows([[rat(v) for v in row] for row in m]) for m in mats])


# ---------------------------------------------------------------------------
# Cartan-type decompositions and the compact dual
# ---------------------------------------------------------------------------

class CartanDecomposition:
    """g = k (+) p with [k,k] <= k, [k,p] <= p, [p,p] <= k, all certified.

    k_indices / p_indices are set when every spanning vector is a multiple of
    a standard basis vector; the cochain machinery uses that to read
    horizontality off subset supports directly.
    """

    __slots__ = ("parent", "k_basis", "p_basis", "pi_k", "pi_p", "k_indices", "p_indices")

    def __init__(self, parent, k_basis, p_basis, pi_k, pi_p, k_indices, p_indices):
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "k_basis", k_basis)
        object.__setattr__(self, "p_basis", p_basis)
        object.__setattr__(self, "pi_k", pi_k)
        object.__setattr__(self, "pi_p", pi_p)
        object.__setattr__(self, "k_indices", k_indices)
        object.__setattr__(self, "p_indices", p_indices)

    def __setattr__(self, *a):
        raise AttributeError("CartanDecomposition is immutable")

    @property
    def is_adapted(self) -> bool:
        return self.k_indices is not None

    def __repr__(self):
        return "<CartanDecomposition dim k=%d, dim p=%d of %r>" % (
            len(self.k_basis), len(self.p_basis), self.parent)


def _unit_index(vec) -> int | None:
    """Index of the single nonzero coordinate, if the vector is a multiple of
    a standard basis vector."""
    nz = [i for i, v in enumerate(vec) if v]
    return nz[0] if len(nz) == 1 else None


def validate_decomposition(g: LieAlgebra, k_basis, p_basis) -> CartanDecomposition:
    """Certify complementarity and the three bracket inclusions exactly."""
    k_basis = [[Fraction(v) for v in vec] for vec in k_basis]
    p_basis = [[Fraction(v) for v in vec] for vec in p_basis]
    for vec in k_basis + p_basis:
        if len(vec) != g.dim:
            raise DimensionMismatch("basis vectors must have length %d" % g.dim)
    nk, np_ = len(k_basis), len(p_basis)
    if nk + np_ != g.dim:
        raise NotComplementary("k and p supply %d vectors for dimension %d" % (nk + np_, g.dim))
    cols = k_basis + p_basis
    basis_mat = Matrix(g.dim, g.dim, {(i, j): cols[j][i] for j in range(g.dim) for i in range(g.dim) if cols[j][i]})
    try:
        inv = invert(basis_mat)
    except ValueError:
        raise NotComplementary("k and p vectors do not span the algebra") from None
    sel_k = Matrix(g.dim, g.dim, {(i, i): Fraction(1) for i in range(nk)})
    sel_p = Matrix(g.dim, g.dim, {(i, i): Fraction(1) for i in range(nk, g.dim)})
    pi_k = basis_mat * sel_k * inv
    pi_p = basis_mat * sel_p * inv
    assert pi_k + pi_p == Matrix.identity(g.dim)
    assert pi_k * pi_k == pi_k and pi_p * pi_p == pi_p and (pi_k * pi_p).is_zero()

    def _in_k(vec):
        return all(v == 0 for v in pi_p.apply(vec))

    def _in_p(vec):
        return all(v == 0 for v in pi_k.apply(vec))

    for a, x in enumerate(k_basis):
        for b, y in enumerate(k_basis):
            if b <= a:
                continue
            if not _in_k(g.bracket(x, y)):
                raise BracketViolation("[k,k] <= k", ("k%d" % a, "k%d" % b))
    for a, x in enumerate(k_basis):
        for b, y in enumerate(p_basis):
            if not _in_p(g.bracket(x, y)):
                raise BracketViolation("[k,p] <= p", ("k%d" % a, "p%d" % b))
    for a, x in enumerate(p_basis):
        for b, y in enumerate(p_basis):
            if b <= a:
                continue
            if not _in_k(g.bracket(x, y)):
                raise BracketViolation("[p,p] <= k", ("p%d" % a, "p%d" % b))

    k_idx = [_unit_index(v) for v in k_basis]
    p_idx = [_unit_index(v) for v in p_basis]
    adapted = all(i is not None for i in k_idx + p_idx) and len(set(k_idx + p_idx)) == g.dim
    return CartanDecomposition(
        g, k_basis, p_basis, pi_k, pi_p,
        tuple(k_idx) if adapted else None,
        tuple(p_idx) if adapted else None,
    )


def restricted_form(form: Matrix, basis: Sequence[Sequence]) -> Matrix:
    """The bilinear form pulled back to the span of ``basis``."""
    s = len(basis)
    entries = {}
    for a in range(s):
        va = form.apply(basis[a])
        for b in range(s):
            val = sum((Fraction(x) * y for x, y in zip(basis[b], va)), Fraction(0))
            if val:
                entries[(b, a)] = val
    return Matrix(s, s, entries)


def is_positive_definite(m: Matrix) -> bool:
    if m.nrows != m.ncols:
        raise DimensionMismatch("definiteness of a non-square matrix")
    for s in range(1, m.nrows + 1):
        sub = Matrix(s, s, {(i, j): m.entry(i, j) for i in range(s) for j in range(s) if m.entry(i, j)})
        if det(sub) <= 0:
            return False
    return True


def compact_dual(dec: CartanDecomposition) -> LieAlgebra:
    """Flip the sign of the [p,p] part of the bracket.

    The result lives on the ordered basis (k_basis..., p_basis...) of the
    parent, so k occupies the first block of indices.  Jacobi is re-verified
    unconditionally.  When the input is a genuine Cartan decomposition (the
    Killing form negative definite on k and positive definite on p) the dual
    must come out compact, and its Killing form is certified negative
    definite; applying the construction a second time undoes the flip and
    returns a noncompact table again, which is exactly the involution
    property, so no definiteness demand is made in that direction.
    """
    g = dec.parent
    if not is_semisimple(g):
        raise NotSemisimple("compact dual requires a nondegenerate Killing form")
    kf = killing_form(g)
    genuine = True
    if dec.k_basis:
        genuine = is_negative_definite(restricted_form(kf, dec.k_basis))
    if genuine and dec.p_basis:
        genuine = is_positive_definite(restricted_form(kf, dec.p_basis))
    dual = _dual_algebra(dec)
    if genuine and not is_negative_definite(killing_form(dual)):
        raise AssertionError("dual of a Cartan decomposition must be compact")
    return dual


def _dual_algebra(dec: CartanDecomposition) -> LieAlgebra:
    g = dec.parent
    nk = len(dec.k_basis)
    cols = dec.k_basis + dec.p_basis
    basis_mat = Matrix(g.dim, g.dim, {(i, j): cols[j][i] for j in range(g.dim) for i in range(g.dim) if cols[j][i]})
    inv = invert(basis_mat)
    table = {}
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            br = g.bracket(cols[i], cols[j])
            coords = inv.apply(br)
            if i >= nk and j >= nk:
                coords = [-v for v in coords]
            entry = {k: v for k, v in enumerate(coords) if v}
            if entry:
                table[(i, j)] = entry
    labels = ["k%d" % i for i in range(nk)] + ["p%d" % i for i in range(g.dim - nk)]
    # Jacobi is re-run by the constructor; for a validated symmetric
    # decomposition it cannot fail, so a failure here is an internal bug.
    return LieAlgebra(g.dim, table, labels)


def dual_pair(dec: CartanDecomposition) -> tuple[LieAlgebra, CartanDecomposition]:
    """The dual algebra together with its (adapted) k/p decomposition."""
    dual = compact_dual(dec)
    nk = len(dec.k_basis)
    unit = lambda i: [Fraction(1) if t == i else Fraction(0) for t in range(dual.dim)]
    dec_u = validate_decomposition(dual, [unit(i) for i in range(nk)], [unit(i) for i in range(nk, dual.dim)])
    return dual, dec_u


def subalgebra_check(g: LieAlgebra, basis) -> list[list[Fraction]]:
    """Certify that the span of ``basis`` is bracket-closed; returns the
    cleaned basis vectors.  Raises NotASubalgebra with a witness pair."""
    vecs = [[Fraction(v) for v in vec] for vec in basis]
    for vec in vecs:
        if len(vec) != g.dim:
            raise DimensionMismatch("basis vectors must have length %d" % g.dim)
    solver = SpanSolver(vecs)
    if solver.rank != len(vecs):
        raise ValidationFailure("subalgebra basis vectors are linearly dependent")
    for a in range(len(vecs)):
        for b in range(a + 1, len(vecs)):
            br = g.bracket(vecs[a], vecs[b])
            if not solver.contains({i: v for i, v in enumerate(br) if v}):
                raise NotASubalgebra((a, b))
    return vecs


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def algebra_to_json(g: LieAlgebra) -> dict:
    brackets = []
    for (i, j) in sorted(g.structure_table()):
        comp = g.bracket_basis(i, j)
        brackets.append({
            "i": i,
            "j": j,
            "result": [[k, format_rational(comp[k])] for k in sorted(comp)],
        })
    return {"dim": g.dim, "basis": list(g.basis_labels), "brackets": brackets}


def algebra_from_json(doc) -> LieAlgebra:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        dim = int(doc["dim"])
        labels = doc.get("basis")
        structure = {}
        for item in doc.get("brackets", []):
            i, j = int(item["i"]), int(item["j"])
            if not i < j:
                raise ValidationFailure("bracket entries must have i < j (got i=%d, j=%d)" % (i, j))
            structure[(i, j)] = [(int(k), rat(v)) for k, v in item["result"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationFailure("malformed algebra document: %s" % exc) from None
    return new_lie_algebra(structure, dim=dim, basis_labels=labels)


def decomposition_from_json(g: LieAlgebra, doc) -> CartanDecomposition:
    if isinstance(doc, str):
        doc = json.loads(doc)
    if "k_indices" in doc:
        k_idx = [int(i) for i in doc["k_indices"]]
        p_idx = [int(i) for i in doc["p_indices"]]
        if sorted(k_idx + p_idx) != list(range(g.dim)):
            raise ValidationFailure("k_indices and p_indices must partition 0..%d" % (g.dim - 1))
        unit = lambda i: [Fraction(1) if t == i else Fraction(0) for t in range(g.dim)]
        return validate_decomposition(g, [unit(i) for i in k_idx], [unit(i) for i in p_idx])
    try:
        k_basis = [[rat(v) for v in vec] for vec in doc["k_basis"]]
        p_basis = [[rat(v) for v in vec] for vec in doc["p_basis"]]
    except (KeyError, TypeError) as exc:
        raise ValidationFailure("malformed decomposition document: %s" % exc) from None
    return validate_decomposition(g, k_basis, p_basis)


def module_from_json(g: LieAlgebra, doc) -> CoefficientModule:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        mats = doc["action"]
    except (KeyError, TypeError) as exc:
        raise ValidationFailure("malformed module document: %s" % exc) from None
    if len(mats) != g.dim:
        raise ValidationFailure("module document needs %d action matrices" % g.dim)
    return module_from_matrices(g, mats)
