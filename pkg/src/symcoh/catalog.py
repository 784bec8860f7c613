"""Builtin symmetric pairs and curated classifying-space tables.

Every builtin group is constructed from an explicit matrix model: structure
constants are solved from commutators of basis matrices, the Jacobi identity
is re-verified by the algebra constructor, the k/p split is certified by
validate_decomposition, and (for semisimple parents) the compact dual is
built and its Killing form checked negative definite.  Nothing in here is
hand-typed structure data except the classifying-space presentations and the
primitive-degree lists, which are curated tables: the engine cross-checks
the primitive degrees against its own cohomology where it can reach
(k_cohomology_crosscheck), while the BK free parts are table data by nature.

Naming of the curated generators: C_m (Chern, cohomological degree 2m) for
u_n/su_n, P_j (Pontryagin, degree 4j) and E_q (Euler/Pfaffian, degree 2q)
for so_n, Q_j (degree 4j) for the compact symplectic algebras.  The listed
rings are free; the recorded relation E_q^2 = P_q defines the Pontryagin
class that the even-orthogonal list omits and has no effect on enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SizeLimit, UnknownAlgebra, UnknownGroup, ValidationFailure
from .liealg import (
    CartanDecomposition,
    LieAlgebra,
    algebra_from_json,
    compact_dual,
    decomposition_from_json,
    is_negative_definite,
    is_semisimple,
    killing_form,
    new_lie_algebra,
    trivial_module,
    validate_decomposition,
)
from .matrices import SpanSolver
from .scalars import G_ONE, G_ZERO, GI, GaussianRational, Q

__all__ = [
    "GradedRingPresentation",
    "Monomial",
    "GroupSpec",
    "CompactModel",
    "compact_model",
    "compact_model_names",
    "builtin_group",
    "builtin_group_names",
    "custom_group",
    "monomial_basis",
    "exterior_betti",
    "k_cohomology_crosscheck",
    "model_inclusion",
    "gmat_add",
    "gmat_sub",
    "gmat_mul",
    "gmat_scale",
    "gmat_trace",
    "gmat_zero",
]


# ---------------------------------------------------------------------------
# small complex-matrix helpers (lists of lists of GaussianRational)
# ---------------------------------------------------------------------------

def gmat_zero(n: int) -> list[list[GaussianRational]]:
    return [[G_ZERO for _ in range(n)] for _ in range(n)]


def _gE(n: int, a: int, b: int, val: GaussianRational = G_ONE):
    m = gmat_zero(n)
    m[a][b] = val
    return m


def gmat_add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def gmat_sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def gmat_scale(A, s: GaussianRational):
    return [[s * x for x in row] for row in A]


def gmat_mul(A, B):
    n = len(A)
    k = len(B)
    m = len(B[0]) if B else 0
    out = [[G_ZERO for _ in range(m)] for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if a.re == 0 and a.im == 0:
                continue
            Bt = B[t]
            for j in range(m):
                b = Bt[j]
                if b.re == 0 and b.im == 0:
                    continue
                row[j] = row[j] + a * b
    return out


def gmat_trace(A) -> GaussianRational:
    t = G_ZERO
    for i in range(len(A)):
        t = t + A[i][i]
    return t


def _commutator(A, B):
    return gmat_sub(gmat_mul(A, B), gmat_mul(B, A))


def _coordinatize(mat) -> list[Fraction]:
    flat = []
    for row in mat:
        for x in row:
            flat.append(x.re)
    for row in mat:
        for x in row:
            flat.append(x.im)
    return flat


def _structure_from_matrices(mats, labels=None) -> LieAlgebra:
    """Abstract algebra with the commutator structure of the given matrices."""
    solver = SpanSolver([_coordinatize(m) for m in mats])
    assert solver.rank == len(mats), "model matrices are linearly dependent"
    structure = {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            c = _commutator(mats[i], mats[j])
            coeffs = solver.solve(_coordinatize(c))
            assert coeffs is not None, "model matrices do not close under commutators"
            terms = [(k, v) for k, v in enumerate(coeffs) if v]
            if terms:
                structure[(i, j)] = terms
    return new_lie_algebra(structure, dim=len(mats), basis_labels=labels)


# ---------------------------------------------------------------------------
# compact algebra models
# ---------------------------------------------------------------------------

def _so_matrices(n: int):
    return [gmat_sub(_gE(n, a, b), _gE(n, b, a))
            for a, b in itertools.combinations(range(n), 2)]


def _su_matrices(n: int):
    out = []
    for a, b in itertools.combinations(range(n), 2):
        out.append(gmat_sub(_gE(n, a, b), _gE(n, b, a)))
        out.append(gmat_add(_gE(n, a, b, GI), _gE(n, b, a, GI)))
    for j in range(n - 1):
        out.append(gmat_add(_gE(n, j, j, GI), _gE(n, j + 1, j + 1, GI * GaussianRational(-1))))
    return out


def _u_matrices(n: int):
    out = _su_matrices(n)
    ident = gmat_zero(n)
    for j in range(n):
        ident[j][j] = GI
    out.append(ident)
    return out


def _quat(a, b, c, d):
    """a + bi + cj + dk as a 2x2 complex matrix."""
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    return [
        [GaussianRational(a, b), GaussianRational(c, d)],
        [GaussianRational(-c, d), GaussianRational(a, -b)],
    ]


_QUAT_UNITS = {
    "1": (1, 0, 0, 0),
    "i": (0, 1, 0, 0),
    "j": (0, 0, 1, 0),
    "k": (0, 0, 0, 1),
}


def _quat_conj(unit):
    a, b, c, d = unit
    return (a, -b, -c, -d)


def _quat_block(n: int, r: int, s: int, unit) -> list[list[GaussianRational]]:
    """e_rs tensor q inside the complex 2n x 2n model."""
    m = gmat_zero(2 * n)
    q = _quat(*unit)
    for u in range(2):
        for v in range(2):
            m[2 * r + u][2 * s + v] = q[u][v]
    return m


def _sp_compact_matrices(n: int):
    out = []
    for a, b in itertools.combinations(range(n), 2):
        for key in ("1", "i", "j", "k"):
            unit = _QUAT_UNITS[key]
            out.append(gmat_sub(_quat_block(n, a, b, unit),
                                _quat_block(n, b, a, _quat_conj(unit))))
    for a in range(n):
        for key in ("i", "j", "k"):
            out.append(_quat_block(n, a, a, _QUAT_UNITS[key]))
    return out


@dataclass(frozen=True)
class GradedRingPresentation:
    """Generators (name, cohomological degree) of a free graded ring.

    ``relations`` is provenance: for even orthogonal tables it records
    E_q^2 = P_q, the definition of the omitted top Pontryagin class.  The
    listed generator set is free, so relations never affect enumeration.
    """

    generators: tuple
    relations: tuple = ()
    note: str = ""


@dataclass(frozen=True)
class Monomial:
    label: str
    exponents: tuple
    degree: int


def _bso(n: int) -> GradedRingPresentation:
    q = n // 2
    if n % 2 == 1:
        gens = tuple(("P_%d" % i, 4 * i) for i in range(1, q + 1))
        rels = ()
    else:
        gens = tuple(("P_%d" % i, 4 * i) for i in range(1, q)) + (("E_%d" % q, 2 * q),)
        rels = (("E_%d^2" % q, "P_%d" % q),)
    return GradedRingPresentation(gens, rels, "free part of the orthogonal table; 2-torsion omitted")


def _bsu(n: int) -> GradedRingPresentation:
    return GradedRingPresentation(tuple(("C_%d" % i, 2 * i) for i in range(2, n + 1)),
                                  (), "special unitary table")


def _bu(n: int) -> GradedRingPresentation:
    return GradedRingPresentation(tuple(("C_%d" % i, 2 * i) for i in range(1, n + 1)),
                                  (), "unitary table")


def _bsp(n: int) -> GradedRingPresentation:
    return GradedRingPresentation(tuple(("Q_%d" % i, 4 * i) for i in range(1, n + 1)),
                                  (), "compact symplectic table")


_PRIMITIVE = {
    "so_2": (1,), "so_3": (3,), "so_4": (3, 3), "so_5": (3, 7), "so_6": (3, 5, 7),
    "su_2": (3,), "su_3": (3, 5), "su_4": (3, 5, 7),
    "u_1": (1,), "u_2": (1, 3),
    "sp_1_compact": (3,), "sp_2_compact": (3, 7),
}


@dataclass(frozen=True)
class CompactModel:
    """A compact algebra: abstract structure plus representing matrices."""

    name: str
    algebra: LieAlgebra
    matrices: tuple
    matrix_size: int
    primitive_degrees: tuple
    bk: GradedRingPresentation


_MODEL_CACHE: dict = {}


def _build_model(name: str) -> CompactModel:
    if name.startswith("so_"):
        n = int(name[3:])
        if not 2 <= n <= 6:
            raise UnknownAlgebra(name)
        mats = _so_matrices(n)
        bk = _bso(n)
        size = n
    elif name.startswith("su_"):
        n = int(name[3:])
        if not 2 <= n <= 4:
            raise UnknownAlgebra(name)
        mats = _su_matrices(n)
        bk = _bsu(n)
        size = n
    elif name.startswith("u_"):
        n = int(name[2:])
        if not 1 <= n <= 2:
            raise UnknownAlgebra(name)
        mats = _u_matrices(n)
        bk = _bu(n)
        size = n
    elif name.endswith("_compact") and name.startswith("sp_"):
        n = int(name[3:-8])
        if not 1 <= n <= 2:
            raise UnknownAlgebra(name)
        mats = _sp_compact_matrices(n)
        bk = _bsp(n)
        size = 2 * n
    else:
        raise UnknownAlgebra(name)
    algebra = _structure_from_matrices(mats)
    return CompactModel(name, algebra, tuple(tuple(tuple(r) for r in m) for m in mats),
                        size, _PRIMITIVE[name], bk)


def compact_model(name: str) -> CompactModel:
    if name not in _MODEL_CACHE:
        _MODEL_CACHE[name] = _build_model(name)
    return _MODEL_CACHE[name]


def compact_model_names() -> list[str]:
    return sorted(_PRIMITIVE)


def model_inclusion(small_name: str, big_name: str) -> list[list[Fraction]]:
    """Columns expressing the small model's matrices in the big model basis."""
    small = compact_model(small_name)
    big = compact_model(big_name)
    if small.matrix_size != big.matrix_size:
        raise ValidationFailure("models act on different matrix sizes")
    solver = SpanSolver([_coordinatize([list(r) for r in m]) for m in big.matrices])
    cols = []
    for m in small.matrices:
        coeffs = solver.solve(_coordinatize([list(r) for r in m]))
        if coeffs is None:
            raise ValidationFailure(
                "the %s model does not sit inside the %s model" % (small_name, big_name))
        cols.append(coeffs)
    return cols


# ---------------------------------------------------------------------------
# group specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    name: str
    g: LieAlgebra
    dec: CartanDecomposition
    k_name: str | None
    dual_name: str
    bk_presentation: GradedRingPresentation
    k_primitive_degrees: tuple | None
    coefficients: tuple = (("lattice", "Z"), ("vector", "R"), ("circle", "U(1)"))
    torsion_omitted: bool = False
    index_caveat: str = ""


def _unit(dim: int, i: int) -> list[Fraction]:
    return [Fraction(1) if t == i else Fraction(0) for t in range(dim)]


def _make_spec(name, k_mats, p_mats, k_name, dual_name, index_caveat="") -> GroupSpec:
    nk, np_ = len(k_mats), len(p_mats)
    labels = ["k%d" % i for i in range(nk)] + ["p%d" % i for i in range(np_)]
    g = _structure_from_matrices(k_mats + p_mats, labels)
    dec = validate_decomposition(
        g,
        [_unit(g.dim, i) for i in range(nk)],
        [_unit(g.dim, nk + i) for i in range(np_)],
    )
    model = compact_model(k_name)
    assert model.algebra.dim == nk
    for i in range(nk):
        for j in range(i + 1, nk):
            assert g.bracket_basis(i, j) == model.algebra.bracket_basis(i, j), (
                "k-block structure of %s disagrees with the %s model on (%d, %d)"
                % (name, k_name, i, j))
    if is_semisimple(g):
        dual = compact_dual(dec)
        assert is_negative_definite(killing_form(dual)), (
            "compact dual of %s failed the definiteness check" % name)
    return GroupSpec(
        name=name,
        g=g,
        dec=dec,
        k_name=k_name,
        dual_name=dual_name,
        bk_presentation=model.bk,
        k_primitive_degrees=model.primitive_degrees,
        torsion_omitted=k_name.startswith("so_"),
        index_caveat=index_caveat,
    )


def _sym_matrices(n: int):
    """Symmetric n x n basis: off-diagonal sums then diagonal units."""
    out = [gmat_add(_gE(n, a, b), _gE(n, b, a))
           for a, b in itertools.combinations(range(n), 2)]
    out.extend(_gE(n, a, a) for a in range(n))
    return out


def _build_sl_r(n: int) -> GroupSpec:
    k_mats = _so_matrices(n)
    p_mats = [gmat_add(_gE(n, a, b), _gE(n, b, a))
              for a, b in itertools.combinations(range(n), 2)]
    for j in range(n - 1):
        p_mats.append(gmat_sub(_gE(n, j, j), _gE(n, j + 1, j + 1)))
    return _make_spec("SL(%d,R)" % n, k_mats, p_mats, "so_%d" % n, "SU(%d)" % n)


def _build_sl_c(n: int) -> GroupSpec:
    k_mats = _su_matrices(n)
    p_mats = [gmat_scale(m, GI) for m in k_mats]
    return _make_spec(
        "SL(%d,C)" % n, k_mats, p_mats, "su_%d" % n,
        "SU(%d) x SU(%d)" % (n, n),
        index_caveat=(
            "lattice summand indexed at degree n+1; a common convention for "
            "complex groups quotes the same split with the lattice part at "
            "degree n. Flagged, not reconciled."),
    )


def _build_su_star_4() -> GroupSpec:
    k_mats = _sp_compact_matrices(2)
    p_mats = []
    for key in ("1", "i", "j", "k"):
        unit = _QUAT_UNITS[key]
        p_mats.append(gmat_add(_quat_block(2, 0, 1, unit),
                               _quat_block(2, 1, 0, _quat_conj(unit))))
    p_mats.append(gmat_sub(_quat_block(2, 0, 0, _QUAT_UNITS["1"]),
                           _quat_block(2, 1, 1, _QUAT_UNITS["1"])))
    return _make_spec("SU*(4)", k_mats, p_mats, "sp_2_compact", "SU(4)")


def _embed_symplectic(u_mat) -> list[list[GaussianRational]]:
    """u(n) complex matrix A + iB into sp(n, R) as [[A, B], [-B, A]]."""
    n = len(u_mat)
    out = gmat_zero(2 * n)
    for r in range(n):
        for s in range(n):
            x = u_mat[r][s]
            out[r][s] = GaussianRational(x.re)
            out[r][n + s] = GaussianRational(x.im)
            out[n + r][s] = GaussianRational(-x.im)
            out[n + r][n + s] = GaussianRational(x.re)
    return out


def _build_sp_r(n: int) -> GroupSpec:
    k_mats = [_embed_symplectic(m) for m in _u_matrices(n)]
    p_mats = []
    syms = _sym_matrices(n)
    for s in syms:
        out = gmat_zero(2 * n)
        for r in range(n):
            for c in range(n):
                out[r][c] = s[r][c]
                out[n + r][n + c] = GaussianRational(0) - s[r][c]
        p_mats.append(out)
    for s in syms:
        out = gmat_zero(2 * n)
        for r in range(n):
            for c in range(n):
                out[r][n + c] = s[r][c]
                out[n + r][c] = s[r][c]
        p_mats.append(out)
    return _make_spec("Sp(%d,R)" % n, k_mats, p_mats, "u_%d" % n, "Sp(%d)" % n)


def _build_su(n: int) -> GroupSpec:
    return _make_spec("SU(%d)" % n, _su_matrices(n), [], "su_%d" % n, "SU(%d)" % n)


def _build_so(n: int) -> GroupSpec:
    return _make_spec("SO(%d)" % n, _so_matrices(n), [], "so_%d" % n, "SO(%d)" % n)


_BUILDERS = {}
for _n in range(2, 7):
    _BUILDERS["SL(%d,R)" % _n] = (lambda n=_n: _build_sl_r(n))
for _n in range(2, 4):
    _BUILDERS["SL(%d,C)" % _n] = (lambda n=_n: _build_sl_c(n))
_BUILDERS["SU*(4)"] = _build_su_star_4
for _n in range(1, 3):
    _BUILDERS["Sp(%d,R)" % _n] = (lambda n=_n: _build_sp_r(n))
for _n in range(2, 5):
    _BUILDERS["SU(%d)" % _n] = (lambda n=_n: _build_su(n))
for _n in range(3, 6):
    _BUILDERS["SO(%d)" % _n] = (lambda n=_n: _build_so(n))

_SPEC_CACHE: dict = {}


def builtin_group(name: str) -> GroupSpec:
    """Look up and construct one of the builtin groups by its literal name.

    >>> builtin_group("SL(2,R)").g.dim
    3
    >>> builtin_group("SU*(4)").g.dim
    15
    """
    key = name.strip()
    if key not in _BUILDERS:
        raise UnknownGroup(name)
    if key not in _SPEC_CACHE:
        _SPEC_CACHE[key] = _BUILDERS[key]()
    return _SPEC_CACHE[key]


def builtin_group_names() -> list[str]:
    return sorted(_BUILDERS)


def custom_group(algebra_doc: dict, decomposition_doc: dict, name: str = "custom") -> GroupSpec:
    """A GroupSpec from user JSON documents (no classifying-space data)."""
    g = algebra_from_json(algebra_doc)
    dec = decomposition_from_json(g, decomposition_doc)
    return GroupSpec(
        name=name,
        g=g,
        dec=dec,
        k_name=None,
        dual_name="(custom dual)",
        bk_presentation=GradedRingPresentation((), (), "no table data for custom pairs"),
        k_primitive_degrees=None,
        torsion_omitted=False,
    )


# ---------------------------------------------------------------------------
# monomial enumeration and the K-side crosscheck
# ---------------------------------------------------------------------------

def monomial_basis(pres: GradedRingPresentation, degree: int) -> list[Monomial]:
    """All monomials of the given cohomological degree, generator order first.

    >>> [m.label for m in monomial_basis(_bu(2), 4)]
    ['C_1^2', 'C_2']
    >>> [m.label for m in monomial_basis(_bso(4), 8)]
    ['P_1^2', 'P_1*E_2', 'E_2^2']
    >>> [m.label for m in monomial_basis(_bu(2), 0)]
    ['1']
    """
    if degree < 0:
        raise ValidationFailure("monomial degree must be nonnegative")
    gens = pres.generators
    out: list[Monomial] = []

    def rec(idx: int, remaining: int, expo: list):
        if remaining == 0:
            expo = expo + [0] * (len(gens) - len(expo))
            out.append(Monomial(_monomial_label(gens, expo), tuple(expo), degree))
            return
        if idx == len(gens):
            return
        d = gens[idx][1]
        for power in range(remaining // d, -1, -1):
            rec(idx + 1, remaining - power * d, expo + [power])

    rec(0, degree, [])
    return out


def _monomial_label(gens, expo) -> str:
    parts = []
    for (gname, _d), e in zip(gens, expo):
        if e == 0:
            continue
        parts.append(gname if e == 1 else "%s^%d" % (gname, e))
    return "*".join(parts) if parts else "1"


def exterior_betti(primitive_degrees) -> list[int]:
    """Betti numbers of the exterior algebra on the given generator degrees."""
    coeffs = [1]
    for d in primitive_degrees:
        new = coeffs + [0] * d
        for i, c in enumerate(coeffs):
            new[i + d] += c
        coeffs = new
    return coeffs


def k_cohomology_crosscheck(spec: GroupSpec, limit: int | None = None) -> bool:
    """Engine-computed betti of k against the curated primitive degrees."""
    from .cecohomology import DEFAULT_MAX_EXTERIOR_DIM, cohomology, full_complex

    if spec.k_name is None:
        raise UnknownAlgebra("(custom pair has no named compact model)")
    model = compact_model(spec.k_name)
    k = model.algebra
    res = cohomology(
        full_complex(k, trivial_module(k),
                     limit if limit is not None else DEFAULT_MAX_EXTERIOR_DIM),
        k.dim,
    )
    expected = exterior_betti(model.primitive_degrees)
    expected += [0] * (k.dim + 1 - len(expected))
    return res.betti_list() == expected[: k.dim + 1]
