"""Invariant symmetric forms on compact algebras and their curvature images.

The classical generators are built from matrix models: power-trace forms
t_r(Y_1,...,Y_r) = sym tr((iY_1)...(iY_r)) feed Newton's identities to
produce the Chern forms C_m, the same machinery over plain traces gives the
even elementary-symmetric (Pontryagin) forms P_j on the orthogonal algebras,
and the Pfaffian E_q on so_2q is the polarized perfect-matching sum.  All
trace arithmetic runs over Gaussian rationals; every exported value is
asserted real.

The curvature of a validated split g = k + p is the k-valued 2-form
Omega(x, y) = 1/2 pi_k [pi_p x, pi_p y], and an invariant m-form P maps to
the relative 2m-cochain

    cw(P)(x_1,...,x_2m)
        = m! * sum over perfect matchings {(a_i, b_i)} of the argument slots
          of sgn * P(Omega(x_{a_1}, x_{b_1}), ..., Omega(x_{a_m}, x_{b_m})).

This equals (1/2^m) sum_{sigma in S_2m} sgn(sigma) P(Omega(x_sigma1,
x_sigma2), ...): the matching form just collapses the 2^m m! permutations
that repeat each term.  The normalization is frozen by two requirements
checked in the test suite: at m = 1 the cochain is exactly
P(1/2 [pi_p x, pi_p y]), and class-level multiplicativity
[cw(P.Q)] = [cw(P) cup cw(Q)] holds with constant exactly 1.  Horizontality,
invariance and closedness of every produced cochain are certified per call.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .catalog import (
    CompactModel,
    GroupSpec,
    Monomial,
    compact_model,
    gmat_mul,
    gmat_scale,
    gmat_trace,
    monomial_basis,
)
from .cecohomology import (
    DEFAULT_MAX_EXTERIOR_DIM,
    Cochain,
    CochainSpace,
    CohomologyResult,
    cohomology,
    d_apply,
    insertion,
    lie_derivative,
    relative_complex,
)
from .errors import (
    AlgebraMismatch,
    NonTrivialCoefficients,
    NotAMorphism,
    NotInvariant,
    NotSemisimple,
    UnknownAlgebra,
)
from .liealg import CartanDecomposition, LieAlgebra, is_semisimple, trivial_module
from .matrices import Matrix, SpanSolver, kernel_basis, rank as matrix_rank
from .scalars import GI, GaussianRational

__all__ = [
    "InvariantPolynomial",
    "InvarianceVerdict",
    "invariance_check",
    "constant_form",
    "trace_form",
    "pfaffian_form",
    "invariant_generators",
    "generators_by_name",
    "poly_product",
    "curvature",
    "cw",
    "restrict_polynomial",
    "EpsilonData",
    "epsilon_rank",
]


class InvariantPolynomial:
    """A symmetric m-linear form on a Lie algebra, stored per multiset.

    ``values`` maps ascending index tuples of length ``degree`` to rationals;
    evaluation on arbitrary argument tuples reads the sorted key.  Forms are
    immutable; arithmetic returns new objects.
    """

    __slots__ = ("algebra", "degree", "values", "name")

    def __init__(self, algebra: LieAlgebra, degree: int, values: dict, name: str = ""):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "degree", degree)
        clean = {}
        for key, v in values.items():
            key = tuple(key)
            assert list(key) == sorted(key) and len(key) == degree
            v = Fraction(v)
            if v:
                clean[key] = v
        object.__setattr__(self, "values", clean)
        object.__setattr__(self, "name", name)

    def __setattr__(self, *a):
        raise AttributeError("InvariantPolynomial is immutable")

    def is_zero(self) -> bool:
        return not self.values

    def value(self, indices) -> Fraction:
        return self.values.get(tuple(sorted(indices)), Fraction(0))

    def evaluate(self, vectors) -> Fraction:
        """Multilinear evaluation on coordinate vectors (lists or dicts)."""
        if len(vectors) != self.degree:
            raise AlgebraMismatch("form of degree %d got %d arguments"
                                  % (self.degree, len(vectors)))
        supports = []
        for vec in vectors:
            if isinstance(vec, dict):
                supports.append([(i, Fraction(v)) for i, v in vec.items() if v])
            else:
                supports.append([(i, Fraction(v)) for i, v in enumerate(vec) if v])
        total = Fraction(0)
        for picks in itertools.product(*supports):
            key = tuple(sorted(i for i, _v in picks))
            base = self.values.get(key)
            if base is None:
                continue
            coef = Fraction(1)
            for _i, v in picks:
                coef *= v
            total += coef * base
        return total

    def add(self, other: "InvariantPolynomial") -> "InvariantPolynomial":
        assert other.algebra == self.algebra and other.degree == self.degree
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, Fraction(0)) + v
        return InvariantPolynomial(self.algebra, self.degree, out, self.name)

    def scale(self, s) -> "InvariantPolynomial":
        s = Fraction(s)
        return InvariantPolynomial(self.algebra, self.degree,
                                   {k: s * v for k, v in self.values.items()}, self.name)

    def rename(self, name: str) -> "InvariantPolynomial":
        return InvariantPolynomial(self.algebra, self.degree, self.values, name)

    def __repr__(self):
        return "<InvariantPolynomial %s deg=%d, %d values>" % (
            self.name or "?", self.degree, len(self.values))


@dataclass(frozen=True)
class InvarianceVerdict:
    ok: bool
    witness: tuple | None

    def __bool__(self):
        return self.ok


def invariance_check(P: InvariantPolynomial) -> InvarianceVerdict:
    """Exhaustive infinitesimal invariance: for every basis multiset and every
    basis direction y, sum_s P(..., [x_s, y], ...) must vanish."""
    g = P.algebra
    for ms in itertools.combinations_with_replacement(range(g.dim), P.degree):
        for y in range(g.dim):
            total = Fraction(0)
            for s in range(P.degree):
                comp = g.bracket_basis(ms[s], y)
                if not comp:
                    continue
                rest = ms[:s] + ms[s + 1:]
                for k, c in comp.items():
                    total += c * P.value(rest + (k,))
            if total:
                return InvarianceVerdict(False, (ms, y))
    return InvarianceVerdict(True, None)


def constant_form(algebra: LieAlgebra, value=1) -> InvariantPolynomial:
    return InvariantPolynomial(algebra, 0, {(): Fraction(value)}, "1")


def poly_product(P: InvariantPolynomial, Q: InvariantPolynomial) -> InvariantPolynomial:
    """Symmetrized product: the polarization of x -> P(x,..)Q(x,..).

    R(Y_1,...,Y_{m+l}) averages P tensor Q over all position subsets, which
    is the S_{m+l} symmetrization collapsed over equal terms.
    """
    if P.algebra != Q.algebra:
        raise AlgebraMismatch("product of forms over different algebras")
    m, l = P.degree, Q.degree
    total = m + l
    if m == 0:
        return Q.scale(P.value(())).rename("%s*%s" % (P.name, Q.name))
    if l == 0:
        return P.scale(Q.value(())).rename("%s*%s" % (P.name, Q.name))
    from math import comb
    norm = Fraction(1, comb(total, m))
    out: dict = {}
    for ms in itertools.combinations_with_replacement(range(P.algebra.dim), total):
        acc = Fraction(0)
        for subset in itertools.combinations(range(total), m):
            sub = tuple(ms[i] for i in subset)
            restpos = [i for i in range(total) if i not in subset]
            rest = tuple(ms[i] for i in restpos)
            a = P.value(sub)
            if not a:
                continue
            b = Q.value(rest)
            if b:
                acc += a * b
        if acc:
            out[ms] = acc * norm
    name = "%s*%s" % (P.name or "?", Q.name or "?")
    return InvariantPolynomial(P.algebra, total, out, name)


# ---------------------------------------------------------------------------
# classical generators from matrix models
# ---------------------------------------------------------------------------

class _ProductCache:
    """Traces of words in a fixed list of matrices, with halving reuse."""

    def __init__(self, mats):
        self.mats = mats
        self.cache: dict = {}

    def product(self, word: tuple):
        if word in self.cache:
            return self.cache[word]
        if len(word) == 1:
            out = self.mats[word[0]]
        else:
            half = len(word) // 2
            out = gmat_mul(self.product(word[:half]), self.product(word[half:]))
        self.cache[word] = out
        return out

    def trace(self, word: tuple) -> GaussianRational:
        if len(word) == 1:
            return gmat_trace(self.mats[word[0]])
        half = len(word) // 2
        left = self.product(word[:half])
        right = self.product(word[half:])
        t = GaussianRational(0)
        n = len(left)
        for i in range(n):
            for j in range(n):
                a = left[i][j]
                if a.re == 0 and a.im == 0:
                    continue
                b = right[j][i]
                if b.re == 0 and b.im == 0:
                    continue
                t = t + a * b
        return t


def _model_trace_form(model: CompactModel, r: int, multiply_by_i: bool,
                      name: str) -> InvariantPolynomial:
    mats = [[list(row) for row in m] for m in model.matrices]
    if multiply_by_i:
        mats = [gmat_scale(m, GI) for m in mats]
    cache = _ProductCache(mats)
    dim = model.algebra.dim
    values = {}
    from math import factorial
    for ms in itertools.combinations_with_replacement(range(dim), r):
        acc = GaussianRational(0)
        for perm in itertools.permutations(ms):
            acc = acc + cache.trace(perm)
        v = acc.real_part()  # asserts no imaginary residue
        v = Fraction(v, factorial(r))
        if v:
            values[ms] = v
    return InvariantPolynomial(model.algebra, r, values, name)


def trace_form(k_name: str, r: int) -> InvariantPolynomial:
    """The symmetrized power trace t_r(Y_1..Y_r) = sym tr((iY_1)...(iY_r)).

    On real antisymmetric arguments the odd forms vanish identically, which
    is what makes the unitary-to-orthogonal restriction kill them.
    """
    if r < 1:
        raise AlgebraMismatch("trace forms need degree >= 1")
    return _model_trace_form(compact_model(k_name), r, True, "t_%d" % r)


def _newton_elementary(traces, m: int, algebra: LieAlgebra) -> list[InvariantPolynomial]:
    """e_0..e_m from the power-trace forms via Newton's identities."""
    es = [constant_form(algebra)]
    for k in range(1, m + 1):
        acc = None
        for r in range(1, k + 1):
            term = poly_product(es[k - r], traces[r - 1])
            if r % 2 == 0:
                term = term.scale(-1)
            acc = term if acc is None else acc.add(term)
        es.append(acc.scale(Fraction(1, k)))
    return es


def _perfect_matchings(count: int):
    """All perfect matchings of range(count) with the sign of the flattened
    permutation; count must be even."""
    out = []

    def rec(remaining: tuple, acc: list):
        if not remaining:
            flat = [x for pair in acc for x in pair]
            inv = sum(1 for a in range(len(flat)) for b in range(a + 1, len(flat))
                      if flat[a] > flat[b])
            out.append((tuple(acc), -1 if inv % 2 else 1))
            return
        first = remaining[0]
        for idx in range(1, len(remaining)):
            rest = remaining[1:idx] + remaining[idx + 1:]
            rec(rest, acc + [(first, remaining[idx])])

    rec(tuple(range(count)), [])
    return out


def pfaffian_form(k_name: str) -> InvariantPolynomial:
    """The polarized Pfaffian on so_2q: a q-linear invariant form.

    E_q(Y_1,...,Y_q) = (1/q!) sum over slot assignments rho and perfect
    matchings {(a_i,b_i)} of sgn * prod_i (Y_rho(i))_{a_i, b_i}.
    """
    model = compact_model(k_name)
    if not k_name.startswith("so_") or model.matrix_size % 2:
        raise UnknownAlgebra("pfaffian needs an even orthogonal model, not %r" % k_name)
    q = model.matrix_size // 2
    mats = model.matrices
    matchings = _perfect_matchings(2 * q)
    from math import factorial
    values = {}
    for ms in itertools.combinations_with_replacement(range(model.algebra.dim), q):
        acc = Fraction(0)
        for rho in itertools.permutations(range(q)):
            for pairs, sign in matchings:
                prod = Fraction(sign)
                for slot, (a, b) in enumerate(pairs):
                    entry = mats[ms[rho[slot]]][a][b]
                    assert entry.im == 0
                    if not entry.re:
                        prod = Fraction(0)
                        break
                    prod *= entry.re
                if prod:
                    acc += prod
        v = acc / factorial(q)
        if v:
            values[ms] = v
    return InvariantPolynomial(model.algebra, q, values, "E_%d" % q)


_GENERATOR_CACHE: dict = {}


def generators_by_name(k_name: str, max_degree: int) -> dict:
    """The curated classifying-space generators with cohomological degree at
    most max_degree, keyed by their table label."""
    key = (k_name, max_degree)
    if key in _GENERATOR_CACHE:
        return _GENERATOR_CACHE[key]
    model = compact_model(k_name)
    wanted = [(name, deg) for name, deg in model.bk.generators if deg <= max_degree]
    out: dict = {}
    if k_name.startswith(("su_", "u_")):
        ms = [int(name.split("_")[1]) for name, _d in wanted]
        if ms:
            top = max(ms)
            traces = [_model_trace_form(model, r, True, "t_%d" % r) for r in range(1, top + 1)]
            es = _newton_elementary(traces, top, model.algebra)
            for name, _deg in wanted:
                m = int(name.split("_")[1])
                out[name] = es[m].rename(name)
    elif k_name.startswith("sp_"):
        ms = [2 * int(name.split("_")[1]) for name, _d in wanted]
        if ms:
            top = max(ms)
            traces = [_model_trace_form(model, r, True, "t_%d" % r) for r in range(1, top + 1)]
            es = _newton_elementary(traces, top, model.algebra)
            for name, _deg in wanted:
                j = int(name.split("_")[1])
                out[name] = es[2 * j].rename(name)
    elif k_name.startswith("so_"):
        pj = [int(name.split("_")[1]) for name, _d in wanted if name.startswith("P_")]
        if pj:
            top = 2 * max(pj)
            traces = [_model_trace_form(model, r, False, "tr_%d" % r) for r in range(1, top + 1)]
            es = _newton_elementary(traces, top, model.algebra)
            for j in pj:
                out["P_%d" % j] = es[2 * j].rename("P_%d" % j)
        for name, _deg in wanted:
            if name.startswith("E_"):
                out[name] = pfaffian_form(k_name)
    else:
        raise UnknownAlgebra(k_name)
    for name, form in out.items():
        verdict = invariance_check(form)
        assert verdict.ok, "constructed generator %s failed invariance at %s" % (
            name, verdict.witness)
    _GENERATOR_CACHE[key] = out
    return out


def invariant_generators(k_name: str, max_degree: int) -> list[InvariantPolynomial]:
    """The classical generators for a named compact algebra, in table order."""
    model = compact_model(k_name)
    by_name = generators_by_name(k_name, max_degree)
    return [by_name[name] for name, deg in model.bk.generators if deg <= max_degree]


# ---------------------------------------------------------------------------
# curvature and the Chern-Weil map
# ---------------------------------------------------------------------------

def _k_coordinate_solver(dec: CartanDecomposition) -> SpanSolver:
    return SpanSolver([{i: v for i, v in enumerate(vec) if v} for vec in dec.k_basis])


def curvature(dec: CartanDecomposition, x, y) -> list[Fraction]:
    """Omega(x, y) = 1/2 pi_k [pi_p x, pi_p y], in k-basis coordinates."""
    g = dec.parent
    px = dec.pi_p.apply([Fraction(v) for v in x])
    py = dec.pi_p.apply([Fraction(v) for v in y])
    br = g.bracket(px, py)
    kpart = dec.pi_k.apply(br)
    coeffs = _k_coordinate_solver(dec).solve({i: v for i, v in enumerate(kpart) if v})
    assert coeffs is not None, "pi_k image fell outside the span of the k basis"
    return [Fraction(1, 2) * c for c in coeffs]


def _curvature_table(dec: CartanDecomposition) -> dict:
    """(i, j) -> sparse k-coordinates of Omega(e_i, e_j), i < j, nonzero only."""
    g = dec.parent
    solver = _k_coordinate_solver(dec)
    pcols = dec.pi_p.col_dicts()
    table = {}
    for i in range(g.dim):
        if not pcols[i]:
            continue
        xi = [pcols[i].get(t, Fraction(0)) for t in range(g.dim)]
        for j in range(i + 1, g.dim):
            if not pcols[j]:
                continue
            xj = [pcols[j].get(t, Fraction(0)) for t in range(g.dim)]
            br = g.bracket(xi, xj)
            kpart = dec.pi_k.apply(br)
            sparse = {t: v for t, v in enumerate(kpart) if v}
            if not sparse:
                continue
            coeffs = solver.solve(sparse)
            assert coeffs is not None
            vec = {a: Fraction(1, 2) * c for a, c in enumerate(coeffs) if c}
            if vec:
                table[(i, j)] = vec
    return table


def cw(P: InvariantPolynomial, dec: CartanDecomposition, module=None,
       limit: int = DEFAULT_MAX_EXTERIOR_DIM, certify: bool = True) -> Cochain:
    """The closed relative 2m-cochain of an invariant m-form.

    Certification (on by default) re-checks horizontality, invariance under
    every k-basis vector, and closedness of the produced cochain.
    """
    g = dec.parent
    if module is not None and not (module.trivial and module.dim == 1):
        raise NonTrivialCoefficients("the curvature image lives in trivial coefficients")
    if not is_semisimple(g):
        raise NotSemisimple("the parent algebra must have nondegenerate Killing form")
    nk = len(dec.k_basis)
    if P.algebra.dim != nk:
        raise AlgebraMismatch("form lives on a %d-dim algebra, k has dim %d"
                              % (P.algebra.dim, nk))
    verdict = invariance_check(P)
    if not verdict:
        raise NotInvariant(P.name or "form", verdict.witness)
    triv = module if module is not None else trivial_module(g)
    m = P.degree
    if m == 0:
        return Cochain(g, triv, 0, {0: P.value(())})
    from math import factorial
    omega = _curvature_table(dec)
    sp = CochainSpace(g.dim, 1, 2 * m, limit)
    matchings = _perfect_matchings(2 * m)
    if dec.is_adapted:
        pset = sorted(dec.p_indices)
        subsets = itertools.combinations(pset, 2 * m)
    else:
        subsets = sp.subsets
    coords = {}
    fact = factorial(m)
    for T in subsets:
        T = tuple(T)
        acc = Fraction(0)
        for pairs, sign in matchings:
            vecs = []
            dead = False
            for (a, b) in pairs:
                vec = omega.get((T[a], T[b]))
                if vec is None:
                    dead = True
                    break
                vecs.append(vec)
            if dead:
                continue
            val = P.evaluate(vecs)
            if val:
                acc += sign * val
        if acc:
            coords[sp.index[T]] = fact * acc
    out = Cochain(g, triv, 2 * m, coords)
    if certify:
        for y in dec.k_basis:
            assert insertion(y, out).is_zero(), "curvature image is not horizontal"
            assert lie_derivative(y, out).is_zero(), "curvature image is not invariant"
        assert d_apply(out, limit).is_zero(), "curvature image is not closed"
    return out


def restrict_polynomial(P: InvariantPolynomial, inclusion,
                        small: LieAlgebra) -> InvariantPolynomial:
    """Pull an invariant form back along an inclusion of compact algebras.

    ``inclusion`` lists one column per small-algebra basis vector, giving its
    coordinates in the big algebra.  The map is verified to be a morphism of
    Lie algebras on all basis pairs first.
    """
    cols = [[Fraction(v) for v in col] for col in inclusion]
    if len(cols) != small.dim:
        raise NotAMorphism(("column count", len(cols)))
    big = P.algebra
    for col in cols:
        if len(col) != big.dim:
            raise NotAMorphism(("column length", len(col)))
    for a in range(small.dim):
        for b in range(a + 1, small.dim):
            lhs = big.bracket(cols[a], cols[b])
            rhs = [Fraction(0)] * big.dim
            for k, c in small.bracket_basis(a, b).items():
                for t in range(big.dim):
                    rhs[t] += c * cols[k][t]
            if lhs != rhs:
                raise NotAMorphism((a, b))
    values = {}
    for ms in itertools.combinations_with_replacement(range(small.dim), P.degree):
        v = P.evaluate([cols[i] for i in ms])
        if v:
            values[ms] = v
    out = InvariantPolynomial(small, P.degree, values, "i*(%s)" % (P.name or "?"))
    verdict = invariance_check(out)
    assert verdict.ok, "restriction broke invariance at %s" % (verdict.witness,)
    return out


# ---------------------------------------------------------------------------
# the characteristic rank
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EpsilonData:
    """Rank data of the lattice-generator classes inside relative cohomology.

    ``monomial_verdicts`` pairs each monomial label with whether its class is
    nonzero; ``kernel_combinations`` lists integer combinations of monomials
    whose classes vanish (primitive, deterministic order); ``hopf_marker`` is
    set on odd degrees, where the rank is zero by construction.
    """

    degree: int
    rank: int
    monomial_verdicts: tuple
    kernel_combinations: tuple = ()
    hopf_marker: bool = False

    @property
    def nonzero_monomials(self) -> list[str]:
        return [label for label, nz in self.monomial_verdicts if nz]


def _combo_label(labels, vec) -> str:
    parts = []
    for label, c in zip(labels, vec):
        if not c:
            continue
        mag = abs(c)
        body = label if mag == 1 else "%d*%s" % (mag, label)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def epsilon_rank(spec: GroupSpec, n: int, rel_result: CohomologyResult | None = None,
                 threads: int = 1, limit: int = DEFAULT_MAX_EXTERIOR_DIM) -> EpsilonData:
    """Rank of the span of monomial classes inside relative degree-n
    cohomology, with a per-monomial nonzero verdict.

    Odd n short-circuits to rank 0: every curvature image sits in even
    degree, so odd characteristic classes vanish identically here.
    """
    if n % 2:
        return EpsilonData(n, 0, (), (), True)
    monos = monomial_basis(spec.bk_presentation, n)
    if not monos:
        return EpsilonData(n, 0, (), (), False)
    if spec.k_name is None:
        return EpsilonData(n, 0, tuple((m.label, False) for m in monos), (), False)
    gens = generators_by_name(spec.k_name, n)
    order = [(name, deg) for name, deg in spec.bk_presentation.generators]
    kb = [list(v) for v in spec.dec.k_basis]
    if rel_result is None:
        rel_result = cohomology(relative_complex(spec.g, kb, max_degree=n, limit=limit), n)

    def build(mono: Monomial) -> Cochain:
        form = constant_form(compact_model(spec.k_name).algebra)
        for (gname, _deg), e in zip(order, mono.exponents):
            for _ in range(e):
                form = poly_product(form, gens[gname])
        return cw(form, spec.dec, limit=limit)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cochains = list(pool.map(build, monos))
    else:
        cochains = [build(m) for m in monos]

    betti = rel_result.betti(n)
    columns = []
    verdicts = []
    for mono, cochain in zip(monos, cochains):
        coords = rel_result.class_coordinates(cochain)
        assert coords is not None, "curvature image left the relative subspace"
        columns.append(coords)
        verdicts.append((mono.label, any(coords)))
    entries = {(i, j): v for j, col in enumerate(columns) for i, v in enumerate(col) if v}
    class_matrix = Matrix(betti, len(columns), entries)
    rank = matrix_rank(class_matrix)
    kernel = kernel_basis(class_matrix)
    combos = tuple(_combo_label([m.label for m in monos], vec) for vec in kernel)
    return EpsilonData(n, rank, tuple(verdicts), combos, False)
