"""Shared test helpers: seeded random matrix algebras with exact closure.

Random structure constants almost never satisfy Jacobi, so randomized
algebras are built the honest way: pick small integer matrices, close the
span under the commutator, and read the structure constants off the span.
Upper-triangular 3x3 seeds stay inside the 6-dimensional Borel, giving
solvable algebras of dimension up to 6; plain 2x2 seeds close inside gl_2.
Both carry a natural 2-dimensional module (the invariant flag subspace,
respectively the defining representation).
"""

from __future__ import annotations

from fractions import Fraction

from symcoh import SpanSolver, module_from_matrices, new_lie_algebra


def mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def commutator(a, b):
    ab = mat_mul(a, b)
    ba = mat_mul(b, a)
    return [[ab[i][j] - ba[i][j] for j in range(len(a))] for i in range(len(a))]


def _flat(m) -> dict:
    n = len(m)
    return {i * n + j: Fraction(m[i][j]) for i in range(n) for j in range(n)
            if m[i][j]}


def close_under_bracket(seeds, max_dim):
    """Span closure of the seeds under the commutator; None if it overflows."""
    basis = []
    for m in seeds:
        if _flat(m) and not SpanSolver([_flat(x) for x in basis]).contains(_flat(m)):
            basis.append(m)
    changed = True
    while changed:
        changed = False
        solver = SpanSolver([_flat(x) for x in basis])
        for a in list(basis):
            for b in list(basis):
                c = commutator(a, b)
                fc = _flat(c)
                if fc and not solver.contains(fc):
                    basis.append(c)
                    if len(basis) > max_dim:
                        return None
                    solver = SpanSolver([_flat(x) for x in basis])
                    changed = True
    return basis


def algebra_from_basis(basis):
    """Structure constants of a bracket-closed list of matrices."""
    solver = SpanSolver([_flat(m) for m in basis])
    structure = {}
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            coords = solver.solve(_flat(commutator(basis[i], basis[j])))
            assert coords is not None, "span was not bracket-closed"
            terms = [(k, v) for k, v in enumerate(coords) if v]
            if terms:
                structure[(i, j)] = terms
    return new_lie_algebra(structure, dim=len(basis))


def _random_triangular(rng, strict):
    m = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i + 1 if strict else i, 3):
            m[i][j] = rng.randint(-2, 2)
    return m


def random_matrix_algebra(rng):
    """(algebra, basis matrices, module matrices): dim <= 6, Jacobi-validated.

    Roughly half the draws are upper-triangular 3x3 (module: the invariant
    span of the first two coordinate vectors), the rest are 2x2 (module: the
    defining representation).
    """
    while True:
        if rng.random() < 0.5:
            strict = rng.random() < 0.4
            seeds = [_random_triangular(rng, strict) for _ in range(2)]
            if rng.random() < 0.3:
                seeds.append([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
            basis = close_under_bracket(seeds, 6)
            if not basis:
                continue
            mod_mats = [[row[:2] for row in m[:2]] for m in basis]
        else:
            seeds = [[[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
                     for _ in range(2)]
            basis = close_under_bracket(seeds, 4)
            if not basis:
                continue
            mod_mats = [[list(row) for row in m] for m in basis]
        if all(all(v == 0 for row in m for v in row) for m in mod_mats):
            continue
        g = algebra_from_basis(basis)
        module = module_from_matrices(g, mod_mats)
        return g, basis, module


def random_cochain_coords(rng, space_dim, mdim, count=4):
    coords = {}
    for _ in range(count):
        coords[rng.randrange(space_dim * mdim)] = Fraction(rng.randint(-3, 3))
    return {k: v for k, v in coords.items() if v}
