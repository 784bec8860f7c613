from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symcoh import Matrix, SpanSolver, kernel_basis, rank, solve_in_span
from symcoh.matrices import clear_denominators, eliminate, invert, det, reduce_against


def test_rank_frozen_examples():
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(Matrix.from_rows([[1, 0], [0, 1]])) == 2
    assert rank(Matrix.zeros(3, 5)) == 0
    assert rank(Matrix.from_rows([[Fraction(1, 2), Fraction(1, 3)],
                                  [Fraction(3, 2), 1]])) == 1


def test_kernel_basis_is_primitive_integer():
    m = Matrix.from_rows([[1, -1, 0], [0, 2, -2]])
    ker = kernel_basis(m)
    assert ker == [[1, 1, 1]]
    wide = Matrix.from_rows([[2, 4, 6]])
    for vec in kernel_basis(wide):
        assert all(isinstance(v, int) for v in vec)
        from math import gcd
        g = 0
        for v in vec:
            g = gcd(g, abs(v))
        assert g == 1


def test_solve_in_span_and_failure():
    gens = [[1, 0, 1], [0, 1, 1]]
    coeffs = solve_in_span([2, 3, 5], gens)
    assert coeffs == [Fraction(2), Fraction(3)]
    assert solve_in_span([0, 0, 1], gens) is None


def test_matrix_arithmetic_identities():
    a = Matrix.from_rows([[1, 2], [3, 4]])
    i2 = Matrix.identity(2)
    assert a * i2 == a
    assert (a - a).is_zero()
    assert a.apply([1, 0]) == [Fraction(1), Fraction(3)]
    assert invert(a) * a == i2
    assert det(a) == -2


def test_eliminate_rejects_unknown_policy():
    with pytest.raises(ValueError):
        eliminate([{0: 1}], policy="random")


def test_reduce_against_splits_off_span_component():
    data = eliminate([{0: 1, 1: 1}], aug=[{0: 1}])
    rem, betas = reduce_against(data.echelon, {0: Fraction(2), 1: Fraction(2), 2: Fraction(1)})
    assert rem == {2: Fraction(1)}
    assert betas == [Fraction(2)]


@st.composite
def sparse_matrices(draw):
    nrows = draw(st.integers(1, 5))
    ncols = draw(st.integers(1, 5))
    entries = {}
    for _ in range(draw(st.integers(0, 8))):
        i = draw(st.integers(0, nrows - 1))
        j = draw(st.integers(0, ncols - 1))
        v = draw(st.integers(-4, 4))
        if v:
            entries[(i, j)] = Fraction(v)
    return Matrix(nrows, ncols, entries)


@settings(max_examples=60, deadline=None)
@given(sparse_matrices())
def test_rank_policy_independent_and_bounded(m):
    def int_rows():
        return [clear_denominators(r)[0] for r in m.row_dicts()]

    lex = eliminate(int_rows(), policy="lex").rank
    mark = eliminate(int_rows(), policy="markowitz").rank
    assert lex == mark
    assert lex <= min(m.nrows, m.ncols)


@settings(max_examples=60, deadline=None)
@given(sparse_matrices())
def test_kernel_vectors_annihilate(m):
    for vec in kernel_basis(m):
        assert all(v == 0 for v in m.apply(vec))
    assert len(kernel_basis(m)) == m.ncols - rank(m)


@settings(max_examples=40, deadline=None)
@given(sparse_matrices())
def test_span_solver_reduce_is_exact(m):
    rows = m.row_dicts()
    solver = SpanSolver(rows)
    assert solver.rank == rank(m)
    for r in rows:
        assert solver.contains(r)
        coeffs = solver.solve(r)
        if coeffs is not None:
            rebuilt = {}
            for c, row in zip(coeffs, rows):
                for k, v in row.items():
                    rebuilt[k] = rebuilt.get(k, Fraction(0)) + c * v
            assert {k: v for k, v in rebuilt.items() if v} == dict(r)
