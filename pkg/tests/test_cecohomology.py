from __future__ import annotations

import random
from fractions import Fraction

import pytest

from symcoh import (
    DegreeZero,
    NotHorizontal,
    SizeLimit,
    ce_differential,
    cochain,
    cohomology,
    cup_product,
    d_apply,
    full_complex,
    insertion,
    is_ncz,
    lie_derivative,
    module_from_matrices,
    new_lie_algebra,
    relative_complex,
    relative_to_absolute_map,
    transport_to_dual,
    trivial_module,
    validate_decomposition,
)

from util import random_cochain_coords, random_matrix_algebra

SL2 = {(0, 1): [(1, 2)], (0, 2): [(2, -2)], (1, 2): [(0, 1)]}

# sl_2(R) on the basis (e - f, h, e + f): the first vector spans a compact
# line and the other two an adapted complement
SPLIT3 = {(0, 1): [(2, -2)], (0, 2): [(1, 2)], (1, 2): [(0, 2)]}


def _sl2():
    return new_lie_algebra(SL2, basis_labels=("h", "e", "f"))


def _split3():
    return new_lie_algebra(SPLIT3, basis_labels=("u", "a", "b"))


def _defining_module(g):
    return module_from_matrices(g, [
        [[1, 0], [0, -1]],
        [[0, 1], [0, 0]],
        [[0, 0], [1, 0]],
    ])


def test_differential_frozen_values():
    g = _sl2()
    triv = trivial_module(g)
    h_star = cochain(g, triv, 1, {(0,): 1})
    e_star = cochain(g, triv, 1, {(1,): 1})
    f_star = cochain(g, triv, 1, {(2,): 1})
    assert d_apply(h_star).value((1, 2)) == Fraction(-1)
    assert d_apply(e_star).value((0, 1)) == Fraction(-2)
    assert d_apply(f_star).value((0, 2)) == Fraction(2)
    d1 = ce_differential(g, triv, 1)
    assert d1.nrows == 3 and d1.ncols == 3
    assert d1.entry(2, 0) == Fraction(-1)   # row (e, f), column h*
    assert d1.entry(0, 1) == Fraction(-2)   # row (h, e), column e*
    assert d1.entry(1, 2) == Fraction(2)    # row (h, f), column f*


def test_lie_derivative_frozen_weight():
    g = _sl2()
    triv = trivial_module(g)
    e_star = cochain(g, triv, 1, {(1,): 1})
    f_star = cochain(g, triv, 1, {(2,): 1})
    h = [1, 0, 0]
    assert lie_derivative(h, e_star) == e_star.scale(-2)
    assert lie_derivative(h, f_star) == f_star.scale(2)


def test_d_squared_zero_random():
    rng = random.Random(8031)
    for _ in range(8):
        g, _basis, mod = random_matrix_algebra(rng)
        for module in (trivial_module(g), mod):
            for degree in (1, 2):
                if degree > g.dim:
                    continue
                coords = random_cochain_coords(rng, _nsubsets(g, degree), module.dim)
                w = _from_coords(g, module, degree, coords)
                assert d_apply(d_apply(w)).is_zero()


def _nsubsets(g, degree):
    from math import comb

    return comb(g.dim, degree)


def _from_coords(g, module, degree, coords):
    from symcoh.cecohomology import Cochain

    return Cochain(g, module, degree, coords)


def test_cartan_rule_random():
    rng = random.Random(11903)
    for _ in range(6):
        g, _basis, mod = random_matrix_algebra(rng)
        y = [rng.randint(-2, 2) for _ in range(g.dim)]
        for module in (trivial_module(g), mod):
            for degree in (1, 2):
                if degree > g.dim:
                    continue
                coords = random_cochain_coords(rng, _nsubsets(g, degree), module.dim)
                w = _from_coords(g, module, degree, coords)
                lhs = lie_derivative(y, w)
                rhs = insertion(y, d_apply(w)) + d_apply(insertion(y, w))
                assert lhs == rhs
            w0 = _from_coords(g, module, 0, {c: rng.randint(-2, 2) for c in range(module.dim)})
            assert lie_derivative(y, w0) == insertion(y, d_apply(w0))


def test_insertion_degree_zero_raises():
    g = _sl2()
    w0 = cochain(g, trivial_module(g), 0, {(): 1})
    with pytest.raises(DegreeZero):
        insertion([1, 0, 0], w0)


def test_betti_sl2_trivial_coefficients():
    g = _sl2()
    res = cohomology(full_complex(g), 3)
    assert res.betti_list() == [1, 0, 0, 1]
    assert res.verify()
    # the top class is the evaluation of the volume cochain
    top = res.representatives(3)[0]
    assert not top.is_zero()


def test_betti_sl2_defining_module_vanishes():
    g = _sl2()
    res = cohomology(full_complex(g, _defining_module(g)), 3)
    assert res.betti_list() == [0, 0, 0, 0]
    assert res.verify()


def test_cohomology_policy_independent():
    g = _sl2()
    mod = _defining_module(g)
    for module in (trivial_module(g), mod):
        a = cohomology(full_complex(g, module), 3, policy="markowitz")
        b = cohomology(full_complex(g, module), 3, policy="lex")
        assert a.betti_list() == b.betti_list()
        assert [a.differential_rank(n) for n in range(4)] == \
            [b.differential_rank(n) for n in range(4)]


def test_relative_pair_betti_and_roundtrip():
    g = _split3()
    cplx = relative_complex(g, [[1, 0, 0]], max_degree=2)
    assert cplx.adapted
    res = cohomology(cplx, 2)
    assert res.betti_list() == [1, 0, 1]
    assert res.verify()
    for n in (0, 2):
        for vec in res.representative_vectors(n):
            w = cplx.include(n, vec)
            assert cplx.project(w) == vec
    coords = res.class_coordinates(res.representatives(2)[0])
    assert coords == [Fraction(1)]


def test_relative_general_position_matches_adapted():
    # same pair, but k spanned by a non-unit vector inside sl_2 on (h, e, f)
    g = _sl2()
    cplx = relative_complex(g, [[0, 1, -1]], max_degree=2)
    assert not cplx.adapted
    res = cohomology(cplx, 2)
    assert res.betti_list() == [1, 0, 1]


def test_cup_product_graded_commutative_and_leibniz():
    rng = random.Random(77)
    for _ in range(6):
        g, _basis, _mod = random_matrix_algebra(rng)
        triv = trivial_module(g)
        degrees = [(1, 1), (1, 2)]
        for p, q in degrees:
            if p + q > g.dim:
                continue
            a = _from_coords(g, triv, p, random_cochain_coords(rng, _nsubsets(g, p), 1))
            b = _from_coords(g, triv, q, random_cochain_coords(rng, _nsubsets(g, q), 1))
            ab = cup_product(a, b)
            ba = cup_product(b, a)
            sign = -1 if (p * q) % 2 else 1
            assert ab == ba.scale(sign)
            leibniz = cup_product(d_apply(a), b) + cup_product(a, d_apply(b)).scale(
                -1 if p % 2 else 1)
            assert d_apply(ab) == leibniz


def test_size_limit_guard():
    g = _sl2()
    with pytest.raises(SizeLimit) as exc:
        cohomology(full_complex(g, limit=2), 2)
    assert exc.value.limit == 2


def test_transport_to_dual_adapted_pair():
    g = _split3()
    unit = lambda i: [1 if t == i else 0 for t in range(3)]
    dec = validate_decomposition(g, [unit(0)], [unit(1), unit(2)])
    assert dec.is_adapted
    cplx = relative_complex(g, [unit(0)], max_degree=2)
    res = cohomology(cplx, 2)
    area = res.representatives(2)[0]
    moved = transport_to_dual(dec, area)
    assert not moved.is_zero()
    assert d_apply(moved).is_zero()
    # the compact dual carries the same class with the same coordinates
    assert sorted(abs(v) for v in moved.coords.values()) == \
        sorted(abs(v) for v in area.coords.values())
    e_star = cochain(g, trivial_module(g), 1, {(0,): 1})
    with pytest.raises(NotHorizontal):
        transport_to_dual(dec, e_star)


def test_is_ncz_fails_at_two_for_hermitian_pair():
    g = _split3()
    report = is_ncz(g, [[1, 0, 0]], max_degree=2)
    assert report.verdict(0) is True
    assert report.verdict(1) is True
    assert report.verdict(2) is False
    assert report.overall is False
    assert report.odd_generation is False
    kappa2 = relative_to_absolute_map(report.relative, report.full, 2)
    assert not kappa2.injective
    assert kappa2.matrix.nrows == 0 and kappa2.matrix.ncols == 1
