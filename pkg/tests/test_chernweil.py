from __future__ import annotations

from fractions import Fraction

import pytest

from symcoh import (
    AlgebraMismatch,
    NonTrivialCoefficients,
    NotAMorphism,
    NotInvariant,
    NotSemisimple,
    builtin_group,
    compact_model,
    constant_form,
    curvature,
    cw,
    epsilon_rank,
    generators_by_name,
    invariance_check,
    model_inclusion,
    new_lie_algebra,
    pfaffian_form,
    poly_product,
    restrict_polynomial,
    trace_form,
    trivial_module,
    validate_decomposition,
)
from symcoh.chernweil import InvariantPolynomial


def test_invariance_check_killing_and_witness():
    g = new_lie_algebra({(0, 1): [(1, 2)], (0, 2): [(2, -2)], (1, 2): [(0, 1)]})
    killing = InvariantPolynomial(g, 2, {(0, 0): 8, (1, 2): 4}, "B")
    assert invariance_check(killing).ok
    broken = InvariantPolynomial(g, 2, {(0, 0): 8, (1, 2): 5}, "B'")
    verdict = invariance_check(broken)
    assert not verdict
    assert verdict.witness is not None


def test_trace_forms_frozen():
    t1 = trace_form("su_2", 1)
    assert t1.is_zero()
    t2 = trace_form("su_2", 2)
    assert dict(t2.values) == {(0, 0): Fraction(2), (1, 1): Fraction(2),
                               (2, 2): Fraction(2)}


def test_newton_generators_frozen():
    c1 = generators_by_name("u_1", 2)["C_1"]
    assert dict(c1.values) == {(0,): Fraction(-1)}
    c2 = generators_by_name("su_2", 4)["C_2"]
    assert dict(c2.values) == {(0, 0): Fraction(-1), (1, 1): Fraction(-1),
                               (2, 2): Fraction(-1)}


def test_pfaffian_frozen():
    e1 = pfaffian_form("so_2")
    assert dict(e1.values) == {(0,): Fraction(1)}
    e2 = pfaffian_form("so_4")
    assert dict(e2.values) == {
        (0, 5): Fraction(1, 2),
        (1, 4): Fraction(-1, 2),
        (2, 3): Fraction(1, 2),
    }
    # two orthogonal rotation blocks have pfaffian 1
    y = [1, 0, 0, 0, 0, 1]
    assert e2.evaluate([y, y]) == Fraction(1)


def test_plain_trace_pontryagin_identity():
    p1 = generators_by_name("so_4", 4)["P_1"]
    model = compact_model("so_4")
    from symcoh.catalog import gmat_mul, gmat_trace

    mats = [[list(r) for r in m] for m in model.matrices]
    for a in range(6):
        for b in range(a, 6):
            tr = gmat_trace(gmat_mul(mats[a], mats[b])).real_part()
            assert p1.value((a, b)) == Fraction(-tr, 2)


def test_poly_product_commutes_and_has_unit():
    c1 = generators_by_name("u_2", 4)["C_1"]
    c2 = generators_by_name("u_2", 4)["C_2"]
    ab = poly_product(c1, c2)
    ba = poly_product(c2, c1)
    assert ab.degree == 3
    assert dict(ab.values) == dict(ba.values)
    one = constant_form(c1.algebra)
    assert dict(poly_product(one, c1).values) == dict(c1.values)


def test_curvature_anchor():
    dec = builtin_group("SL(2,R)").dec
    assert curvature(dec, [0, 1, 0], [0, 0, 1]) == [Fraction(-1)]
    assert curvature(dec, [1, 0, 0], [0, 1, 0]) == [Fraction(0)]


def test_cw_euler_class_frozen():
    spec = builtin_group("SL(2,R)")
    e1 = generators_by_name("so_2", 2)["E_1"]
    w = cw(e1, spec.dec)
    assert w.degree == 2
    assert dict(w.coords) == {2: Fraction(-1)}   # supported on the p-pair


def test_cw_degree_zero_is_constant():
    spec = builtin_group("SL(2,R)")
    w = cw(constant_form(compact_model("so_2").algebra, 5), spec.dec)
    assert w.degree == 0
    assert dict(w.coords) == {0: Fraction(5)}


def test_cw_guards():
    spec = builtin_group("SL(3,R)")
    heis = new_lie_algebra({(0, 1): [(2, 1)]}, dim=3)
    hdec = validate_decomposition(heis, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [])
    so3 = compact_model("so_3").algebra
    p1 = generators_by_name("so_3", 4)["P_1"]
    with pytest.raises(NotSemisimple):
        cw(InvariantPolynomial(heis, 1, {}, "z"), hdec)
    with pytest.raises(AlgebraMismatch):
        cw(generators_by_name("so_2", 2)["E_1"], spec.dec)
    with pytest.raises(NotInvariant):
        cw(InvariantPolynomial(so3, 2, {(0, 0): 1}, "bad"), spec.dec)
    with pytest.raises(NonTrivialCoefficients):
        cw(p1, spec.dec, module=trivial_module(spec.g, 2))


def test_restriction_kills_odd_traces():
    so4 = compact_model("so_4").algebra
    incl = model_inclusion("so_4", "su_4")
    r3 = restrict_polynomial(trace_form("su_4", 3), incl, so4)
    assert r3.is_zero()
    r2 = restrict_polynomial(trace_form("su_4", 2), incl, so4)
    assert r2.name == "i*(t_2)"
    p1 = generators_by_name("so_4", 4)["P_1"]
    assert dict(r2.values) == {k: 2 * v for k, v in p1.values.items()}


def test_restriction_rejects_non_morphisms():
    so4 = compact_model("so_4").algebra
    incl = model_inclusion("so_4", "su_4")
    bad = [list(col) for col in incl]
    bad[0] = [2 * v for v in bad[0]]
    with pytest.raises(NotAMorphism) as exc:
        restrict_polynomial(trace_form("su_4", 2), bad, so4)
    assert exc.value.witness is not None


def test_epsilon_rank_sl2():
    spec = builtin_group("SL(2,R)")
    e2 = epsilon_rank(spec, 2)
    assert e2.rank == 1
    assert e2.monomial_verdicts == (("E_1", True),)
    assert e2.nonzero_monomials == ["E_1"]
    assert e2.kernel_combinations == ()
    e3 = epsilon_rank(spec, 3)
    assert e3.hopf_marker and e3.rank == 0


def test_epsilon_rank_kernel_combination():
    spec = builtin_group("Sp(2,R)")
    e4 = epsilon_rank(spec, 4)
    assert e4.rank == 1
    assert dict(e4.monomial_verdicts) == {"C_1^2": True, "C_2": True}
    assert e4.kernel_combinations == ("C_1^2 - 2*C_2",)


def test_epsilon_rank_threads_agree():
    spec = builtin_group("SL(2,R)")
    a = epsilon_rank(spec, 2, threads=1)
    b = epsilon_rank(spec, 2, threads=2)
    assert a == b
