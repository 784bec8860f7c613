"""Acceptance suite: one test per release criterion, exact arithmetic only.

Every test finishes by printing a single "PASS criterion N" line, so a
`pytest -v -s tests/test_acceptance.py` run reads as a checklist.  A failed
assertion is the corresponding FAIL line (pytest reports it as such).
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

from symcoh import (
    SpanSolver,
    assemble_split,
    build_report,
    builtin_group,
    cohomology,
    compact_dual,
    compact_model,
    cup_product,
    cw,
    d_apply,
    dual_pair,
    epsilon_rank,
    full_complex,
    generators_by_name,
    insertion,
    is_ncz,
    is_negative_definite,
    k_cohomology_crosscheck,
    killing_form,
    les_report,
    lie_derivative,
    model_inclusion,
    pfaffian_form,
    poly_product,
    relative_complex,
    relative_to_absolute_map,
    restrict_polynomial,
    trace_form,
    transport_to_dual,
    trivial_module,
)
from symcoh.cecohomology import Cochain

from util import random_cochain_coords, random_matrix_algebra

ALL_GROUPS = [
    "SL(2,C)", "SL(2,R)", "SL(3,C)", "SL(3,R)", "SL(4,R)", "SL(5,R)",
    "SL(6,R)", "SO(3)", "SO(4)", "SO(5)", "SU(2)", "SU(3)", "SU(4)",
    "SU*(4)", "Sp(1,R)", "Sp(2,R)",
]


def _ok(n, text):
    print("PASS criterion %d: %s" % (n, text))


def _rel_result(spec, max_degree=None):
    k_basis = [list(v) for v in spec.dec.k_basis]
    if max_degree is None:
        max_degree = spec.g.dim - len(k_basis)
    return cohomology(relative_complex(spec.g, k_basis, max_degree=max_degree),
                      max_degree)


def test_criterion_01_differential_properties():
    rng = random.Random(424242)
    for _ in range(50):
        g, _basis, module = random_matrix_algebra(rng)
        assert g.dim <= 6
        assert module.dim == 2 and not module.trivial
        for mod in (trivial_module(g), module):
            for degree in (1, 2):
                if degree > g.dim:
                    continue
                w = Cochain(g, mod, degree,
                            random_cochain_coords(rng, comb(g.dim, degree),
                                                  mod.dim))
                assert d_apply(d_apply(w)).is_zero()
        triv = trivial_module(g)
        y = [rng.randint(-2, 2) for _ in range(g.dim)]
        for degree in (1, 2):
            if degree > g.dim:
                continue
            w = Cochain(g, triv, degree,
                        random_cochain_coords(rng, comb(g.dim, degree), 1))
            cartan = insertion(y, d_apply(w)) + d_apply(insertion(y, w))
            assert lie_derivative(y, w) == cartan
    _ok(1, "d o d = 0 and the Cartan rule on 50 randomized algebras")


def test_criterion_02_whitehead_vanishing():
    algebras = [
        builtin_group("SL(2,R)").g,
        compact_model("su_2").algebra,
        builtin_group("SL(3,R)").g,
        compact_model("su_3").algebra,
        compact_model("so_4").algebra,
        builtin_group("Sp(2,R)").g,
    ]
    for g in algebras:
        res = cohomology(full_complex(g), 2)
        assert res.betti(1) == 0
        assert res.betti(2) == 0
    _ok(2, "betti(1) = betti(2) = 0 for six semisimple algebras")


def test_criterion_03_complex_case_matches_compact_factor():
    spec = builtin_group("SL(2,C)")
    k_basis = [list(v) for v in spec.dec.k_basis]
    rel = cohomology(relative_complex(spec.g, k_basis, max_degree=3), 3)
    su2 = cohomology(full_complex(compact_model("su_2").algebra), 3)
    for n in range(4):
        assert rel.betti(n) == su2.betti(n)
    full = cohomology(full_complex(spec.g), 3)
    assert relative_to_absolute_map(rel, full, 3).injective
    _ok(3, "relative betti of the complexified pair matches su_2, kappa^3 injective")


def test_criterion_04_ncz_verdicts():
    sl3 = builtin_group("SL(3,R)")
    rep = is_ncz(sl3.g, [list(v) for v in sl3.dec.k_basis])
    assert rep.overall
    assert rep.odd_generation == rep.overall

    su4s = builtin_group("SU*(4)")
    rep = is_ncz(su4s.g, [list(v) for v in su4s.dec.k_basis])
    assert rep.overall
    assert rep.odd_generation == rep.overall

    sl2 = builtin_group("SL(2,R)")
    rep = is_ncz(sl2.g, [list(v) for v in sl2.dec.k_basis])
    assert not rep.verdict(2)
    assert not rep.overall
    assert rep.odd_generation == rep.overall
    _ok(4, "n.c.z. verdicts on both paths for the three reference pairs")


def test_criterion_05_relative_betti_with_dual_transport():
    goldens = {
        "SL(3,R)": [1, 0, 0, 0, 0, 1],
        "Sp(2,R)": [1, 0, 1, 0, 1, 0, 1],
        "SL(2,R)": [1, 0, 1],
    }
    for name, expected in goldens.items():
        spec = builtin_group(name)
        top = spec.g.dim - len(spec.dec.k_basis)
        rel = _rel_result(spec, top)
        assert rel.betti_list() == expected

        pair = dual_pair(spec.dec)
        dual, dec_u = pair
        kb_u = [[Fraction(int(t == i)) for t in range(dual.dim)]
                for i in dec_u.k_indices]
        rel_u = cohomology(relative_complex(dual, kb_u, max_degree=top), top)
        assert rel_u.betti_list() == expected
        for n in range(top + 1):
            moved = []
            for w in rel.representatives(n):
                coords = rel_u.class_coordinates(
                    transport_to_dual(spec.dec, w, pair))
                assert coords is not None
                moved.append(coords)
            assert SpanSolver(moved).rank == rel.betti(n)
    _ok(5, "relative betti goldens agree with the compact-dual transport")


def test_criterion_06_euler_class_survives():
    spec = builtin_group("SL(4,R)")
    rel = _rel_result(spec)
    assert rel.betti(4) == 1
    coords = rel.class_coordinates(cw(pfaffian_form("so_4"), spec.dec))
    assert coords == [Fraction(-1, 2)]
    eps = epsilon_rank(spec, 4)
    assert ("E_2", True) in eps.monomial_verdicts
    assert eps.rank == 1
    _ok(6, "Pfaffian class nonzero in relative H^4, epsilon^4(E_2) != 0")


def test_criterion_07_odd_power_traces_restrict_to_zero():
    inclusion = model_inclusion("so_4", "su_4")
    small = compact_model("so_4").algebra
    t3 = restrict_polynomial(trace_form("su_4", 3), inclusion, small)
    assert t3.is_zero()
    t2 = restrict_polynomial(trace_form("su_4", 2), inclusion, small)
    assert not t2.is_zero()
    _ok(7, "t_3 restricts from su_4 to zero on so_4 while t_2 survives")


def test_criterion_08_sp_kernel_combination():
    spec = builtin_group("Sp(2,R)")
    rel = _rel_result(spec)
    gens = generators_by_name("u_2", 4)
    c1, c2 = gens["C_1"], gens["C_2"]
    combo = poly_product(c1, c1).add(c2.scale(Fraction(-2)))
    combo_class = rel.class_coordinates(cw(combo, spec.dec))
    assert combo_class is not None and not any(combo_class)
    c2_class = rel.class_coordinates(cw(c2, spec.dec))
    assert c2_class is not None and any(c2_class)
    assert epsilon_rank(spec, 4).rank == 1
    _ok(8, "C_1^2 - 2*C_2 is a coboundary, C_2 is not, epsilon^4 rank 1")


def test_criterion_09_multiplicativity_constant_is_one():
    spec = builtin_group("Sp(2,R)")
    rel = _rel_result(spec)
    c1 = generators_by_name("u_2", 2)["C_1"]
    product_class = rel.class_coordinates(cw(poly_product(c1, c1), spec.dec))
    w1 = cw(c1, spec.dec)
    cup_class = rel.class_coordinates(cup_product(w1, w1))
    assert product_class == cup_class == [Fraction(-2)]
    _ok(9, "class(cw(C_1*C_1)) equals class(cw(C_1) cup cw(C_1)) exactly")


def test_criterion_10_split_assembly_goldens():
    rep = build_report(builtin_group("SL(3,R)"), 5)
    assert rep.form == "split"
    assert rep.line(5).description == "R^1"
    assert rep.line(3).description == "Z^1"
    assert rep.line(3).torsion_omitted
    assert any("lattice torsion omitted" in c for c in rep.caveats)

    rep_c = build_report(builtin_group("SL(2,C)"), 3)
    assert rep_c.form == "split"
    assert rep_c.line(3).description == "R^1 (+) Z^1"
    assert any("lattice summand indexed at degree n+1" in c
               for c in rep_c.caveats)
    _ok(10, "split reports emit the expected free and lattice summands")


def test_criterion_11_les_ladder_degree_two():
    rep = les_report(builtin_group("SL(2,R)"), 2)
    assert rep.line(1).description == "0"
    line2 = rep.line(2)
    assert (line2.relative_betti, line2.epsilon_here.rank) == (1, 1)
    assert line2.coker_rank == 0
    assert line2.kernel_free_rank == 0
    assert line2.description == "0 -> R^1/Z^1 -> H^2 -> 0 -> 0"
    _ok(11, "degree-2 ladder shows the flat class extension with rank data (1,1)")


def test_criterion_12_catalog_crosschecks():
    # Covers so_3, so_4, u_2, su_2, su_3, and compact sp_2 through their
    # noncompact partners.
    for name in ("SL(3,R)", "SL(4,R)", "Sp(2,R)", "SL(2,C)", "SL(3,C)",
                 "SU*(4)"):
        assert k_cohomology_crosscheck(builtin_group(name))
    for name in ALL_GROUPS:
        spec = builtin_group(name)
        dual, dec_u = dual_pair(spec.dec)
        assert is_negative_definite(killing_form(dual))
        again = compact_dual(dec_u)
        assert again.structure_table() == spec.g.structure_table()
    _ok(12, "compact crosschecks, dual definiteness, and the involution")
