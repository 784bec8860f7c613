from __future__ import annotations

import json

import pytest

from symcoh import (
    NczFailed,
    assemble_split,
    build_report,
    builtin_group,
    epsilon_doc,
    epsilon_rank,
    full_report,
    les_report,
    render_text,
    report_document,
)


def test_split_report_sl3r():
    spec = builtin_group("SL(3,R)")
    rep = assemble_split(spec, 5)
    assert rep.form == "split"
    assert rep.ncz.overall
    assert rep.line(3).description == "Z^1"
    assert rep.line(5).description == "R^1"
    assert rep.line(1).description == "0"
    assert rep.line(4).description == "0"
    assert all(ln.ncz_verdict for ln in rep.lines)
    assert "lattice torsion omitted" in rep.caveats[0]


def test_split_report_sl2c_with_caveat():
    spec = builtin_group("SL(2,C)")
    rep = assemble_split(spec, 3)
    assert rep.line(3).description == "R^1 (+) Z^1"
    assert not spec.torsion_omitted
    assert any("lattice summand indexed at degree n+1" in c for c in rep.caveats)


def test_les_report_sl2r_ladder():
    spec = builtin_group("SL(2,R)")
    rep = les_report(spec, 2)
    assert rep.form == "les"
    assert not rep.ncz.overall
    assert rep.line(1).description == "0"
    line2 = rep.line(2)
    assert line2.relative_betti == 1
    assert line2.epsilon_here.rank == 1
    assert line2.description == "0 -> R^1/Z^1 -> H^2 -> 0 -> 0"
    assert line2.coker_rank == 0
    assert line2.kernel_free_rank == 0


def test_split_raises_and_build_report_falls_back():
    spec = builtin_group("SL(2,R)")
    with pytest.raises(NczFailed) as exc:
        assemble_split(spec, 2)
    assert exc.value.degree == 2
    rep = build_report(spec, 2)
    assert rep.form == "les"
    assert build_report(builtin_group("SL(3,R)"), 4).form == "split"


def test_rank_bookkeeping_invariants():
    for name, deg in (("SL(2,R)", 2), ("SL(3,R)", 5), ("SL(2,C)", 3)):
        rep = build_report(builtin_group(name), deg)
        for ln in rep.lines:
            assert ln.coker_rank == ln.relative_betti - ln.epsilon_here.rank
            assert ln.kernel_free_rank == \
                ln.lattice_free_rank_next - ln.epsilon_next.rank
            assert ln.coker_rank >= 0
            assert ln.kernel_free_rank >= 0


def test_split_and_les_agree_for_ncz_pairs():
    spec = builtin_group("SL(3,R)")
    split = assemble_split(spec, 5)
    ladder = les_report(spec, 5)
    for a, b in zip(split.lines, ladder.lines):
        assert a.degree == b.degree
        assert a.description == b.description


def test_epsilon_doc_shapes():
    spec = builtin_group("SL(2,R)")
    even = epsilon_doc(epsilon_rank(spec, 2))
    assert even == {"rank": 1, "nonzero_monomials": ["E_1"]}
    odd = epsilon_doc(epsilon_rank(spec, 3))
    assert odd == {"rank": 0, "nonzero_monomials": [], "hopf": True}
    sp = builtin_group("Sp(2,R)")
    with_kernel = epsilon_doc(epsilon_rank(sp, 4))
    assert with_kernel["kernel_combinations"] == ["C_1^2 - 2*C_2"]


def test_document_and_render_round_trip():
    spec = builtin_group("SL(2,R)")
    rep = build_report(spec, 2)
    doc = report_document(rep, spec)
    assert doc["group"] == "SL(2,R)"
    assert doc["form"] == "les"
    assert doc["relative_betti"] == [1, 0, 1, 0]
    assert doc["absolute_betti"] == [1, 0, 0, 1]
    assert doc["ncz"]["per_degree"] == {"0": True, "1": True, "2": False, "3": True}
    assert doc["coefficients"] == {"lattice": "Z", "vector": "R", "circle": "U(1)"}
    text = render_text(doc)
    assert text == render_text(doc)
    assert "H^n description" in text
    assert "0 -> R^1/Z^1 -> H^2 -> 0 -> 0" in text
    parsed = json.loads(full_report(spec, 2, format="json"))
    assert parsed == doc
    assert full_report(spec, 2, format="text") == text
