"""Assembled descriptions of the continuous group cohomology H^n(G; U(1)).

Two shapes are produced.  When the relative classes inject into absolute
cohomology in every degree (the n.c.z. situation), degree n splits as

    H^n  =  R^{relative betti(n)}  (+)  Z^{free lattice rank(n + 1)}

up to the omitted lattice torsion.  Otherwise the lattice-to-relative rank
data is arranged along the exact ladder

    0 -> coker(eps^n) -> H^n -> ker(eps^{n+1}) -> 0

and reported as an unresolved extension: the rank bookkeeping is exact, the
extension class is genuinely not determined by this machinery, so no answer
is invented.  When eps^n embeds the full lattice into the full relative
space the cokernel is noted symbolically as the torus R^k/Z^k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .catalog import GroupSpec, monomial_basis
from .cecohomology import DEFAULT_MAX_EXTERIOR_DIM, NczReport, is_ncz
from .chernweil import EpsilonData, epsilon_rank
from .errors import NczFailed

__all__ = [
    "DegreeLine",
    "GroupCohomologyReport",
    "assemble_split",
    "build_report",
    "epsilon_doc",
    "report_document",
    "render_text",
    "les_report",
    "full_report",
]


@dataclass(frozen=True)
class DegreeLine:
    """One degree of an assembled report.

    ``lattice_free_rank_next`` is the free rank of the classifying-space
    lattice in degree n + 1 (the summand or kernel side); ``coker_rank`` and
    ``kernel_free_rank`` are the exact-ladder ranks, which in the split case
    degenerate to the summand ranks themselves.
    """

    degree: int
    ncz_verdict: bool
    relative_betti: int
    lattice_free_rank_next: int
    epsilon_here: EpsilonData
    epsilon_next: EpsilonData
    coker_rank: int
    kernel_free_rank: int
    description: str
    torsion_omitted: bool


@dataclass(frozen=True)
class GroupCohomologyReport:
    group: str
    max_degree: int
    form: str                      # "split" or "les"
    lines: tuple
    caveats: tuple
    ncz: NczReport

    def line(self, n: int) -> DegreeLine:
        for ln in self.lines:
            if ln.degree == n:
                return ln
        raise KeyError(n)


def _summand(real_rank: int, lattice_rank: int) -> str:
    parts = []
    if real_rank:
        parts.append("R^%d" % real_rank)
    if lattice_rank:
        parts.append("Z^%d" % lattice_rank)
    return " (+) ".join(parts) if parts else "0"


def _coker_str(betti: int, eps: int) -> str:
    if eps == 0:
        return "R^%d" % betti if betti else "0"
    return "R^%d/Z^%d" % (betti, eps)


def _lines(spec: GroupSpec, max_degree: int, ncz_report: NczReport, split: bool,
           threads: int, limit: int):
    rel = ncz_report.relative
    eps = {}
    for n in range(max_degree + 2):
        eps[n] = epsilon_rank(spec, n, rel_result=rel, threads=threads, limit=limit)
    out = []
    for n in range(1, max_degree + 1):
        betti = rel.betti(n)
        bk_next = len(monomial_basis(spec.bk_presentation, n + 1))
        here, nxt = eps[n], eps[n + 1]
        coker = betti - here.rank
        ker_free = bk_next - nxt.rank
        if split or (here.rank == 0 and nxt.rank == 0):
            desc = _summand(betti, bk_next)
        elif betti == 0 and ker_free == 0:
            desc = "0"
        else:
            desc = "0 -> %s -> H^%d -> %s -> 0" % (
                _coker_str(betti, here.rank), n,
                "Z^%d" % ker_free if ker_free else "0")
        out.append(DegreeLine(
            degree=n,
            ncz_verdict=ncz_report.verdict(n),
            relative_betti=betti,
            lattice_free_rank_next=bk_next,
            epsilon_here=here,
            epsilon_next=nxt,
            coker_rank=coker,
            kernel_free_rank=ker_free,
            description=desc,
            torsion_omitted=spec.torsion_omitted,
        ))
    return tuple(out)


def _caveats(spec: GroupSpec) -> tuple:
    out = []
    if spec.torsion_omitted:
        out.append("lattice torsion omitted: ranks describe the free part only")
    if spec.index_caveat:
        out.append(spec.index_caveat)
    return tuple(out)


def assemble_split(spec: GroupSpec, max_degree: int, threads: int = 1,
                   limit: int = DEFAULT_MAX_EXTERIOR_DIM) -> GroupCohomologyReport:
    """The split description; requires injectivity through max_degree + 1.

    Raises NczFailed at the first non-injective degree, in which case the
    caller falls back to les_report.
    """
    ncz_report = is_ncz(spec.g, [list(v) for v in spec.dec.k_basis],
                        max_degree=max_degree + 1, limit=limit)
    if not ncz_report.overall:
        bad = min(n for n, ok in ncz_report.per_degree.items() if not ok)
        raise NczFailed(bad)
    lines = _lines(spec, max_degree, ncz_report, True, threads, limit)
    return GroupCohomologyReport(spec.name, max_degree, "split", lines,
                                 _caveats(spec), ncz_report)


def les_report(spec: GroupSpec, max_degree: int, threads: int = 1,
               limit: int = DEFAULT_MAX_EXTERIOR_DIM) -> GroupCohomologyReport:
    """The exact-ladder description; no precondition.

    When every epsilon rank vanishes the degree descriptions degenerate to
    the split form, so the two operations agree wherever both apply.
    """
    ncz_report = is_ncz(spec.g, [list(v) for v in spec.dec.k_basis],
                        max_degree=max_degree + 1, limit=limit)
    lines = _lines(spec, max_degree, ncz_report, False, threads, limit)
    return GroupCohomologyReport(spec.name, max_degree, "les", lines,
                                 _caveats(spec), ncz_report)


def build_report(spec: GroupSpec, max_degree: int, threads: int = 1,
                 limit: int = DEFAULT_MAX_EXTERIOR_DIM) -> GroupCohomologyReport:
    """Split form when its precondition holds, exact ladder otherwise."""
    try:
        return assemble_split(spec, max_degree, threads, limit)
    except NczFailed:
        return les_report(spec, max_degree, threads, limit)


def epsilon_doc(e: EpsilonData) -> dict:
    doc = {"rank": e.rank,
           "nonzero_monomials": list(e.nonzero_monomials)}
    if e.hopf_marker:
        doc["hopf"] = True
    if e.kernel_combinations:
        doc["kernel_combinations"] = list(e.kernel_combinations)
    return doc


def report_document(report: GroupCohomologyReport, spec: GroupSpec) -> dict:
    """The report as a plain dict with a stable field order."""
    ncz_report = report.ncz
    top = ncz_report.max_degree
    eps_table = {}
    for ln in report.lines:
        eps_table[str(ln.degree)] = epsilon_doc(ln.epsilon_here)
    if report.lines:
        last = report.lines[-1]
        eps_table[str(last.degree + 1)] = epsilon_doc(last.epsilon_next)
    doc = {
        "group": report.group,
        "max_degree": report.max_degree,
        "form": report.form,
        "coefficients": {k: v for k, v in spec.coefficients},
        "torsion_omitted": spec.torsion_omitted,
        "relative_betti": [ncz_report.relative.betti(i) for i in range(top + 1)],
        "absolute_betti": [ncz_report.full.betti(i) for i in range(top + 1)],
        "ncz": {
            "overall": ncz_report.overall,
            "per_degree": {str(n): ncz_report.per_degree[n] for n in sorted(ncz_report.per_degree)},
            "odd_generation": ncz_report.odd_generation,
        },
        "lattice_free_rank": {
            str(m): len(monomial_basis(spec.bk_presentation, m))
            for m in range(top + 1)
        },
        "epsilon": eps_table,
        "degrees": [
            {
                "degree": ln.degree,
                "ncz": ln.ncz_verdict,
                "relative_betti": ln.relative_betti,
                "lattice_free_rank_next": ln.lattice_free_rank_next,
                "epsilon_rank": ln.epsilon_here.rank,
                "epsilon_rank_next": ln.epsilon_next.rank,
                "coker_rank": ln.coker_rank,
                "kernel_free_rank": ln.kernel_free_rank,
                "description": ln.description,
            }
            for ln in report.lines
        ],
        "caveats": list(report.caveats),
    }
    return doc


def render_text(doc: dict) -> str:
    """Fixed-layout plain-text table for a report document."""
    out = []
    out.append("group: %s  (form: %s, through degree %d)"
               % (doc["group"], doc["form"], doc["max_degree"]))
    out.append("relative betti: %s" % (tuple(doc["relative_betti"]),))
    out.append("absolute betti: %s" % (tuple(doc["absolute_betti"]),))
    ncz = doc["ncz"]
    out.append("ncz: overall=%s odd_generation=%s" % (ncz["overall"], ncz["odd_generation"]))
    header = "%-4s %-6s %-8s %-8s %-8s %-8s  %s" % (
        "deg", "ncz", "relH", "lat+1", "eps", "eps+1", "H^n description")
    out.append(header)
    for row in doc["degrees"]:
        out.append("%-4d %-6s %-8d %-8d %-8d %-8d  %s" % (
            row["degree"], row["ncz"], row["relative_betti"],
            row["lattice_free_rank_next"], row["epsilon_rank"],
            row["epsilon_rank_next"], row["description"]))
    for n in sorted(doc["epsilon"], key=int):
        e = doc["epsilon"][n]
        extra = ""
        if e.get("hopf"):
            extra = "  (odd degree: rank 0 by the Hopf argument)"
        if e.get("kernel_combinations"):
            extra += "  kernel: " + "; ".join(e["kernel_combinations"])
        out.append("epsilon^%s: rank %d, nonzero monomials %s%s"
                   % (n, e["rank"], e["nonzero_monomials"], extra))
    for c in doc["caveats"]:
        out.append("note: %s" % c)
    return "\n".join(out) + "\n"


def full_report(spec: GroupSpec, max_degree: int, format: str = "text",
                threads: int = 1, limit: int = DEFAULT_MAX_EXTERIOR_DIM) -> str:
    """Rendered report; ``format`` is "text" or "json"."""
    report = build_report(spec, max_degree, threads, limit)
    doc = report_document(report, spec)
    if format == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    return render_text(doc)
