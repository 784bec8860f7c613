"""Command-line front door: parse inputs, drive computations, render output.

Exactly one input source per invocation: a builtin group name (``--group
"SL(3,R)"``, literal grammar) or JSON files (``--algebra`` plus, where the
command needs a symmetric pair, ``--decomposition``).  Exit codes: 0 on
success, 1 on usage errors, 2 on validation failures (Jacobi, decomposition,
size guard), the latter with a machine-readable error object under
``--format json``.  All output is byte-deterministic: fixed field orderings,
no timestamps, rationals rendered as "num/den" strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import (
    GroupSpec,
    builtin_group,
    custom_group,
    k_cohomology_crosscheck,
)
from .cecohomology import (
    DEFAULT_MAX_EXTERIOR_DIM,
    cohomology,
    full_complex,
    is_ncz,
    relative_complex,
)
from .chernweil import cw, epsilon_rank, invariant_generators
from .errors import (
    NonTrivialCoefficients,
    SymcohError,
    UsageError,
    ValidationFailure,
)
from .liealg import (
    algebra_from_json,
    algebra_to_json,
    dual_pair,
    module_from_json,
    trivial_module,
)
from .reports import epsilon_doc, full_report
from .scalars import format_rational

_COMMANDS = ("cohomology", "relative", "ncz", "chern-weil", "epsilon",
             "dual", "report", "crosscheck")


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as exceptions, not sys.exit."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="symcoh", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--group", help="builtin group name, e.g. SL(3,R) or SU*(4)")
    common.add_argument("--algebra", metavar="FILE", help="algebra JSON document")
    common.add_argument("--decomposition", metavar="FILE", help="k/p split JSON document")
    common.add_argument("--module", default="trivial", metavar="trivial|FILE",
                        help="coefficient module (default: trivial)")
    common.add_argument("--max-degree", type=int, default=None, metavar="N")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-exterior-dim", type=int, default=None, metavar="N",
                        help="size guard for cochain spaces "
                             "(env SYMCOH_MAX_EXTERIOR_DIM)")
    common.add_argument("--threads", type=int, default=1, metavar="N")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _guard_limit(args) -> int:
    if args.max_exterior_dim is not None:
        if args.max_exterior_dim < 1:
            raise UsageError("--max-exterior-dim must be positive")
        return args.max_exterior_dim
    env = os.environ.get("SYMCOH_MAX_EXTERIOR_DIM")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError("SYMCOH_MAX_EXTERIOR_DIM must be an integer, got %r" % env)
    return DEFAULT_MAX_EXTERIOR_DIM


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc))
    try:
        return json.loads(text)
    except ValueError as exc:
        raise ValidationFailure("malformed JSON in %s: %s" % (path, exc)) from None


def _spec_from_args(args) -> GroupSpec:
    if args.group and args.algebra:
        raise UsageError("exactly one input source: --group or --algebra")
    if args.group:
        if args.decomposition:
            raise UsageError("--decomposition only applies to --algebra input")
        return builtin_group(args.group)
    if args.algebra:
        if not args.decomposition:
            raise UsageError("this command needs --decomposition alongside --algebra")
        return custom_group(_read_json(args.algebra), _read_json(args.decomposition))
    raise UsageError("an input source is required: --group NAME or --algebra FILE")


def _algebra_from_args(args):
    """(name, algebra) for commands that only need the algebra itself."""
    if args.group and args.algebra:
        raise UsageError("exactly one input source: --group or --algebra")
    if args.group:
        spec = builtin_group(args.group)
        return spec.name, spec.g
    if args.algebra:
        if args.decomposition:
            spec = custom_group(_read_json(args.algebra), _read_json(args.decomposition))
            return spec.name, spec.g
        return "custom", algebra_from_json(_read_json(args.algebra))
    raise UsageError("an input source is required: --group NAME or --algebra FILE")


def _load_module(g, args):
    if args.module == "trivial":
        return trivial_module(g)
    return module_from_json(g, _read_json(args.module))


def _require_trivial(args):
    if args.module != "trivial":
        raise NonTrivialCoefficients(
            "the %s command is defined for trivial coefficients only" % args.command)


def _max_degree(args, default: int) -> int:
    if args.max_degree is None:
        return default
    if args.max_degree < 0:
        raise UsageError("--max-degree must be nonnegative")
    return args.max_degree


def _fmt_vec(vec) -> list:
    return [format_rational(v) for v in vec]


# ---------------------------------------------------------------------------
# command bodies: each returns (text, doc); main renders one of the two
# ---------------------------------------------------------------------------

def _cmd_cohomology(args, limit):
    name, g = _algebra_from_args(args)
    module = _load_module(g, args)
    md = _max_degree(args, g.dim)
    res = cohomology(full_complex(g, module, limit), md)
    betti = res.betti_list()
    ranks = [res.differential_rank(n) for n in range(md + 1)]
    text = ("group: %s\ndim: %d\nbetti: %s\ndifferential ranks: %s\n"
            % (name, g.dim, tuple(betti), tuple(ranks)))
    doc = {"command": "cohomology", "input": name, "dim": g.dim,
           "max_degree": md, "betti": betti, "differential_ranks": ranks}
    return text, doc


def _cmd_relative(args, limit):
    spec = _spec_from_args(args)
    module = _load_module(spec.g, args)
    kb = [list(v) for v in spec.dec.k_basis]
    md = _max_degree(args, spec.g.dim - len(kb))
    res = cohomology(relative_complex(spec.g, kb, module, md, limit), md)
    betti = res.betti_list()
    text = ("group: %s\npair: (dim %d, k dim %d)\nrelative betti: %s\n"
            % (spec.name, spec.g.dim, len(kb), tuple(betti)))
    doc = {"command": "relative", "input": spec.name, "dim": spec.g.dim,
           "k_dim": len(kb), "max_degree": md, "relative_betti": betti}
    return text, doc


def _cmd_ncz(args, limit):
    spec = _spec_from_args(args)
    module = _load_module(spec.g, args)
    kb = [list(v) for v in spec.dec.k_basis]
    md = _max_degree(args, spec.g.dim - len(kb))
    report = is_ncz(spec.g, kb, module, md, limit)
    first = None
    for n in sorted(report.per_degree):
        if not report.per_degree[n]:
            first = n
            break
    lines = ["group: %s" % spec.name,
             "kappa injective per degree: " + " ".join(
                 "%d:%s" % (n, report.per_degree[n]) for n in sorted(report.per_degree)),
             "overall: %s" % report.overall,
             "odd-generation path: %s" % report.odd_generation]
    if first is not None:
        lines.append("first failing degree: %d" % first)
    text = "\n".join(lines) + "\n"
    doc = {"command": "ncz", "input": spec.name, "max_degree": md,
           "per_degree": {str(n): report.per_degree[n] for n in sorted(report.per_degree)},
           "overall": report.overall,
           "odd_generation": report.odd_generation,
           "first_failure": first}
    return text, doc


def _cmd_chern_weil(args, limit):
    spec = _spec_from_args(args)
    _require_trivial(args)
    kb = [list(v) for v in spec.dec.k_basis]
    md = _max_degree(args, spec.g.dim - len(kb))
    gens = invariant_generators(spec.k_name, md) if spec.k_name else []
    rel = cohomology(relative_complex(spec.g, kb, max_degree=md, limit=limit), md)
    rows = []
    for form in gens:
        w = cw(form, spec.dec, limit=limit)
        coords = rel.class_coordinates(w)
        rows.append({"label": form.name, "form_degree": form.degree,
                     "cochain_degree": 2 * form.degree,
                     "class": _fmt_vec(coords),
                     "nonzero": any(coords)})
    lines = ["group: %s" % spec.name,
             "relative betti: %s" % (tuple(rel.betti_list()),)]
    for r in rows:
        lines.append("%s: cochain degree %d, class %s (%s)" % (
            r["label"], r["cochain_degree"], r["class"],
            "nonzero" if r["nonzero"] else "zero"))
    text = "\n".join(lines) + "\n"
    doc = {"command": "chern-weil", "input": spec.name, "max_degree": md,
           "relative_betti": rel.betti_list(), "generators": rows}
    return text, doc


def _cmd_epsilon(args, limit):
    spec = _spec_from_args(args)
    _require_trivial(args)
    kb = [list(v) for v in spec.dec.k_basis]
    md = _max_degree(args, spec.g.dim - len(kb))
    rel = cohomology(relative_complex(spec.g, kb, max_degree=md, limit=limit), md)
    table = {}
    lines = ["group: %s" % spec.name]
    for n in range(md + 1):
        data = epsilon_rank(spec, n, rel_result=rel, threads=args.threads, limit=limit)
        table[str(n)] = epsilon_doc(data)
        extra = " (odd: rank 0 by the Hopf argument)" if data.hopf_marker else ""
        if data.kernel_combinations:
            extra += "  kernel: " + "; ".join(data.kernel_combinations)
        lines.append("epsilon^%d: rank %d, nonzero monomials %s%s"
                     % (n, data.rank, data.nonzero_monomials, extra))
    text = "\n".join(lines) + "\n"
    doc = {"command": "epsilon", "input": spec.name, "max_degree": md,
           "epsilon": table}
    return text, doc


def _cmd_dual(args, limit):
    spec = _spec_from_args(args)
    dual, dec_u = dual_pair(spec.dec)
    nk = len(dec_u.k_basis)
    adoc = algebra_to_json(dual)
    ddoc = {"k_indices": list(range(nk)), "p_indices": list(range(nk, dual.dim))}
    lines = ["group: %s" % spec.name,
             "compact dual dim: %d (builtin hint: %s)" % (dual.dim, spec.dual_name),
             "k indices: %s" % (ddoc["k_indices"],),
             "p indices: %s" % (ddoc["p_indices"],)]
    for item in adoc["brackets"]:
        terms = " + ".join("%s*%s" % (v, adoc["basis"][k]) for k, v in item["result"])
        lines.append("[%s, %s] = %s" % (adoc["basis"][item["i"]],
                                        adoc["basis"][item["j"]], terms))
    text = "\n".join(lines) + "\n"
    doc = {"command": "dual", "input": spec.name, "dual_name_hint": spec.dual_name,
           "algebra": adoc, "decomposition": ddoc}
    return text, doc


def _cmd_report(args, limit):
    spec = _spec_from_args(args)
    _require_trivial(args)
    md = _max_degree(args, spec.g.dim - len(spec.dec.k_basis))
    rendered = full_report(spec, md, format=args.format,
                           threads=args.threads, limit=limit)
    return rendered, None


def _cmd_crosscheck(args, limit):
    spec = _spec_from_args(args)
    ok = k_cohomology_crosscheck(spec, limit)
    prim = list(spec.k_primitive_degrees or ())
    text = ("group: %s\nk model: %s\nprimitive degrees: %s\ncrosscheck: %s\n"
            % (spec.name, spec.k_name, prim, "PASS" if ok else "FAIL"))
    doc = {"command": "crosscheck", "input": spec.name, "k": spec.k_name,
           "primitive_degrees": prim, "pass": ok}
    return text, doc


_BODIES = {
    "cohomology": _cmd_cohomology,
    "relative": _cmd_relative,
    "ncz": _cmd_ncz,
    "chern-weil": _cmd_chern_weil,
    "epsilon": _cmd_epsilon,
    "dual": _cmd_dual,
    "report": _cmd_report,
    "crosscheck": _cmd_crosscheck,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        print("commands: %s" % ", ".join(_COMMANDS), file=sys.stderr)
        return 1
    fmt = getattr(args, "format", "text")
    try:
        limit = _guard_limit(args)
        text, doc = _BODIES[args.command](args, limit)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    except SymcohError as exc:
        if fmt == "json":
            payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
            print(json.dumps(payload, indent=2, ensure_ascii=False))
        else:
            print("error: %s" % exc, file=sys.stderr)
        return 2
    if fmt == "json" and doc is not None:
        sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
