"""cm-degen: command-line front end.

Exit codes: 0 success, 1 negative decision or failed check, 2 usage error,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ar_quiver import ARTriangle, quiver, star_condition
from .catalog import (
    DomainError,
    ExprSyntaxError,
    SingularitySpec,
    StableModule,
    classify,
    knoerrer_reduce,
    parse_module,
    syzygy,
    tau,
)
from .degen import (
    LadderError,
    PosetTooLarge,
    PreconditionError,
    WitnessError,
    chain,
    hasse,
    leq_st,
    to_dot,
    witness,
)
from .fields import parse_field
from .homtab import MeshRelationError, hom_vector, leq_hom
from .k0 import k0_class, k0_presentation
from .oracle import AUTO, NonStabilizingError, hom_table
from .verify import CHECKS, run_all

SCHEMA = "cm-degen/1"

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_module_expr(text: str, spec: SingularitySpec | None = None) -> StableModule:
    """Parse "2*I1 + N+" style expressions; ids are checked against spec when given."""
    return parse_module(text, spec)


# ---------------------------------------------------------------- context

class Context:
    def __init__(self, args):
        self.args = args
        try:
            self.spec = SingularitySpec.parse(args.ring)
        except (DomainError, ValueError) as exc:
            raise UsageError(f"--ring: {exc}") from exc
        self.reduced = knoerrer_reduce(self.spec)
        try:
            self.field = parse_field(args.field)
        except ValueError as exc:
            raise UsageError(f"--field: {exc}") from exc
        db = args.degree_bound
        if db != AUTO:
            try:
                db = int(db)
            except ValueError:
                raise UsageError("--degree-bound must be a positive integer or 'auto'") from None
            if db < 1:
                raise UsageError("--degree-bound must be a positive integer or 'auto'")
        self.degree_bound = db
        self._table = None

    @property
    def table(self):
        if self._table is None:
            self._table = hom_table(self.reduced, self.degree_bound, self.field)
        return self._table

    def module(self, text: str) -> StableModule:
        try:
            return parse_module_expr(text, self.reduced)
        except ExprSyntaxError as exc:
            raise UsageError(f"{text!r}: {exc}") from exc
        except DomainError as exc:
            raise UsageError(f"{text!r}: {exc}") from exc

    def header(self, command: str) -> dict:
        return {"schema": SCHEMA, "command": command, "ring": str(self.spec),
                "reduced": str(self.reduced)}


# ---------------------------------------------------------------- commands

def cmd_classify(ctx: Context) -> tuple[int, dict]:
    r = ctx.reduced
    rows = [{"id": x, "syzygy": syzygy(r, x), "tau": tau(r, x)} for x in classify(r)]
    return EXIT_OK, {**ctx.header("classify"), "indecomposables": rows}


def _triangle(t: ARTriangle) -> dict:
    return {"end": t.end, "translate": t.translate, "middle": t.middle.render()}


def cmd_quiver(ctx: Context) -> tuple[int, dict]:
    ok, rows = star_condition(ctx.reduced)
    out = {**ctx.header("quiver"), "triangles": [_triangle(t) for t in quiver(ctx.reduced)],
           "star_condition": {"holds": ok, "triangles": rows}}
    return EXIT_OK, out


def cmd_hom_table(ctx: Context) -> tuple[int, dict]:
    out = {**ctx.header("hom-table"), **ctx.table.as_dict()}
    out["degree_bound"] = ctx.degree_bound
    if ctx.args.certify:
        out["certificates"] = dict(sorted(ctx.table.certificates.items()))
    return EXIT_OK, out


def cmd_k0(ctx: Context) -> tuple[int, dict]:
    pres = k0_presentation(ctx.reduced)
    out = {**ctx.header("k0"), "group": pres.describe(), "invariant_factors": pres.invariant_factors,
           "generators": list(pres.generators), "relations": [list(r) for r in pres.relations]}
    if ctx.args.cls is not None:
        M = ctx.module(ctx.args.cls)
        out["class"] = {"module": M.render(), "coordinates": list(k0_class(pres, M)),
                        "diagonal": list(pres.diagonal)}
    return EXIT_OK, out


def cmd_order(ctx: Context) -> tuple[int, dict]:
    a = ctx.args
    M, N = ctx.module(a.M), ctx.module(a.N)
    out = ctx.header("order")
    out.update({"M": M.render(), "N": N.render()})
    if a.hom:
        hm, hn = hom_vector(ctx.table, M), hom_vector(ctx.table, N)
        leq = leq_hom(ctx.table, M, N)
        out.update({"order": "hom", "leq": leq,
                    "certificate": {"labels": list(ctx.table.labels),
                                    "hom_vector_M": list(hm), "hom_vector_N": list(hn)}})
    else:
        table = ctx.table if ctx.reduced.d == 1 else None
        dec = leq_st(ctx.reduced, M, N, with_witness=a.witness, table=table)
        out.update({"order": "st", **dec.as_dict()})
        leq = dec.leq
    return (EXIT_OK if leq else EXIT_NEGATIVE), out


def cmd_witness(ctx: Context) -> tuple[int, dict]:
    M, N = ctx.module(ctx.args.M), ctx.module(ctx.args.N)
    if ctx.reduced.d != 1:
        raise UsageError("witness construction needs a ring of odd dimension")
    w = witness(ctx.reduced, M, N, ctx.table)
    out = ctx.header("witness")
    if w is None:
        out.update({"M": M.render(), "N": N.render(), "witness": None})
        return EXIT_NEGATIVE, out
    out["witness"] = w.as_dict()
    return EXIT_OK, out


def cmd_chain(ctx: Context) -> tuple[int, dict]:
    M, N = ctx.module(ctx.args.M), ctx.module(ctx.args.N)
    table = ctx.table if ctx.reduced.d == 1 else None
    ch = chain(ctx.reduced, M, N, table=table)
    out = {**ctx.header("chain"), "M": M.render(), "N": N.render()}
    if ch is None:
        out["chain"] = None
        return EXIT_NEGATIVE, out
    out["chain"] = ch.as_dict()
    return EXIT_OK, out


def cmd_hasse(ctx: Context) -> tuple[int, dict]:
    a = ctx.args
    if a.bound < 0:
        raise UsageError("--bound must be non-negative")
    cls = ctx.module(a.cls) if a.cls is not None else None
    table = ctx.table if ctx.reduced.d == 1 else None
    try:
        g = hasse(ctx.reduced, a.bound, cls, node_cap=a.cap, table=table)
    except PosetTooLarge as exc:
        raise UsageError(str(exc)) from exc
    if a.dot is not None:
        text = to_dot(g)
        if a.dot == "-":
            sys.stdout.write(text)
        else:
            with open(a.dot, "w") as fh:
                fh.write(text)
    out = {**ctx.header("hasse"), "bound": a.bound,
           "class": cls.render() if cls is not None else None,
           "nodes": [m.render() for m in g.nodes],
           "edges": [[x.render(), y.render()] for x, y in g.edges]}
    return EXIT_OK, out


def cmd_verify(ctx: Context) -> tuple[int, dict]:
    a = ctx.args
    if ctx.field.name != "qi" or ctx.degree_bound != AUTO:
        raise UsageError("verify runs with the default field and degree bound")
    reports = run_all(ctx.spec, a.bound, tuple(a.check) if a.check else None)
    out = {**ctx.header("verify"), "reports": [r.as_dict() for r in reports],
           "passed": all(r.passed for r in reports)}
    return (EXIT_OK if out["passed"] else EXIT_NEGATIVE), out


COMMANDS = {
    "classify": cmd_classify, "quiver": cmd_quiver, "hom-table": cmd_hom_table, "k0": cmd_k0,
    "order": cmd_order, "witness": cmd_witness, "chain": cmd_chain, "hasse": cmd_hasse,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", required=True, help="A:n:d")
    common.add_argument("--field", default="qi", help="qi or fp:<p> with p = 1 mod 4")
    common.add_argument("--degree-bound", default=AUTO, help="positive integer or 'auto'")
    common.add_argument("--json", default=None, metavar="PATH",
                        help="write JSON to PATH ('-' for stdout, the default)")

    p = argparse.ArgumentParser(prog="cm-degen",
                                description="Stable degenerations of CM modules over A_n singularities.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="list indecomposables")
    sub.add_parser("quiver", parents=[common], help="AR triangles and the star condition")
    h = sub.add_parser("hom-table", parents=[common], help="stable Hom dimensions")
    h.add_argument("--certify", action="store_true", help="include stabilization certificates")
    k = sub.add_parser("k0", parents=[common], help="Grothendieck group")
    k.add_argument("--class", dest="cls", default=None, help="module whose class to print")

    o = sub.add_parser("order", parents=[common], help="decide M <= N")
    mode = o.add_mutually_exclusive_group()
    mode.add_argument("--hom", action="store_true", help="stable hom order")
    mode.add_argument("--st", action="store_true", help="stable degeneration order (default)")
    o.add_argument("--witness", action="store_true", help="attach a witness triangle")
    o.add_argument("M")
    o.add_argument("N")

    for name, text in (("witness", "build Z -> M+Z -> N -> Z[1]"), ("chain", "covering chain M -> N")):
        c = sub.add_parser(name, parents=[common], help=text)
        c.add_argument("M")
        c.add_argument("N")

    hs = sub.add_parser("hasse", parents=[common], help="Hasse diagram of <=_st")
    hs.add_argument("--bound", type=int, required=True, help="max total multiplicity")
    hs.add_argument("--class", dest="cls", default=None, help="restrict to this K_0 class")
    hs.add_argument("--dot", default=None, metavar="PATH", help="write DOT to PATH ('-' for stdout)")
    hs.add_argument("--cap", type=int, default=500, help="node count cap")

    v = sub.add_parser("verify", parents=[common], help="run reproducibility checks")
    v.add_argument("--bound", type=int, default=3)
    v.add_argument("--check", action="append", choices=CHECKS)
    return p


def _emit(payload: dict, target: str | None, dot_to_stdout: bool) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if target is None:
        if dot_to_stdout:
            return
        target = "-"
    if target == "-":
        sys.stdout.write(text)
    else:
        with open(target, "w") as fh:
            fh.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        ctx = Context(args)
        code, payload = COMMANDS[args.command](ctx)
    except (UsageError, PreconditionError) as exc:
        print(f"cm-degen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (WitnessError, LadderError, MeshRelationError, NonStabilizingError,
            AssertionError, ArithmeticError) as exc:
        trace = getattr(exc, "trace", None)
        print(f"cm-degen: internal consistency failure: {exc}", file=sys.stderr)
        if trace:
            print(json.dumps([s if isinstance(s, dict) else s.as_dict() for s in trace], indent=2),
                  file=sys.stderr)
        return EXIT_INTERNAL
    _emit(payload, args.json, getattr(args, "dot", None) == "-")
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
