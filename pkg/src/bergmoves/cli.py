"""Command line interface.

Exit codes: 0 success, 1 validation or precondition failure (including
malformed input files and UNKNOWN from ``meq``), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import algebra, formats, lpa, moves
from .dot import dot_export
from .monoid import Element, MonoidPresentation, TietzeError, apply_tietze, congruence_equal
from .structures import (
    BergmanGraph,
    BergmanPresentation,
    Digraph,
    admissible_orderings,
    digraph_to_bergman,
    graph_to_pres,
    pres_to_graph,
    validate_presentation,
)


class Failure(Exception):
    """Reported on stderr, exit code 1."""


class Usage(Exception):
    """Reported on stderr, exit code 2."""


def load(path: str):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise Usage(f"cannot read {path}: {exc.strerror}") from None
    suffix = p.suffix
    if suffix == ".bp":
        return formats.parse_bp(text, path)
    if suffix == ".bg":
        return formats.parse_bg(text, path)
    if suffix == ".dg":
        return formats.parse_dg(text, path)
    raise Usage(f"unknown file type {suffix!r} (expected .bp, .bg or .dg)")


def load_presentation(path: str) -> BergmanPresentation:
    obj = load(path)
    if isinstance(obj, Digraph):
        obj = digraph_to_bergman(obj)
    if isinstance(obj, BergmanGraph):
        obj = graph_to_pres(obj)
    return obj


def _require_valid(p: BergmanPresentation):
    rep = validate_presentation(p)
    if not rep.ok:
        raise Failure(str(rep))
    return rep


def _fmt_order(o) -> str:
    return "(" + ",".join(o) + ")"


def _element(text: str, what: str) -> Element:
    try:
        return Element.parse(text)
    except ValueError as exc:
        raise Usage(f"bad {what}: {exc}") from None


def _emit(out, args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args, out):
    p = load_presentation(args.file)
    rep = validate_presentation(p)
    if not rep.ok:
        out.write(str(rep) + "\n")
        return 1
    orders = admissible_orderings(p)
    out.write("valid; admissible orderings: " + ", ".join(_fmt_order(o) for o in orders) + "\n")
    return 0


def cmd_orderings(args, out):
    p = load_presentation(args.file)
    _require_valid(p)
    for o in admissible_orderings(p):
        out.write(_fmt_order(o) + "\n")
    return 0


def cmd_convert(args, out):
    obj = load(args.file)
    if isinstance(obj, Digraph):
        obj = digraph_to_bergman(obj)
    p = graph_to_pres(obj) if isinstance(obj, BergmanGraph) else obj
    fmt = args.format
    if fmt == "bp":
        text = formats.dump_bp(p)
    elif fmt == "bg":
        text = formats.dump_bg(pres_to_graph(p))
    elif fmt == "dot":
        _require_valid(p)
        text = dot_export(p)
    else:
        _require_valid(p)
        text = algebra.dump_alg(algebra.build_algebra_presentation(p))
    _emit(out, args, text)
    return 0


def cmd_vmonoid(args, out):
    p = load_presentation(args.file)
    out.write(p.monoid().format() + "\n")
    return 0


def cmd_meq(args, out):
    m = load_presentation(args.file).monoid()
    a, b = _element(args.a, "element"), _element(args.b, "element")
    try:
        m.check_element(a)
        m.check_element(b)
    except ValueError as exc:
        raise Usage(str(exc)) from None
    if args.bound < max(a.degree, b.degree):
        raise Usage(f"bound {args.bound} is below the degree of the inputs")
    cert = congruence_equal(m, a, b, args.bound)
    if cert is None:
        out.write(f"UNKNOWN at bound {args.bound}\n")
        return 1
    out.write("EQUAL\n" + cert.format(m.generators) + "\n")
    return 0


def cmd_tietze(args, out):
    m: MonoidPresentation = load_presentation(args.file).monoid()
    script = Path(args.script)
    try:
        steps = formats.parse_tietze(script.read_text(encoding="utf-8"), str(script))
    except OSError as exc:
        raise Usage(f"cannot read {script}: {exc.strerror}") from None
    out.write(m.format() + "\n")
    for n, t in steps:
        try:
            m2 = apply_tietze(m, t)
        except TietzeError as exc:
            raise Failure(f"{script}:{n}: {exc}") from None
        out.write(f"== ({t.kind}) line {n}\n")
        if t.kind in ("C", "D"):
            rel = (t.lhs, t.rhs) if t.kind == "C" else (m.relation(t.label).lhs, m.relation(t.label).rhs)
            base = m if t.kind == "C" else m2
            cert = congruence_equal(base, rel[0], rel[1], t.bound) if t.certificate is None else t.certificate
            out.write(cert.format(m.generators) + "\n")
        m = m2
        out.write(m.format() + "\n")
    return 0


def _print_record(out, rec: moves.MoveRecord, p: BergmanPresentation):
    out.write(f"== {rec.describe()}\n")
    for c in rec.certificates:
        out.write(f"certificate {c.start} = {c.end}:\n{c.format()}\n")
    out.write(formats.dump_bp(p))


def run_script(p: BergmanPresentation, commands, out, default_bound: int) -> BergmanPresentation:
    for cmd in commands:
        bound = cmd.bound if cmd.bound is not None else default_bound
        q = dict(cmd.params)
        try:
            if cmd.kind == "factor-collapse":
                seq = moves.factor_collapse(p, q["generator"], q["label"])
                cur = p
                for rec in seq.records:
                    cur = rec.apply(cur)
                    _print_record(out, rec, cur)
                direct = moves.collapse(p, q["generator"], q["label"])
                out.write("factorization agrees with collapse\n" if cur == direct else "factorization DISAGREES\n")
                p = cur
            elif cmd.kind == "factor-insplit":
                names = q.get("new_names")
                seq = moves.factor_insplit(p, q["generator"], q["label"], q["partition"], names)
                out.write(f"== insplit {q['generator']} via {q['label']}\n" + formats.dump_bp(seq.initial))
                cur = seq.initial
                for rec in seq.records:
                    cur = rec.apply(cur)
                    _print_record(out, rec, cur)
                out.write("factorization recovers the input\n" if cur == p else "factorization DISAGREES\n")
                p = cur
            else:
                if cmd.kind in ("outsplit", "insplit") and q.get("new_names") is None:
                    q.pop("new_names", None)
                if cmd.kind == "extend" and q.get("label") is None:
                    q.pop("label")
                rec, p2 = moves.perform(p, cmd.kind, bound=bound, **q)
                _print_record(out, rec, p2)
                p = p2
        except moves.MoveError as exc:
            raise Failure(f"line {cmd.line}: {exc}") from None
    return p


def cmd_move(args, out):
    p = load_presentation(args.file)
    _require_valid(p)
    script = Path(args.script)
    try:
        commands = formats.parse_mv(script.read_text(encoding="utf-8"), str(script))
    except OSError as exc:
        raise Usage(f"cannot read {script}: {exc.strerror}") from None
    out.write(formats.dump_bp(p))
    p = run_script(p, commands, out, args.bound)
    if args.out:
        Path(args.out).write_text(formats.dump_bp(p), encoding="utf-8")
    return 0


def cmd_factor(args, out):
    p = load_presentation(args.file)
    _require_valid(p)
    if args.which == "collapse":
        line = f"factor-collapse {args.generator} via {args.label}"
    else:
        if not args.partition:
            raise Usage("factor insplit needs a partition")
        line = f"factor-insplit {args.generator} via {args.label}: {args.partition}"
        if args.names:
            line += " as " + " ".join(args.names)
    cmd = formats.parse_move_line(1, line, line)
    out.write(formats.dump_bp(p))
    run_script(p, [cmd], out, args.bound)
    return 0


def cmd_algebra(args, out):
    p = load_presentation(args.file)
    _require_valid(p)
    order = args.order.split(",") if args.order else None
    try:
        a = algebra.build_algebra_presentation(p, order)
    except ValueError as exc:
        raise Failure(str(exc)) from None
    _emit(out, args, algebra.dump_alg(a))
    return 0


def _engine(args) -> lpa.LeavittPathAlgebra:
    obj = load(args.file)
    if isinstance(obj, Digraph):
        obj = digraph_to_bergman(obj)
    anchors = lpa.parse_anchors(args.anchors) if args.anchors else None
    return lpa.LeavittPathAlgebra(obj, anchors)


def cmd_lpa(args, out):
    try:
        A = _engine(args)
        if args.op == "reduce":
            out.write(A.reduce(A.parse(args.x)).format() + "\n")
        elif args.op == "mul":
            if args.y is None:
                raise Usage("lpa mul needs two elements")
            out.write(A.multiply(A.parse(args.x), A.parse(args.y)).format() + "\n")
        elif args.op == "check":
            rep = lpa.check_defining_relations(A)
            out.write(str(rep) + "\n")
            return 0 if rep.ok else 1
        else:
            if args.x is None:
                raise Usage("lpa corner needs a vertex")
            rep = lpa.lonely_corner_certify(A.graph, args.x, args.length, A.anchors)
            out.write(str(rep) + "\n")
            return 0 if rep.ok else 1
    except lpa.LpaError as exc:
        raise Failure(str(exc)) from None
    return 0


def cmd_dot(args, out):
    p = load_presentation(args.file)
    _require_valid(p)
    _emit(out, args, dot_export(p))
    return 0


# ---------------------------------------------------------------------------


def _bound(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("bound must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bergmoves", description="Bergman presentations, moves and algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the Bergman conditions")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("orderings", help="list admissible orderings")
    s.add_argument("file")
    s.set_defaults(func=cmd_orderings)

    s = sub.add_parser("convert", help="re-serialize in another format")
    s.add_argument("file")
    s.add_argument("--format", choices=["bp", "bg", "dot", "alg"], default="bp")
    s.add_argument("--out")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("vmonoid", help="print the V-monoid presentation")
    s.add_argument("file")
    s.set_defaults(func=cmd_vmonoid)

    s = sub.add_parser("meq", help="decide equality in the V-monoid up to a degree bound")
    s.add_argument("file")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--bound", type=_bound, default=16)
    s.set_defaults(func=cmd_meq)

    s = sub.add_parser("tietze", help="apply a Tietze script to the uncoloured presentation")
    s.add_argument("file")
    s.add_argument("script")
    s.set_defaults(func=cmd_tietze)

    s = sub.add_parser("move", help="run a move script")
    s.add_argument("file")
    s.add_argument("script")
    s.add_argument("--bound", type=_bound, default=16)
    s.add_argument("--out")
    s.set_defaults(func=cmd_move)

    s = sub.add_parser("factor", help="factor a collapse or insplit into elementary moves")
    s.add_argument("which", choices=["collapse", "insplit"])
    s.add_argument("file")
    s.add_argument("generator")
    s.add_argument("label")
    s.add_argument("partition", nargs="?")
    s.add_argument("--as", dest="names", nargs="+")
    s.add_argument("--bound", type=_bound, default=16)
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("algebra", help="emit the scalar presentation of the Bergman algebra")
    s.add_argument("file")
    s.add_argument("--order", help="comma-separated admissible ordering")
    s.add_argument("--out")
    s.set_defaults(func=cmd_algebra)

    s = sub.add_parser("lpa", help="Leavitt path algebra arithmetic")
    s.add_argument("op", choices=["reduce", "mul", "check", "corner"])
    s.add_argument("file")
    s.add_argument("x", nargs="?")
    s.add_argument("y", nargs="?")
    s.add_argument("--anchors")
    s.add_argument("--length", type=_bound, default=4)
    s.set_defaults(func=cmd_lpa)

    s = sub.add_parser("dot", help="export a Bergman graph as DOT")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_dot)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "lpa" and args.op in ("reduce", "mul") and args.x is None:
        err.write("bergmoves: error: lpa reduce/mul need an element\n")
        return 2
    try:
        return args.func(args, out)
    except Usage as exc:
        err.write(f"bergmoves: error: {exc}\n")
        return 2
    except (Failure, formats.ParseError, moves.MoveError, TietzeError) as exc:
        err.write(f"{exc}\n")
        return 1
    except lpa.StepBudgetExceeded as exc:
        err.write(f"{exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
