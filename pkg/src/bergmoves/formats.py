"""Text formats: presentations (.bp), graphs (.bg), digraphs (.dg), move and Tietze scripts.

Every format is line based, UTF-8, with ``#`` starting a comment.  The
dumpers are canonical: ``parse(dump(x)) == x`` and ``dump(parse(dump(x)))``
is byte-identical to ``dump(x)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from .monoid import (
    AddGenerator,
    AddRelation,
    Element,
    RemoveGenerator,
    RemoveRelation,
    check_name,
)
from .structures import (
    COLOURS,
    BergmanGraph,
    BergmanPresentation,
    ColouredRelation,
    Digraph,
    Hyperedge,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1, label: str | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.label = label
        self.path = path
        super().__init__(message)

    def __str__(self):
        where = f"{self.path or '<input>'}:{self.line}:{self.column}"
        extra = f" (relation {self.label})" if self.label else ""
        return f"{where}: {self.message}{extra}"


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield n, raw, body


def _col(raw: str, needle: str) -> int:
    k = raw.find(needle)
    return k + 1 if k >= 0 else 1


def _names(raw: str, n: int, tokens: list[str]) -> list[str]:
    for t in tokens:
        try:
            check_name(t)
        except ValueError as exc:
            raise ParseError(str(exc), n, _col(raw, t)) from None
    if len(set(tokens)) != len(tokens):
        raise ParseError("duplicate name in declaration", n, 1)
    return tokens


def _element(raw: str, n: int, text: str, label: str | None) -> Element:
    try:
        return Element.parse(text)
    except ValueError as exc:
        raise ParseError(str(exc), n, _col(raw, text.strip()), label) from None


_HEAD = re.compile(r"^\s*(\S+)\s+([^\s:]+)\s*:(.*)$")


def _head(raw, n, body):
    m = _HEAD.match(body)
    if not m:
        raise ParseError("expected '<keyword> <label>: ...'", n, 1)
    return m.group(1), m.group(2), m.group(3)


def _check_sides(raw, n, label, declared, *sides):
    for side in sides:
        if not side:
            raise ParseError("relation side is zero", n, 1, label)
        extra = side.support() - declared
        if extra:
            raise ParseError(f"undeclared generator(s) {sorted(extra)}", n, _col(raw, sorted(extra)[0]), label)


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------


def parse_bp(text: str, path: str | None = None) -> BergmanPresentation:
    gens: list[str] | None = None
    rels: list[ColouredRelation] = []
    labels: set[str] = set()
    try:
        for n, raw, body in _lines(text):
            tokens = body.split()
            if tokens[0] == "gens":
                if gens is not None:
                    raise ParseError("second 'gens' line", n, 1)
                if rels:
                    raise ParseError("'gens' must precede the relations", n, 1)
                gens = _names(raw, n, tokens[1:])
                continue
            colour, label, rest = _head(raw, n, body)
            if colour not in COLOURS:
                raise ParseError(f"expected 'gens', 'blue' or 'red', got {colour!r}", n, 1)
            if gens is None:
                raise ParseError("relation before the 'gens' line", n, 1, label)
            if label in labels:
                raise ParseError("duplicate relation label", n, _col(raw, label), label)
            labels.add(label)
            if rest.count("=") != 1:
                raise ParseError("expected exactly one '='", n, _col(raw, ":") + 1, label)
            left, right = rest.split("=")
            lhs = _element(raw, n, left, label)
            rhs = _element(raw, n, right, label)
            _check_sides(raw, n, label, set(gens), lhs, rhs)
            rels.append(ColouredRelation(label, colour, lhs, rhs))
    except ParseError as exc:
        exc.path = path
        raise
    return BergmanPresentation(gens or [], rels)


def dump_bp(p: BergmanPresentation) -> str:
    order = p.generators
    lines = [" ".join(["gens", *p.generators])]
    for r in p.relations:
        lines.append(f"{r.colour} {r.label}: {r.lhs.format(order)} = {r.rhs.format(order)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


def _multiset(raw, n, text, label, declared) -> Element:
    tokens = text.split()
    for t in tokens:
        if t not in declared:
            raise ParseError(f"undeclared vertex {t!r}", n, _col(raw, t), label)
    e = Element.of(*tokens)
    if not e:
        raise ParseError("empty source or range", n, 1, label)
    return e


def parse_bg(text: str, path: str | None = None) -> BergmanGraph:
    verts: list[str] | None = None
    edges: list[Hyperedge] = []
    labels: set[str] = set()
    try:
        for n, raw, body in _lines(text):
            tokens = body.split()
            if tokens[0] == "vertices":
                if verts is not None or edges:
                    raise ParseError("misplaced 'vertices' line", n, 1)
                verts = _names(raw, n, tokens[1:])
                continue
            colour, label, rest = _head(raw, n, body)
            if colour not in COLOURS:
                raise ParseError(f"expected 'vertices', 'blue' or 'red', got {colour!r}", n, 1)
            if verts is None:
                raise ParseError("hyperedge before the 'vertices' line", n, 1, label)
            if label in labels:
                raise ParseError("duplicate hyperedge label", n, _col(raw, label), label)
            labels.add(label)
            if rest.count("->") != 1:
                raise ParseError("expected exactly one '->'", n, 1, label)
            src, rng = rest.split("->")
            declared = set(verts)
            edges.append(Hyperedge(label, colour, _multiset(raw, n, src, label, declared), _multiset(raw, n, rng, label, declared)))
    except ParseError as exc:
        exc.path = path
        raise
    return BergmanGraph(verts or [], edges)


def _spell(e: Element, order) -> str:
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v, m in sorted(e.items(), key=lambda t: pos[t[0]]):
        out += [v] * m
    return " ".join(out)


def dump_bg(g: BergmanGraph) -> str:
    lines = [" ".join(["vertices", *g.vertices])]
    for h in g.hyperedges:
        lines.append(f"{h.colour} {h.label}: {_spell(h.source, g.vertices)} -> {_spell(h.range, g.vertices)}")
    return "\n".join(lines) + "\n"


def parse_dg(text: str, path: str | None = None) -> Digraph:
    verts: list[str] = []
    declared = False
    edges = []
    try:
        for n, raw, body in _lines(text):
            tokens = body.split()
            if tokens[0] == "vertices":
                if declared or edges:
                    raise ParseError("misplaced 'vertices' line", n, 1)
                verts = _names(raw, n, tokens[1:])
                declared = True
                continue
            kw, label, rest = _head(raw, n, body)
            if kw != "edge":
                raise ParseError(f"expected 'vertices' or 'edge', got {kw!r}", n, 1)
            ends = rest.split("->")
            if len(ends) != 2 or len(ends[0].split()) != 1 or len(ends[1].split()) != 1:
                raise ParseError("expected 'edge <label>: <u> -> <v>'", n, 1, label)
            s, r = ends[0].strip(), ends[1].strip()
            for v in (s, r):
                if v not in verts:
                    if declared:
                        raise ParseError(f"undeclared vertex {v!r}", n, _col(raw, v), label)
                    verts.append(check_name(v))
            if any(e[0] == label for e in edges):
                raise ParseError("duplicate edge label", n, _col(raw, label), label)
            edges.append((label, s, r))
    except ParseError as exc:
        exc.path = path
        raise
    return Digraph(verts, edges)


def dump_dg(d: Digraph) -> str:
    lines = [" ".join(["vertices", *d.vertices])]
    lines += [f"edge {label}: {s} -> {r}" for label, s, r in d.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# move scripts
# ---------------------------------------------------------------------------


@dataclass
class MoveCommand:
    kind: str
    params: dict[str, Any] = field(default_factory=dict)
    bound: int | None = None
    line: int = 0
    text: str = ""


_OPTION_KEYS = {"bound", "order", "label"}


def _options(raw, n, text) -> dict[str, str]:
    out: dict[str, str] = {}
    tokens = text.split()
    k = 0
    while k < len(tokens):
        key = tokens[k]
        if key not in _OPTION_KEYS or k + 1 >= len(tokens):
            raise ParseError(f"bad option {key!r}", n, _col(raw, key))
        out[key] = tokens[k + 1]
        k += 2
    return out


def _partition(raw, n, text):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("expected '[ ... ]'", n, _col(raw, "["))
    return [part for part in re.split(r"[|;]", text[1:-1])]


_PAIR = re.compile(r"\(\s*([^\s,()]+)\s*,\s*(\d+)\s*\)")


def _pairs(raw, n, part: str) -> list[tuple[str, int]]:
    pairs = [(m.group(1), int(m.group(2))) for m in _PAIR.finditer(part)]
    if not pairs or _PAIR.sub("", part).replace(",", "").strip():
        raise ParseError(f"bad index list {part.strip()!r}", n, _col(raw, part.strip()))
    return pairs


def _as_names(raw, n, text: str) -> tuple[str, list[str] | None]:
    m = re.match(r"^(.*?)\bas\b(.*)$", text)
    if not m:
        return text, None
    return m.group(1), _names(raw, n, m.group(2).split())


def parse_move_line(n: int, raw: str, body: str) -> MoveCommand:
    main, _, opt_text = body.partition("--")
    opts = _options(raw, n, opt_text)
    bound = int(opts["bound"]) if "bound" in opts else None
    if bound is not None and bound < 1:
        raise ParseError("bound must be at least 1", n, _col(raw, "bound"))
    tokens = main.split()
    kind = tokens[0]
    cmd = MoveCommand(kind, {}, bound, n, raw.strip())
    q = cmd.params
    try:
        if kind == "redshift":
            _, label, rest = _head(raw, n, main)
            left, right = rest.split("=")
            q.update(label=label, lhs=_element(raw, n, left, label), rhs=_element(raw, n, right, label))
        elif kind == "blueshift":
            _, label, rest = _head(raw, n, main)
            q.update(label=label, lhs=_element(raw, n, rest, label))
            if "order" in opts:
                q["ordering"] = tuple(opts["order"].split(","))
        elif kind == "enqueue" and len(tokens) == 2:
            q["label"] = tokens[1]
        elif kind == "outsplit":
            _, label, rest = _head(raw, n, main)
            rest, names = _as_names(raw, n, rest)
            parts = [_element(raw, n, c, label) for c in _partition(raw, n, rest)]
            q.update(label=label, parts=parts, new_names=names)
        elif kind == "eliminate" and len(tokens) == 2:
            q["generator"] = tokens[1]
        elif kind == "extend":
            left, right = main[len("extend"):].split("=")
            q.update(generator=check_name(left.strip()), rhs=_element(raw, n, right, None), label=opts.get("label"))
        elif kind in ("collapse", "factor-collapse") and len(tokens) == 4 and tokens[2] == "via":
            q.update(generator=tokens[1], label=tokens[3])
        elif kind in ("insplit", "factor-insplit"):
            m = re.match(r"^\s*\S+\s+(\S+)\s+via\s+([^\s:]+)\s*:(.*)$", main)
            if not m:
                raise ParseError(f"expected '{kind} <x> via <label>: [...]'", n, 1)
            rest, names = _as_names(raw, n, m.group(3))
            parts = [_pairs(raw, n, part) for part in _partition(raw, n, rest)]
            q.update(generator=m.group(1), label=m.group(2), partition=parts, new_names=names)
        else:
            raise ParseError(f"unrecognised move {main.strip()!r}", n, 1)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), n, 1) from None
    return cmd


def parse_mv(text: str, path: str | None = None) -> list[MoveCommand]:
    out = []
    try:
        for n, raw, body in _lines(text):
            out.append(parse_move_line(n, raw, body))
    except ParseError as exc:
        exc.path = path
        raise
    return out


# ---------------------------------------------------------------------------
# Tietze scripts
# ---------------------------------------------------------------------------


def parse_tietze(text: str, path: str | None = None) -> list[tuple[int, Any]]:
    """Lines ``addgen x = b``, ``delgen x``, ``addrel l: a = b``, ``delrel l``; options ``-- bound N``, ``-- label l``."""
    out = []
    try:
        for n, raw, body in _lines(text):
            main, _, opt_text = body.partition("--")
            opts = _options(raw, n, opt_text)
            bound = int(opts["bound"]) if "bound" in opts else None
            tokens = main.split()
            kw = tokens[0]
            if kw == "addgen":
                left, right = main[len("addgen"):].split("=")
                out.append((n, AddGenerator(check_name(left.strip()), _element(raw, n, right, None), opts.get("label"))))
            elif kw == "delgen" and len(tokens) == 2:
                out.append((n, RemoveGenerator(tokens[1], opts.get("label"))))
            elif kw == "addrel":
                _, label, rest = _head(raw, n, main)
                left, right = rest.split("=")
                out.append((n, AddRelation(label, _element(raw, n, left, label), _element(raw, n, right, label), bound=bound)))
            elif kw == "delrel" and len(tokens) == 2:
                out.append((n, RemoveRelation(tokens[1], bound=bound)))
            else:
                raise ParseError(f"unrecognised Tietze step {main.strip()!r}", n, 1)
    except ParseError as exc:
        exc.path = path
        raise
    except ValueError as exc:
        raise ParseError(str(exc), n, 1, path=path) from None
    return out


# ---------------------------------------------------------------------------
# plain monoid presentations (for Tietze)
# ---------------------------------------------------------------------------


def parse_monoid(text: str, path: str | None = None):
    """Reads a .bp file ignoring colours (validity is not required)."""
    p = parse_bp(text, path)
    return p.monoid()
