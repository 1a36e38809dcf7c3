"""Exact arithmetic in the Leavitt path algebra L(H) of a hypergraph H.

Elements are rational combinations of paths in the double graph of the
graph associated to H.  Reduction rewrites the forbidden subwords
``h[i][j_h] h[i'][j_h]^`` and ``h[i_h][j]^ h[i_h][j']`` using the two
Cuntz-Krieger type relations, leaving a combination of basis paths.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .monoid import Element
from .structures import BergmanGraph, BergmanPresentation, pres_to_graph

Index = tuple[str, int]


@dataclass(frozen=True, order=True)
class Edge:
    """The letter ``h_ij`` or, with ``star``, ``h_ij*``."""

    h: str
    i: Index
    j: Index
    star: bool = False

    @property
    def source(self) -> str:
        return self.j[0] if self.star else self.i[0]

    @property
    def range(self) -> str:
        return self.i[0] if self.star else self.j[0]

    def starred(self) -> Edge:
        return Edge(self.h, self.i, self.j, not self.star)

    def format(self) -> str:
        s = f"{self.h}[{self.i[0]}.{self.i[1]}][{self.j[0]}.{self.j[1]}]"
        return s + "^" if self.star else s

    __str__ = format


# a word is either (vertex,) or a nonempty tuple of Edge letters
Word = tuple


def is_vertex_word(w: Word) -> bool:
    return len(w) == 1 and isinstance(w[0], str)


def word_source(w: Word) -> str:
    return w[0] if is_vertex_word(w) else w[0].source


def word_range(w: Word) -> str:
    return w[0] if is_vertex_word(w) else w[-1].range


def word_length(w: Word) -> int:
    return 0 if is_vertex_word(w) else len(w)


def format_word(w: Word) -> str:
    return w[0] if is_vertex_word(w) else " * ".join(e.format() for e in w)


def _word_key(w: Word):
    return (word_length(w), format_word(w))


def concat(a: Word, b: Word) -> Word | None:
    """Product of two paths, or ``None`` when it vanishes."""
    if word_range(a) != word_source(b):
        return None
    if is_vertex_word(a):
        return b
    if is_vertex_word(b):
        return a
    return a + b


class LpaElement:
    """Finite map word -> nonzero Fraction (immutable)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping, Iterable] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            c = Fraction(c)
            if c:
                acc[w] = acc.get(w, Fraction(0)) + c
        self._terms = tuple(sorted(((w, c) for w, c in acc.items() if c), key=lambda t: _word_key(t[0])))
        self._hash = hash(self._terms)

    @classmethod
    def word(cls, w: Word, c=1) -> LpaElement:
        return cls({w: c})

    def terms(self):
        return self._terms

    def as_dict(self) -> dict:
        return dict(self._terms)

    def support(self) -> list[Word]:
        return [w for w, _ in self._terms]

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, LpaElement) and self._terms == other._terms

    def __hash__(self):
        return self._hash

    def __add__(self, other: LpaElement) -> LpaElement:
        return LpaElement(list(self._terms) + list(other._terms))

    def __neg__(self):
        return LpaElement([(w, -c) for w, c in self._terms])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q) -> LpaElement:
        q = Fraction(q)
        return LpaElement([(w, q * c) for w, c in self._terms])

    def format(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, (w, c) in enumerate(self._terms):
            body = f"{abs(c)} * {format_word(w)}"
            if k == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(out)

    __str__ = format

    def __repr__(self):
        return f"LpaElement({self.format()!r})"


LZERO = LpaElement()


class StepBudgetExceeded(RuntimeError):
    pass


class LpaError(ValueError):
    pass


def index_sets(e: Element, vertices) -> list[Index]:
    return [(v, k) for v in vertices for k in range(1, e[v] + 1)]


def parse_anchors(text: str) -> dict[str, tuple[Index, Index]]:
    """``h=u.1/v.1;g=w.1/x.2``"""
    out = {}
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        m = re.match(r"^([^=\s]+)\s*=\s*(\S+)\.(\d+)\s*/\s*(\S+)\.(\d+)$", chunk)
        if not m:
            raise LpaError(f"bad anchor specification {chunk!r}")
        out[m.group(1)] = ((m.group(2), int(m.group(3))), (m.group(4), int(m.group(5))))
    return out


class LeavittPathAlgebra:
    """L(H) together with a choice of anchors ``(i_h, j_h)`` for every hyperedge."""

    def __init__(self, graph: BergmanGraph | BergmanPresentation, anchors: Mapping[str, tuple[Index, Index]] | None = None,
                 budget: int = 10**6):
        if isinstance(graph, BergmanPresentation):
            graph = pres_to_graph(graph)
        self.graph = graph
        self.vertices = tuple(graph.vertices)
        self.budget = budget
        self.I: dict[str, list[Index]] = {}
        self.J: dict[str, list[Index]] = {}
        for h in graph.hyperedges:
            self.I[h.label] = index_sets(h.source, self.vertices)
            self.J[h.label] = index_sets(h.range, self.vertices)
        anchors = dict(anchors or {})
        unknown = set(anchors) - set(self.I)
        if unknown:
            raise LpaError(f"anchors for unknown hyperedge(s) {sorted(unknown)}")
        self.anchors: dict[str, tuple[Index, Index]] = {}
        for h in self.I:
            i_h, j_h = anchors.get(h, (self.I[h][0], self.J[h][0]))
            if i_h not in self.I[h] or j_h not in self.J[h]:
                raise LpaError(f"anchor for {h} is not an index of {h}")
            self.anchors[h] = (i_h, j_h)
        self._memo: dict[Word, LpaElement] = {}
        self._out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.letters():
            self._out[e.source].append(e)

    # -- structure -------------------------------------------------------------
    def edges(self) -> list[Edge]:
        """Edges of the associated graph."""
        return [Edge(h, i, j) for h in self.I for i in self.I[h] for j in self.J[h]]

    def letters(self) -> list[Edge]:
        """Edges of the double graph."""
        return [x for e in self.edges() for x in (e, e.starred())]

    def check_letter(self, e: Edge) -> None:
        if e.h not in self.I:
            raise LpaError(f"unknown hyperedge {e.h!r}")
        if e.i not in self.I[e.h] or e.j not in self.J[e.h]:
            raise LpaError(f"{e.format()} has an index outside I_{e.h} x J_{e.h}")

    def is_path(self, w: Word) -> bool:
        if is_vertex_word(w):
            return w[0] in self.vertices
        if not w:
            return False
        for e in w:
            if not isinstance(e, Edge):
                return False
            try:
                self.check_letter(e)
            except LpaError:
                return False
        return all(a.range == b.source for a, b in zip(w, w[1:]))

    def _forbidden(self, a: Edge, b: Edge) -> str | None:
        if a.h != b.h:
            return None
        i_h, j_h = self.anchors[a.h]
        if not a.star and b.star and a.j == j_h and b.j == j_h:
            return "iii"
        if a.star and not b.star and a.i == i_h and b.i == i_h:
            return "iv"
        return None

    def is_basis_word(self, w: Word) -> bool:
        if not self.is_path(w):
            raise LpaError(f"not a path: {format_word(w)}")
        if is_vertex_word(w):
            return True
        return not any(self._forbidden(a, b) for a, b in zip(w, w[1:]))

    def rewrite_sites(self, w: Word) -> list[int]:
        if is_vertex_word(w):
            return []
        return [p for p in range(len(w) - 1) if self._forbidden(w[p], w[p + 1])]

    def rewrite_at(self, w: Word, p: int) -> LpaElement:
        """Replace the forbidden pair at position ``p`` by the equal combination."""
        a, b = w[p], w[p + 1]
        kind = self._forbidden(a, b)
        if kind is None:
            raise LpaError(f"no forbidden subword at position {p}")
        pre, post = w[:p], w[p + 2:]
        h = a.h
        i_h, j_h = self.anchors[h]
        terms: list[tuple[Word, Fraction]] = []
        if kind == "iii":
            i, i2 = a.i, b.i
            if i == i2:
                terms.append((self._splice(pre, post, i[0]), Fraction(1)))
            for j in self.J[h]:
                if j != j_h:
                    terms.append((pre + (Edge(h, i, j), Edge(h, i2, j, True)) + post, Fraction(-1)))
        else:
            j, j2 = a.j, b.j
            if j == j2:
                terms.append((self._splice(pre, post, j[0]), Fraction(1)))
            for i in self.I[h]:
                if i != i_h:
                    terms.append((pre + (Edge(h, i, j, True), Edge(h, i, j2)) + post, Fraction(-1)))
        return LpaElement(terms)

    @staticmethod
    def _splice(pre: Word, post: Word, v: str) -> Word:
        if not pre and not post:
            return (v,)
        return pre + post

    # -- reduction -------------------------------------------------------------
    def _nf_word(self, w: Word, counter: list[int], stack: set) -> LpaElement:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        sites = self.rewrite_sites(w)
        if not sites:
            out = LpaElement.word(w)
        else:
            if w in stack:
                raise StepBudgetExceeded(f"rewriting cycles on {format_word(w)}")
            counter[0] += 1
            if counter[0] > self.budget:
                raise StepBudgetExceeded(f"reduction exceeded {self.budget} rewrite steps")
            stack.add(w)
            out = LZERO
            for w2, c in self.rewrite_at(w, sites[0]).terms():
                out = out + self._nf_word(w2, counter, stack).scale(c)
            stack.discard(w)
        self._memo[w] = out
        return out

    def reduce(self, x: LpaElement) -> LpaElement:
        counter = [0]
        out = LZERO
        for w, c in x.terms():
            if not self.is_path(w):
                raise LpaError(f"not a path: {format_word(w)}")
            out = out + self._nf_word(w, counter, set()).scale(c)
        return out

    def normal_forms_all_strategies(self, w: Word, limit: int = 64, memo: dict | None = None) -> set[LpaElement]:
        """Every normal form reachable from ``w`` by any choice of rewrite site at each step.

        Pass the same ``memo`` dict across calls on one algebra to share work.
        """
        if memo is None:
            memo = {}

        def go(word, depth):
            if word in memo:
                return memo[word]
            if depth > 200:
                raise StepBudgetExceeded(f"rewrite chain too deep on {format_word(word)}")
            sites = self.rewrite_sites(word)
            if not sites:
                res = frozenset([LpaElement.word(word)])
            else:
                acc: set[LpaElement] = set()
                for p in sites:
                    partial = {LZERO}
                    for w2, c in self.rewrite_at(word, p).terms():
                        options = go(w2, depth + 1)
                        partial = {s + o.scale(c) for s in partial for o in options}
                        if len(partial) > limit:
                            raise StepBudgetExceeded("too many distinct normal forms")
                    acc |= partial
                res = frozenset(acc)
            memo[word] = res
            return res

        return set(go(w, 0))

    # -- algebra ---------------------------------------------------------------
    def vertex(self, v: str) -> LpaElement:
        if v not in self.vertices:
            raise LpaError(f"unknown vertex {v!r}")
        return LpaElement.word((v,))

    def edge(self, h: str, i: Index, j: Index, star: bool = False) -> LpaElement:
        e = Edge(h, i, j, star)
        self.check_letter(e)
        return LpaElement.word((e,))

    def unit(self) -> LpaElement:
        return LpaElement([((v,), 1) for v in self.vertices])

    def add(self, x: LpaElement, y: LpaElement) -> LpaElement:
        return x + y

    def raw_product(self, x: LpaElement, y: LpaElement) -> LpaElement:
        terms = []
        for w1, c1 in x.terms():
            for w2, c2 in y.terms():
                w = concat(w1, w2)
                if w is not None:
                    terms.append((w, c1 * c2))
        return LpaElement(terms)

    def multiply(self, x: LpaElement, y: LpaElement) -> LpaElement:
        return self.reduce(self.raw_product(x, y))

    def product(self, *factors: LpaElement) -> LpaElement:
        out = factors[0]
        for f in factors[1:]:
            out = self.raw_product(out, f)
        return self.reduce(out)

    # -- enumeration -----------------------------------------------------------
    def paths(self, max_len: int) -> Iterator[Word]:
        """All paths of the double graph with at most ``max_len`` letters."""
        for v in self.vertices:
            yield (v,)
        frontier: list[Word] = [(e,) for e in self.letters()]
        for _ in range(max_len):
            yield from frontier
            nxt = []
            for w in frontier:
                for e in self._out[w[-1].range]:
                    nxt.append(w + (e,))
            frontier = nxt

    def basis_words(self, max_len: int) -> list[Word]:
        return [w for w in self.paths(max_len) if self.is_basis_word(w)]

    # -- text ------------------------------------------------------------------
    _LETTER = re.compile(r"^([^\[\]\s*]+)\[([^\]]+)\.(\d+)\]\[([^\]]+)\.(\d+)\](\^?)$")

    def parse(self, text: str) -> LpaElement:
        """Parse ``2/3 * h[u.1][v.1] * h[u.1][v.1]^ + 1 * u``; ``-`` separates terms too."""
        text = text.strip()
        if text in ("", "0"):
            return LZERO
        out = LZERO
        for sign, term in _split_terms(text):
            factors = [f.strip() for f in term.split("*")]
            coef = Fraction(sign)
            try:
                coef *= Fraction(factors[0])
                factors = factors[1:]
            except (ValueError, ZeroDivisionError):
                pass
            elem = None
            for f in factors:
                letter = self._parse_letter(f)
                elem = letter if elem is None else self.raw_product(elem, letter)
            if elem is None:
                raise LpaError(f"term {term.strip()!r} has no letters")
            out = out + elem.scale(coef)
        return out

    def _parse_letter(self, f: str) -> LpaElement:
        if f in self.vertices:
            return self.vertex(f)
        m = self._LETTER.match(f)
        if not m:
            raise LpaError(f"bad letter {f!r}")
        h, u, k, v, l, star = m.groups()
        return self.edge(h, (u, int(k)), (v, int(l)), bool(star))


def _split_terms(text: str) -> list[tuple[int, str]]:
    out = []
    sign, cur, depth = 1, "", 0
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-":
            if cur.strip():
                out.append((sign, cur))
                sign = 1
            sign = sign * (-1 if ch == "-" else 1)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append((sign, cur))
    if not out:
        raise LpaError(f"empty element {text!r}")
    return out


# ---------------------------------------------------------------------------
# relation soundness
# ---------------------------------------------------------------------------


@dataclass
class RelationReport:
    checked: int
    residues: list[tuple[str, LpaElement]]

    @property
    def ok(self) -> bool:
        return not self.residues

    def __str__(self):
        if self.ok:
            return f"all {self.checked} relation instances reduce to 0"
        lines = [f"{len(self.residues)} of {self.checked} relation instances leave a residue"]
        lines += [f"  {name}: {res}" for name, res in self.residues]
        return "\n".join(lines)


def check_defining_relations(A: LeavittPathAlgebra) -> RelationReport:
    instances: list[tuple[str, LpaElement, LpaElement]] = []
    V = A.vertex
    for u in A.vertices:
        for v in A.vertices:
            instances.append((f"(i) {u}*{v}", A.raw_product(V(u), V(v)), V(u) if u == v else LZERO))
    for e in A.edges():
        x, xs = LpaElement.word((e,)), LpaElement.word((e.starred(),))
        u, v = V(e.source), V(e.range)
        tag = e.format()
        instances += [
            (f"(ii) s*{tag}", A.raw_product(u, x), x),
            (f"(ii) {tag}*r", A.raw_product(x, v), x),
            (f"(ii) r*{tag}^", A.raw_product(v, xs), xs),
            (f"(ii) {tag}^*s", A.raw_product(xs, u), xs),
        ]
    for h in A.I:
        for i in A.I[h]:
            for i2 in A.I[h]:
                lhs = LZERO
                for j in A.J[h]:
                    lhs = lhs + A.raw_product(A.edge(h, i, j), A.edge(h, i2, j, True))
                instances.append((f"(iii) {h} {i} {i2}", lhs, V(i[0]) if i == i2 else LZERO))
        for j in A.J[h]:
            for j2 in A.J[h]:
                lhs = LZERO
                for i in A.I[h]:
                    lhs = lhs + A.raw_product(A.edge(h, i, j, True), A.edge(h, i, j2))
                instances.append((f"(iv) {h} {j} {j2}", lhs, V(j[0]) if j == j2 else LZERO))
    residues = []
    for name, lhs, rhs in instances:
        res = A.reduce(lhs - rhs)
        if res:
            residues.append((name, res))
    return RelationReport(len(instances), residues)


# ---------------------------------------------------------------------------
# lonely vertex corners
# ---------------------------------------------------------------------------


@dataclass
class CornerReport:
    vertex: str
    hyperedge: str
    length_bound: int
    injective: bool
    corner: bool
    full: bool
    words_checked: int
    notes: list[str]

    @property
    def ok(self) -> bool:
        return self.injective and self.corner and self.full

    def __str__(self):
        flag = lambda b: "pass" if b else "FAIL"
        lines = [
            f"lonely vertex {self.vertex} via {self.hyperedge}, length bound {self.length_bound}",
            f"  (a) injectivity: {flag(self.injective)}",
            f"  (b) corner: {flag(self.corner)}",
            f"  (c) fullness: {flag(self.full)}",
        ]
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def lonely_hyperedge(g: BergmanGraph, v: str) -> str:
    """The hyperedge making ``v`` lonely (colours ignored)."""
    owners = [h for h in g.hyperedges if v in h.source.support() or v in h.range.support()]
    if len(owners) == 1:
        h = owners[0]
        if h.source == Element.of(v) and v not in h.range.support():
            return h.label
    raise LpaError(f"vertex {v!r} is not lonely")


def lonely_corner_certify(g: BergmanGraph | BergmanPresentation, v: str, length_bound: int = 4,
                          anchors: Mapping | None = None) -> CornerReport:
    if isinstance(g, BergmanPresentation):
        g = pres_to_graph(g)
    h = lonely_hyperedge(g, v)
    A = LeavittPathAlgebra(g, anchors)
    small = BergmanGraph([x for x in g.vertices if x != v], [e for e in g.hyperedges if e.label != h])
    B = LeavittPathAlgebra(small, {k: a for k, a in A.anchors.items() if k != h})
    notes = []
    # (a) basis words of the smaller algebra stay distinct basis words
    small_words = B.basis_words(length_bound)
    images = set()
    injective = True
    for w in small_words:
        if not A.is_path(w) or not A.is_basis_word(w):
            injective = False
            notes.append(f"image of {format_word(w)} is not a basis word")
        images.add(w)
    injective = injective and len(images) == len(small_words)
    # (b) basis words avoiding v at both ends never use h
    corner = True
    checked = 0
    for w in A.basis_words(length_bound):
        if word_source(w) == v or word_range(w) == v:
            continue
        checked += 1
        if is_vertex_word(w):
            continue
        if any(e.h == h for e in w):
            corner = False
            notes.append(f"corner word {format_word(w)} uses {h}")
    # (c) v is a sum of products passing through vertices other than v
    i_h = A.anchors[h][0]
    total = LZERO
    full = True
    for j in A.J[h]:
        total = total + A.raw_product(A.edge(h, i_h, j), A.edge(h, i_h, j, True))
        if j[0] == v:
            full = False
            notes.append(f"summand through {j} passes through {v}")
    if A.reduce(total) != A.vertex(v):
        full = False
        notes.append("sum over J_h does not reduce to the vertex")
    return CornerReport(v, h, length_bound, injective, corner, full, checked, notes)
