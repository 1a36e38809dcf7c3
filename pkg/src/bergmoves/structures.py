"""Bergman presentations, Bergman graphs and the conversions between them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .monoid import Element, MonoidPresentation, Relation

BLUE = "blue"
RED = "red"
COLOURS = (BLUE, RED)


@dataclass(frozen=True)
class ColouredRelation:
    label: str
    colour: str
    lhs: Element
    rhs: Element

    def __post_init__(self):
        if self.colour not in COLOURS:
            raise ValueError(f"unknown colour {self.colour!r}")

    @property
    def blue(self) -> bool:
        return self.colour == BLUE


@dataclass(frozen=True)
class BergmanPresentation:
    """Generators plus coloured relations, both in declaration order.

    Construction only checks the bookkeeping (declared generators, unique
    labels); the Bergman conditions are checked by :func:`validate_presentation`.
    """

    generators: tuple[str, ...]
    relations: tuple[ColouredRelation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        # reuse the monoid bookkeeping checks
        self.monoid()

    def relation(self, label: str) -> ColouredRelation:
        for r in self.relations:
            if r.label == label:
                return r
        raise KeyError(label)

    def labels(self) -> list[str]:
        return [r.label for r in self.relations]

    @property
    def blue(self) -> list[ColouredRelation]:
        return [r for r in self.relations if r.colour == BLUE]

    @property
    def red(self) -> list[ColouredRelation]:
        return [r for r in self.relations if r.colour == RED]

    def is_basic(self) -> bool:
        return not self.blue

    def base_generators(self) -> list[str]:
        ranges = set()
        for r in self.blue:
            ranges |= r.rhs.support()
        return [x for x in self.generators if x not in ranges]

    def monoid(self, exclude: Iterable[str] = ()) -> MonoidPresentation:
        """The uncoloured presentation, optionally without some relations."""
        exclude = set(exclude)
        return MonoidPresentation(
            self.generators,
            [Relation(r.label, r.lhs, r.rhs) for r in self.relations if r.label not in exclude],
        )

    def format(self) -> str:
        from .formats import dump_bp

        return dump_bp(self)


@dataclass(frozen=True)
class Hyperedge:
    label: str
    colour: str
    source: Element
    range: Element

    def __post_init__(self):
        if self.colour not in COLOURS:
            raise ValueError(f"unknown colour {self.colour!r}")


@dataclass(frozen=True)
class BergmanGraph:
    vertices: tuple[str, ...]
    hyperedges: tuple[Hyperedge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "hyperedges", tuple(self.hyperedges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex")
        verts = set(self.vertices)
        labels = set()
        for h in self.hyperedges:
            if h.label in labels:
                raise ValueError(f"duplicate hyperedge label {h.label!r}")
            labels.add(h.label)
            extra = (h.source.support() | h.range.support()) - verts
            if extra:
                raise ValueError(f"hyperedge {h.label!r} uses undeclared vertex(es) {sorted(extra)}")

    def hyperedge(self, label: str) -> Hyperedge:
        for h in self.hyperedges:
            if h.label == label:
                return h
        raise KeyError(label)

    def is_basic(self) -> bool:
        return all(h.colour == RED for h in self.hyperedges)


@dataclass(frozen=True)
class Digraph:
    """An ordinary finite directed graph; edges are ``(label, source, range)``."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        verts = set(self.vertices)
        for label, s, r in self.edges:
            if s not in verts or r not in verts:
                raise ValueError(f"edge {label!r} uses an undeclared vertex")
        if len({e[0] for e in self.edges}) != len(self.edges):
            raise ValueError("duplicate edge label")


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list[tuple[str, str]] = field(default_factory=list)
    ordering: tuple[str, ...] | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, clause: str, detail: str) -> None:
        self.violations.append((clause, detail))

    def clauses(self) -> set[str]:
        return {c for c, _ in self.violations}

    def __str__(self):
        if self.ok:
            return "valid"
        return "invalid\n" + "\n".join(f"  clause {c}: {d}" for c, d in self.violations)


def _blue_data(p: BergmanPresentation):
    return [(r.label, r.lhs.support(), r.rhs.support()) for r in p.blue]


def greedy_ordering(base: Iterable[str], blue: Sequence[tuple[str, frozenset, frozenset]]) -> tuple[str, ...] | None:
    """Place any placeable blue relation until stuck; ``None`` if some remain.

    Placing a placeable relation only enlarges the available set, so it
    never blocks an ordering that exists; greedy success is exact.
    """
    available = set(base)
    remaining = list(blue)
    order = []
    while remaining:
        for k, (label, lhs, rhs) in enumerate(remaining):
            if lhs <= available:
                order.append(label)
                available |= rhs
                del remaining[k]
                break
        else:
            return None
    return tuple(order)


def validate_presentation(p: BergmanPresentation) -> ValidationReport:
    rep = ValidationReport()
    for r in p.relations:
        if not r.lhs or not r.rhs:
            rep.add("good", f"relation {r.label} has a zero side")
    seen: dict[str, str] = {}
    for r in p.blue:
        if not r.rhs.is_set():
            rep.add("(i)", f"blue relation {r.label}: right-hand side is not a set")
        if len(r.rhs) < 2:
            rep.add("(i)", f"blue relation {r.label}: right-hand side has fewer than 2 generators")
        for x in sorted(r.rhs.support()):
            if x in seen:
                rep.add("(i)", f"blue relations {seen[x]} and {r.label} share range generator {x}")
            else:
                seen[x] = r.label
    order = greedy_ordering(p.base_generators(), _blue_data(p))
    if order is None:
        rep.add("(ii)", "no admissible ordering of the blue relations exists")
    else:
        rep.ordering = order
    return rep


def validate_graph(g: BergmanGraph) -> ValidationReport:
    return validate_presentation(graph_to_pres(g))


def is_admissible(p: BergmanPresentation, order: Sequence[str]) -> bool:
    blue = {r.label: r for r in p.blue}
    if sorted(order) != sorted(blue):
        return False
    available = set(p.base_generators())
    for label in order:
        r = blue[label]
        if not r.lhs.support() <= available:
            return False
        available |= r.rhs.support()
    return True


def admissible_orderings(p: BergmanPresentation) -> list[tuple[str, ...]]:
    """All admissible orderings, lexicographic in blue declaration order."""
    blue = _blue_data(p)
    out: list[tuple[str, ...]] = []

    def extend(prefix, available, left):
        if not left:
            out.append(tuple(prefix))
            return
        for k, (label, lhs, rhs) in enumerate(left):
            if lhs <= available:
                extend(prefix + [label], available | rhs, left[:k] + left[k + 1 :])

    extend([], frozenset(p.base_generators()), blue)
    return out


def admissible_orderings_bruteforce(p: BergmanPresentation) -> list[tuple[str, ...]]:
    labels = [r.label for r in p.blue]
    return [perm for perm in itertools.permutations(labels) if is_admissible(p, perm)]


# ---------------------------------------------------------------------------
# the two functors
# ---------------------------------------------------------------------------


def pres_to_graph(p: BergmanPresentation) -> BergmanGraph:
    return BergmanGraph(
        p.generators,
        [Hyperedge(r.label, r.colour, r.lhs, r.rhs) for r in p.relations],
    )


def graph_to_pres(g: BergmanGraph) -> BergmanPresentation:
    return BergmanPresentation(
        g.vertices,
        [ColouredRelation(h.label, h.colour, h.source, h.range) for h in g.hyperedges],
    )


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureHomomorphism:
    """A map of Bergman graphs (or presentations, via the functor)."""

    source: BergmanGraph | BergmanPresentation
    target: BergmanGraph | BergmanPresentation
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]


def _as_graph(x) -> BergmanGraph:
    return pres_to_graph(x) if isinstance(x, BergmanPresentation) else x


def check_homomorphism(h: StructureHomomorphism) -> bool:
    src, dst = _as_graph(h.source), _as_graph(h.target)
    vmap, emap = dict(h.vertex_map), dict(h.edge_map)
    if set(vmap) != set(src.vertices) or not set(vmap.values()) <= set(dst.vertices):
        return False
    if len(set(vmap.values())) != len(vmap):
        return False
    if set(emap) != {e.label for e in src.hyperedges}:
        return False
    images = {v: Element.of(w) for v, w in vmap.items()}
    for e in src.hyperedges:
        try:
            f = dst.hyperedge(emap[e.label])
        except KeyError:
            return False
        if f.colour != e.colour:
            return False
        if f.source != e.source.map(images) or f.range != e.range.map(images):
            return False
    return True


# ---------------------------------------------------------------------------
# V-monoid and ordinary graphs
# ---------------------------------------------------------------------------


def vmonoid_presentation(g: BergmanGraph | BergmanPresentation) -> MonoidPresentation:
    if isinstance(g, BergmanGraph):
        g = graph_to_pres(g)
    return g.monoid()


def digraph_to_bergman(e: Digraph) -> BergmanGraph:
    """One red hyperedge ``h_v: v -> (ranges of edges out of v)`` per regular vertex."""
    hyper = []
    taken = set()
    for v in e.vertices:
        out = [r for _, s, r in e.edges if s == v]
        if not out:
            continue
        label = f"h_{v}"
        while label in taken:
            label += "_"
        taken.add(label)
        hyper.append(Hyperedge(label, RED, Element.of(v), Element.of(*out)))
    return BergmanGraph(e.vertices, hyper)
