"""Free abelian monoids, congruence search with certificates, Tietze edits.

Elements of the free abelian monoid on a set of generator names are
finitely supported multiplicity maps.  The word problem in a finitely
presented commutative monoid is decidable but expensive, so
:func:`congruence_equal` searches the rewrite graph up to a total-degree
cap and returns either a replayable :class:`Certificate` or ``None``
("not found up to the bound", which is *not* a proof of inequality).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

FORWARD = "forward"
BACKWARD = "backward"

_NAME_RE = re.compile(r"^[^\s+=:#]+$")


def check_name(name: str) -> str:
    if not isinstance(name, str) or not _NAME_RE.match(name) or name.isdigit():
        raise ValueError(f"invalid name {name!r}")
    return name


class Element:
    """An element of a free abelian monoid: generator name -> positive count."""

    __slots__ = ("_items", "_hash")

    def __init__(self, counts: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        if isinstance(counts, Mapping):
            counts = counts.items()
        acc: dict[str, int] = {}
        for name, m in counts:
            if m < 0:
                raise ValueError(f"negative multiplicity for {name!r}")
            if m:
                acc[name] = acc.get(name, 0) + m
        self._items = tuple(sorted(acc.items()))
        self._hash = hash(self._items)

    @classmethod
    def of(cls, *names: str) -> Element:
        """Build from a list of generators, repeated names adding up."""
        return cls((n, 1) for n in names)

    @classmethod
    def parse(cls, text: str) -> Element:
        """Parse ``"3 x + y"``; ``"0"`` or the empty string is zero."""
        text = text.strip()
        if text in ("", "0"):
            return ZERO
        acc = []
        for term in text.split("+"):
            parts = term.split()
            if len(parts) == 1:
                coef, name = 1, parts[0]
            elif len(parts) == 2 and parts[0].isdigit():
                coef, name = int(parts[0]), parts[1]
            else:
                raise ValueError(f"bad term {term.strip()!r} in {text!r}")
            acc.append((check_name(name), coef))
        return cls(acc)

    # -- mapping-ish access -------------------------------------------------
    def __getitem__(self, name: str) -> int:
        for n, m in self._items:
            if n == name:
                return m
        return 0

    def items(self) -> tuple[tuple[str, int], ...]:
        return self._items

    def support(self) -> frozenset[str]:
        return frozenset(n for n, _ in self._items)

    def __iter__(self) -> Iterator[str]:
        """Iterate over summands with repetition."""
        for n, m in self._items:
            for _ in range(m):
                yield n

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self._items)

    def is_set(self) -> bool:
        return all(m == 1 for _, m in self._items)

    def is_generator(self) -> bool:
        return len(self._items) == 1 and self._items[0][1] == 1

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: Element) -> Element:
        return Element(self._items + other._items)

    def __sub__(self, other: Element) -> Element:
        if not other <= self:
            raise ValueError(f"{other} is not contained in {self}")
        d = dict(self._items)
        for n, m in other._items:
            d[n] -= m
        return Element(d)

    def __mul__(self, k: int) -> Element:
        return Element((n, m * k) for n, m in self._items)

    __rmul__ = __mul__

    def __le__(self, other: Element) -> bool:
        return all(other[n] >= m for n, m in self._items)

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def substitute(self, name: str, repl: Element) -> Element:
        """Replace each occurrence of ``name`` by ``repl``."""
        m = self[name]
        if not m:
            return self
        rest = Element((n, k) for n, k in self._items if n != name)
        return rest + repl * m

    def map(self, images: Mapping[str, Element]) -> Element:
        """Apply the monoid homomorphism given on generators (identity elsewhere)."""
        out = Element(())
        for n, m in self._items:
            out = out + (images[n] * m if n in images else Element(((n, m),)))
        return out

    # -- rendering ------------------------------------------------------------
    def key(self) -> str:
        """Canonical sorted rendering, used for visited sets and tie-breaks."""
        return " + ".join(f"{m} {n}" for n, m in self._items)

    def format(self, order: Sequence[str] | None = None, compact: bool = False) -> str:
        if not self._items:
            return "0"
        items = self._items
        if order is not None:
            pos = {n: i for i, n in enumerate(order)}
            items = sorted(items, key=lambda t: (pos.get(t[0], len(pos)), t[0]))
        if compact:
            return "+".join(n if m == 1 else f"{m}{n}" for n, m in items)
        return " + ".join(n if m == 1 else f"{m} {n}" for n, m in items)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Element({self.format()!r})"


ZERO = Element(())


def substitute(e: Element, x: str, repl: Element) -> Element:
    return e.substitute(x, repl)


@dataclass(frozen=True)
class Relation:
    label: str
    lhs: Element
    rhs: Element

    def __str__(self):
        return f"{self.label}: {self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class MonoidPresentation:
    generators: tuple[str, ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator")
        gens = set(self.generators)
        labels = set()
        for r in self.relations:
            if r.label in labels:
                raise ValueError(f"duplicate relation label {r.label!r}")
            labels.add(r.label)
            extra = (r.lhs.support() | r.rhs.support()) - gens
            if extra:
                raise ValueError(f"relation {r.label!r} uses undeclared generator(s) {sorted(extra)}")

    def relation(self, label: str) -> Relation:
        for r in self.relations:
            if r.label == label:
                return r
        raise KeyError(label)

    def labels(self) -> list[str]:
        return [r.label for r in self.relations]

    def is_good(self) -> bool:
        return all(r.lhs and r.rhs for r in self.relations)

    def without(self, label: str) -> MonoidPresentation:
        self.relation(label)
        return MonoidPresentation(self.generators, [r for r in self.relations if r.label != label])

    def check_element(self, e: Element) -> None:
        extra = e.support() - set(self.generators)
        if extra:
            raise ValueError(f"undeclared generator(s) {sorted(extra)}")

    def max_side_degree(self) -> int:
        return max((max(r.lhs.degree, r.rhs.degree) for r in self.relations), default=0)

    def default_bound(self, a: Element, b: Element) -> int:
        return max(a.degree, b.degree) + 2 * self.max_side_degree() * 8

    def format(self) -> str:
        gens = ",".join(self.generators)
        rels = ", ".join(
            f"{r.lhs.format(self.generators, True)} = {r.rhs.format(self.generators, True)}"
            for r in self.relations
        )
        return f"⟨{gens} | {rels}⟩" if rels else f"⟨{gens}⟩"

    def __str__(self):
        return self.format()


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    """Rewrite ``context + a`` to ``context + b`` (forward) or back."""

    label: str
    direction: str
    context: Element


@dataclass(frozen=True)
class Certificate:
    start: Element
    end: Element
    steps: tuple[Step, ...] = ()

    def __len__(self):
        return len(self.steps)

    def reversed(self) -> Certificate:
        flip = {FORWARD: BACKWARD, BACKWARD: FORWARD}
        steps = tuple(Step(s.label, flip[s.direction], s.context) for s in reversed(self.steps))
        return Certificate(self.end, self.start, steps)

    def then(self, other: Certificate) -> Certificate:
        if self.end != other.start:
            raise ValueError("certificates do not chain")
        return Certificate(self.start, other.end, self.steps + other.steps)

    def shifted(self, extra: Element) -> Certificate:
        """The same rewrites performed alongside an untouched summand."""
        return Certificate(
            self.start + extra,
            self.end + extra,
            tuple(Step(s.label, s.direction, s.context + extra) for s in self.steps),
        )

    def relabel(self, mapping: Mapping[str, str]) -> Certificate:
        return Certificate(
            self.start,
            self.end,
            tuple(Step(mapping.get(s.label, s.label), s.direction, s.context) for s in self.steps),
        )

    def format(self, order: Sequence[str] | None = None) -> str:
        lines = [f"start {self.start.format(order)}"]
        for s in self.steps:
            lines.append(f"  {s.label} {s.direction} [context {s.context.format(order)}]")
        lines.append(f"end {self.end.format(order)}")
        return "\n".join(lines)


def _apply_step(p: MonoidPresentation, e: Element, step: Step) -> Element | None:
    try:
        rel = p.relation(step.label)
    except KeyError:
        return None
    src, dst = (rel.lhs, rel.rhs) if step.direction == FORWARD else (rel.rhs, rel.lhs)
    if step.direction not in (FORWARD, BACKWARD) or step.context + src != e:
        return None
    return step.context + dst


def verify_certificate(p: MonoidPresentation, c: Certificate) -> bool:
    """Replay ``c`` step by step; independent of any search."""
    cur = c.start
    for step in c.steps:
        cur = _apply_step(p, cur, step)
        if cur is None:
            return False
    return cur == c.end


def _neighbours(p: MonoidPresentation, e: Element, bound: int):
    out = []
    for rel in p.relations:
        for direction, src, dst in ((FORWARD, rel.lhs, rel.rhs), (BACKWARD, rel.rhs, rel.lhs)):
            if src <= e:
                ctx = e - src
                nxt = ctx + dst
                if nxt.degree <= bound:
                    out.append((nxt, Step(rel.label, direction, ctx)))
    out.sort(key=lambda t: (t[0].degree, t[0].key()))
    return out


def congruence_equal(
    p: MonoidPresentation, a: Element, b: Element, degree_bound: int | None = None
) -> Certificate | None:
    """Search for a rewrite chain from ``a`` to ``b`` within total degree ``degree_bound``.

    Returns a certificate on success and ``None`` if ``b`` was not reached.
    The search grows breadth-first frontiers from both ends and always
    expands the smaller one; both graphs are the same because every
    relation is applied in both directions.
    """
    p.check_element(a)
    p.check_element(b)
    if degree_bound is None:
        degree_bound = p.default_bound(a, b)
    if degree_bound < max(a.degree, b.degree):
        raise ValueError("degree bound below the degree of the inputs")
    if a == b:
        return Certificate(a, b, ())

    # parent maps: node -> (previous node, step taking previous to node)
    seen_a: dict[Element, tuple[Element, Step] | None] = {a: None}
    seen_b: dict[Element, tuple[Element, Step] | None] = {b: None}
    front_a, front_b = [a], [b]
    while front_a and front_b:
        grow_a = len(front_a) <= len(front_b)
        front, seen, other = (front_a, seen_a, seen_b) if grow_a else (front_b, seen_b, seen_a)
        nxt_front = []
        meet = None
        for node in front:
            for nxt, step in _neighbours(p, node, degree_bound):
                if nxt in seen:
                    continue
                seen[nxt] = (node, step)
                nxt_front.append(nxt)
                if nxt in other:
                    meet = nxt
                    break
            if meet is not None:
                break
        if meet is not None:
            return _join(seen_a, seen_b, a, b, meet)
        if grow_a:
            front_a = nxt_front
        else:
            front_b = nxt_front
    return None


def _trace(seen, node) -> list[Step]:
    steps = []
    while seen[node] is not None:
        prev, step = seen[node]
        steps.append(step)
        node = prev
    steps.reverse()
    return steps


def _join(seen_a, seen_b, a, b, meet) -> Certificate:
    left = Certificate(a, meet, tuple(_trace(seen_a, meet)))
    right = Certificate(b, meet, tuple(_trace(seen_b, meet)))
    return left.then(right.reversed())


def is_superfluous(p: MonoidPresentation, label: str, degree_bound: int | None = None) -> Certificate | None:
    rel = p.relation(label)
    return congruence_equal(p.without(label), rel.lhs, rel.rhs, degree_bound)


# ---------------------------------------------------------------------------
# Tietze transformations
# ---------------------------------------------------------------------------


class TietzeError(ValueError):
    def __init__(self, kind: str, detail: str):
        super().__init__(f"Tietze ({kind}): {detail}")
        self.kind = kind
        self.detail = detail


@dataclass(frozen=True)
class AddGenerator:
    """(A) adjoin ``generator`` together with the relation ``generator = value``."""

    generator: str
    value: Element
    label: str | None = None
    kind = "A"


@dataclass(frozen=True)
class RemoveGenerator:
    """(B) drop a generator defined by a relation ``generator = b``."""

    generator: str
    label: str | None = None
    kind = "B"


@dataclass(frozen=True)
class AddRelation:
    """(C) add a superfluous relation."""

    label: str
    lhs: Element
    rhs: Element
    certificate: Certificate | None = None
    bound: int | None = None
    position: int | None = None
    kind = "C"


@dataclass(frozen=True)
class RemoveRelation:
    """(D) remove a superfluous relation."""

    label: str
    certificate: Certificate | None = None
    bound: int | None = None
    kind = "D"


TietzeKind = AddGenerator | RemoveGenerator | AddRelation | RemoveRelation


def fresh_name(stem: str, taken: Iterable[str]) -> str:
    return fresh_names(stem, 1, taken)[0]


def fresh_names(stem: str, count: int, taken: Iterable[str]) -> list[str]:
    taken = set(taken)
    out, k = [], 1
    while len(out) < count:
        cand = f"{stem}_{k}"
        if cand not in taken:
            out.append(cand)
            taken.add(cand)
        k += 1
    return out


def _certify(kind, p: MonoidPresentation, lhs, rhs, cert, bound) -> Certificate:
    if cert is not None:
        if cert.start != lhs or cert.end != rhs or not verify_certificate(p, cert):
            raise TietzeError(kind, "supplied certificate does not verify")
        return cert
    found = congruence_equal(p, lhs, rhs, bound)
    if found is None:
        raise TietzeError(kind, f"could not certify {lhs} = {rhs} (unknown at bound)")
    return found


def apply_tietze(p: MonoidPresentation, t: TietzeKind) -> MonoidPresentation:
    """Apply one Tietze transformation; both sides are required to be good."""
    if not p.is_good():
        raise TietzeError(t.kind, "input presentation is not good")
    gens = list(p.generators)
    rels = list(p.relations)
    if isinstance(t, AddGenerator):
        if t.generator in gens:
            raise TietzeError("A", f"generator {t.generator!r} already present")
        if not t.value:
            raise TietzeError("A", "defining value must be nonzero")
        p.check_element(t.value)
        label = t.label or fresh_name(t.generator, p.labels())
        if label in p.labels():
            raise TietzeError("A", f"label {label!r} already used")
        return MonoidPresentation(gens + [t.generator], rels + [Relation(label, Element.of(t.generator), t.value)])
    if isinstance(t, RemoveGenerator):
        x = t.generator
        if x not in gens:
            raise TietzeError("B", f"unknown generator {x!r}")
        cands = [
            r
            for r in rels
            if (t.label is None or r.label == t.label) and r.lhs == Element.of(x) and x not in r.rhs.support()
        ]
        for r in cands:
            others = [q for q in rels if q is not r]
            if all(x not in q.lhs.support() and x not in q.rhs.support() for q in others):
                gens.remove(x)
                return MonoidPresentation(gens, others)
        raise TietzeError("B", f"no defining relation {x} = b with {x} absent elsewhere")
    if isinstance(t, AddRelation):
        if t.label in p.labels():
            raise TietzeError("C", f"label {t.label!r} already used")
        if not t.lhs or not t.rhs:
            raise TietzeError("C", "relation sides must be nonzero")
        p.check_element(t.lhs)
        p.check_element(t.rhs)
        _certify("C", p, t.lhs, t.rhs, t.certificate, t.bound)
        pos = len(rels) if t.position is None else t.position
        rels.insert(pos, Relation(t.label, t.lhs, t.rhs))
        return MonoidPresentation(gens, rels)
    if isinstance(t, RemoveRelation):
        try:
            rel = p.relation(t.label)
        except KeyError:
            raise TietzeError("D", f"unknown relation {t.label!r}") from None
        q = p.without(t.label)
        _certify("D", q, rel.lhs, rel.rhs, t.certificate, t.bound)
        return q
    raise TypeError(f"not a Tietze transformation: {t!r}")
