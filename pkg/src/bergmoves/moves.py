"""The seven moves on Bergman presentations and the two factorizations.

Every move works on :class:`BergmanPresentation`; use :func:`graph_move`
to run one on a :class:`BergmanGraph`.  Shift moves need equalities in
auxiliary monoids; these are passed in as certificates or found by a
bounded search.  Every move revalidates its output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .monoid import (
    BACKWARD,
    FORWARD,
    ZERO,
    AddRelation,
    Certificate,
    Element,
    MonoidPresentation,
    Relation,
    RemoveRelation,
    Step,
    apply_tietze,
    check_name,
    congruence_equal,
    fresh_name,
    fresh_names,
    verify_certificate,
)
from .structures import (
    BLUE,
    RED,
    BergmanGraph,
    BergmanPresentation,
    ColouredRelation,
    graph_to_pres,
    is_admissible,
    pres_to_graph,
    validate_presentation,
)


class MoveError(ValueError):
    """A move was requested whose preconditions do not hold."""

    def __init__(self, kind: str, detail: str):
        super().__init__(f"{kind}: {detail}")
        self.kind = kind
        self.detail = detail


class InvariantViolation(RuntimeError):
    """A move produced an invalid presentation (a bug, not a user error)."""


def _checked(kind: str, p: BergmanPresentation) -> BergmanPresentation:
    rep = validate_presentation(p)
    if not rep.ok:
        raise InvariantViolation(f"{kind} produced an invalid presentation:\n{rep}")
    return p


def _relation(kind, p, label, colour=None) -> ColouredRelation:
    try:
        r = p.relation(label)
    except KeyError:
        raise MoveError(kind, f"no relation labelled {label!r}") from None
    if colour is not None and r.colour != colour:
        raise MoveError(kind, f"relation {label} is {r.colour}, expected {colour}")
    return r


def _require_basic(kind, p):
    if not p.is_basic():
        raise MoveError(kind, "presentation is not basic")


def _declared(kind, p, e: Element, what: str):
    extra = e.support() - set(p.generators)
    if extra:
        raise MoveError(kind, f"{what} uses undeclared generator(s) {sorted(extra)}")
    if not e:
        raise MoveError(kind, f"{what} is zero")


def _replace(p: BergmanPresentation, label: str, new: Sequence[ColouredRelation]) -> list[ColouredRelation]:
    out = []
    for r in p.relations:
        out.extend(new if r.label == label else [r])
    return out


def _substituted(relations, x: str, value: Element) -> list[ColouredRelation]:
    return [
        ColouredRelation(r.label, r.colour, r.lhs.substitute(x, value), r.rhs.substitute(x, value))
        for r in relations
    ]


def _certify(kind, m: MonoidPresentation, a: Element, b: Element, cert, bound) -> Certificate:
    if cert is not None:
        if cert.start != a or cert.end != b or not verify_certificate(m, cert):
            raise MoveError(kind, f"supplied certificate for {a} = {b} does not verify")
        return cert
    found = congruence_equal(m, a, b, bound)
    if found is None:
        used = bound if bound is not None else m.default_bound(a, b)
        raise MoveError(kind, f"equality {a} = {b} not certified: unknown at bound {used}")
    return found


# ---------------------------------------------------------------------------
# red and blue shifts
# ---------------------------------------------------------------------------


def red_shift_certificates(p, label, new_lhs, new_rhs, certificates=None, bound=None):
    r = _relation("redshift", p, label, RED)
    _declared("redshift", p, new_lhs, "new left-hand side")
    _declared("redshift", p, new_rhs, "new right-hand side")
    m = p.monoid(exclude=[label])
    c1, c2 = certificates if certificates is not None else (None, None)
    return (
        _certify("redshift", m, r.lhs, new_lhs, c1, bound),
        _certify("redshift", m, r.rhs, new_rhs, c2, bound),
    )


def red_shift(p, label, new_lhs, new_rhs, certificates=None, bound=None) -> BergmanPresentation:
    """Replace red relation ``label`` by ``new_lhs = new_rhs``.

    Both ``a_i = new_lhs`` and ``b_i = new_rhs`` must hold in the monoid
    presented by the remaining relations.
    """
    red_shift_certificates(p, label, new_lhs, new_rhs, certificates, bound)
    out = BergmanPresentation(p.generators, _replace(p, label, [ColouredRelation(label, RED, new_lhs, new_rhs)]))
    return _checked("redshift", out)


def prefix_ordering(p: BergmanPresentation, label: str) -> tuple[str, ...]:
    """An admissible ordering placing as many blue relations as possible before ``label``."""
    blue = [(r.label, r.lhs.support(), r.rhs.support()) for r in p.blue]
    available = set(p.base_generators())
    order: list[str] = []

    def close(skip):
        nonlocal available
        progress = True
        while progress:
            progress = False
            for lab, lhs, rhs in blue:
                if lab not in order and lab != skip and lhs <= available:
                    order.append(lab)
                    available |= rhs
                    progress = True

    close(label)
    order.append(label)
    available |= p.relation(label).rhs.support()
    close(None)
    if not is_admissible(p, order):
        raise MoveError("blueshift", "presentation has no admissible ordering")
    return tuple(order)


def blue_shift_context(p, label, ordering=None):
    """The generators and restricted presentation in which a blue shift of ``label`` is certified."""
    _relation("blueshift", p, label, BLUE)
    if ordering is None:
        ordering = prefix_ordering(p, label)
    ordering = tuple(ordering)
    if not is_admissible(p, ordering):
        raise MoveError("blueshift", f"ordering {ordering} is not admissible")
    k = ordering.index(label)
    allowed = set(p.base_generators())
    for lab in ordering[:k]:
        allowed |= p.relation(lab).rhs.support()
    rels = [p.relation(lab) for lab in ordering[:k]]
    rels += [r for r in p.red if (r.lhs.support() | r.rhs.support()) <= allowed]
    gens = [x for x in p.generators if x in allowed]
    m = MonoidPresentation(gens, [Relation(r.label, r.lhs, r.rhs) for r in rels])
    return ordering, m


def blue_shift(p, label, new_lhs, ordering=None, certificate=None, bound=None) -> BergmanPresentation:
    r = _relation("blueshift", p, label, BLUE)
    ordering, m = blue_shift_context(p, label, ordering)
    _declared("blueshift", p, new_lhs, "new left-hand side")
    if not new_lhs.support() <= set(m.generators):
        raise MoveError("blueshift", f"{new_lhs} escapes the generators available before {label}")
    _certify("blueshift", m, r.lhs, new_lhs, certificate, bound)
    out = BergmanPresentation(p.generators, _replace(p, label, [ColouredRelation(label, BLUE, new_lhs, r.rhs)]))
    _checked("blueshift", out)
    if not is_admissible(out, ordering):
        raise InvariantViolation("blue shift broke the chosen admissible ordering")
    return out


# ---------------------------------------------------------------------------
# enqueuing and outsplitting
# ---------------------------------------------------------------------------


def enqueue(p, label) -> BergmanPresentation:
    r = _relation("enqueue", p, label, BLUE)
    if not r.lhs.is_generator():
        raise MoveError("enqueue", f"left-hand side of {label} is not a single generator")
    (x,) = r.lhs.support()
    rest = [q for q in p.relations if q.label != label]
    out = BergmanPresentation([g for g in p.generators if g != x], _substituted(rest, x, r.rhs))
    return _checked("enqueue", out)


def outsplit_names(p, label, t, new_names=None, blue_label=None, red_labels=None):
    """Fill in default generator and relation names for an outsplit."""
    if new_names is None:
        new_names = fresh_names(label, t, p.generators)
    other_labels = [lab for lab in p.labels() if lab != label]
    if blue_label is None:
        blue_label = label
    if red_labels is None:
        red_labels = fresh_names(label, t, other_labels + [blue_label])
    return list(new_names), blue_label, list(red_labels)


def outsplit(p, label, parts, new_names=None, blue_label=None, red_labels=None) -> BergmanPresentation:
    """Split red ``label: c_1 + ... + c_t = b`` into blue ``b = x_1+...+x_t`` and red ``c_p = x_p``."""
    r = _relation("outsplit", p, label, RED)
    parts = list(parts)
    t = len(parts)
    if t < 2:
        raise MoveError("outsplit", "need at least two parts")
    if any(not c for c in parts):
        raise MoveError("outsplit", "parts must be nonzero")
    total = ZERO
    for c in parts:
        total = total + c
    if total != r.lhs:
        raise MoveError("outsplit", f"parts sum to {total}, not to {r.lhs}")
    new_names, blue_label, red_labels = outsplit_names(p, label, t, new_names, blue_label, red_labels)
    if len(new_names) != t or len(red_labels) != t:
        raise MoveError("outsplit", "need one new generator and one label per part")
    for name in new_names:
        try:
            check_name(name)
        except ValueError as exc:
            raise MoveError("outsplit", str(exc)) from None
    if set(new_names) & set(p.generators) or len(set(new_names)) != t:
        raise MoveError("outsplit", "new generator names clash")
    labels = [lab for lab in p.labels() if lab != label] + [blue_label] + red_labels
    if len(set(labels)) != len(labels):
        raise MoveError("outsplit", "new relation labels clash")
    rels = [q for q in p.relations if q.label != label]
    rels.append(ColouredRelation(blue_label, BLUE, r.rhs, Element.of(*new_names)))
    rels += [ColouredRelation(lab, RED, c, Element.of(x)) for lab, c, x in zip(red_labels, parts, new_names)]
    out = BergmanPresentation(list(p.generators) + new_names, rels)
    return _checked("outsplit", out)


# ---------------------------------------------------------------------------
# lonely generators, extension, collapsing
# ---------------------------------------------------------------------------


def find_lonely(p) -> list[tuple[str, str]]:
    _require_basic("lonely", p)
    out = []
    for r in p.relations:
        if not r.lhs.is_generator():
            continue
        (x,) = r.lhs.support()
        if x in r.rhs.support():
            continue
        if any(x in q.lhs.support() or x in q.rhs.support() for q in p.relations if q.label != r.label):
            continue
        out.append((x, r.label))
    return out


def lonely_eliminate(p, x) -> BergmanPresentation:
    _require_basic("eliminate", p)
    for y, label in find_lonely(p):
        if y == x:
            out = BergmanPresentation(
                [g for g in p.generators if g != x], [r for r in p.relations if r.label != label]
            )
            return _checked("eliminate", out)
    raise MoveError("eliminate", f"generator {x!r} is not lonely")


def extend(p, new_gen, new_rhs, label=None) -> BergmanPresentation:
    """Inverse of lonely elimination: adjoin ``new_gen`` with red ``new_gen = new_rhs``."""
    _require_basic("extend", p)
    try:
        check_name(new_gen)
    except ValueError as exc:
        raise MoveError("extend", str(exc)) from None
    if new_gen in p.generators:
        raise MoveError("extend", f"generator {new_gen!r} already present")
    _declared("extend", p, new_rhs, "defining value")
    if label is None:
        label = fresh_name(new_gen, p.labels())
    if label in p.labels():
        raise MoveError("extend", f"label {label!r} already used")
    out = BergmanPresentation(
        list(p.generators) + [new_gen],
        list(p.relations) + [ColouredRelation(label, RED, Element.of(new_gen), new_rhs)],
    )
    return _checked("extend", out)


def _collapse_relation(kind, p, x, label) -> ColouredRelation:
    _require_basic(kind, p)
    r = _relation(kind, p, label)
    if r.lhs != Element.of(x):
        raise MoveError(kind, f"left-hand side of {label} is not {x}")
    if x in r.rhs.support():
        raise MoveError(kind, f"{x} is a summand of the right-hand side of {label}")
    return r


def collapse(p, x, label) -> BergmanPresentation:
    r = _collapse_relation("collapse", p, x, label)
    rest = [q for q in p.relations if q.label != label]
    out = BergmanPresentation([g for g in p.generators if g != x], _substituted(rest, x, r.rhs))
    return _checked("collapse", out)


# ---------------------------------------------------------------------------
# insplitting
# ---------------------------------------------------------------------------


def insplit_index_set(p, x1) -> list[tuple[str, int]]:
    """The pairs ``(relation label, k)`` for each occurrence of ``x1`` in a right-hand side."""
    return [(r.label, k) for r in p.relations for k in range(1, r.rhs[x1] + 1)]


def insplit_names(p, x1, label, t, new_names=None, new_labels=None):
    if new_names is None:
        new_names = fresh_names(x1, t - 1, p.generators)
    if new_labels is None:
        new_labels = fresh_names(label, t - 1, p.labels())
    return list(new_names), list(new_labels)


def insplit(p, x1, label, partition, new_names=None, new_labels=None) -> BergmanPresentation:
    """Split generator ``x1`` (defined by ``label: x1 = b``) along a partition of its range occurrences."""
    _require_basic("insplit", p)
    r = _relation("insplit", p, label)
    if r.lhs != Element.of(x1):
        raise MoveError("insplit", f"left-hand side of {label} is not {x1}")
    if any(x1 in q.lhs.support() for q in p.relations if q.label != label):
        raise MoveError("insplit", f"{x1} is a summand of another left-hand side")
    occurrences = insplit_index_set(p, x1)
    if not occurrences:
        raise MoveError("insplit", f"{x1} occurs in no right-hand side")
    parts = [[tuple(s) for s in part] for part in partition]
    if any(not part for part in parts):
        raise MoveError("insplit", "partition has an empty part")
    flat = [s for part in parts for s in part]
    if len(flat) != len(set(flat)) or set(flat) != set(occurrences):
        raise MoveError("insplit", f"partition does not partition {occurrences}")
    t = len(parts)
    new_names, new_labels = insplit_names(p, x1, label, t, new_names, new_labels)
    if len(new_names) != t - 1 or len(new_labels) != t - 1:
        raise MoveError("insplit", "need t-1 new generator names and labels")
    for name in new_names:
        try:
            check_name(name)
        except ValueError as exc:
            raise MoveError("insplit", str(exc)) from None
    if set(new_names) & set(p.generators) or len(set(new_names)) != len(new_names):
        raise MoveError("insplit", "new generator names clash")
    if set(new_labels) & set(p.labels()) or len(set(new_labels)) != len(new_labels):
        raise MoveError("insplit", "new relation labels clash")
    names = [x1] + new_names
    phi = {s: q for q, part in enumerate(parts) for s in part}

    def split_rhs(q):
        n = q.rhs[x1]
        rest = q.rhs - Element({x1: n})
        return rest + Element.of(*(names[phi[(q.label, k)]] for k in range(1, n + 1)))

    rels = []
    for q in p.relations:
        if q.label == label:
            b = split_rhs(q)
            rels.append(ColouredRelation(label, RED, Element.of(x1), b))
            rels += [ColouredRelation(lab, RED, Element.of(x), b) for lab, x in zip(new_labels, new_names)]
        else:
            rels.append(ColouredRelation(q.label, q.colour, q.lhs, split_rhs(q)))
    gens = []
    for g in p.generators:
        gens.append(g)
        if g == x1:
            gens += new_names
    return _checked("insplit", BergmanPresentation(gens, rels))


# ---------------------------------------------------------------------------
# records, sequences, replay
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    params: dict[str, Any] = field(default_factory=dict)
    certificates: tuple[Certificate, ...] = ()

    def apply(self, p: BergmanPresentation) -> BergmanPresentation:
        q = self.params
        if self.kind == "redshift":
            certs = self.certificates or None
            return red_shift(p, q["label"], q["lhs"], q["rhs"], certificates=certs)
        if self.kind == "blueshift":
            cert = self.certificates[0] if self.certificates else None
            return blue_shift(p, q["label"], q["lhs"], ordering=q.get("ordering"), certificate=cert)
        if self.kind == "enqueue":
            return enqueue(p, q["label"])
        if self.kind == "outsplit":
            return outsplit(p, q["label"], q["parts"], q["new_names"], q["blue_label"], q["red_labels"])
        if self.kind == "eliminate":
            return lonely_eliminate(p, q["generator"])
        if self.kind == "extend":
            return extend(p, q["generator"], q["rhs"], q["label"])
        if self.kind == "collapse":
            return collapse(p, q["generator"], q["label"])
        if self.kind == "insplit":
            return insplit(p, q["generator"], q["label"], q["partition"], q["new_names"], q["new_labels"])
        raise ValueError(f"unknown move kind {self.kind!r}")

    def describe(self) -> str:
        q = self.params
        if self.kind in ("redshift",):
            return f"redshift {q['label']}: {q['lhs']} = {q['rhs']}"
        if self.kind == "blueshift":
            return f"blueshift {q['label']}: {q['lhs']}"
        if self.kind == "enqueue":
            return f"enqueue {q['label']}"
        if self.kind == "outsplit":
            parts = " | ".join(str(c) for c in q["parts"])
            return f"outsplit {q['label']}: [{parts}] as {' '.join(q['new_names'])}"
        if self.kind == "eliminate":
            return f"eliminate {q['generator']}"
        if self.kind == "extend":
            return f"extend {q['generator']} = {q['rhs']}"
        if self.kind == "collapse":
            return f"collapse {q['generator']} via {q['label']}"
        if self.kind == "insplit":
            parts = " | ".join(", ".join(f"({j},{k})" for j, k in part) for part in q["partition"])
            return f"insplit {q['generator']} via {q['label']}: [{parts}] as {' '.join(q['new_names'])}"
        return self.kind


def perform(p: BergmanPresentation, kind: str, bound: int | None = None, **params) -> tuple[MoveRecord, BergmanPresentation]:
    """Run a move, returning a replayable record (defaults and certificates filled in) and the output."""
    certs: tuple[Certificate, ...] = ()
    if kind == "redshift":
        certs = red_shift_certificates(p, params["label"], params["lhs"], params["rhs"], params.get("certificates"), bound)
        params = {k: params[k] for k in ("label", "lhs", "rhs")}
    elif kind == "blueshift":
        r = _relation("blueshift", p, params["label"], BLUE)
        ordering, m = blue_shift_context(p, params["label"], params.get("ordering"))
        if not params["lhs"].support() <= set(m.generators):
            raise MoveError("blueshift", f"{params['lhs']} escapes the generators available before {r.label}")
        certs = (_certify("blueshift", m, r.lhs, params["lhs"], params.get("certificate"), bound),)
        params = {"label": params["label"], "lhs": params["lhs"], "ordering": ordering}
    elif kind == "outsplit":
        names, blue_label, red_labels = outsplit_names(
            p, params["label"], len(params["parts"]), params.get("new_names"), params.get("blue_label"), params.get("red_labels")
        )
        params = dict(params, new_names=names, blue_label=blue_label, red_labels=red_labels)
    elif kind == "extend":
        _require_basic("extend", p)
        label = params.get("label") or fresh_name(params["generator"], p.labels())
        params = dict(params, label=label)
    elif kind == "insplit":
        names, labels = insplit_names(
            p, params["generator"], params["label"], len(params["partition"]), params.get("new_names"), params.get("new_labels")
        )
        params = dict(params, new_names=names, new_labels=labels)
    record = MoveRecord(kind, params, tuple(certs))
    return record, record.apply(p)


@dataclass(frozen=True)
class MoveSequence:
    initial: BergmanPresentation
    records: tuple[MoveRecord, ...] = ()
    renaming: dict[str, str] = field(default_factory=dict)

    def replay(self) -> list[BergmanPresentation]:
        """All intermediate presentations, starting with ``initial``."""
        out = [self.initial]
        for rec in self.records:
            out.append(rec.apply(out[-1]))
        return out

    def result(self) -> BergmanPresentation:
        return self.replay()[-1]

    def __len__(self):
        return len(self.records)


def _substitution_certificate(a: Element, x: str, label: str, value: Element) -> Certificate:
    """Rewrite every ``x`` in ``a`` to ``value`` using the relation ``label: x = value``."""
    cur, steps = a, []
    gx = Element.of(x)
    for _ in range(a[x]):
        ctx = cur - gx
        steps.append(Step(label, FORWARD, ctx))
        cur = ctx + value
    return Certificate(a, cur, tuple(steps))


def factor_collapse(p, x, label) -> MoveSequence:
    """Collapsing as red shifts (one per other relation mentioning ``x``) then a lonely elimination."""
    r = _collapse_relation("collapse", p, x, label)
    records = []
    for q in p.relations:
        if q.label == label or x not in (q.lhs.support() | q.rhs.support()):
            continue
        c1 = _substitution_certificate(q.lhs, x, label, r.rhs)
        c2 = _substitution_certificate(q.rhs, x, label, r.rhs)
        records.append(MoveRecord("redshift", {"label": q.label, "lhs": c1.end, "rhs": c2.end}, (c1, c2)))
    records.append(MoveRecord("eliminate", {"generator": x}))
    return MoveSequence(p, tuple(records))


def factor_insplit(p, x1, label, partition, new_names=None, new_labels=None) -> MoveSequence:
    """Undo an insplit of ``p`` by t-1 red shifts followed by t-1 collapses.

    The returned sequence starts at the insplit presentation; replaying it
    gives back ``p`` (the split generators are folded into ``x1``).
    """
    split = insplit(p, x1, label, partition, new_names, new_labels)
    new_names, new_labels = insplit_names(p, x1, label, len(partition), new_names, new_labels)
    b = split.relation(label).rhs
    records = []
    for x, lab in zip(new_names, new_labels):
        c1 = Certificate(Element.of(x), Element.of(x), ())
        c2 = Certificate(b, Element.of(x1), (Step(label, BACKWARD, ZERO),))
        records.append(MoveRecord("redshift", {"label": lab, "lhs": Element.of(x), "rhs": Element.of(x1)}, (c1, c2)))
    for x, lab in zip(new_names, new_labels):
        records.append(MoveRecord("collapse", {"generator": x, "label": lab}))
    return MoveSequence(split, tuple(records), {g: g for g in p.generators})


def graph_move(g: BergmanGraph, move: Callable[..., BergmanPresentation], *args, **kwargs) -> BergmanGraph:
    """Run a presentation-level move on a Bergman graph."""
    return pres_to_graph(move(graph_to_pres(g), *args, **kwargs))


# ---------------------------------------------------------------------------
# checkable shadows of the isomorphism / Morita theorems
# ---------------------------------------------------------------------------


def correspondence(before: BergmanPresentation, record: MoveRecord, after: BergmanPresentation):
    """Generator maps ``before -> after`` and ``after -> before`` (identity where unspecified)."""
    q = record.params
    kind = record.kind
    if kind in ("redshift", "blueshift"):
        return {}, {}
    if kind == "enqueue":
        r = before.relation(q["label"])
        (x,) = r.lhs.support()
        return {x: r.rhs}, {}
    if kind == "outsplit":
        return {}, {x: c for x, c in zip(q["new_names"], q["parts"])}
    if kind == "eliminate":
        x = q["generator"]
        r = next(r for r in before.relations if r.lhs == Element.of(x))
        return {x: r.rhs}, {}
    if kind == "extend":
        return {}, {q["generator"]: q["rhs"]}
    if kind == "collapse":
        return {q["generator"]: before.relation(q["label"]).rhs}, {}
    if kind == "insplit":
        return {}, {x: Element.of(q["generator"]) for x in q["new_names"]}
    raise ValueError(f"unknown move kind {kind!r}")


@dataclass
class ShadowReport:
    forward: list[tuple[str, Certificate | None]]
    backward: list[tuple[str, Certificate | None]]

    @property
    def ok(self) -> bool:
        return all(c is not None for _, c in self.forward + self.backward)


def vmonoid_shadow(before, record, after, bound: int = 12) -> ShadowReport:
    """Certify each relation of one V-monoid presentation in the other, mapped through the correspondence."""
    fwd, bwd = correspondence(before, record, after)
    m_before, m_after = before.monoid(), after.monoid()

    def derive(src, dst, images):
        out = []
        for r in src.relations:
            a, b = r.lhs.map(images), r.rhs.map(images)
            if max(a.degree, b.degree) > bound:
                out.append((r.label, None))
            else:
                out.append((r.label, congruence_equal(dst, a, b, bound)))
        return out

    return ShadowReport(derive(m_before, m_after, fwd), derive(m_after, m_before, bwd))


def red_shift_tietze(p: BergmanPresentation, record: MoveRecord, new_label: str | None = None):
    """Replay a red shift as a type (C) addition followed by a type (D) removal.

    Returns ``[(transformation, presentation), ...]`` on uncoloured presentations.
    """
    if record.kind != "redshift":
        raise ValueError("not a red shift record")
    q = record.params
    label, a, b = q["label"], q["lhs"], q["rhs"]
    r = p.relation(label)
    m = p.monoid()
    if record.certificates:
        c1, c2 = record.certificates
    else:
        c1, c2 = red_shift_certificates(p, label, a, b)
    if new_label is None:
        new_label = fresh_name(label, m.labels())
    # a -> a_i -> b_i -> b, using relation i itself
    add_cert = c1.reversed().then(Certificate(r.lhs, r.rhs, (Step(label, FORWARD, ZERO),))).then(c2)
    pos = m.labels().index(label) + 1
    add = AddRelation(new_label, a, b, certificate=add_cert, position=pos)
    m1 = apply_tietze(m, add)
    # a_i -> a -> b -> b_i, using the new relation
    rem_cert = c1.then(Certificate(a, b, (Step(new_label, FORWARD, ZERO),))).then(c2.reversed())
    rem = RemoveRelation(label, certificate=rem_cert)
    m2 = apply_tietze(m1, rem)
    return [(add, m1), (rem, m2)]
