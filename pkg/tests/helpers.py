"""Random instance generators and small fixtures shared by the test modules."""

from __future__ import annotations

import random
from pathlib import Path

from bergmoves import moves
from bergmoves.formats import parse_bg, parse_bp
from bergmoves.monoid import BACKWARD, FORWARD, Certificate, Element, Step
from bergmoves.structures import (
    BLUE,
    RED,
    BergmanGraph,
    BergmanPresentation,
    ColouredRelation,
    Hyperedge,
)

DATA = Path(__file__).resolve().parent.parent / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"


def data(name: str) -> str:
    return str(DATA / name)


WORKED = """\
gens x0_1 x0_2 x1_1 x1_2 x1_3 x2_1 x2_2 x3_1 x3_2
blue r1: x0_1 + x0_2 = x1_1 + x1_2 + x1_3
blue r2: x0_1 + 2 x1_2 + x1_3 = x2_1 + x2_2
blue r3: x1_1 = x3_1 + x3_2
red r4: x2_1 + x3_1 = 3 x0_1 + x1_1
red r5: 3 x1_3 = 2 x2_2
"""

TOEPLITZ = "gens u v\nred h: u = u + v\n"
LEAVITT23 = "gens v\nred h: 2 v = 3 v\n"

WEIGHTED = """\
gens v01 v11 v12 v21 v22
blue e: v01 = v11 + v12
blue f: v01 + v12 = v21 + v22
red h: 2 v01 = v21
red h1: v01 = v11
red h2: 3 v01 = v01 + v22
"""

# lonely vertex v (eliminated via h)
LONELY = "vertices u v w\nred f: u -> u w\nred g: w -> u\nred h: v -> u w w\n"

# collapse v via h
COLLAPSE = "gens u v w\nred e: u = u + w\nred f: w = u\nred g: v = v + w\nred h: v = u + w\n"

# insplit v1 via h1 along [(g,1) | (g,2) | (h1,1)]
INSPLIT = "gens u v1 w x\nred g: u + x = 2 v1 + x\nred h1: v1 = w + v1\n"


def bp(text: str) -> BergmanPresentation:
    return parse_bp(text)


def bg(text: str) -> BergmanGraph:
    return parse_bg(text)


# ---------------------------------------------------------------------------
# random structures
# ---------------------------------------------------------------------------


def random_element(rng: random.Random, gens, max_support=2, max_coef=2) -> Element:
    k = rng.randint(1, min(max_support, len(gens)))
    return Element({x: rng.randint(1, max_coef) for x in rng.sample(list(gens), k)})


def random_presentation(rng: random.Random, max_gens=8, max_rels=6, max_blue=3, max_coef=2) -> BergmanPresentation:
    """A valid Bergman presentation built level by level, then shuffled."""
    n0 = rng.randint(1, 3)
    gens = [f"g{k}" for k in range(n0)]
    available = list(gens)
    relations = []
    n_blue = rng.randint(0, max_blue)
    for b in range(n_blue):
        width = rng.randint(2, 3)
        if len(gens) + width > max_gens or len(relations) >= max_rels:
            break
        lhs = random_element(rng, available, 2, max_coef)
        new = [f"g{len(gens) + k}" for k in range(width)]
        gens += new
        available += new
        relations.append(ColouredRelation(f"b{b}", BLUE, lhs, Element.of(*new)))
    n_red = rng.randint(0 if relations else 1, max(0, max_rels - len(relations)))
    for r in range(n_red):
        relations.append(ColouredRelation(f"r{r}", RED, random_element(rng, gens, 2, max_coef), random_element(rng, gens, 2, max_coef)))
    rng.shuffle(relations)
    rng.shuffle(gens)
    return BergmanPresentation(gens, relations)


def random_basic(rng: random.Random, max_gens=5, max_rels=4, max_coef=2) -> BergmanPresentation:
    n = rng.randint(1, max_gens)
    gens = [f"x{k}" for k in range(n)]
    rels = [
        ColouredRelation(f"r{k}", RED, random_element(rng, gens, 2, max_coef), random_element(rng, gens, 2, max_coef))
        for k in range(rng.randint(0, max_rels))
    ]
    return BergmanPresentation(gens, rels)


def random_blue_system(rng: random.Random, n_blue: int) -> BergmanPresentation:
    """Blue relations with disjoint range sets but arbitrary left-hand sides (may fail admissibility)."""
    n0 = rng.randint(1, 2)
    gens = [f"g{k}" for k in range(n0)]
    ranges = []
    for b in range(n_blue):
        new = [f"g{len(gens) + k}" for k in range(rng.randint(2, 3))]
        gens += new
        ranges.append(new)
    rels = []
    for b, new in enumerate(ranges):
        pool = [x for x in gens if x not in new] if rng.random() < 0.9 else gens
        rels.append(ColouredRelation(f"b{b}", BLUE, random_element(rng, pool, 2, 2), Element.of(*new)))
    rng.shuffle(rels)
    return BergmanPresentation(gens, rels)


def random_hypergraph(rng: random.Random, max_edges=3, max_index=3, n_vertices=None) -> BergmanGraph:
    n = n_vertices or rng.randint(1, 3)
    verts = [f"v{k}" for k in range(n)]
    edges = []
    for k in range(rng.randint(1, max_edges)):
        src = Element.of(*(rng.choice(verts) for _ in range(rng.randint(1, max_index))))
        rng_ = Element.of(*(rng.choice(verts) for _ in range(rng.randint(1, max_index))))
        edges.append(Hyperedge(f"h{k}", RED, src, rng_))
    return BergmanGraph(verts, edges)


def random_lonely(rng: random.Random) -> tuple[BergmanGraph, str]:
    """A basic hypergraph with a lonely vertex ``lv``."""
    g = random_hypergraph(rng, max_edges=2, max_index=2)
    rng_ = Element.of(*(rng.choice(g.vertices) for _ in range(rng.randint(1, 3))))
    h = Hyperedge("hl", RED, Element.of("lv"), rng_)
    verts = list(g.vertices)
    verts.insert(rng.randint(0, len(verts)), "lv")
    return BergmanGraph(verts, list(g.hyperedges) + [h]), "lv"


# ---------------------------------------------------------------------------
# random applicable moves
# ---------------------------------------------------------------------------


def _walk(rng: random.Random, rels, start: Element, steps: int, max_degree=6) -> Certificate:
    """A short random rewrite walk, returned as a certificate."""
    cur, out = start, []
    for _ in range(steps):
        options = []
        for r in rels:
            for d, src, dst in ((FORWARD, r.lhs, r.rhs), (BACKWARD, r.rhs, r.lhs)):
                if src <= cur:
                    nxt = cur - src + dst
                    if nxt.degree <= max_degree:
                        options.append((Step(r.label, d, cur - src), nxt))
        if not options:
            break
        step, cur = rng.choice(options)
        out.append(step)
    return Certificate(start, cur, tuple(out))


def _random_parts(rng, e: Element, t: int) -> list[Element]:
    letters = list(e)
    rng.shuffle(letters)
    cuts = sorted(rng.sample(range(1, len(letters)), t - 1))
    bounds = [0] + cuts + [len(letters)]
    return [Element.of(*letters[a:b]) for a, b in zip(bounds, bounds[1:])]


def random_move(rng: random.Random, p: BergmanPresentation, kinds=None):
    """Pick a random applicable move; returns ``(kind, params)`` or ``None``."""
    basic = p.is_basic()
    candidates = []
    kinds = kinds or moves_kinds()
    if "redshift" in kinds:
        candidates += [("redshift", r) for r in p.red]
    if "blueshift" in kinds:
        candidates += [("blueshift", r) for r in p.blue]
    if "enqueue" in kinds:
        candidates += [("enqueue", r) for r in p.blue if r.lhs.is_generator()]
    if "outsplit" in kinds:
        candidates += [("outsplit", r) for r in p.red if r.lhs.degree >= 2 and len(p.generators) < 10]
    if basic:
        if "eliminate" in kinds:
            candidates += [("eliminate", x) for x, _ in moves.find_lonely(p)]
        if "extend" in kinds and len(p.generators) < 8 and p.generators:
            candidates.append(("extend", None))
        if "collapse" in kinds:
            candidates += [("collapse", r) for r in p.red if r.lhs.is_generator() and not (r.lhs.support() & r.rhs.support())]
        if "insplit" in kinds:
            for r in p.red:
                if not r.lhs.is_generator():
                    continue
                (x,) = r.lhs.support()
                if any(x in q.lhs.support() for q in p.relations if q.label != r.label):
                    continue
                if moves.insplit_index_set(p, x) and len(p.generators) < 9:
                    candidates.append(("insplit", r))
    if not candidates:
        return None
    kind, obj = rng.choice(candidates)
    if kind == "redshift":
        rels = p.monoid(exclude=[obj.label]).relations
        c1 = _walk(rng, rels, obj.lhs, rng.randint(0, 2))
        c2 = _walk(rng, rels, obj.rhs, rng.randint(0, 2))
        return kind, {"label": obj.label, "lhs": c1.end, "rhs": c2.end, "certificates": (c1, c2)}
    if kind == "blueshift":
        _, m = moves.blue_shift_context(p, obj.label)
        c = _walk(rng, m.relations, obj.lhs, rng.randint(0, 2))
        return kind, {"label": obj.label, "lhs": c.end, "certificate": c}
    if kind == "enqueue":
        return kind, {"label": obj.label}
    if kind == "outsplit":
        t = rng.randint(2, obj.lhs.degree)
        return kind, {"label": obj.label, "parts": _random_parts(rng, obj.lhs, t)}
    if kind == "eliminate":
        return kind, {"generator": obj}
    if kind == "extend":
        return kind, {"generator": moves.fresh_name("y", p.generators), "rhs": random_element(rng, p.generators)}
    if kind == "collapse":
        (x,) = obj.lhs.support()
        return kind, {"generator": x, "label": obj.label}
    (x,) = obj.lhs.support()
    occ = moves.insplit_index_set(p, x)
    rng.shuffle(occ)
    t = rng.randint(1, min(3, len(occ)))
    cuts = sorted(rng.sample(range(1, len(occ)), t - 1)) if t > 1 else []
    bounds = [0] + cuts + [len(occ)]
    return kind, {"generator": x, "label": obj.label, "partition": [occ[a:b] for a, b in zip(bounds, bounds[1:])]}


def moves_kinds():
    return ("redshift", "blueshift", "enqueue", "outsplit", "eliminate", "extend", "collapse", "insplit")


def move_corpus(seed: int, count: int, chain: int = 4):
    """``count`` executed moves as ``(before, record, after)`` triples."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = random_basic(rng, 4, 3) if rng.random() < 0.5 else random_presentation(rng, 7, 4, 2)
        for _ in range(chain):
            mv = random_move(rng, p)
            if mv is None or len(out) >= count:
                break
            kind, params = mv
            rec, q = moves.perform(p, kind, **params)
            out.append((p, rec, q))
            p = q
    return out
