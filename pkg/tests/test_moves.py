import random

import pytest
from helpers import COLLAPSE, INSPLIT, LONELY, WEIGHTED, bg, bp, move_corpus, random_basic, random_move

from bergmoves import moves
from bergmoves.monoid import Element, verify_certificate
from bergmoves.structures import BLUE, RED, graph_to_pres, validate_presentation

E = Element.parse


def rels(p):
    return [(r.colour, r.lhs, r.rhs) for r in p.relations]


class TestRedShift:
    def test_absorbing_example(self):
        p = bp("gens u v\nred g: u = u + v\nred h: v = u + v\n")
        q = moves.red_shift(p, "h", E("v"), E("u"), bound=8)
        assert q.relation("h").lhs == E("v") and q.relation("h").rhs == E("u")
        assert q.relation("g") == p.relation("g")

    def test_weighted_example(self):
        p = bp(WEIGHTED)
        q = moves.red_shift(p, "h2", E("v11 + v12 + v21"), E("v11 + v22"), bound=8)
        assert q.relation("h2").lhs == E("v11 + v12 + v21")
        assert validate_presentation(q).ok

    def test_cannot_use_itself(self):
        p = bp("gens u v\nred h: u = u + v\n")
        with pytest.raises(moves.MoveError, match="not certified"):
            moves.red_shift(p, "h", E("u + v"), E("u + v"), bound=6)

    def test_blue_label_rejected(self):
        with pytest.raises(moves.MoveError):
            moves.red_shift(bp(WEIGHTED), "e", E("v01"), E("v11 + v12"))

    def test_certificates_verify_in_restricted_monoid(self):
        p = bp(WEIGHTED)
        c1, c2 = moves.red_shift_certificates(p, "h2", E("v11 + v12 + v21"), E("v11 + v22"), bound=8)
        m = p.monoid(exclude=["h2"])
        assert verify_certificate(m, c1) and verify_certificate(m, c2)
        assert not verify_certificate(m.without("h1"), c2)


class TestBlueShift:
    def test_example_one(self):
        p = bp("gens v01 v11 v12 v21 v22\nblue e: v01 = v11 + v12\nblue f: v11 + v12 = v21 + v22\n")
        q = moves.blue_shift(p, "f", E("v01"), bound=6)
        assert q.relation("f").lhs == E("v01")
        assert validate_presentation(q).ok

    def test_example_two_uses_red_relation(self):
        p = bp(WEIGHTED)
        _, m = moves.blue_shift_context(p, "f")
        assert m.labels() == ["e", "h1"]
        q = moves.blue_shift(p, "f", E("v01"), bound=6)
        assert q.relation("f").lhs == E("v01")

    def test_cannot_escape_earlier_levels(self):
        p = bp(WEIGHTED)
        with pytest.raises(moves.MoveError, match="escapes"):
            moves.blue_shift(p, "e", E("v11"))

    def test_ordering_must_be_admissible(self):
        p = bp(WEIGHTED)
        with pytest.raises(moves.MoveError):
            moves.blue_shift(p, "f", E("v01"), ordering=["f", "e"])


class TestEnqueue:
    def test_example(self):
        p = bp("gens v01 v11 v12 v21 v22\nred h1: v01 = v11\nblue e: v01 = v11 + v12\nblue f: v01 + v12 = v21 + v22\n")
        q = moves.enqueue(p, "e")
        assert q.generators == ("v11", "v12", "v21", "v22")
        assert q.relation("h1").lhs == E("v11 + v12") and q.relation("h1").rhs == E("v11")
        assert q.relation("f").lhs == E("v11 + 2 v12")
        assert q.relation("f").colour == BLUE

    def test_needs_generator_lhs(self):
        with pytest.raises(moves.MoveError):
            moves.enqueue(bp(WEIGHTED), "f")


class TestOutsplit:
    def test_two_parts(self):
        p = bp("gens u1 u2 u3\nred h: u1 + u2 = u3\n")
        q = moves.outsplit(p, "h", [E("u1"), E("u2")], new_names=["v1", "v2"])
        assert q.generators == ("u1", "u2", "u3", "v1", "v2")
        assert rels(q) == [(BLUE, E("u3"), E("v1 + v2")), (RED, E("u1"), E("v1")), (RED, E("u2"), E("v2"))]
        assert q.labels() == ["h", "h_1", "h_2"]

    def test_range_with_two_vertices(self):
        p = bp("gens u1 u2 u3 u4\nred h: u1 + u2 = u3 + u4\n")
        q = moves.outsplit(p, "h", [E("u1"), E("u2")])
        assert q.relation("h").lhs == E("u3 + u4")
        assert validate_presentation(q).ok

    def test_parts_must_sum(self):
        p = bp("gens u1 u2 u3\nred h: u1 + u2 = u3\n")
        with pytest.raises(moves.MoveError, match="sum"):
            moves.outsplit(p, "h", [E("u1"), E("u1")])
        with pytest.raises(moves.MoveError):
            moves.outsplit(p, "h", [E("u1 + u2")])


class TestLonelyAndCollapse:
    def test_find_and_eliminate(self):
        p = graph_to_pres(bg(LONELY))
        assert moves.find_lonely(p) == [("v", "h")]
        q = moves.lonely_eliminate(p, "v")
        assert q.generators == ("u", "w") and q.labels() == ["f", "g"]
        with pytest.raises(moves.MoveError):
            moves.lonely_eliminate(p, "u")

    def test_extend_inverts_elimination(self):
        p = bp("gens u w v\nred f: u = u + w\nred g: w = u\nred h: v = u + 2 w\n")
        q = moves.lonely_eliminate(p, "v")
        assert moves.extend(q, "v", E("u + 2 w"), "h") == p
        with pytest.raises(moves.MoveError):
            moves.extend(q, "u", E("w"))

    def test_collapse_example(self):
        p = bp(COLLAPSE)
        q = moves.collapse(p, "v", "h")
        assert q.generators == ("u", "w")
        assert q.relation("g").lhs == E("u + w") and q.relation("g").rhs == E("u + 2 w")

    def test_collapse_factorization_example(self):
        p = bp(COLLAPSE)
        seq = moves.factor_collapse(p, "v", "h")
        assert [r.kind for r in seq.records] == ["redshift", "eliminate"]
        assert seq.result() == moves.collapse(p, "v", "h")

    def test_collapse_preconditions(self):
        with pytest.raises(moves.MoveError):
            moves.collapse(bp(COLLAPSE), "u", "e")
        with pytest.raises(moves.MoveError, match="basic"):
            moves.collapse(bp(WEIGHTED), "v01", "h1")


class TestInsplit:
    partition = [[("g", 1)], [("g", 2)], [("h1", 1)]]

    def test_example(self):
        p = bp(INSPLIT)
        q = moves.insplit(p, "v1", "h1", self.partition, ["v2", "v3"], ["h2", "h3"])
        assert q.generators == ("u", "v1", "v2", "v3", "w", "x")
        assert q.relation("g").rhs == E("v1 + v2 + x")
        for lab, x in (("h1", "v1"), ("h2", "v2"), ("h3", "v3")):
            assert q.relation(lab).lhs == E(x) and q.relation(lab).rhs == E("w + v3")

    def test_factorization_example(self):
        p = bp(INSPLIT)
        seq = moves.factor_insplit(p, "v1", "h1", self.partition, ["v2", "v3"])
        assert [r.kind for r in seq.records] == ["redshift", "redshift", "collapse", "collapse"]
        assert seq.result() == p

    def test_single_part_is_identity(self):
        p = bp(INSPLIT)
        assert moves.insplit(p, "v1", "h1", [[("g", 1), ("g", 2), ("h1", 1)]]) == p

    def test_bad_partition(self):
        p = bp(INSPLIT)
        with pytest.raises(moves.MoveError, match="partition"):
            moves.insplit(p, "v1", "h1", [[("g", 1)], [("h1", 1)]])
        with pytest.raises(moves.MoveError):
            moves.insplit(p, "v1", "h1", [[("g", 1), ("g", 2)], [("g", 2), ("h1", 1)]])


def test_graph_move():
    g = bg(LONELY)
    h = moves.graph_move(g, moves.lonely_eliminate, "v")
    assert h.vertices == ("u", "w")


def test_records_replay():
    for before, rec, after in move_corpus(11, 80):
        assert rec.apply(before) == after
        assert rec.describe()


def test_random_moves_stay_valid():
    for before, rec, after in move_corpus(5, 150):
        assert validate_presentation(after).ok


def test_random_factorizations():
    rng = random.Random(19)
    done = 0
    while done < 40:
        p = random_basic(rng)
        mv = random_move(rng, p, kinds=("collapse",))
        if mv is None:
            continue
        _, q = mv
        seq = moves.factor_collapse(p, q["generator"], q["label"])
        assert seq.result() == moves.collapse(p, q["generator"], q["label"])
        done += 1


def test_red_shift_as_tietze_pair():
    p = bp("gens u v\nred g: u = u + v\nred h: v = u + v\n")
    rec, q = moves.perform(p, "redshift", bound=8, label="h", lhs=E("v"), rhs=E("u"))
    steps = moves.red_shift_tietze(p, rec)
    assert [t.kind for t, _ in steps] == ["C", "D"]
    final = steps[-1][1]
    assert [(r.lhs, r.rhs) for r in final.relations] == [(r.lhs, r.rhs) for r in q.relations]


def test_shadow_on_examples():
    p = bp(INSPLIT)
    rec, q = moves.perform(p, "insplit", generator="v1", label="h1", partition=TestInsplit.partition)
    assert moves.vmonoid_shadow(p, rec, q).ok
    p = bp(COLLAPSE)
    rec, q = moves.perform(p, "collapse", generator="v", label="h")
    assert moves.vmonoid_shadow(p, rec, q).ok
