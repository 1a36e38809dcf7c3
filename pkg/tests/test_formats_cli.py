import io
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from helpers import GOLDEN, WORKED, data, random_presentation

from bergmoves import formats
from bergmoves.cli import main
from bergmoves.dot import dot_export, node_ids
from bergmoves.monoid import Element
from bergmoves.structures import BergmanGraph, Digraph, pres_to_graph, validate_presentation

E = Element.parse


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class TestParse:
    def test_worked_example(self):
        p = formats.parse_bp(WORKED)
        assert len(p.generators) == 9 and len(p.relations) == 5
        assert p.relation("r2").lhs == E("x0_1 + 2 x1_2 + x1_3")

    def test_comments_and_blank_lines(self):
        p = formats.parse_bp("# header\n\ngens a b  # two\nred r: a = b # tail\n")
        assert p.labels() == ["r"]

    def test_empty_file(self):
        p = formats.parse_bp("")
        assert p.generators == () and validate_presentation(p).ok
        assert formats.dump_bp(p) == "gens\n"

    def test_syntax_error_position(self):
        with pytest.raises(formats.ParseError) as exc:
            formats.parse_bp("gens a b\nred r a = b\n")
        assert exc.value.line == 2

    def test_undeclared_generator(self):
        with pytest.raises(formats.ParseError) as exc:
            formats.parse_bp("gens a b\nred r: a = c\n")
        assert exc.value.label == "r" and exc.value.line == 2 and exc.value.column == 12

    def test_zero_side(self):
        with pytest.raises(formats.ParseError) as exc:
            formats.parse_bp("gens a\nred r: a = 0\n")
        assert exc.value.label == "r"

    def test_blue_self_loop_parses_but_is_invalid(self):
        p = formats.parse_bp("gens x\nblue r: x = x\n")
        assert not validate_presentation(p).ok

    def test_duplicate_label(self):
        with pytest.raises(formats.ParseError):
            formats.parse_bp("gens a\nred r: a = a\nred r: a = 2 a\n")

    def test_graph(self):
        g = formats.parse_bg("vertices u v\nred h: u u -> v v v\n")
        assert g.hyperedge("h").source == E("2 u") and g.hyperedge("h").range == E("3 v")
        with pytest.raises(formats.ParseError):
            formats.parse_bg("vertices u\nred h: u -> w\n")
        with pytest.raises(formats.ParseError):
            formats.parse_bg("vertices u\nred h: u u\n")

    def test_digraph(self):
        d = formats.parse_dg("edge a: p -> q\nedge b: q -> q\n")
        assert d.vertices == ("p", "q") and d.edges == (("a", "p", "q"), ("b", "q", "q"))
        assert formats.parse_dg(formats.dump_dg(d)) == d
        with pytest.raises(formats.ParseError):
            formats.parse_dg("vertices p\nedge a: p -> q\n")

    def test_move_script(self):
        cmds = formats.parse_mv(
            "redshift r4: u+v = u -- bound 8\n"
            "blueshift r1: v01 -- bound 8\n"
            "enqueue r1\n"
            "outsplit r5: [u1 | u2] as v1 v2\n"
            "eliminate x\n"
            "extend y = u + w\n"
            "collapse x via r3\n"
            "insplit x via r3: [(g,1) | (g,2); (h,1)] as x2 x3\n"
            "factor-collapse x via r3\n"
        )
        kinds = [c.kind for c in cmds]
        assert kinds == ["redshift", "blueshift", "enqueue", "outsplit", "eliminate", "extend", "collapse", "insplit", "factor-collapse"]
        assert cmds[0].bound == 8 and cmds[0].params["lhs"] == E("u + v")
        assert cmds[3].params["parts"] == [E("u1"), E("u2")] and cmds[3].params["new_names"] == ["v1", "v2"]
        assert cmds[7].params["partition"] == [[("g", 1)], [("g", 2)], [("h", 1)]]

    def test_bad_move_line(self):
        with pytest.raises(formats.ParseError) as exc:
            formats.parse_mv("enqueue r1\nteleport x\n")
        assert exc.value.line == 2
        with pytest.raises(formats.ParseError):
            formats.parse_mv("redshift r: u -- bound 0\n")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip(seed):
    p = random_presentation(random.Random(seed))
    text = formats.dump_bp(p)
    assert formats.parse_bp(text) == p
    assert formats.dump_bp(formats.parse_bp(text)) == text
    g = pres_to_graph(p)
    gtext = formats.dump_bg(g)
    assert formats.parse_bg(gtext) == g
    assert formats.dump_bg(formats.parse_bg(gtext)) == gtext


class TestDot:
    def test_toeplitz_golden(self):
        g = formats.parse_bg((GOLDEN.parent.parent / "data" / "toeplitz.bg").read_text())
        text = dot_export(g)
        assert text == (GOLDEN / "toeplitz.dot").read_text()
        assert node_ids(text) == ["v:u", "v:v", "h:h"]

    def test_worked_example_nodes(self):
        text = dot_export(formats.parse_bp(WORKED))
        ids = node_ids(text)
        assert len(ids) == 14
        assert text.count("style=dashed") == (2 + 3) + (4 + 2) + (1 + 2)
        assert text.count("dir=none") == 2 + 4 + 1 + 2 + 3

    def test_empty(self):
        assert dot_export(BergmanGraph([])) == 'digraph "bergman" {\n}\n'


class TestCli:
    def test_validate(self):
        assert run("validate", data("worked_example.bp")) == (0, "valid; admissible orderings: (r1,r2,r3), (r1,r3,r2)\n", "")

    def test_validate_invalid(self, tmp_path):
        f = tmp_path / "bad.bp"
        f.write_text("gens x\nblue r: x = x\n")
        code, out, _ = run("validate", str(f))
        assert code == 1 and "clause (i)" in out

    def test_parse_error_exit(self, tmp_path):
        f = tmp_path / "bad.bp"
        f.write_text("gens a\nred r: a = b\n")
        code, _, err = run("validate", str(f))
        assert code == 1 and "bad.bp:2:" in err and "relation r" in err

    def test_usage_errors(self, tmp_path):
        assert run("frobnicate")[0] == 2
        assert run("validate", str(tmp_path / "missing.bp"))[0] == 2
        (tmp_path / "x.txt").write_text("")
        assert run("validate", str(tmp_path / "x.txt"))[0] == 2
        assert run("meq", data("toeplitz.bg"), "u", "v", "--bound", "0")[0] == 2

    def test_orderings(self):
        assert run("orderings", data("worked_example.bp"))[1] == "(r1,r2,r3)\n(r1,r3,r2)\n"

    def test_vmonoid(self):
        assert run("vmonoid", data("toeplitz.bg"))[1] == "⟨u,v | u = u+v⟩\n"

    def test_meq(self):
        code, out, _ = run("meq", data("toeplitz.bg"), "u+v", "u", "--bound", "4")
        assert code == 0 and out.startswith("EQUAL\nstart u + v\n")
        code, out, _ = run("meq", data("toeplitz.bg"), "v", "u", "--bound", "4")
        assert code == 1 and out == "UNKNOWN at bound 4\n"

    def test_move(self, tmp_path):
        out_file = tmp_path / "out.bp"
        code, out, _ = run("move", data("red_shift.bp"), data("red_shift.mv"), "--out", str(out_file))
        assert code == 0 and "certificate u + v = u:" in out
        assert out_file.read_text() == "gens u v\nred g: u = u + v\nred h: v = u\n"

    def test_move_precondition_failure(self, tmp_path):
        script = tmp_path / "s.mv"
        script.write_text("redshift h: u = v -- bound 4\n")
        code, _, err = run("move", data("red_shift.bp"), str(script))
        assert code == 1 and "line 1" in err

    def test_factor(self):
        code, out, _ = run("factor", "insplit", data("insplit.bp"), "v1", "h1", "[(g,1) | (g,2) | (h1,1)]", "--as", "v2", "v3")
        assert code == 0 and "factorization recovers the input" in out
        assert out.count("== redshift") == 2 and out.count("== collapse") == 2

    def test_tietze(self):
        code, out, _ = run("tietze", data("red_shift.bp"), data("tietze.txt"))
        assert code == 0
        assert out.splitlines()[-1] == "⟨u,v | u = u+v, v = u⟩"

    def test_algebra_golden(self):
        for name, golden in (("leavitt23.bp", "leavitt23.alg"), ("toeplitz.bg", "toeplitz.alg")):
            code, out, _ = run("algebra", data(name))
            assert code == 0 and out == (GOLDEN / golden).read_text()

    def test_convert(self):
        code, out, _ = run("convert", data("toeplitz.bg"), "--format", "bp")
        assert out == "gens u v\nred h: u = u + v\n"
        code, out, _ = run("convert", data("cycle.dg"), "--format", "bg")
        assert out == "vertices p q\nred h_p: p -> q\nred h_q: q -> p q\n"

    def test_lpa(self):
        code, out, _ = run("lpa", "reduce", data("toeplitz.bg"), "h[u.1][u.1] * h[u.1][u.1]^")
        assert out == "1 * u - 1 * h[u.1][v.1] * h[u.1][v.1]^\n"
        code, out, _ = run("lpa", "mul", data("toeplitz.bg"), "u", "h[u.1][v.1]")
        assert out == "1 * h[u.1][v.1]\n"
        assert run("lpa", "check", data("toeplitz.bg"))[0] == 0
        assert run("lpa", "reduce", data("toeplitz.bg"), "k[u.1][v.1]")[0] == 1

    def test_lpa_corner(self, tmp_path):
        f = tmp_path / "l.bg"
        f.write_text("vertices u v w\nred f: u -> u w\nred g: w -> u\nred h: v -> u w w\n")
        code, out, _ = run("lpa", "corner", str(f), "v")
        assert code == 0 and "(c) fullness: pass" in out
        assert run("lpa", "corner", str(f), "u")[0] == 1

    def test_deterministic(self):
        assert run("algebra", data("worked_example.bp")) == run("algebra", data("worked_example.bp"))

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "bergmoves", "vmonoid", data("toeplitz.bg")], capture_output=True, text=True)
        assert proc.returncode == 0 and proc.stdout == "⟨u,v | u = u+v⟩\n"
