import io
import random
import json

import pytest
from hypothesis import given, settings, strategies as st

from psopmcs import Graph, order_from_pairs
from psopmcs.cli import FormatError, format_graph, format_order, parse_graph, parse_order, parse_ordering, run
from psopmcs.testkit import G1, P3, random_chordal, random_partial_order

P3_TEXT = "# path\na b\nb c\n"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p

    return write


def test_solve_yes(files):
    code, out, _ = call("solve", files("p3.graph", P3_TEXT), files("o.txt", "a < c\n"))
    assert code == 0
    assert out == "YES\na b c\n"


def test_solve_no(files):
    code, out, _ = call("solve", files("p3.graph", P3_TEXT), files("o.txt", "c < a\na < b\n"))
    assert (code, out) == (1, "NO\n")


def test_recognize(files):
    sq = files("sq.graph", "a b\nb c\nc d\nd a\n")
    assert call("recognize", sq)[:2] == (1, "not chordal\n")
    code, out, _ = call("recognize", files("p3.graph", P3_TEXT))
    assert code == 0 and out.startswith("chordal\n")


def test_cliques(files):
    g = files("g1.graph", format_graph(G1))
    assert call("cliques", g)[1] == "a b c\nb c d\nc e\n"


def test_clique_graph_text_and_dot(files):
    g = files("g1.graph", format_graph(G1))
    code, out, _ = call("clique-graph", g)
    assert code == 0
    assert "{a,b,c} -- {b,c,d} label={b,c} weight=2" in out.splitlines()
    assert len(out.splitlines()) == 3
    dot = call("clique-graph", g, "--dot")[1]
    assert dot.startswith("graph ") and 'label="{b,c}"' in dot


def test_layers(files):
    g = files("g1.graph", format_graph(G1))
    code, out, _ = call("layers", g, "--root", "a,b,c")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "root [{a,b,c} {b,c,d}]"
    assert any("parent=[{a,b,c} {b,c,d}] label={c}" in line for line in lines)
    # a vertex list picks the first clique holding it
    assert call("layers", g, "--root", "e")[1].startswith("root [{c,e}]")
    dot = call("layers", g, "--root", "a,b,c", "--dot")[1]
    assert "subgraph cluster_" in dot


def test_end_vertex(files):
    g = files("p3.graph", P3_TEXT)
    assert call("end-vertex", g, "b")[:2] == (1, "NO\n")
    code, out, _ = call("end-vertex", g, "a")
    assert code == 0 and out.splitlines()[1].endswith("a")


def test_solve_output_feeds_verify(files):
    g = files("g1.graph", format_graph(G1))
    o = files("o.txt", "e < a\n")
    code, out, _ = call("solve", g, o)
    assert code == 0
    w = files("w.txt", out)
    assert call("verify", g, o, w)[:2] == (0, "valid\n")
    assert call("verify", g, o, files("bad.txt", "a b c d e\n"))[:2] == (1, "invalid\n")


@pytest.mark.parametrize(
    "graph,order,needle",
    [
        ("a b\na b\n", "", "line 2"),
        ("a a\n", "", "line 1"),
        ("a b c\n", "", "line 1"),
        (P3_TEXT, "a < q\n", "line 1"),
        (P3_TEXT, "a < b\nbogus\n", "line 2"),
        (P3_TEXT, "a < b\nb < a\n", "cycle"),
        ('{"vertices": ["a"], "edges": [["a", "b"], ["b", "a"]]}', "", "edge 1"),
    ],
)
def test_input_errors(files, graph, order, needle):
    code, _, err = call("solve", files("g.graph", graph), files("o.txt", order))
    assert code == 2
    assert needle in err


def test_missing_file_and_usage(tmp_path):
    assert call("solve", tmp_path / "nope", tmp_path / "nope")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call()[0] == 2


def test_non_chordal_solve_is_input_error(files):
    sq = files("sq.graph", "a b\nb c\nc d\nd a\n")
    assert call("solve", sq, files("o.txt", ""))[0] == 2


def test_structured_formats():
    g = parse_graph('{"vertices": ["z"], "edges": [["a", "b"], ["b", "c"]]}')
    assert g == Graph("abcz", [("a", "b"), ("b", "c")])
    r = parse_order('{"pairs": [["a", "c"]]}', g)
    assert r.pairs == {("a", "c")}


def test_isolated_vertex_roundtrip():
    g = Graph("abz", [("a", "b")])
    assert parse_graph(format_graph(g)) == g


def test_parse_ordering_skips_yes():
    assert parse_ordering("YES\na b c\n") == tuple("abc")


@settings(max_examples=40)
@given(st.integers(0, 10_000), st.booleans())
def test_roundtrip(seed, structured):
    g = random_chordal(15, 6, seed)
    assert parse_graph(format_graph(g, structured)) == g
    r = random_partial_order(g.vertices, 5, random.Random(seed))
    assert parse_order(format_order(r, structured), g) == r


def test_output_is_deterministic(files):
    g = random_chordal(40, 15, 11)
    r = random_partial_order(g.vertices, 6, random.Random(11))
    gp, op = files("g.graph", format_graph(g)), files("o.txt", format_order(r))
    for cmd in (("solve", gp, op), ("clique-graph", gp, "--dot"), ("cliques", gp), ("recognize", gp)):
        assert call(*cmd) == call(*cmd)
    root = sorted(g.vertices)[0]
    assert call("layers", gp, "--root", root) == call("layers", gp, "--root", root)


def test_format_error_is_value_error():
    with pytest.raises(FormatError):
        parse_graph("a\n")
    with pytest.raises(FormatError):
        parse_order("a < b\n", P3.without("b"))
    json.loads(format_order(order_from_pairs([("a", "b")]), True))
