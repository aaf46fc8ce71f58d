import random

import pytest

from psopmcs import (
    Graph,
    InvalidArgument,
    NotChordal,
    build_clique_graph,
    build_layer_structure,
    dp_solve,
    end_vertex,
    extract_witness,
    order_from_pairs,
    project_order,
    rooted_generic_psop,
    solve,
    verify_ordering,
    verify_solution,
)
from psopmcs.search import node_key
from psopmcs.solver import COPY, cross_component_pattern, realize
from psopmcs.testkit import (
    G1,
    P3,
    SQUARE,
    TRIANGLE,
    oracle_psop,
    oracle_rooted_generic,
    random_chordal,
    random_partial_order,
    small_graphs,
)

from conftest import K, K1, K2, K3

R = order_from_pairs


def test_project_order(cg1):
    ls = build_layer_structure(cg1, K1)
    leaf = next(u for u in ls.units if u != ls.root)
    assert project_order(ls, R([("e", "a")])).pairs == {(leaf, ls.root)}
    assert len(project_order(ls, R([("a", "b")]))) == 0
    assert project_order(ls, R([("e", "a"), ("c", "e")])) is None


PATH = {"u0": {"u1"}, "u1": {"u0", "u2"}, "u2": {"u1"}}
STAR = {"u0": {"u1", "u2"}, "u1": {"u0"}, "u2": {"u0"}}


def test_rooted_generic_examples():
    assert rooted_generic_psop(PATH, "u0", R([])) == ("u0", "u1", "u2")
    assert rooted_generic_psop(PATH, "u0", R([("u2", "u1")])) is None
    assert not oracle_rooted_generic(PATH, "u0", R([("u2", "u1")]))
    assert rooted_generic_psop(STAR, "u0", R([("u2", "u1")])) == ("u0", "u2", "u1")
    with pytest.raises(InvalidArgument):
        rooted_generic_psop(PATH, "u9", R([]))


def _random_connected(rng, n):
    names = [f"u{i}" for i in range(n)]
    adj = {v: set() for v in names}
    for i in range(1, n):
        a, b = names[i], names[rng.randrange(i)]
        adj[a].add(b)
        adj[b].add(a)
    for _ in range(rng.randint(0, n) if n > 1 else 0):
        a, b = rng.sample(names, 2)
        adj[a].add(b)
        adj[b].add(a)
    return adj


@pytest.mark.parametrize("seed", range(100))
def test_greedy_matches_enumeration(seed):
    rng = random.Random(seed)
    adj = _random_connected(rng, rng.randint(1, 7))
    q = random_partial_order(adj, rng.randint(0, 4), rng)
    got = rooted_generic_psop(adj, "u0", q)
    assert (got is not None) == oracle_rooted_generic(adj, "u0", q)
    if got is not None:
        assert got[0] == "u0" and verify_ordering(adj, "generic", got)


def test_dp_examples():
    t = dp_solve(P3, R([("c", "a"), ("a", "b")]))
    assert not t.roots()
    t = dp_solve(P3, R([("a", "c")]))
    cg = t.clique_graph
    assert t[0, cg, K("ab")]
    t = dp_solve(G1, R([("e", "a")]))
    assert t[0, K3] and not t[0, K1] and not t[0, K2]


def test_table_size_and_lookup():
    t = dp_solve(G1, R([]))
    assert len(t.entries) <= (t.t + 1) * len(t.clique_graph.nodes)
    with pytest.raises(KeyError):
        t[1, frozenset((K3,)), K1]


def test_witness_examples():
    r = R([("a", "c")])
    ans = extract_witness(P3, r, dp_solve(P3, r), K("ab"))
    assert ans.witness == tuple("abc")
    r = R([("e", "a")])
    ans = extract_witness(G1, r, dp_solve(G1, r), K3)
    assert set(ans.witness[:2]) == K3 and verify_solution(G1, r, ans.witness)
    ans = extract_witness(G1, R([]), dp_solve(G1, R([])), K1)
    assert set(ans.witness[:3]) == K1


def test_solve_examples():
    assert not solve(P3, R([("c", "a"), ("a", "b")]))
    ans = solve(G1, R([("e", "a")]))
    assert ans and verify_solution(G1, R([("e", "a")]), ans.witness)
    g = Graph("abcz", [("a", "b"), ("b", "c")])
    assert not solve(g, R([("a", "z"), ("z", "c")]))


def test_solve_errors():
    with pytest.raises(NotChordal):
        solve(SQUARE, R([]))
    with pytest.raises(InvalidArgument):
        solve(P3, R([("a", "q")]))


def test_end_vertex():
    assert not end_vertex(P3, "b")
    ans = end_vertex(P3, "a")
    assert ans.witness[-1] == "a" and verify_ordering(P3, "mcs", ans.witness)
    assert all(end_vertex(TRIANGLE, v) for v in "abc")


def test_verify_solution():
    r = R([("a", "c")])
    assert verify_solution(P3, r, "abc")
    assert not verify_solution(P3, r, "cba")
    assert not verify_solution(P3, R([]), "cab")


def test_disconnected_rule():
    # two edges, each order pair crossing in opposite directions
    g = Graph("abcd", [("a", "b"), ("c", "d")])
    r = R([("a", "c"), ("d", "b")])
    assert cross_component_pattern(g, r) is None
    assert not solve(g, r)
    assert not oracle_psop(g, r)
    ans = solve(g, R([("c", "a")]))
    assert ans.witness[:2] in {tuple("cd"), tuple("dc")}


@pytest.mark.parametrize("seed", range(40))
def test_debug_mode_and_monotone_levels(seed):
    rng = random.Random(seed)
    g = random_chordal(20, 8, seed)
    r = random_partial_order(g.vertices, 3, rng)
    t = dp_solve(g, r, debug=True)
    for (i, k), ok in t.entries.items():
        if ok and i < t.t:
            assert t.entries[(i + 1, k)]
        if t.choices[(i, k)] == COPY:
            assert t.component[(i, k)] == t.component[(i + 1, k)]
    for k in t.roots():
        pi = realize(t, 0, k)
        assert pi[0] == k and verify_ordering(t.clique_graph, "prim", pi)


def test_oracle_equivalence_small():
    rng = random.Random(0)
    for g in small_graphs(5):
        for _ in range(5):
            r = random_partial_order(g.vertices, rng.randint(0, 3), rng)
            ans = solve(g, r)
            assert bool(ans) == oracle_psop(g, r)
            if ans:
                assert verify_solution(g, r, ans.witness)


def test_deterministic():
    g = random_chordal(40, 15, 3)
    r = random_partial_order(g.vertices, 4, random.Random(3))
    assert solve(g, r) == solve(g, r)
    assert sorted(build_clique_graph(g).nodes, key=node_key) == sorted(build_clique_graph(g).nodes, key=node_key)
