import pytest

from psopmcs import (
    InvalidArgument,
    NotChordal,
    build_clique_graph,
    level_graph,
    min_weight_components,
    ominus,
    weight_levels,
)
from psopmcs.testkit import G1, K4, P3, S3, SQUARE, maximum_spanning_trees, oracle_clique_graph, intersection_graph, random_chordal

from conftest import K, K1, K2, K3


def edge_set(cg):
    return {(frozenset((a, b)), lab) for a, b, lab in cg.edges()}


def test_p3(cgp3):
    assert edge_set(cgp3) == {(frozenset((K("ab"), K("bc"))), K("b"))}


def test_s3_triangle(cgs3):
    assert len(cgs3.labels) == 3
    assert set(cgs3.labels.values()) == {K("c")}


def test_g1(cg1):
    assert cg1.labels == {
        frozenset((K1, K2)): K("bc"),
        frozenset((K1, K3)): K("c"),
        frozenset((K2, K3)): K("c"),
    }
    assert cg1.weight(K1, K2) == 2


def test_rejects_bad_input():
    with pytest.raises(NotChordal):
        build_clique_graph(SQUARE)
    with pytest.raises(InvalidArgument):
        build_clique_graph(P3.without("b"))


def test_ominus(cg1, cgs3):
    assert not ominus(cgs3, "c").labels
    assert set(ominus(cg1, "c").labels) == {frozenset((K1, K2))}
    assert set(ominus(cg1, "bc").labels) == {frozenset((K1, K3)), frozenset((K2, K3))}


def test_weight_levels(cg1, cgp3):
    assert weight_levels(cg1) == (1, 2)
    assert weight_levels(cgp3) == (1,)
    assert weight_levels(build_clique_graph(K4)) == ()


def test_level_graph(cg1):
    assert level_graph(cg1, 0) == cg1
    assert set(level_graph(cg1, 1).labels) == {frozenset((K1, K2))}
    assert not level_graph(cg1, 2).labels
    with pytest.raises(InvalidArgument):
        level_graph(cg1, 3)


def test_min_weight_components(cg1, cgs3, cgp3):
    assert set(min_weight_components(cg1)) == {frozenset((K1, K2)), frozenset((K3,))}
    assert len(min_weight_components(cgs3)) == 3
    assert len(min_weight_components(cgp3)) == 2


def test_oracle_fixtures(cg1, cgs3, cgp3):
    assert oracle_clique_graph(G1) == cg1
    assert oracle_clique_graph(S3) == cgs3
    assert oracle_clique_graph(P3) == cgp3


@pytest.mark.parametrize("seed", range(40))
def test_cycle_property_oracle_matches_spanning_tree_enumeration(seed):
    g = random_chordal(12, 5, seed)
    cliques, meets = intersection_graph(g)
    if len(cliques) > 7:
        pytest.skip("spanning-tree enumeration kept to seven cliques")
    weights = {p: len(s) for p, s in meets.items()}
    union = set().union(*maximum_spanning_trees(cliques, weights))
    assert union == set(oracle_clique_graph(g).labels)


@pytest.mark.parametrize("seed", range(60))
def test_level_recursion_and_vertex_cliques_stay_together(seed):
    g = random_chordal(25, 10, seed)
    cg = build_clique_graph(g)
    t = len(weight_levels(cg))
    for i in range(1, t + 1):
        prev = level_graph(cg, i - 1)
        low = prev.min_weight()
        assert level_graph(cg, i) == prev.keep_edges(lambda lab: len(lab) > low)
    # every minimum-weight label S: the v-cliques of each v outside S stay together
    low = cg.min_weight()
    if low is None:
        return
    for s in {lab for lab in cg.labels.values() if len(lab) == low}:
        comps = ominus(cg, s).components()
        where = {k: n for n, c in enumerate(comps) for k in c}
        for v in g.vertices - s:
            assert len({where[k] for k in cg.nodes if v in k}) == 1
