"""Test fixtures and brute-force oracles.

The oracles deliberately avoid the production code paths they check:
clique graphs come from maximum-weight spanning trees over networkx's
clique enumeration, and PSOP answers from exhaustive MCS enumeration.
"""

from __future__ import annotations

import math
import random
from collections.abc import Iterator
from itertools import combinations

import networkx as nx

from .cliquegraph import CliqueGraph
from .graph import Graph, InvalidArgument, StrictPartialOrder, connected_components, extends, order_from_pairs
from .search import chordality_peo, enumerate_orderings

P3 = Graph("abc", [("a", "b"), ("b", "c")])
S3 = Graph("cxyz", [("c", "x"), ("c", "y"), ("c", "z")])
G1 = Graph("abcde", [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d"), ("c", "e")])
TRIANGLE = Graph("abc", [("a", "b"), ("b", "c"), ("a", "c")])
SQUARE = Graph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
K4 = Graph("abcd", [(u, v) for u, v in combinations("abcd", 2)])

for _g in (P3, S3, G1, TRIANGLE, K4):
    assert chordality_peo(_g) is not None and len(connected_components(_g)) == 1


def random_chordal(n: int, k: int, seed: int, spread: int | None = None) -> Graph:
    """Connected chordal graph from random subtrees of a random tree.

    Vertex ``i`` gets a random connected subtree of a ``k``-node tree; two
    vertices are adjacent when their subtrees meet. The largest component is
    kept, so fewer than ``n`` vertices may survive. Subtree sizes are drawn
    from 1..``spread`` (default about sqrt(k)).
    """
    if n < 1 or k < 1:
        raise InvalidArgument("need n >= 1 and k >= 1")
    rng = random.Random(seed)
    spread = spread or max(1, math.isqrt(k))
    tree: dict[int, list[int]] = {0: []}
    for node in range(1, k):
        p = rng.randrange(node)
        tree[node] = [p]
        tree[p].append(node)
    width = len(str(n - 1))
    names = [f"v{i:0{width}d}" for i in range(n)]
    members: dict[int, list[str]] = {node: [] for node in range(k)}
    for name in names:
        start = rng.randrange(k)
        size = rng.randint(1, spread)
        sub = {start}
        frontier = list(tree[start])
        while len(sub) < size and frontier:
            nxt = frontier.pop(rng.randrange(len(frontier)))
            if nxt in sub:
                continue
            sub.add(nxt)
            frontier.extend(w for w in tree[nxt] if w not in sub)
        for node in sub:
            members[node].append(name)
    edges = set()
    for group in members.values():
        for u, v in combinations(sorted(group), 2):
            edges.add((u, v))
    g = Graph(names, edges)
    comps = connected_components(g)
    biggest = max(comps, key=len)
    return g.induced(biggest)


def random_partial_order(vertices, npairs: int, rng: random.Random) -> StrictPartialOrder:
    """Random cycle-free precedence pairs, closed transitively.

    Pairs that would close a cycle are skipped, so the result may hold
    fewer than ``npairs`` generating pairs.
    """
    vertices = sorted(vertices)
    pairs: list[tuple[str, str]] = []
    if len(vertices) < 2:
        return order_from_pairs([], vertices)
    current = order_from_pairs([])
    for _ in range(npairs):
        x, y = rng.sample(vertices, 2)
        if (y, x) in current.pairs:
            continue
        pairs.append((x, y))
        current = order_from_pairs(pairs)
    return current


def has_hole(g: Graph) -> bool:
    """Brute-force search for an induced cycle of length at least four."""
    if len(g) > 12:
        raise InvalidArgument("brute-force hole search is capped at 12 vertices")
    verts = sorted(g.vertices)
    for size in range(4, len(verts) + 1):
        for subset in combinations(verts, size):
            sub = g.induced(subset)
            if all(len(sub.adj[v]) == 2 for v in subset) and len(connected_components(sub)) == 1:
                return True
    return False


def small_graphs(max_n: int, chordal: bool = True, connected: bool = True) -> Iterator[Graph]:
    """Every graph on 1..max_n vertices up to isomorphism (max_n <= 7)."""
    if max_n > 7:
        raise InvalidArgument("the graph atlas stops at 7 vertices")
    letters = "abcdefg"
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or n > max_n:
            continue
        if connected and not nx.is_connected(h):
            continue
        if chordal and not nx.is_chordal(h):
            continue
        yield Graph(letters[:n], [(letters[u], letters[v]) for u, v in h.edges()])


def mcs_orderings(g: Graph, cap: int = 9) -> set[tuple[str, ...]]:
    return enumerate_orderings(g, "mcs", cap=cap)


def oracle_psop(g: Graph, r: StrictPartialOrder, orderings=None) -> bool:
    """Whether some MCS ordering of ``g`` extends ``r``, by enumeration."""
    if len(g) > 9:
        raise InvalidArgument("oracle_psop is capped at 9 vertices")
    orderings = mcs_orderings(g) if orderings is None else orderings
    return any(extends(s, r) for s in orderings)


def oracle_end_vertex(g: Graph, v: str, orderings=None) -> bool:
    orderings = mcs_orderings(g) if orderings is None else orderings
    return any(s[-1] == v for s in orderings)


def oracle_rooted_generic(adj, root, q: StrictPartialOrder, cap: int = 8) -> bool:
    """Backtracking over every generic search ordering that starts at ``root``.

    Branches are cut as soon as a node is visited before one of its
    ``q``-predecessors, so the search stays exhaustive but small.
    """
    adj = getattr(adj, "adj", adj)
    if len(adj) > cap:
        raise InvalidArgument(f"{len(adj)} nodes exceeds the enumeration cap of {cap}")

    def ready(v, visited):
        return all(p in visited for p in q.predecessors(v) if p in adj)

    def branch(visited):
        if len(visited) == len(adj):
            return True
        frontier = {w for v in visited for w in adj[v] if w not in visited}
        return any(branch(visited | {w}) for w in frontier if ready(w, visited))

    return ready(root, set()) and branch(frozenset([root]))


def intersection_graph(g: Graph) -> tuple[list[frozenset], dict[frozenset, frozenset]]:
    """Maximal cliques (via networkx) and all pairwise nonempty intersections."""
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(tuple(e) for e in g.edges())
    cliques = sorted((frozenset(c) for c in nx.find_cliques(h)), key=lambda c: sorted(c))
    meets = {}
    for a, b in combinations(cliques, 2):
        if a & b:
            meets[frozenset((a, b))] = a & b
    return cliques, meets


def _in_some_max_spanning_tree(nodes, meets, pair) -> bool:
    # an edge lies in some maximum spanning tree iff no strictly heavier path joins its ends
    a, b = tuple(pair)
    w = len(meets[pair])
    adj = {k: [] for k in nodes}
    for p, lab in meets.items():
        if len(lab) > w:
            x, y = tuple(p)
            adj[x].append(y)
            adj[y].append(x)
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return b not in seen


def oracle_clique_graph(g: Graph, guard: int = 12) -> CliqueGraph:
    """Union of all maximum-weight spanning trees of the clique intersection graph."""
    cliques, meets = intersection_graph(g)
    if len(cliques) > guard:
        raise InvalidArgument(f"{len(cliques)} maximal cliques exceeds the guard of {guard}")
    edges = [(*tuple(p), lab) for p, lab in meets.items() if _in_some_max_spanning_tree(cliques, meets, p)]
    return CliqueGraph(cliques, edges)


def maximum_spanning_trees(nodes, weighted: dict[frozenset, int]) -> Iterator[frozenset]:
    """Every maximum-weight spanning tree, by branching over tied edges.

    Exponential; meant for cross-checking on a handful of nodes.
    """
    nodes = list(nodes)
    edges = sorted(weighted, key=lambda p: (-weighted[p], sorted(map(sorted, p))))
    best = [None]
    found: list[frozenset] = []

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(idx, chosen, parent, total):
        if len(chosen) == len(nodes) - 1:
            if best[0] is None or total > best[0]:
                best[0] = total
                found.clear()
            if total == best[0]:
                found.append(frozenset(chosen))
            return
        if idx == len(edges):
            return
        remaining = len(nodes) - 1 - len(chosen)
        if best[0] is not None and total + remaining * weighted[edges[idx]] < best[0]:
            return
        e = edges[idx]
        a, b = tuple(e)
        ra, rb = find(parent, a), find(parent, b)
        if ra != rb:
            p2 = dict(parent)
            p2[ra] = rb
            rec(idx + 1, chosen + [e], p2, total + weighted[e])
        rec(idx + 1, chosen, parent, total)

    if len(nodes) <= 1:
        yield frozenset()
        return
    rec(0, [], {k: k for k in nodes}, 0)
    yield from set(found)
