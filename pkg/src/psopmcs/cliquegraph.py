"""Clique graphs of connected chordal graphs.

Nodes are maximal cliques (frozensets of vertex names). An edge joins two
cliques whose intersection is a minimal separator of the vertices private
to each; it carries that intersection as its label and its size as weight.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable

from .graph import Graph, InvalidArgument, bfs_components, is_connected, separator_labels
from .search import clique_key, maximal_cliques

Clique = frozenset


class CliqueGraph:
    __slots__ = ("nodes", "adj", "labels")

    def __init__(self, nodes: Iterable[Clique], labeled_edges: Iterable[tuple[Clique, Clique, frozenset]] = ()):
        self.nodes = frozenset(nodes)
        adj: dict[Clique, set[Clique]] = {k: set() for k in self.nodes}
        labels: dict[frozenset, frozenset] = {}
        for a, b, label in labeled_edges:
            if a not in adj or b not in adj:
                raise InvalidArgument("edge endpoint is not a node")
            if a == b:
                raise InvalidArgument("self-loop in clique graph")
            adj[a].add(b)
            adj[b].add(a)
            labels[frozenset((a, b))] = frozenset(label)
        self.adj = {k: frozenset(v) for k, v in adj.items()}
        self.labels = labels

    def __eq__(self, other) -> bool:
        return isinstance(other, CliqueGraph) and self.nodes == other.nodes and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.nodes, frozenset(self.labels.items())))

    def __len__(self) -> int:
        return len(self.nodes)

    def __repr__(self) -> str:
        return f"CliqueGraph({len(self.nodes)} nodes, {len(self.labels)} edges)"

    def label(self, a: Clique, b: Clique) -> frozenset:
        return self.labels[frozenset((a, b))]

    def weight(self, a: Clique, b: Clique) -> int:
        return len(self.labels[frozenset((a, b))])

    def edges(self) -> list[tuple[Clique, Clique, frozenset]]:
        """Edges as (K, K', label) with K before K' canonically, sorted."""
        out = []
        for pair, label in self.labels.items():
            a, b = sorted(pair, key=clique_key)
            out.append((a, b, label))
        out.sort(key=lambda e: (clique_key(e[0]), clique_key(e[1])))
        return out

    def vertex_span(self) -> frozenset[str]:
        return frozenset().union(*self.nodes)

    def min_weight(self) -> int | None:
        return min((len(lab) for lab in self.labels.values()), default=None)

    def keep_edges(self, keep: Callable[[frozenset], bool]) -> CliqueGraph:
        """Same nodes; only edges whose label satisfies ``keep``."""
        return self._make(self.nodes, {p: lab for p, lab in self.labels.items() if keep(lab)})

    def subgraph(self, nodes: Iterable[Clique]) -> CliqueGraph:
        nodes = frozenset(nodes)
        return self._make(nodes, {p: lab for p, lab in self.labels.items() if p <= nodes})

    def components(self) -> list[frozenset[Clique]]:
        comps = bfs_components(self.adj)
        comps.sort(key=lambda c: clique_key(min(c, key=clique_key)))
        return comps

    @classmethod
    def _make(cls, nodes, labels) -> CliqueGraph:
        cg = cls.__new__(cls)
        cg.nodes = nodes
        adj: dict[Clique, set[Clique]] = {k: set() for k in nodes}
        for pair in labels:
            a, b = pair
            adj[a].add(b)
            adj[b].add(a)
        cg.adj = {k: frozenset(v) for k, v in adj.items()}
        cg.labels = labels
        return cg


def build_clique_graph(g: Graph) -> CliqueGraph:
    """Clique graph of a connected chordal graph via direct separator tests.

    One representative pair per clique pair suffices: both private parts are
    cliques, so each sits inside a single component of ``g - S``.
    """
    if not is_connected(g):
        raise InvalidArgument("clique graph needs a nonempty connected graph")
    cliques = sorted(maximal_cliques(g), key=clique_key)
    by_vertex: dict[str, list[int]] = {}
    for i, k in enumerate(cliques):
        for v in k:
            by_vertex.setdefault(v, []).append(i)
    pairs_by_sep: dict[frozenset, list[tuple[int, int]]] = {}
    seen: set[tuple[int, int]] = set()
    for members in by_vertex.values():
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                p = (members[x], members[y])
                if p in seen:
                    continue
                seen.add(p)
                sep = cliques[p[0]] & cliques[p[1]]
                pairs_by_sep.setdefault(sep, []).append(p)
    edges = []
    for sep, pairs in pairs_by_sep.items():
        comp = separator_labels(g, sep)
        for i, j in pairs:
            u = min(cliques[i] - sep)
            v = min(cliques[j] - sep)
            if comp[u] != comp[v]:
                edges.append((cliques[i], cliques[j], sep))
    return CliqueGraph(cliques, edges)


def ominus(cg: CliqueGraph, s: Iterable[str]) -> CliqueGraph:
    """Delete every edge labeled exactly ``s``."""
    s = frozenset(s)
    return cg.keep_edges(lambda lab: lab != s)


def weight_levels(cg: CliqueGraph) -> tuple[int, ...]:
    return tuple(sorted({len(lab) for lab in cg.labels.values()}))


def level_graph(cg: CliqueGraph, i: int) -> CliqueGraph:
    """Drop all edges whose weight is among the ``i`` smallest distinct weights."""
    levels = weight_levels(cg)
    if not 0 <= i <= len(levels):
        raise InvalidArgument(f"level {i} outside 0..{len(levels)}")
    if i == 0:
        return cg
    cut = levels[i - 1]
    return cg.keep_edges(lambda lab: len(lab) > cut)


def min_weight_components(cg: CliqueGraph) -> list[frozenset[Clique]]:
    """Components left after deleting every minimum-weight edge."""
    low = cg.min_weight()
    if low is None:
        return cg.components()
    return cg.keep_edges(lambda lab: len(lab) > low).components()
