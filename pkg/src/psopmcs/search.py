"""Vertex searches on graphs and Prim search on weighted clique graphs.

Every "pick any eligible node" step goes through a :class:`SearchPolicy`.
The default policy takes the smallest node under the canonical key
(vertex name, sorted vertex tuple for cliques), so results are reproducible.
"""

from __future__ import annotations

import random
from collections.abc import Mapping
from dataclasses import dataclass, field
from itertools import permutations, product

from .graph import (
    Graph,
    InvalidArgument,
    StrictPartialOrder,
    connected_components,
    is_connected,
    linear_extension,
    restrict,
)

LEXICOGRAPHIC = "deterministic-lexicographic"
SEEDED_RANDOM = "seeded-random"
EXHAUSTIVE = "exhaustive-branch"


def clique_key(clique) -> tuple[str, ...]:
    return tuple(sorted(clique))


def node_key(node):
    """Canonical sort key for vertices, cliques and units alike."""
    if isinstance(node, str):
        return (0, node)
    key = getattr(node, "key", None)
    if key is not None:
        return (2, key)
    return (1, clique_key(node))


@dataclass(frozen=True)
class SearchPolicy:
    mode: str = LEXICOGRAPHIC
    seed: int = 0
    _rng: random.Random = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.mode not in (LEXICOGRAPHIC, SEEDED_RANDOM, EXHAUSTIVE):
            raise InvalidArgument(f"unknown search policy mode {self.mode!r}")
        object.__setattr__(self, "_rng", random.Random(self.seed))

    def pick(self, candidates):
        if self.mode == EXHAUSTIVE:
            raise InvalidArgument("exhaustive-branch policy only applies to enumerate_orderings")
        ordered = sorted(candidates, key=node_key)
        if self.mode == LEXICOGRAPHIC:
            return ordered[0]
        return self._rng.choice(ordered)


DEFAULT_POLICY = SearchPolicy()


def _adjacency(subject) -> Mapping:
    if isinstance(subject, Graph):
        return subject.adj
    adj = getattr(subject, "adj", None)
    if adj is not None:
        return adj
    return subject


def _is_clique_graph(subject) -> bool:
    return hasattr(subject, "weight") and hasattr(subject, "nodes")


def mcs(g: Graph, policy: SearchPolicy = DEFAULT_POLICY, start=None) -> tuple[str, ...]:
    """Maximum cardinality search ordering of a connected graph."""
    if len(g) == 0 or not is_connected(g):
        raise InvalidArgument("mcs needs a nonempty connected graph")
    if start is not None and start not in g:
        raise InvalidArgument(f"start vertex {start!r} not in graph")
    if policy.mode == LEXICOGRAPHIC:
        return _mcs_lex(g, start)
    count = {v: 0 for v in g.vertices}
    out = []
    while count:
        if start is not None and not out:
            v = start
        else:
            best = max(count.values())
            v = policy.pick([u for u, c in count.items() if c == best])
        del count[v]
        out.append(v)
        for u in g.adj[v]:
            if u in count:
                count[u] += 1
    return tuple(out)


def _mcs_lex(g: Graph, start=None) -> tuple[str, ...]:
    """MCS with smallest-name tie-breaking; restarts across components."""
    count = dict.fromkeys(g.vertices, 0)
    # buckets[c]: unvisited vertices with c visited neighbors
    buckets = [set(g.vertices)]
    best = 0
    out = []
    while count:
        if start is not None and not out:
            v = start
        else:
            while not buckets[best]:
                best -= 1
            v = min(buckets[best])
        buckets[count.pop(v)].discard(v)
        out.append(v)
        for w in g.adj[v]:
            c = count.get(w)
            if c is None:
                continue
            buckets[c].discard(w)
            count[w] = c + 1
            if c + 1 == len(buckets):
                buckets.append(set())
            buckets[c + 1].add(w)
            best = max(best, c + 1)
    return tuple(out)


def prim_search(cg, start, policy: SearchPolicy = DEFAULT_POLICY) -> tuple:
    """Prim ordering of a connected weighted clique graph beginning at ``start``."""
    if start not in cg.adj:
        raise InvalidArgument("start is not a node of the clique graph")
    visited = {start}
    out = [start]
    # best[node] = heaviest edge weight from the visited set
    best: dict = {}
    for w in cg.adj[start]:
        best[w] = cg.weight(start, w)
    while best:
        top = max(best.values())
        v = policy.pick([u for u, wt in best.items() if wt == top])
        del best[v]
        visited.add(v)
        out.append(v)
        for w in cg.adj[v]:
            if w not in visited:
                wt = cg.weight(v, w)
                if wt > best.get(w, 0):
                    best[w] = wt
    if len(out) != len(cg.adj):
        raise InvalidArgument("clique graph is not connected")
    return tuple(out)


def generic_search(g, start, policy: SearchPolicy = DEFAULT_POLICY) -> tuple:
    adj = _adjacency(g)
    if start not in adj:
        raise InvalidArgument(f"start {start!r} not in graph")
    visited = {start}
    out = [start]
    frontier = set(adj[start])
    while frontier:
        v = policy.pick(frontier)
        frontier.discard(v)
        visited.add(v)
        out.append(v)
        frontier.update(w for w in adj[v] if w not in visited)
    if len(out) != len(adj):
        raise InvalidArgument("graph is not connected")
    return tuple(out)


def _legal_choices(adj, paradigm, visited, state, weight=None):
    """Nodes the paradigm may visit next given ``visited`` and its counters."""
    unvisited = [v for v in adj if v not in visited]
    if not visited:
        return unvisited
    if paradigm == "mcs":
        top = max(state.get(v, 0) for v in unvisited)
        return [v for v in unvisited if state.get(v, 0) == top]
    if paradigm == "generic":
        return [v for v in unvisited if state.get(v, 0) > 0]
    if paradigm == "prim":
        if not state:
            return []
        top = max(state.values())
        return [v for v, w in state.items() if w == top]
    raise InvalidArgument(f"unknown paradigm {paradigm!r}")


def _advance(adj, paradigm, visited, state, v, weight):
    new = dict(state)
    new.pop(v, None)
    for w in adj[v]:
        if w in visited:
            continue
        if paradigm == "prim":
            new[w] = max(new.get(w, 0), weight(v, w))
        else:
            new[w] = new.get(w, 0) + 1
    return new


def _weight_fn(subject, paradigm):
    if paradigm == "prim":
        if not _is_clique_graph(subject):
            raise InvalidArgument("prim paradigm needs a weighted clique graph")
        return subject.weight
    return None


def verify_ordering(subject, paradigm: str, ordering) -> bool:
    """Replay ``ordering`` against the paradigm's selection rule."""
    adj = _adjacency(subject)
    ordering = tuple(ordering)
    if len(set(ordering)) != len(ordering) or set(ordering) != set(adj):
        raise InvalidArgument("ordering is not a permutation of the node set")
    weight = _weight_fn(subject, paradigm)
    visited: set = set()
    state: dict = {}
    for v in ordering:
        if v not in _legal_choices(adj, paradigm, visited, state):
            return False
        state = _advance(adj, paradigm, visited, state, v, weight)
        visited.add(v)
    return True


def enumerate_orderings(subject, paradigm: str, cap: int = 9) -> set[tuple]:
    """Every ordering the paradigm can produce, from every start."""
    adj = _adjacency(subject)
    if len(adj) > cap:
        raise InvalidArgument(f"{len(adj)} nodes exceeds the enumeration cap of {cap}")
    weight = _weight_fn(subject, paradigm)
    out: set[tuple] = set()

    def branch(prefix, visited, state):
        if len(prefix) == len(adj):
            out.add(tuple(prefix))
            return
        for v in _legal_choices(adj, paradigm, visited, state):
            nstate = _advance(adj, paradigm, visited, state, v, weight)
            visited.add(v)
            prefix.append(v)
            branch(prefix, visited, nstate)
            prefix.pop()
            visited.discard(v)

    branch([], set(), {})
    return out


def chordality_peo(g: Graph) -> tuple[str, ...] | None:
    """A perfect elimination ordering, or None when ``g`` has a hole."""
    if len(g) == 0:
        return ()
    peo = _mcs_lex(g)[::-1]
    return peo if is_peo(g, peo) else None


def is_peo(g: Graph, peo) -> bool:
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        need = set(later)
        need.discard(parent)
        if not need <= g.adj[parent]:
            return False
    return True


class NotChordal(InvalidArgument):
    """Raised when an operation needs a chordal graph."""


def maximal_cliques(g: Graph) -> set[frozenset[str]]:
    peo = chordality_peo(g)
    if peo is None:
        raise NotChordal("graph is not chordal")
    pos = {v: i for i, v in enumerate(peo)}
    candidates = [frozenset([v, *(u for u in g.adj[v] if pos[u] > pos[v])]) for v in peo]
    candidates.sort(key=len, reverse=True)
    kept: list[frozenset[str]] = []
    for c in candidates:
        if not any(c <= k for k in kept):
            kept.append(c)
    return set(kept)


def clique_blocks(pi) -> list[frozenset[str]]:
    """K(pi, i): the vertices each clique of ``pi`` adds to the prefix."""
    seen: set[str] = set()
    blocks = []
    for k in pi:
        blocks.append(frozenset(k) - seen)
        seen |= k
    return blocks


def generations(pi) -> set[tuple[str, ...]]:
    """All vertex orderings generated by the clique ordering ``pi``."""
    blocks = [sorted(b) for b in clique_blocks(pi)]
    out = set()
    for parts in product(*(permutations(b) for b in blocks)):
        out.add(tuple(v for part in parts for v in part))
    return out


def mcs_from_prim(g: Graph, pi, r: StrictPartialOrder, cg=None) -> tuple[str, ...]:
    """Generation of ``pi`` whose blocks are linear extensions of ``r``.

    ``pi`` must be a Prim ordering of the clique graph of ``g``; pass ``cg``
    to skip rebuilding it for the defensive check.
    """
    from .cliquegraph import build_clique_graph

    cg = cg if cg is not None else build_clique_graph(g)
    if set(pi) != set(cg.nodes) or not verify_ordering(cg, "prim", pi):
        raise InvalidArgument("pi is not a Prim ordering of the clique graph")
    out: list[str] = []
    for block in clique_blocks(pi):
        out.extend(linear_extension(restrict(r, block), block))
    return tuple(out)


__all__ = [
    "SearchPolicy",
    "LEXICOGRAPHIC",
    "SEEDED_RANDOM",
    "EXHAUSTIVE",
    "NotChordal",
    "clique_key",
    "node_key",
    "mcs",
    "prim_search",
    "generic_search",
    "verify_ordering",
    "enumerate_orderings",
    "chordality_peo",
    "is_peo",
    "maximal_cliques",
    "clique_blocks",
    "generations",
    "mcs_from_prim",
    "connected_components",
]
