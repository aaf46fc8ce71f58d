"""Undirected graphs over string vertices and strict partial orders.

Everything here is an immutable value. Orders are stored strictly
(irreflexive) and transitively closed at construction.
"""

from __future__ import annotations

import heapq
from collections import deque
from collections.abc import Hashable, Iterable
from typing import Any


class InvalidArgument(ValueError):
    """Raised when an operation receives arguments outside its domain."""


class OrderCycleError(ValueError):
    """Raised when a set of precedence pairs cannot be a partial order."""

    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"precedence pairs form a cycle through {pair[0]!r} < {pair[1]!r}")


class Graph:
    """Finite simple undirected graph.

    >>> g = Graph("abc", [("a", "b"), ("b", "c")])
    >>> sorted(g.neighbors("b"))
    ['a', 'c']
    """

    __slots__ = ("vertices", "adj")

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[tuple[str, str]] = ()):
        adj: dict[str, set[str]] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise InvalidArgument(f"self-loop on {u!r}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self.vertices = frozenset(adj)
        self.adj = {v: frozenset(nb) for v, nb in adj.items()}

    @classmethod
    def _from_adj(cls, adj: dict[str, frozenset[str]]) -> Graph:
        g = cls.__new__(cls)
        g.vertices = frozenset(adj)
        g.adj = adj
        return g

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.adj

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.vertices, frozenset(self.edges())))

    def __repr__(self) -> str:
        return f"Graph({sorted(self.vertices)!r}, {sorted(tuple(sorted(e)) for e in self.edges())!r})"

    def neighbors(self, v: str) -> frozenset[str]:
        return self.adj[v]

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adj.get(u, ())

    def edges(self) -> set[frozenset[str]]:
        return {frozenset((u, v)) for u, nb in self.adj.items() for v in nb}

    def number_of_edges(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def induced(self, keep: Iterable[str]) -> Graph:
        """The subgraph induced by ``keep``."""
        keep = frozenset(keep) & self.vertices
        return Graph._from_adj({v: self.adj[v] & keep for v in keep})

    def without(self, drop: Iterable[str]) -> Graph:
        return self.induced(self.vertices - frozenset(drop))


def connected_components(g: Graph) -> list[frozenset[str]]:
    """Maximal connected vertex sets, ordered by their least vertex."""
    return bfs_components(g.adj, sorted(g.vertices))


def is_connected(g: Graph) -> bool:
    return len(g) > 0 and len(connected_components(g)) == 1


def separator_labels(g: Graph, s: Iterable[str]) -> dict[str, int]:
    """Component number of every vertex of ``g - s``."""
    s = frozenset(s)
    labels: dict[str, int] = {}
    for n, comp in enumerate(bfs_components(g.adj, sorted(g.vertices - s), blocked=s)):
        for v in comp:
            labels[v] = n
    return labels


def separates(g: Graph, s: Iterable[str], u: str, v: str) -> bool:
    """True iff ``u`` and ``v`` lie in different components of ``g - s``."""
    s = frozenset(s)
    if u in s or v in s:
        raise InvalidArgument("u and v must lie outside the separator")
    if u == v:
        raise InvalidArgument("u and v must be distinct")
    if u not in g or v not in g:
        raise InvalidArgument("u and v must be vertices of the graph")
    labels = separator_labels(g, s)
    return labels[u] != labels[v]


class StrictPartialOrder:
    """Strict precedence relation, kept transitively closed.

    Build instances with :func:`order_from_pairs`; the constructor only
    checks invariants.
    """

    __slots__ = ("elements", "pairs", "_succ", "_pred")

    def __init__(self, pairs: Iterable[tuple[Any, Any]] = (), elements: Iterable[Hashable] = ()):
        self.pairs = frozenset(pairs)
        elems = set(elements)
        succ: dict[Any, set] = {}
        pred: dict[Any, set] = {}
        for x, y in self.pairs:
            elems.add(x)
            elems.add(y)
            succ.setdefault(x, set()).add(y)
            pred.setdefault(y, set()).add(x)
        self.elements = frozenset(elems)
        self._succ = succ
        self._pred = pred
        self._check()

    def _check(self) -> None:
        for x, y in self.pairs:
            if x == y:
                raise AssertionError(f"reflexive pair {x!r}")
            if (y, x) in self.pairs:
                raise AssertionError(f"antisymmetry violated by {x!r}, {y!r}")
            for z in self._succ.get(y, ()):
                if (x, z) not in self.pairs:
                    raise AssertionError(f"not transitively closed at {x!r} < {y!r} < {z!r}")

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __eq__(self, other) -> bool:
        return isinstance(other, StrictPartialOrder) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        return f"StrictPartialOrder({sorted(self.pairs, key=repr)!r})"

    def successors(self, x) -> frozenset:
        return frozenset(self._succ.get(x, ()))

    def predecessors(self, x) -> frozenset:
        return frozenset(self._pred.get(x, ()))

    def less(self, x, y) -> bool:
        return (x, y) in self.pairs


def order_from_pairs(pairs: Iterable[tuple[Any, Any]], elements: Iterable[Hashable] = ()) -> StrictPartialOrder:
    """Transitive closure of ``pairs`` with reflexive pairs dropped.

    Raises :class:`OrderCycleError` naming one pair whose reverse is also
    implied.
    """
    succ: dict[Any, set] = {}
    for x, y in pairs:
        if x != y:
            succ.setdefault(x, set()).add(y)
    closed: set[tuple] = set()
    for x in list(succ):
        seen: set = set()
        stack = list(succ[x])
        while stack:
            y = stack.pop()
            if y in seen:
                continue
            seen.add(y)
            stack.extend(succ.get(y, ()))
        if x in seen:
            y = min((y for y in succ[x] if y == x or _reaches(succ, y, x)), key=repr)
            raise OrderCycleError((x, y))
        closed.update((x, y) for y in seen)
    return StrictPartialOrder(closed, elements)


def _reaches(succ, src, dst) -> bool:
    seen = {src}
    stack = [src]
    while stack:
        y = stack.pop()
        if y == dst:
            return True
        for z in succ.get(y, ()):
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return False


def restrict(r: StrictPartialOrder, x: Iterable[Hashable]) -> StrictPartialOrder:
    x = frozenset(x)
    return StrictPartialOrder(((a, b) for a, b in r.pairs if a in x and b in x), r.elements & x)


def extends(lin, r: StrictPartialOrder) -> bool:
    """True iff every pair of ``r`` appears in the same order in ``lin``."""
    pos = {v: i for i, v in enumerate(lin)}
    missing = [v for v in r.elements if v not in pos]
    if missing:
        raise InvalidArgument(f"order element {sorted(missing, key=repr)[0]!r} missing from the linear order")
    return all(pos[x] < pos[y] for x, y in r.pairs)


def minimal_elements(r: StrictPartialOrder, x: Iterable[Hashable]) -> frozenset:
    x = frozenset(x)
    return frozenset(v for v in x if not (r.predecessors(v) & x))


def linear_extension(r: StrictPartialOrder, x: Iterable[Hashable], key=None) -> list:
    """Smallest linear extension of ``r`` restricted to ``x`` under ``key``."""
    x = set(x)
    key = key or (lambda v: v)
    indeg = {v: len(r.predecessors(v) & x) for v in x}
    heap = [(key(v), i, v) for i, v in enumerate(x) if indeg[v] == 0]
    heapq.heapify(heap)
    out = []
    tick = len(heap)
    while heap:
        _, _, v = heapq.heappop(heap)
        out.append(v)
        for w in r.successors(v):
            if w in x:
                indeg[w] -= 1
                if indeg[w] == 0:
                    tick += 1
                    heapq.heappush(heap, (key(w), tick, w))
    if len(out) != len(x):
        raise AssertionError("partial order restricted to a set has no linear extension")
    return out


def bfs_components(adj, nodes=None, blocked=frozenset()) -> list[frozenset]:
    """Components of an adjacency mapping, skipping ``blocked`` nodes.

    Components come out in the order their first member appears in ``nodes``.
    """
    nodes = adj.keys() if nodes is None else nodes
    seen: set = set(blocked)
    comps = []
    for s in nodes:
        if s in seen:
            continue
        seen.add(s)
        comp = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps
