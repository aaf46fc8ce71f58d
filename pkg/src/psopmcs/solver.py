"""Deciding whether a chordal graph has an MCS ordering extending a partial order.

The table ``D(i, H, K)`` says whether the component ``H`` of the clique
graph, with its ``i`` lightest weight classes removed, has a Prim ordering
starting at ``K`` that respects the order restricted to ``H``'s vertices.
Levels are filled from the edgeless top level down to the full clique
graph; each entry combines a rooted generic search over the units of ``H``
with entries one level up.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field

from .cliquegraph import CliqueGraph, build_clique_graph, level_graph, weight_levels
from .graph import (
    Graph,
    InvalidArgument,
    OrderCycleError,
    StrictPartialOrder,
    connected_components,
    extends,
    linear_extension,
    order_from_pairs,
    restrict,
)
from .layers import LayerStructure, Unit, build_layer_structure, unit_partition
from .search import NotChordal, chordality_peo, clique_key, mcs_from_prim, node_key, verify_ordering

log = logging.getLogger(__name__)


class InternalError(RuntimeError):
    """A produced witness failed its own verification (a solver bug)."""


def project_order(ls: LayerStructure, r: StrictPartialOrder) -> StrictPartialOrder | None:
    """Map ``r`` onto units via each vertex's nearest unit.

    Same-unit pairs vanish. Returns None when the projected pairs contain a
    cycle, in which case no root-started unit ordering can extend them.
    """
    missing = [v for v in r.elements if v not in ls.vertex_unit]
    if missing:
        raise InvalidArgument(f"vertex {sorted(missing)[0]!r} is not spanned by the layer structure")
    nearest = ls.vertex_unit
    pairs = {(nearest[x], nearest[y]) for x, y in r.pairs if nearest[x] != nearest[y]}
    try:
        return order_from_pairs(pairs, ls.units)
    except OrderCycleError:
        return None


def rooted_generic_psop(unit_graph, root, q: StrictPartialOrder) -> tuple | None:
    """Generic search ordering starting at ``root`` that extends ``q``, or None.

    Greedy: repeatedly visit the smallest unvisited node that touches the
    visited set and has no unvisited ``q``-predecessor. A node eligible now
    can be moved to the front of any valid completion, so getting stuck
    means no ordering exists.
    """
    adj = getattr(unit_graph, "adj", unit_graph)
    if root not in adj:
        raise InvalidArgument("root is not a node of the graph")
    waiting = {u: len(q.predecessors(u) & adj.keys()) for u in adj}
    if waiting[root]:
        return None
    visited = {root}
    out = [root]
    touching = set(adj[root])
    heap = []

    def offer(u):
        heapq.heappush(heap, (node_key(u), len(out), u))

    for u in touching:
        if waiting[u] == 0:
            offer(u)

    def visit(v):
        visited.add(v)
        out.append(v)
        for s in q.successors(v):
            if s in waiting:
                waiting[s] -= 1
                if waiting[s] == 0 and s in touching and s not in visited:
                    offer(s)
        for w in adj[v]:
            if w not in visited and w not in touching:
                touching.add(w)
                if waiting[w] == 0:
                    offer(w)

    for s in q.successors(root):
        if s in waiting:
            waiting[s] -= 1
            if waiting[s] == 0 and s in touching:
                offer(s)
    while heap:
        _, _, v = heapq.heappop(heap)
        if v in visited:
            continue
        visit(v)
    return tuple(out) if len(out) == len(adj) else None


BASE = "base"
COPY = "copy"


@dataclass(frozen=True)
class Choice:
    """Backtracking record: the unit ordering and each unit's entry clique."""

    unit_order: tuple[Unit, ...]
    entry: dict[Unit, frozenset]


@dataclass
class DPTable:
    clique_graph: CliqueGraph
    levels: tuple[int, ...]
    entries: dict[tuple[int, frozenset], bool] = field(default_factory=dict)
    component: dict[tuple[int, frozenset], frozenset] = field(default_factory=dict)
    choices: dict[tuple[int, frozenset], object] = field(default_factory=dict)

    @property
    def t(self) -> int:
        return len(self.levels)

    def component_id(self, i: int, k) -> tuple:
        """Components are named by their canonically least clique."""
        return clique_key(min(self.component[(i, k)], key=clique_key))

    def __getitem__(self, key) -> bool:
        if len(key) == 2:
            return self.entries[key]
        i, h, k = key
        if isinstance(h, CliqueGraph):
            h = h.nodes
        if self.component[(i, k)] != frozenset(h):
            raise KeyError(f"clique is not in that component at level {i}")
        return self.entries[(i, k)]

    def roots(self) -> list[frozenset]:
        """Cliques K with D(0, C(G), K) = 1, canonically sorted."""
        return sorted((k for (i, k), ok in self.entries.items() if i == 0 and ok), key=clique_key)


def _require_chordal_connected(g: Graph) -> None:
    if len(g) == 0:
        raise InvalidArgument("graph is empty")
    if chordality_peo(g) is None:
        raise NotChordal("graph is not chordal")
    if len(connected_components(g)) != 1:
        raise InvalidArgument("graph is not connected")


def _check_order_vertices(g: Graph, r: StrictPartialOrder) -> None:
    unknown = sorted(v for v in r.elements if v not in g)
    if unknown:
        raise InvalidArgument(f"order mentions unknown vertex {unknown[0]!r}")


def dp_solve(g: Graph, r: StrictPartialOrder, debug: bool = False) -> DPTable:
    _require_chordal_connected(g)
    _check_order_vertices(g, r)
    cg = build_clique_graph(g)
    levels = weight_levels(cg)
    t = len(levels)
    table = DPTable(cg, levels)
    for i in range(t, -1, -1):
        gi = level_graph(cg, i)
        for comp in gi.components():
            for k in comp:
                table.component[(i, k)] = comp
            if i == t or len(comp) == 1:
                for k in comp:
                    table.entries[(i, k)] = True
                    table.choices[(i, k)] = BASE
                continue
            h = gi.subgraph(comp)
            if debug:
                span = h.vertex_span()
                if build_clique_graph(g.induced(span)) != h:
                    raise InternalError(f"level {i} component is not the clique graph of its vertices")
            if h.min_weight() != levels[i]:
                # no edge of weight w(i+1): the component survives to level i+1 intact
                for k in comp:
                    table.entries[(i, k)] = table.entries[(i + 1, k)]
                    table.choices[(i, k)] = COPY
                continue
            _fill_component(table, i, h, restrict(r, h.vertex_span()))
    return table


def _fill_component(table: DPTable, i: int, h: CliqueGraph, r: StrictPartialOrder) -> None:
    units = unit_partition(h)
    up = table.entries
    for k in sorted(h.nodes, key=clique_key):
        table.entries[(i, k)] = False
        table.choices[(i, k)] = None
        if not up[(i + 1, k)]:
            continue
        ls = build_layer_structure(h, k, _units=units)
        q = project_order(ls, r)
        if q is None:
            continue
        order = rooted_generic_psop(ls.adj, ls.root, q)
        if order is None:
            continue
        entry = {ls.root: k}
        for u in order[1:]:
            parent = ls.parent_of[u].cliques
            found = None
            for kj in sorted(u.cliques, key=clique_key):
                if up[(i + 1, kj)] and not parent.isdisjoint(h.adj[kj]):
                    found = kj
                    break
            if found is None:
                break
            entry[u] = found
        else:
            table.entries[(i, k)] = True
            table.choices[(i, k)] = Choice(order, entry)


def realize(table: DPTable, i: int, k) -> list:
    """Prim ordering of the level-``i`` component of ``k`` recorded by the table."""
    choice = table.choices[(i, k)]
    if not table.entries[(i, k)]:
        raise InvalidArgument(f"D({i}, ., {sorted(k)}) is 0")
    if choice == BASE:
        return [k]
    if choice == COPY:
        return realize(table, i + 1, k)
    out = realize(table, i + 1, k)
    for u in choice.unit_order[1:]:
        out.extend(realize(table, i + 1, choice.entry[u]))
    return out


def respects(pi, r: StrictPartialOrder) -> bool:
    """True iff the first clique holding x never comes after the first holding y."""
    first: dict[str, int] = {}
    for idx, k in enumerate(pi):
        for v in k:
            first.setdefault(v, idx)
    return all(first[x] <= first[y] for x, y in r.pairs)


@dataclass(frozen=True)
class PsopAnswer:
    decision: bool
    witness: tuple[str, ...] | None = None
    certificate: tuple[frozenset, ...] | None = None

    def __bool__(self) -> bool:
        return self.decision


NO = PsopAnswer(False)


def extract_witness(g: Graph, r: StrictPartialOrder, table: DPTable, k) -> PsopAnswer:
    pi = tuple(realize(table, 0, k))
    if pi[0] != k or not respects(pi, r) or not verify_ordering(table.clique_graph, "prim", pi):
        raise InternalError("backtracked clique ordering is not a Prim ordering respecting the order")
    sigma = mcs_from_prim(g, pi, r, cg=table.clique_graph)
    if not verify_solution(g, r, sigma):
        raise InternalError("witness is not an MCS ordering extending the order")
    if set(sigma[: len(k)]) != k:
        raise InternalError("witness does not start with the root clique")
    return PsopAnswer(True, sigma, pi)


def _solve_connected(g: Graph, r: StrictPartialOrder) -> PsopAnswer:
    table = dp_solve(g, r)
    roots = table.roots()
    if not roots:
        return NO
    return extract_witness(g, r, table, roots[0])


def cross_component_pattern(g: Graph, r: StrictPartialOrder):
    """Distinct x, y, z with x, y in one component, z in another and x < z < y."""
    comp_of = {v: idx for idx, c in enumerate(connected_components(g)) for v in c}
    for x, z in sorted(r.pairs):
        if comp_of[x] == comp_of[z]:
            continue
        for y in sorted(r.successors(z)):
            if y != x and comp_of[y] == comp_of[x]:
                return (x, y, z)
    return None


def solve(g: Graph, r: StrictPartialOrder) -> PsopAnswer:
    """Decide the instance and, on YES, return a verified witness."""
    _check_order_vertices(g, r)
    if len(g) == 0:
        return PsopAnswer(True, (), ())
    if chordality_peo(g) is None:
        raise NotChordal("graph is not chordal")
    comps = connected_components(g)
    if len(comps) == 1:
        return _solve_connected(g, r)

    parts = []
    for comp in comps:
        ans = _solve_connected(g.induced(comp), restrict(r, comp))
        if not ans:
            return NO
        parts.append(ans)
    comp_of = {v: idx for idx, c in enumerate(comps) for v in c}
    # components are searched one after another, so cross pairs order whole components
    cross = {(comp_of[x], comp_of[y]) for x, y in r.pairs if comp_of[x] != comp_of[y]}
    try:
        comp_order = order_from_pairs(cross, range(len(comps)))
    except OrderCycleError:
        log.debug("cross-component constraints are cyclic")
        return NO
    sequence = linear_extension(comp_order, range(len(comps)))
    witness = tuple(v for idx in sequence for v in parts[idx].witness)
    certificate = tuple(k for idx in sequence for k in parts[idx].certificate)
    if not verify_solution(g, r, witness):
        raise InternalError("combined witness failed verification")
    return PsopAnswer(True, witness, certificate)


def end_vertex(g: Graph, v: str) -> PsopAnswer:
    """Whether some MCS ordering of ``g`` ends at ``v``."""
    if v not in g:
        raise InvalidArgument(f"vertex {v!r} not in graph")
    _require_chordal_connected(g)
    r = order_from_pairs(((u, v) for u in g.vertices if u != v), g.vertices)
    return solve(g, r)


def verify_solution(g: Graph, r: StrictPartialOrder, sigma) -> bool:
    return verify_ordering(g, "mcs", sigma) and extends(sigma, r)
