"""Layer structures of clique graphs.

Units are the components of a clique graph once its minimum-weight edges
are gone. Rooting the unit graph at the unit of a chosen clique and
layering by distance gives each unit a parent. Every vertex also gets
the unit closest to the root that holds one of its cliques.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .cliquegraph import CliqueGraph, min_weight_components
from .graph import InvalidArgument, bfs_components
from .search import clique_key, enumerate_orderings


@dataclass(frozen=True)
class Unit:
    cliques: frozenset

    @cached_property
    def vertex_span(self) -> frozenset[str]:
        return frozenset().union(*self.cliques)

    @cached_property
    def key(self) -> tuple:
        return tuple(sorted(clique_key(k) for k in self.cliques))

    def __lt__(self, other: Unit) -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return "Unit(" + ", ".join("{" + ",".join(k) + "}" for k in self.key) + ")"


@dataclass(frozen=True, eq=False)
class LayerStructure:
    graph: CliqueGraph
    units: tuple[Unit, ...]
    root: Unit
    unit_edges: dict[frozenset, frozenset]
    layer_of: dict[Unit, int]
    parent_of: dict[Unit, Unit]
    bags: tuple[frozenset, ...]
    unit_of_clique: dict = field(repr=False)
    adj: dict[Unit, frozenset] = field(repr=False)
    vertex_unit: dict[str, Unit] = field(repr=False)

    def label(self, u: Unit, w: Unit) -> frozenset:
        return self.unit_edges[frozenset((u, w))]

    def layers(self) -> list[list[Unit]]:
        depth = max(self.layer_of.values())
        out: list[list[Unit]] = [[] for _ in range(depth + 1)]
        for u in self.units:
            out[self.layer_of[u]].append(u)
        return out

    @cached_property
    def children(self) -> dict[Unit, tuple[Unit, ...]]:
        kids: dict[Unit, list[Unit]] = {u: [] for u in self.units}
        for u, p in self.parent_of.items():
            kids[p].append(u)
        return {u: tuple(sorted(v)) for u, v in kids.items()}


def unit_partition(h: CliqueGraph) -> tuple[list[Unit], dict[frozenset, frozenset]]:
    """Units of ``h`` and the labeled edges between them.

    Crossing edges between two units all share one label; the first one
    seen is kept and the rest are checked against it.
    """
    units = [Unit(c) for c in min_weight_components(h)]
    owner = {k: u for u in units for k in u.cliques}
    unit_edges: dict[frozenset, frozenset] = {}
    for pair, label in h.labels.items():
        a, b = pair
        ua, ub = owner[a], owner[b]
        if ua == ub:
            continue
        key = frozenset((ua, ub))
        prev = unit_edges.setdefault(key, label)
        if prev != label:
            raise AssertionError(f"crossing edges between {ua!r} and {ub!r} carry different labels")
    return units, unit_edges


def build_layer_structure(h: CliqueGraph, k, *, _units=None) -> LayerStructure:
    """Layer structure of ``h`` rooted at the unit containing clique ``k``."""
    if k not in h.adj:
        raise InvalidArgument("root clique is not a node of the clique graph")
    units, unit_edges = _units if _units is not None else unit_partition(h)
    owner = {c: u for u in units for c in u.cliques}
    adj: dict[Unit, set[Unit]] = {u: set() for u in units}
    for pair in unit_edges:
        a, b = pair
        adj[a].add(b)
        adj[b].add(a)
    root = owner[k]
    layer_of = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in layer_of:
                layer_of[w] = layer_of[u] + 1
                queue.append(w)
    if len(layer_of) != len(units):
        raise InvalidArgument("clique graph is not connected")
    parent_of = {}
    for u in units:
        if u == root:
            continue
        ups = [w for w in adj[u] if layer_of[w] == layer_of[u] - 1]
        if len(ups) != 1:
            raise AssertionError(f"{u!r} has {len(ups)} neighbors in the layer above")
        parent_of[u] = ups[0]
    same_layer = {u: [w for w in adj[u] if layer_of[w] == layer_of[u]] for u in units}
    bags = tuple(sorted(bfs_components(same_layer, sorted(units)), key=lambda b: min(b).key))
    vertex_unit: dict[str, Unit] = {}
    for v in h.vertex_span():
        holders = [u for u in units if v in u.vertex_span]
        top = min(layer_of[u] for u in holders)
        nearest = [u for u in holders if layer_of[u] == top]
        if len(nearest) != 1:
            raise AssertionError(f"vertex {v!r} has {len(nearest)} nearest units")
        vertex_unit[v] = nearest[0]
    return LayerStructure(
        graph=h,
        units=tuple(sorted(units)),
        root=root,
        unit_edges=unit_edges,
        layer_of=layer_of,
        parent_of=parent_of,
        bags=bags,
        unit_of_clique=owner,
        adj={u: frozenset(v) for u, v in adj.items()},
        vertex_unit=vertex_unit,
    )


def unit_of_vertex(ls: LayerStructure, v: str) -> Unit:
    try:
        return ls.vertex_unit[v]
    except KeyError:
        raise InvalidArgument(f"vertex {v!r} is not covered by the layer structure") from None


def descendants(ls: LayerStructure, u: Unit) -> frozenset[Unit]:
    """Units below ``u`` in the tree left after ignoring edges inside bags."""
    if u not in ls.layer_of:
        raise InvalidArgument("unit not in layer structure")
    out: set[Unit] = set()
    stack = list(ls.children[u])
    while stack:
        w = stack.pop()
        out.add(w)
        stack.extend(ls.children[w])
    return frozenset(out)


# Property names quote the statements they check so that renumbering
# elsewhere does not matter.
INTERNAL_WEIGHT = "greater than the minimum weight"
CROSSING_LABEL = "have the same label"
LAYER_GAP = "adjacent units differ in layer by at most one"
SEPARATOR_LABEL = "contains an edge with the same label"
SHARED_LABEL = "pairwise adjacent in the layer structure"
UNIQUE_PARENT = "adjacent to exactly one unit"
BAG_ADJACENCY = "the label of the edge between"
SPAN_LABEL = "label of every edge between two units"
NEAREST_UNIT = "are within one unit"
ANCESTOR = "every unit containing a maximal v-clique"
ENTRANCE = "adjacent to both K and K'"
PARENT_FIRST = "visits every nonroot unit after its parent"


@dataclass
class PropertyCheck:
    name: str
    ok: bool
    counterexample: object = None


@dataclass
class ValidationReport:
    checks: list[PropertyCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[PropertyCheck]:
        return [c for c in self.checks if not c.ok]

    def __getitem__(self, name: str) -> PropertyCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _first(iterable):
    return next(iter(iterable), None)


def validate_properties(ls: LayerStructure, generic_cap: int = 0) -> ValidationReport:
    """Check the structural properties of ``ls`` exhaustively.

    With ``generic_cap`` > 0, unit graphs up to that many units also get
    every root-started generic search ordering checked for parent-first.
    """
    h = ls.graph
    adj = ls.adj
    layer = ls.layer_of
    low = h.min_weight()
    checks = []

    bad = None
    for pair, label in h.labels.items():
        a, b = pair
        if ls.unit_of_clique[a] == ls.unit_of_clique[b] and len(label) <= low:
            bad = (a, b)
            break
    checks.append(PropertyCheck(INTERNAL_WEIGHT, bad is None, bad))

    bad = None
    for pair, label in h.labels.items():
        a, b = pair
        ua, ub = ls.unit_of_clique[a], ls.unit_of_clique[b]
        if ua != ub and ls.unit_edges.get(frozenset((ua, ub))) != label:
            bad = (a, b)
            break
    checks.append(PropertyCheck(CROSSING_LABEL, bad is None, bad))

    bad = _first((u, w) for u in adj for w in adj[u] if abs(layer[u] - layer[w]) > 1)
    checks.append(PropertyCheck(LAYER_GAP, bad is None and layer[ls.root] == 0, bad))

    bad = None
    for pair, label in ls.unit_edges.items():
        u, w = pair
        pruned = {x: [y for y in adj[x] if ls.unit_edges[frozenset((x, y))] != label] for x in adj}
        reach = _reachable(pruned, u)
        if w in reach:
            bad = (u, w)
            break
    checks.append(PropertyCheck(SEPARATOR_LABEL, bad is None, bad))

    bad = None
    by_label: dict[frozenset, set] = {}
    for pair, label in ls.unit_edges.items():
        by_label.setdefault(label, set()).update(pair)
    for label, ends in by_label.items():
        ends = sorted(ends)
        for i, u in enumerate(ends):
            for w in ends[i + 1:]:
                if ls.unit_edges.get(frozenset((u, w))) != label:
                    bad = (label, u, w)
                    break
            if bad:
                break
        if bad:
            break
    checks.append(PropertyCheck(SHARED_LABEL, bad is None, bad))

    bad = _first(
        u for u in ls.units if layer[u] >= 1
        and sum(1 for w in adj[u] if layer[w] == layer[u] - 1) != 1
    )
    if bad is None:
        bad = _first(u for u, p in ls.parent_of.items() if p not in adj[u] or layer[p] != layer[u] - 1)
    checks.append(PropertyCheck(UNIQUE_PARENT, bad is None, bad))

    bad = None
    nonroot = [u for u in ls.units if u != ls.root]
    for i, u in enumerate(nonroot):
        for w in nonroot[i + 1:]:
            if layer[u] != layer[w]:
                continue
            pu, pw = ls.parent_of.get(u), ls.parent_of.get(w)
            same = pu == pw and pu is not None and ls.unit_edges.get(frozenset((u, pu))) == ls.unit_edges.get(
                frozenset((w, pw))
            )
            if (w in adj[u]) != same:
                bad = (u, w)
                break
        if bad:
            break
    if bad is None:
        bad = _first(
            b for b in ls.bags
            if len({ls.parent_of.get(u) for u in b}) != 1
            or any(w not in adj[u] for u in b for w in b if u != w)
        )
    checks.append(PropertyCheck(BAG_ADJACENCY, bad is None, bad))

    bad = _first(tuple(p) for p, lab in ls.unit_edges.items() if lab != _span_meet(p))
    checks.append(PropertyCheck(SPAN_LABEL, bad is None, bad))

    spans = {u: u.vertex_span for u in ls.units}
    bad = None
    for v in h.vertex_span():
        holders = [u for u in ls.units if v in spans[u]]
        top = min(layer[u] for u in holders)
        if sum(1 for u in holders if layer[u] == top) != 1 or ls.vertex_unit.get(v) not in holders or layer[ls.vertex_unit[v]] != top:
            bad = v
            break
    checks.append(PropertyCheck(NEAREST_UNIT, bad is None, bad))

    bad = None
    for v, uv in ls.vertex_unit.items():
        below = descendants(ls, uv) | {uv}
        stray = _first(u for u in ls.units if v in spans[u] and u not in below)
        if stray is not None:
            bad = (v, stray)
            break
    checks.append(PropertyCheck(ANCESTOR, bad is None, bad))

    bad = None
    for pair in h.labels:
        a, b = pair
        ua, ub = ls.unit_of_clique[a], ls.unit_of_clique[b]
        if ua == ub or layer[ua] != layer[ub] or ua == ls.root:
            continue
        parent = ls.parent_of[ua]
        if ls.parent_of[ub] != parent:
            bad = (a, b)
            break
        if not any(x in h.adj[a] and x in h.adj[b] for x in parent.cliques):
            bad = (a, b)
            break
    checks.append(PropertyCheck(ENTRANCE, bad is None, bad))

    if generic_cap and len(ls.units) <= generic_cap:
        bad = None
        for order in enumerate_orderings(ls.adj, "generic", cap=generic_cap):
            if order[0] != ls.root:
                continue
            pos = {u: i for i, u in enumerate(order)}
            stray = _first(u for u, p in ls.parent_of.items() if pos[p] > pos[u])
            if stray is not None:
                bad = (order, stray)
                break
        checks.append(PropertyCheck(PARENT_FIRST, bad is None, bad))

    return ValidationReport(checks)


def _span_meet(pair) -> frozenset:
    a, b = tuple(pair)
    return a.vertex_span & b.vertex_span


def _reachable(adj, s) -> set:
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen
