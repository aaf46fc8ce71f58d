"""Command-line front-end.

A positive answer exits with 0 and a negative one with 1. Unusable input
exits with 2 after a message on the error stream.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .cliquegraph import CliqueGraph, build_clique_graph
from .graph import Graph, InvalidArgument, OrderCycleError, StrictPartialOrder, order_from_pairs
from .layers import LayerStructure, Unit, build_layer_structure
from .search import chordality_peo, clique_key, maximal_cliques
from .solver import PsopAnswer, end_vertex, solve, verify_solution


class FormatError(InvalidArgument):
    pass


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _is_structured(text: str) -> bool:
    return text.lstrip().startswith("{")


def parse_graph(text: str) -> Graph:
    """Parse the edge-list text format or the JSON object format."""
    if _is_structured(text):
        return _parse_graph_json(text)
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    seen: set[frozenset] = set()
    for no, line in _content_lines(text):
        parts = line.split()
        if len(parts) == 2 and parts[0] == "vertex":
            vertices.append(parts[1])
            continue
        if len(parts) != 2:
            raise FormatError(f"line {no}: expected 'u v' or 'vertex w', got {line!r}")
        u, v = parts
        if u == v:
            raise FormatError(f"line {no}: self-loop on {u!r}")
        e = frozenset((u, v))
        if e in seen:
            raise FormatError(f"line {no}: duplicate edge {u} {v}")
        seen.add(e)
        edges.append((u, v))
    return Graph(vertices, edges)


def _parse_graph_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}: {exc.msg}") from None
    vertices = [str(v) for v in data.get("vertices", [])]
    edges = []
    seen: set[frozenset] = set()
    for idx, pair in enumerate(data.get("edges", [])):
        if len(pair) != 2:
            raise FormatError(f"edge {idx}: expected a pair, got {pair!r}")
        u, v = map(str, pair)
        if u == v:
            raise FormatError(f"edge {idx}: self-loop on {u!r}")
        e = frozenset((u, v))
        if e in seen:
            raise FormatError(f"edge {idx}: duplicate edge {u} {v}")
        seen.add(e)
        edges.append((u, v))
    return Graph(vertices, edges)


_ORDER_LINE = re.compile(r"^(\S+)\s*<\s*(\S+)$")


def parse_order(text: str, g: Graph | None = None) -> StrictPartialOrder:
    """Parse ``x < y`` lines or a JSON ``{"pairs": [...]}`` object."""
    located: list[tuple[str, tuple[str, str]]] = []
    if _is_structured(text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"line {exc.lineno}: {exc.msg}") from None
        for idx, pair in enumerate(data.get("pairs", [])):
            if len(pair) != 2:
                raise FormatError(f"pair {idx}: expected a pair, got {pair!r}")
            located.append((f"pair {idx}", (str(pair[0]), str(pair[1]))))
    else:
        for no, line in _content_lines(text):
            m = _ORDER_LINE.match(line)
            if not m:
                raise FormatError(f"line {no}: expected 'x < y', got {line!r}")
            located.append((f"line {no}", (m.group(1), m.group(2))))
    if g is not None:
        for where, (x, y) in located:
            for v in (x, y):
                if v not in g:
                    raise FormatError(f"{where}: unknown vertex {v!r}")
    try:
        return order_from_pairs(p for _, p in located)
    except OrderCycleError as exc:
        raise FormatError(str(exc)) from None


def parse_ordering(text: str) -> tuple[str, ...]:
    """Whitespace-separated vertex sequence; a leading YES line is skipped."""
    tokens = [tok for _, line in _content_lines(text) for tok in line.split()]
    if tokens and tokens[0] == "YES":
        tokens = tokens[1:]
    return tuple(tokens)


def format_graph(g: Graph, structured: bool = False) -> str:
    edges = sorted(tuple(sorted(e)) for e in g.edges())
    isolated = sorted(v for v in g.vertices if not g.adj[v])
    if structured:
        return json.dumps({"vertices": sorted(g.vertices), "edges": [list(e) for e in edges]}, indent=2) + "\n"
    lines = [f"vertex {v}" for v in isolated] + [f"{u} {v}" for u, v in edges]
    return "".join(line + "\n" for line in lines)


def format_order(r: StrictPartialOrder, structured: bool = False) -> str:
    pairs = sorted(r.pairs)
    if structured:
        return json.dumps({"pairs": [list(p) for p in pairs]}, indent=2) + "\n"
    return "".join(f"{x} < {y}\n" for x, y in pairs)


def fmt_set(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def fmt_unit(u: Unit) -> str:
    return "[" + " ".join(fmt_set(k) for k in sorted(u.cliques, key=clique_key)) + "]"


def clique_graph_lines(cg: CliqueGraph) -> list[str]:
    return [f"{fmt_set(a)} -- {fmt_set(b)} label={fmt_set(lab)} weight={len(lab)}" for a, b, lab in cg.edges()]


def _dot_id(clique) -> str:
    return '"' + ",".join(sorted(clique)) + '"'


def clique_graph_dot(cg: CliqueGraph) -> str:
    lines = ["graph clique_graph {"]
    for k in sorted(cg.nodes, key=clique_key):
        lines.append(f"  {_dot_id(k)};")
    for a, b, lab in cg.edges():
        lines.append(f'  {_dot_id(a)} -- {_dot_id(b)} [label="{fmt_set(lab)}", weight={len(lab)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def layer_lines(ls: LayerStructure) -> list[str]:
    out = [f"root {fmt_unit(ls.root)}"]
    bag_index = {u: n for n, bag in enumerate(ls.bags) for u in bag}
    for depth, units in enumerate(ls.layers()):
        out.append(f"layer {depth}")
        for bag in sorted({bag_index[u] for u in units}):
            members = sorted(ls.bags[bag])
            text = f"  bag {bag}: " + " ".join(fmt_unit(u) for u in members)
            if depth:
                parent = ls.parent_of[members[0]]
                text += f" parent={fmt_unit(parent)} label={fmt_set(ls.label(members[0], parent))}"
            out.append(text)
    return out


def layers_dot(ls: LayerStructure) -> str:
    lines = ["graph layer_structure {", "  compound=true;"]
    for n, u in enumerate(ls.units):
        lines.append(f"  subgraph cluster_{n} {{")
        lines.append(f'    label="layer {ls.layer_of[u]}";')
        for k in sorted(u.cliques, key=clique_key):
            lines.append(f"    {_dot_id(k)};")
        lines.append("  }")
    h = ls.graph
    for a, b, lab in h.edges():
        crossing = ls.unit_of_clique[a] != ls.unit_of_clique[b]
        style = ", style=bold" if crossing else ""
        lines.append(f'  {_dot_id(a)} -- {_dot_id(b)} [label="{fmt_set(lab)}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None


def _pick_root(g: Graph, names: str):
    wanted = frozenset(t for t in re.split(r"[,\s]+", names.strip()) if t)
    if not wanted:
        raise FormatError("--root needs at least one vertex")
    cliques = sorted((k for k in maximal_cliques(g) if wanted <= k), key=lambda k: (k != wanted, clique_key(k)))
    if not cliques:
        raise FormatError(f"no maximal clique contains {fmt_set(wanted)}")
    return cliques[0]


def _answer(ans: PsopAnswer, out) -> int:
    if ans.decision:
        out.write("YES\n" + " ".join(ans.witness) + "\n")
        return 0
    out.write("NO\n")
    return 1


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="psop", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("recognize", help="test chordality and print a perfect elimination ordering")
    s.add_argument("graph")
    s = sub.add_parser("cliques", help="print the maximal cliques")
    s.add_argument("graph")
    s = sub.add_parser("clique-graph", help="print the clique graph")
    s.add_argument("graph")
    s.add_argument("--dot", action="store_true")
    s = sub.add_parser("layers", help="print the layer structure rooted at a clique")
    s.add_argument("graph")
    s.add_argument("--root", required=True, help="vertices naming the root clique, e.g. a,b,c")
    s.add_argument("--dot", action="store_true")
    s = sub.add_parser("solve", help="find an MCS ordering extending a partial order")
    s.add_argument("graph")
    s.add_argument("order")
    s = sub.add_parser("end-vertex", help="can the vertex be last in some MCS ordering")
    s.add_argument("graph")
    s.add_argument("vertex")
    s = sub.add_parser("verify", help="check an ordering against graph and order")
    s.add_argument("graph")
    s.add_argument("order")
    s.add_argument("ordering")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse already reported the problem; usage errors exit with 2
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _dispatch(args, out)
    except InvalidArgument as exc:
        err.write(f"psop: {exc}\n")
        return 2


def _dispatch(args, out) -> int:
    g = parse_graph(_read(args.graph))
    cmd = args.command
    if cmd == "recognize":
        peo = chordality_peo(g)
        if peo is None:
            out.write("not chordal\n")
            return 1
        out.write("chordal\n" + " ".join(peo) + "\n")
        return 0
    if cmd == "cliques":
        for k in sorted(maximal_cliques(g), key=clique_key):
            out.write(" ".join(sorted(k)) + "\n")
        return 0
    if cmd == "clique-graph":
        cg = build_clique_graph(g)
        out.write(clique_graph_dot(cg) if args.dot else "".join(line + "\n" for line in clique_graph_lines(cg)))
        return 0
    if cmd == "layers":
        root = _pick_root(g, args.root)
        ls = build_layer_structure(build_clique_graph(g), root)
        out.write(layers_dot(ls) if args.dot else "".join(line + "\n" for line in layer_lines(ls)))
        return 0
    if cmd == "solve":
        r = parse_order(_read(args.order), g)
        return _answer(solve(g, r), out)
    if cmd == "end-vertex":
        return _answer(end_vertex(g, args.vertex), out)
    if cmd == "verify":
        r = parse_order(_read(args.order), g)
        sigma = parse_ordering(_read(args.ordering))
        if sorted(sigma) != sorted(g.vertices):
            raise FormatError("ordering is not a permutation of the graph's vertices")
        ok = verify_solution(g, r, sigma)
        out.write("valid\n" if ok else "invalid\n")
        return 0 if ok else 1
    raise FormatError(f"unknown command {cmd!r}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
