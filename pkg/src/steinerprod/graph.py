"""Simple undirected graphs, Cartesian products, and vertex connectivity.

Graphs are immutable values.  Vertices and neighbourhoods are kept in sorted
label order so that every traversal, flow decomposition and construction built
on top of them is reproducible.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    ArgumentError,
    InfeasibleError,
    LabelError,
    LookupFailure,
    LoopError,
    ParseError,
)

SEP = "|"


def edge_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u < v else (v, u)


def check_label(label: str, allow_sep: bool = False, lineno=None) -> None:
    if not label or any(ch.isspace() for ch in label) or not label.isprintable():
        raise LabelError(f"invalid vertex label {label!r}", lineno)
    if not allow_sep and SEP in label:
        raise LabelError(f"label {label!r} contains reserved {SEP!r}", lineno)


class Graph:
    """Immutable simple undirected graph on string labels."""

    __slots__ = ("name", "vertices", "_adj", "_edges", "pairs")

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[tuple[str, str]] = (),
                 name: str = "", pairs: Mapping[str, tuple[str, str]] | None = None):
        adj: dict[str, set[str]] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise LoopError(f"loop at {u!r}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        for v in adj:
            check_label(v, allow_sep=True)
        order = sorted(adj)
        self.vertices: tuple[str, ...] = tuple(order)
        self._adj = {v: tuple(sorted(adj[v])) for v in order}
        self._edges = tuple(sorted({edge_key(u, w) for u in order for w in adj[u]}))
        self.name = name
        # product vertex label -> (left, right)
        self.pairs = dict(pairs) if pairs else None

    # -- basic queries -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        return self._edges

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        title = f" {self.name!r}" if self.name else ""
        return f"<Graph{title} n={self.n} m={self.m}>"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self.vertices, self._edges))

    def require(self, *labels: str) -> None:
        for v in labels:
            if v not in self._adj:
                raise LookupFailure(f"{v!r} is not a vertex of {self.name or 'the graph'}")

    def neighbors(self, v: str) -> tuple[str, ...]:
        self.require(v)
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def min_degree(self) -> int:
        return min((len(a) for a in self._adj.values()), default=0)

    def has_edge(self, u: str, v: str) -> bool:
        return u in self._adj and v in self._adj[u]

    def label(self, name: str) -> "Graph":
        return Graph(self.vertices, self._edges, name=name, pairs=self.pairs)

    # -- derived graphs ------------------------------------------------
    def subgraph(self, keep: Iterable[str], name: str = "") -> "Graph":
        keep = set(keep)
        self.require(*keep)
        return Graph(keep, [e for e in self._edges if e[0] in keep and e[1] in keep], name=name)

    def remove_vertices(self, drop: Iterable[str]) -> "Graph":
        drop = set(drop)
        return self.subgraph([v for v in self.vertices if v not in drop])

    def remove_edge(self, u: str, v: str) -> "Graph":
        key = edge_key(u, v)
        return Graph(self.vertices, [e for e in self._edges if e != key], name=self.name)

    def relabel(self, mapping: Mapping[str, str], name: str = "") -> "Graph":
        if len(set(mapping[v] for v in self.vertices)) != self.n:
            raise ArgumentError("relabeling is not injective")
        return Graph((mapping[v] for v in self.vertices),
                     ((mapping[u], mapping[v]) for u, v in self._edges), name=name)

    # -- connectivity --------------------------------------------------
    def components(self) -> list[list[str]]:
        seen: set[str] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.n > 0 and self.m == self.n - 1 and self.is_connected()

    def tree_path(self, s: str, t: str) -> list[str]:
        """Vertex sequence of a shortest s-t path (the unique one in a tree)."""
        self.require(s, t)
        prev = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if u == t:
                break
            for w in self._adj[u]:
                if w not in prev:
                    prev[w] = u
                    queue.append(w)
        if t not in prev:
            raise ArgumentError(f"no path between {s!r} and {t!r}")
        path = [t]
        while path[-1] != s:
            path.append(prev[path[-1]])
        return path[::-1]

    def to_edgelist(self) -> str:
        isolated = [v for v in self.vertices if not self._adj[v]]
        lines = [f"{u} {v}" for u, v in self._edges] + isolated
        return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# parsing and export


def parse_graph(text: str, name: str = "", allow_product_labels: bool = False) -> Graph:
    """Read an edge list: one ``u v`` pair per line, single tokens declare
    isolated vertices, ``#`` starts a comment."""
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) > 2:
            raise ParseError(f"expected 'u v' or a single vertex, got {raw.strip()!r}", lineno)
        for tok in tokens:
            check_label(tok, allow_sep=allow_product_labels, lineno=lineno)
        if len(tokens) == 1:
            vertices.append(tokens[0])
            continue
        u, v = tokens
        if u == v:
            raise LoopError(f"loop {u!r} {v!r}", lineno)
        edges.append((u, v))
    return Graph(vertices, edges, name=name)


def to_dot(g: Graph, trees: list[Iterable[tuple[str, str]]] | None = None,
           terminals: Iterable[str] = ()) -> str:
    """DOT text for ``g``; edges of ``trees[i]`` get colour class ``i``."""
    palette = ["red", "blue", "darkgreen", "orange", "purple", "brown",
               "magenta", "cyan4", "goldenrod", "navy"]
    colour: dict[tuple[str, str], int] = {}
    for i, tree in enumerate(trees or []):
        for u, v in tree:
            colour[edge_key(u, v)] = i
    terminals = set(terminals)
    out = [f'graph "{g.name or "G"}" {{']
    for v in g.vertices:
        attrs = ' [shape=doublecircle]' if v in terminals else ""
        out.append(f'  "{v}"{attrs};')
    for e in g.edges:
        if e in colour:
            i = colour[e]
            out.append(f'  "{e[0]}" -- "{e[1]}" [color={palette[i % len(palette)]}, '
                       f'penwidth=2, label="T{i + 1}"];')
        else:
            out.append(f'  "{e[0]}" -- "{e[1]}" [color=gray80];')
    out.append("}")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------
# Cartesian products


class EdgeKind(enum.Enum):
    ONE_TYPE = "one_type"   # moves along the left (G) factor
    TWO_TYPE = "two_type"   # moves along the right (H) factor


def render(left: str, right: str) -> str:
    return f"{left}{SEP}{right}"


@dataclass(frozen=True)
class ProductVertex:
    left: str
    right: str

    @property
    def label(self) -> str:
        return render(self.left, self.right)


def cartesian_product(g: Graph, h: Graph, name: str = "") -> Graph:
    if g.n == 0 or h.n == 0:
        raise ArgumentError("Cartesian product needs nonempty factors")
    pairs = {render(u, v): (u, v) for u in g.vertices for v in h.vertices}
    if len(pairs) != g.n * h.n:
        raise LabelError("product labels are not unique; rename factor vertices")
    edges = [(render(u, v), render(u2, v)) for u, u2 in g.edges for v in h.vertices]
    edges += [(render(u, v), render(u, v2)) for u in g.vertices for v, v2 in h.edges]
    if not name and g.name and h.name:
        name = f"{g.name}x{h.name}"
    return Graph(pairs, edges, name=name, pairs=pairs)


def split(product: Graph, label: str) -> tuple[str, str]:
    if product.pairs is None:
        raise ArgumentError("graph is not a Cartesian product")
    try:
        return product.pairs[label]
    except KeyError:
        raise LookupFailure(f"{label!r} is not a product vertex") from None


def edge_kind(product: Graph, u: str, v: str) -> EdgeKind:
    (a, p), (b, q) = split(product, u), split(product, v)
    if p == q and a != b:
        return EdgeKind.ONE_TYPE
    if a == b and p != q:
        return EdgeKind.TWO_TYPE
    raise ArgumentError(f"{u!r}-{v!r} is not a product edge")


@dataclass(frozen=True)
class Layer:
    kind: str                       # "G" (fixed right coordinate) or "H"
    anchor: str
    iso: dict = field(default_factory=dict)   # factor label -> product label

    @property
    def vertices(self) -> list[str]:
        return sorted(self.iso.values())

    def __len__(self):
        return len(self.iso)


def layer(g: Graph, h: Graph, kind: str, anchor: str) -> Layer:
    """The copy G(anchor) (kind "G") or H(anchor) (kind "H") inside g x h."""
    if kind == "G":
        h.require(anchor)
        return Layer("G", anchor, {u: render(u, anchor) for u in g.vertices})
    if kind == "H":
        g.require(anchor)
        return Layer("H", anchor, {v: render(anchor, v) for v in h.vertices})
    raise ArgumentError(f"layer kind must be 'G' or 'H', not {kind!r}")


# ----------------------------------------------------------------------
# max-flow on the vertex-split network


def _augmenting_paths(g: Graph, x: str, y: str, limit: int | None, skip_direct: bool):
    """Unit-capacity Edmonds-Karp on the split digraph; returns the flow
    successor map restricted to used arcs and the flow value."""
    # node encoding: (v, 0) = in-copy, (v, 1) = out-copy
    cap: dict[tuple, dict[tuple, int]] = {}

    def arc(a, b):
        cap.setdefault(a, {})
        cap.setdefault(b, {})
        cap[a][b] = cap[a].get(b, 0) + 1
        cap[b].setdefault(a, 0)

    for v in g.vertices:
        if v not in (x, y):
            arc((v, 0), (v, 1))
    for u, v in g.edges:
        if skip_direct and {u, v} == {x, y}:
            continue
        arc((u, 1), (v, 0))
        arc((v, 1), (u, 0))
    src, dst = (x, 1), (y, 0)
    cap.setdefault(src, {})
    cap.setdefault(dst, {})
    flow = 0
    order = {node: sorted(nbrs) for node, nbrs in cap.items()}
    while limit is None or flow < limit:
        prev = {src: None}
        queue = deque([src])
        while queue and dst not in prev:
            a = queue.popleft()
            for b in order[a]:
                if b not in prev and cap[a][b] > 0:
                    prev[b] = a
                    queue.append(b)
        if dst not in prev:
            break
        b = dst
        while prev[b] is not None:
            a = prev[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1
    return cap, flow


def _decompose(g: Graph, cap, x: str, y: str, skip_direct: bool) -> list[list[str]]:
    # used arc u_out -> v_in has residual reverse capacity > original reverse (0)
    used: dict[str, list[str]] = {}
    for u, v in g.edges:
        if skip_direct and {u, v} == {x, y}:
            continue
        for a, b in ((u, v), (v, u)):
            if cap[(b, 0)][(a, 1)] > 0 and cap[(a, 1)][(b, 0)] == 0:
                used.setdefault(a, []).append(b)
    for nbrs in used.values():
        nbrs.sort()
    paths = []
    while used.get(x):
        path = [x]
        seen = {x: 0}
        while path[-1] != y:
            u = path[-1]
            w = used[u].pop(0)
            if w in seen:
                # flow cycle: drop the loop
                for z in path[seen[w] + 1:]:
                    del seen[z]
                path = path[:seen[w] + 1]
                continue
            seen[w] = len(path)
            path.append(w)
        paths.append(path)
    return paths


def local_connectivity(g: Graph, x: str, y: str) -> int:
    """Maximum number of internally disjoint x-y paths."""
    g.require(x, y)
    if x == y:
        raise ArgumentError("local connectivity needs two distinct vertices")
    direct = g.has_edge(x, y)
    _, flow = _augmenting_paths(g, x, y, None, skip_direct=direct)
    return flow + int(direct)


def menger_paths(g: Graph, x: str, y: str, k: int) -> list[list[str]]:
    """Exactly ``k`` internally disjoint x-y paths (vertex sequences).

    When x and y are adjacent the single-edge path comes first.
    """
    g.require(x, y)
    if x == y:
        raise ArgumentError("Menger paths need two distinct vertices")
    if k < 0:
        raise ArgumentError("k must be nonnegative")
    direct = g.has_edge(x, y)
    need = k - int(direct)
    paths = [[x, y]] if direct and k > 0 else []
    if need > 0:
        cap, flow = _augmenting_paths(g, x, y, need, skip_direct=direct)
        if flow < need:
            raise InfeasibleError(
                f"only {local_connectivity(g, x, y)} internally disjoint paths between "
                f"{x!r} and {y!r}, {k} requested", local_connectivity(g, x, y))
        paths += _decompose(g, cap, x, y, skip_direct=direct)
    return paths


def vertex_connectivity(g: Graph) -> int:
    if g.n <= 1 or not g.is_connected():
        return 0
    n = g.n
    if g.m == n * (n - 1) // 2:
        return n - 1
    best = n - 1
    # Every minimum cut misses some vertex among the first best+1 vertices of
    # lowest degree, so scanning sources from that set suffices.
    by_degree = sorted(g.vertices, key=lambda v: (g.degree(v), v))
    sources = by_degree[: g.min_degree() + 1]
    for s in sources:
        for t in g.vertices:
            if t == s or g.has_edge(s, t):
                continue
            _, flow = _augmenting_paths(g, s, t, best, skip_direct=False)
            best = min(best, flow)
    return best


def is_internally_disjoint_paths(g: Graph, x: str, y: str, paths: list[list[str]]) -> list[str]:
    """Violations (empty when valid) for a claimed x-y path system."""
    problems = []
    inner: dict[str, int] = {}
    used_edges: set[tuple[str, str]] = set()
    for i, p in enumerate(paths):
        if len(p) < 2 or p[0] != x or p[-1] != y:
            problems.append(f"path {i} does not run from {x} to {y}")
            continue
        if len(set(p)) != len(p):
            problems.append(f"path {i} repeats a vertex")
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                problems.append(f"path {i} uses non-edge {a}-{b}")
            e = edge_key(a, b)
            if e in used_edges:
                problems.append(f"edge {a}-{b} used twice")
            used_edges.add(e)
        for v in p[1:-1]:
            if v in inner:
                problems.append(f"paths {inner[v]} and {i} share {v}")
            inner[v] = i
    return problems


def brute_force_connectivity(g: Graph) -> int:
    """Smallest vertex set whose removal disconnects or trivialises g."""
    for size in range(g.n):
        for cut in combinations(g.vertices, size):
            rest = g.remove_vertices(cut)
            if rest.n <= 1 or not rest.is_connected():
                return size
    return max(g.n - 1, 0)
