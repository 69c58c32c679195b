"""Named graph families and closed-form generalized connectivity values."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .errors import ArgumentError
from .graph import Graph, cartesian_product, vertex_connectivity


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple = ()

    def __str__(self):
        k, p = self.kind, self.params
        if k == "complete":
            return f"K{p[0]}"
        if k == "bipartite":
            return f"K_{{{p[0]},{p[1]}}}"
        if k == "hypercube":
            return f"Q{p[0]}"
        if k == "path":
            return f"P{p[0]}"
        if k == "cycle":
            return f"C{p[0]}"
        if k == "star":
            return f"S{p[0]}"
        if k == "tree":
            return f"T{p[0]}:{p[1]}"
        return f"EX31:{p[0]}"


_PATTERNS = [
    (re.compile(r"K1,(\d+)"), "star"),
    (re.compile(r"K_?\{?(\d+),(\d+)\}?"), "bipartite"),
    (re.compile(r"K(\d+)"), "complete"),
    (re.compile(r"Q(\d+)"), "hypercube"),
    (re.compile(r"P(\d+)"), "path"),
    (re.compile(r"C(\d+)"), "cycle"),
    (re.compile(r"S(\d+)"), "star"),
    (re.compile(r"T(\d+):(\d+)"), "tree"),
    (re.compile(r"EX31:(\d+)"), "example31"),
]


def parse_family(text: str) -> FamilySpec:
    """Read strings such as ``K4``, ``K_{3,3}``, ``Q3``, ``P5``, ``C6``,
    ``K1,4`` (star), ``T6:42`` (random tree, seed 42) or ``EX31:3``."""
    t = text.strip().replace(" ", "")
    for pat, kind in _PATTERNS:
        m = pat.fullmatch(t)
        if m:
            if kind == "star" and pat.pattern.startswith("K1"):
                return FamilySpec("star", (int(m.group(1)),))
            return FamilySpec(kind, tuple(int(g) for g in m.groups()))
    raise ArgumentError(f"unknown graph family {text!r}")


def complete(n: int) -> Graph:
    names = [f"u{i}" for i in range(1, n + 1)]
    return Graph(names, [(a, b) for i, a in enumerate(names) for b in names[i + 1:]], name=f"K{n}")


def complete_bipartite(a: int, b: int) -> Graph:
    left = [f"a{i}" for i in range(1, a + 1)]
    right = [f"b{j}" for j in range(1, b + 1)]
    return Graph(left + right, [(x, y) for x in left for y in right], name=f"K_{{{a},{b}}}")


def path(m: int) -> Graph:
    names = [f"v{i}" for i in range(1, m + 1)]
    return Graph(names, list(zip(names, names[1:])), name=f"P{m}")


def cycle(n: int) -> Graph:
    names = [f"v{i}" for i in range(1, n + 1)]
    return Graph(names, [(names[i], names[(i + 1) % n]) for i in range(n)], name=f"C{n}")


def star(m: int) -> Graph:
    """K_{1,m}: centre ``c`` with leaves ``l1..lm``."""
    return Graph(["c"] + [f"l{i}" for i in range(1, m + 1)],
                 [("c", f"l{i}") for i in range(1, m + 1)], name=f"K1,{m}")


def hypercube(n: int) -> Graph:
    """Q_n as iterated products of P2, relabelled by binary strings."""
    p2 = Graph(["0", "1"], [("0", "1")])
    q = p2
    for _ in range(n - 1):
        q = cartesian_product(q, p2)
    q = q.relabel({v: v.replace("|", "") for v in q.vertices}, name=f"Q{n}")
    return q


def random_tree(m: int, seed: int) -> Graph:
    """Uniform labelled tree on ``t1..tm`` from a seeded Pruefer sequence."""
    names = [f"t{i}" for i in range(1, m + 1)]
    if m == 1:
        return Graph(names, [], name=f"T{m}:{seed}")
    if m == 2:
        return Graph(names, [(names[0], names[1])], name=f"T{m}:{seed}")
    rng = random.Random(seed)
    seq = [rng.randrange(m) for _ in range(m - 2)]
    degree = [1] * m
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(m) if degree[i] == 1)
        edges.append((names[leaf], names[x]))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(m) if degree[i] == 1]
    edges.append((names[u], names[v]))
    return Graph(names, edges, name=f"T{m}:{seed}")


def example31(n: int) -> Graph:
    """Two n-cliques joined completely, plus a vertex ``w`` seeing one clique."""
    us = [f"u{i}" for i in range(1, n + 1)]
    vs = [f"v{i}" for i in range(1, n + 1)]
    edges = [(a, b) for i, a in enumerate(us) for b in us[i + 1:]]
    edges += [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]]
    edges += [(a, b) for a in us for b in vs]
    edges += [("w", a) for a in us]
    return Graph(us + vs + ["w"], edges, name=f"EX31:{n}")


def generate(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_family(spec)
    k, p = spec.kind, spec.params
    if any(x < 1 for x in p[:2] if k != "tree") or (k == "tree" and p[0] < 1):
        raise ArgumentError(f"size parameters must be positive: {spec}")
    if k == "complete":
        return complete(p[0])
    if k == "bipartite":
        return complete_bipartite(*p)
    if k == "hypercube":
        return hypercube(p[0])
    if k == "path":
        return path(p[0])
    if k == "cycle":
        if p[0] < 3:
            raise ArgumentError("cycles need at least 3 vertices")
        return cycle(p[0])
    if k == "star":
        return star(p[0])
    if k == "tree":
        return random_tree(*p)
    if k == "example31":
        if p[0] < 2:
            raise ArgumentError("Example31 needs n >= 2")
        return example31(p[0])
    raise ArgumentError(f"unknown family kind {k!r}")


def random_connected_graph(n: int, rng: random.Random, p: float | None = None) -> Graph:
    """Random spanning tree plus independent extra edges."""
    names = [f"g{i}" for i in range(n)]
    order = names[:]
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    p = rng.uniform(0.2, 0.8) if p is None else p
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.add((names[i], names[j]))
    return Graph(names, edges)


# ----------------------------------------------------------------------
# closed forms


def kappa_k_complete(n: int, k: int) -> int:
    if not 2 <= k <= n:
        raise ArgumentError(f"need 2 <= k <= n, got n={n}, k={k}")
    return n - (k + 1) // 2


def kappa_k_bipartite(a: int, b: int, k: int) -> int:
    if a > b:
        raise ArgumentError("pass the smaller side first")
    if a < 1 or not 2 <= k <= a + b:
        raise ArgumentError(f"need 1 <= a <= b and 2 <= k <= a+b, got {a}, {b}, {k}")
    if k <= b - a + 2:
        return a
    if (a - b + k) % 2:
        return (a + b - k + 1) // 2 + (a - b + k - 1) * (b - a + k - 1) // (4 * (k - 1))
    return (a + b - k) // 2 + (a - b + k) * (b - a + k) // (4 * (k - 1))


def kappa3_hypercube(n: int) -> int:
    if n < 2:
        raise ArgumentError("hypercube formula needs n >= 2")
    return n - 1


def upper_bounds(g: Graph) -> tuple[int | None, int]:
    """(delta - 1 if two minimum-degree vertices are adjacent, kappa)."""
    delta = g.min_degree()
    low = {v for v in g.vertices if g.degree(v) == delta}
    adjacent = any(g.has_edge(u, v) for u in low for v in g.neighbors(u) if v in low)
    return (delta - 1 if adjacent else None), vertex_connectivity(g)
