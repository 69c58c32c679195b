"""Steiner tree packings: kappa(S) and kappa_3(G) by exact search.

The search is restricted to minimal S-trees (every terminal of degree at most
two, every leaf a terminal, at most one branch vertex).  Any S-tree shrinks
to a minimal one without gaining vertices or edges, so the restriction loses
no packings.  ``exhaustive_kappa_S`` drops the restriction and is kept as an
independent check on small graphs.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import ArgumentError, BudgetExhausted, ConstructionError, ValidityError
from .graph import Graph, edge_key

DEFAULT_BUDGET = 20_000_000


class Shape(enum.Enum):
    PATH = "path"
    SPIDER = "spider"


@dataclass(frozen=True)
class STree:
    edges: frozenset
    terminals: tuple

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]], terminals: Iterable[str]) -> "STree":
        return cls(frozenset(edge_key(u, v) for u, v in edges), tuple(sorted(terminals)))

    @property
    def vertices(self) -> frozenset:
        vs = {v for e in self.edges for v in e}
        if not self.edges:
            vs |= set(self.terminals)
        return frozenset(vs)

    def degree(self, v: str) -> int:
        return sum(v in e for e in self.edges)

    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def neighbors(self, v: str) -> list[str]:
        return self.adjacency().get(v, [])

    def problems(self) -> list[str]:
        out = []
        vs = self.vertices
        missing = [t for t in self.terminals if t not in vs]
        if missing:
            out.append(f"terminals {missing} not in tree")
        if len(self.edges) != len(vs) - 1:
            out.append(f"{len(self.edges)} edges on {len(vs)} vertices is not a tree")
        elif vs:
            adj = self.adjacency()
            start = min(vs)
            seen = {start}
            stack = [start]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != len(vs):
                out.append("tree is disconnected")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def touches(self, terminal_edges: set) -> bool:
        return bool(self.edges & terminal_edges)

    def sorted_edges(self) -> list[list[str]]:
        return [list(e) for e in sorted(self.edges)]


@dataclass
class Certificate:
    terminals: tuple
    trees: list = field(default_factory=list)
    host: str = ""

    def __len__(self):
        return len(self.trees)

    def to_dict(self) -> dict:
        return {
            "terminals": list(self.terminals),
            "trees": [t.sorted_edges() for t in self.trees],
            "host": self.host,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        try:
            terminals = tuple(sorted(str(t) for t in data["terminals"]))
            trees = [STree.from_edges(((str(u), str(v)) for u, v in tree), terminals)
                     for tree in data["trees"]]
            return cls(terminals, trees, str(data.get("host", "")))
        except (KeyError, TypeError, ValueError) as exc:
            raise ArgumentError(f"malformed certificate: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ArgumentError(f"certificate is not JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ArgumentError("certificate must be a JSON object")
        return cls.from_dict(data)


@dataclass(frozen=True)
class Violation:
    kind: str           # "edge", "tree", "terminal", "shared-edge", "shared-vertex"
    trees: tuple
    detail: str

    def __str__(self):
        where = " & ".join(f"T{i + 1}" for i in self.trees)
        return f"{self.kind}: {where}: {self.detail}" if where else f"{self.kind}: {self.detail}"


def _triple(g: Graph, s: Sequence[str]) -> tuple:
    s = tuple(s)
    if len(s) != 3 or len(set(s)) != 3:
        raise ArgumentError(f"terminal set must be three distinct vertices, got {s}")
    g.require(*s)
    return tuple(sorted(s))


# ----------------------------------------------------------------------
# certificates


def validate_certificate(g: Graph, c: Certificate) -> list[Violation]:
    """Every way in which ``c`` fails to be a packing in ``g``."""
    report = []
    terms = set(c.terminals)
    for t in sorted(terms):
        if t not in g:
            report.append(Violation("terminal", (), f"{t} is not a vertex of the host"))
    for i, tree in enumerate(c.trees):
        for u, v in sorted(tree.edges):
            if not g.has_edge(u, v):
                report.append(Violation("edge", (i,), f"{u}-{v} is not an edge of the host"))
        if set(tree.terminals) != terms:
            report.append(Violation("terminal", (i,), "tree terminals differ from certificate"))
        for p in STree(tree.edges, c.terminals).problems():
            report.append(Violation("tree", (i,), p))
    for i, j in combinations(range(len(c.trees)), 2):
        a, b = c.trees[i], c.trees[j]
        for u, v in sorted(a.edges & b.edges):
            report.append(Violation("shared-edge", (i, j), f"{u}-{v}"))
        for v in sorted((a.vertices & b.vertices) - terms):
            report.append(Violation("shared-vertex", (i, j), v))
    return report


def check(g: Graph, c: Certificate) -> Certificate:
    report = validate_certificate(g, c)
    if report:
        raise ValidityError("; ".join(map(str, report)), report)
    return c


# ----------------------------------------------------------------------
# minimal trees


def minimal_stree(t: STree) -> STree:
    """Prune non-terminal leaves until every leaf is a terminal."""
    if len(t.terminals) != 3 or t.problems():
        raise ValidityError(f"not a valid S-tree with three terminals: {t.problems()}")
    terms = set(t.terminals)
    adj = {v: set(ns) for v, ns in t.adjacency().items()}
    leaves = [v for v, ns in adj.items() if len(ns) <= 1 and v not in terms]
    while leaves:
        v = leaves.pop()
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) == 1 and w not in terms:
                leaves.append(w)
    return STree(frozenset(edge_key(u, w) for u in adj for w in adj[u]), t.terminals)


def shape(t: STree) -> Shape:
    """Classify a minimal three-terminal tree."""
    degs = {v: t.degree(v) for v in t.vertices}
    terms = set(t.terminals)
    tdeg = sorted(degs[x] for x in terms)
    others = [d for v, d in degs.items() if v not in terms]
    if tdeg == [1, 1, 2] and all(d == 2 for d in others):
        return Shape.PATH
    if tdeg == [1, 1, 1] and sorted(others).count(3) == 1 and all(d in (2, 3) for d in others):
        return Shape.SPIDER
    raise ValidityError(f"tree is not minimal: degrees {degs}")


# ----------------------------------------------------------------------
# enumeration


class _Index:
    """Integer view of a graph for the search."""

    def __init__(self, g: Graph):
        self.labels = list(g.vertices)
        self.pos = {v: i for i, v in enumerate(self.labels)}
        self.adj = [[self.pos[w] for w in g.neighbors(v)] for v in self.labels]


def _paths(adj, src: int, dst: int, blocked: int, max_edges: int) -> Iterator[list[int]]:
    """Simple src-dst paths avoiding the ``blocked`` bitmask, shortest-first
    within the DFS order, at most ``max_edges`` long."""
    if max_edges < 1:
        return
    path = [src]
    used = blocked | (1 << src)
    stack = [iter(adj[src])]
    while stack:
        for w in stack[-1]:
            if w == dst:
                yield path + [dst]
                continue
            if used >> w & 1 or len(path) >= max_edges:
                continue
            path.append(w)
            used |= 1 << w
            stack.append(iter(adj[w]))
            break
        else:
            stack.pop()
            v = path.pop()
            used &= ~(1 << v)


def _raw_minimal_trees(ix: _Index, s: tuple[int, int, int], max_edges: int):
    """Yield (edge pairs, inner vertex mask) for every minimal S-tree."""
    tmask = sum(1 << t for t in s)
    # paths through a middle terminal
    for mid in s:
        e1, e2 = [t for t in s if t != mid]
        for p1 in _paths(ix.adj, e1, mid, 1 << e2, max_edges - 1):
            block = 0
            for v in p1:
                block |= 1 << v
            block &= ~(1 << mid)
            for p2 in _paths(ix.adj, mid, e2, block, max_edges - (len(p1) - 1)):
                verts = p1 + p2[1:]
                yield list(zip(verts, verts[1:])), _mask(verts) & ~tmask
    # spiders around a non-terminal centre
    x, y, z = s
    for c in range(len(ix.labels)):
        if tmask >> c & 1 or len(ix.adj[c]) < 3:
            continue
        for px in _paths(ix.adj, c, x, (1 << y) | (1 << z), max_edges - 2):
            bx = _mask(px)
            for py in _paths(ix.adj, c, y, (bx & ~(1 << c)) | (1 << z), max_edges - 1 - (len(px) - 1)):
                bxy = bx | _mask(py)
                rest = max_edges - (len(px) - 1) - (len(py) - 1)
                for pz in _paths(ix.adj, c, z, bxy & ~(1 << c), rest):
                    verts = px + py[1:] + pz[1:]
                    pairs = list(zip(px, px[1:])) + list(zip(py, py[1:])) + list(zip(pz, pz[1:]))
                    yield pairs, _mask(verts) & ~tmask


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def enumerate_minimal_strees(g: Graph, s: Sequence[str], max_edges: int | None = None) -> Iterator[STree]:
    """Every minimal S-tree of ``g`` exactly once (optionally size-capped)."""
    s = _triple(g, s)
    ix = _Index(g)
    si = tuple(ix.pos[v] for v in s)
    cap = g.n - 1 if max_edges is None else max_edges
    seen = set()
    for pairs, _ in _raw_minimal_trees(ix, si, cap):
        key = frozenset(edge_key(ix.labels[a], ix.labels[b]) for a, b in pairs)
        if key not in seen:
            seen.add(key)
            yield STree(key, s)


# ----------------------------------------------------------------------
# packing search


@dataclass
class KappaResult:
    value: int
    certificate: Certificate
    exact: bool = True
    upper: int | None = None

    def __iter__(self):
        return iter((self.value, self.certificate))


class _Budget:
    def __init__(self, cap):
        self.cap = cap
        self.used = 0

    def spend(self, n=1):
        self.used += n
        if self.cap is not None and self.used > self.cap:
            raise BudgetExhausted(f"search budget of {self.cap} nodes exhausted")


class _Packer:
    """Branch and bound for t pairwise compatible trees.

    Trees conflict when they share a non-terminal vertex or an edge; shared
    edges can only lie inside G[S] once inner vertices are disjoint.
    """

    def __init__(self, g: Graph, s: tuple, budget: _Budget, touch_edges=None):
        self.g = g
        self.s = s
        self.ix = _Index(g)
        self.si = tuple(self.ix.pos[v] for v in s)
        self.budget = budget
        self.term_edges = [edge_key(a, b) for a, b in combinations(s, 2) if g.has_edge(a, b)]
        self._loaded_cap = -1
        touch = set(self.term_edges) if touch_edges is None else set(touch_edges)
        self.touch_bits = _mask(i for i, e in enumerate(self.term_edges) if e in touch)
        self.trees: list[tuple[int, int, frozenset]] = []   # (inner, term-edge mask, edges)
        tmask = _mask(self.si)
        self.nbr_inner = [_mask(self.ix.adj[t]) & ~tmask for t in self.si]
        self.term_edge_bits = [
            [i for i, e in enumerate(self.term_edges) if self.s[k] in e] for k in range(3)
        ]

    def load(self, max_edges: int) -> None:
        if max_edges <= self._loaded_cap:
            return
        ix, labels = self.ix, self.ix.labels
        tidx = {e: i for i, e in enumerate(self.term_edges)}
        found = []
        for pairs, inner in _raw_minimal_trees(ix, self.si, max_edges):
            self.budget.spend()
            edges = frozenset(edge_key(labels[a], labels[b]) for a, b in pairs)
            tm = 0
            for e in edges:
                if e in tidx:
                    tm |= 1 << tidx[e]
            found.append((len(edges), inner, tm, edges))
        found.sort(key=lambda t: (t[0], sorted(t[3])))
        self.trees = [(inner, tm, edges) for _, inner, tm, edges in found]
        self._loaded_cap = max_edges

    def greedy(self, max_touching=None) -> list[int]:
        chosen, inner_used, tm_used, touching = [], 0, 0, 0
        for i, (inner, tm, _) in enumerate(self.trees):
            if inner & inner_used or tm & tm_used:
                continue
            hot = bool(tm & self.touch_bits)
            if hot and max_touching is not None and touching >= max_touching:
                continue
            chosen.append(i)
            inner_used |= inner
            tm_used |= tm
            touching += hot
        return chosen

    def _bound(self, cands: list[int], tm_used: int) -> int:
        avail = 0
        tm_avail = 0
        for j in cands:
            avail |= self.trees[j][0]
            tm_avail |= self.trees[j][1]
        best = len(cands)
        for k in range(3):
            slots = bin(self.nbr_inner[k] & avail).count("1")
            slots += sum(1 for b in self.term_edge_bits[k] if tm_avail >> b & 1 and not tm_used >> b & 1)
            best = min(best, slots)
        return best

    def find(self, target: int, max_touching: int | None = None) -> list[int] | None:
        trees = self.trees
        hot = self.touch_bits
        if target <= 0:
            return []

        def rec(cands, chosen, tm_used, touching):
            self.budget.spend()
            if len(chosen) == target:
                return list(chosen)
            if len(chosen) + self._bound(cands, tm_used) < target:
                return None
            for pos, i in enumerate(cands):
                if len(chosen) + len(cands) - pos < target:
                    return None
                inner, tm, _ = trees[i]
                t2 = touching + bool(tm & hot)
                rest = [j for j in cands[pos + 1:]
                        if not trees[j][0] & inner and not trees[j][1] & tm
                        and not (trees[j][1] & hot and max_touching is not None
                                 and t2 >= max_touching)]
                chosen.append(i)
                hit = rec(rest, chosen, tm_used | tm, t2)
                chosen.pop()
                if hit is not None:
                    return hit
            return None

        start = [i for i, t in enumerate(trees) if not (t[1] & hot and max_touching == 0)]
        return rec(start, [], 0, 0)

    def certificate(self, idx: list[int]) -> Certificate:
        return Certificate(self.s, [STree(self.trees[i][2], self.s) for i in idx], self.g.name)


def _paths_via_terminal(g: Graph, a: str, b: str, c: str) -> int:
    """Most a-b paths that are edge disjoint and share no vertex besides a,
    b and c.  Each tree of a packing contributes one such path, so this caps
    kappa(S) for S = {a, b, c}."""
    # unit-capacity split network; c is left unsplit with unbounded capacity
    inf = g.n + 1
    cap: dict = {}

    def arc(x, y, k):
        cap[(x, y)] = cap.get((x, y), 0) + k
        cap.setdefault((y, x), 0)

    def tail(v):
        return v if v == c else (v, 1)

    def head(v):
        return v if v == c else (v, 0)

    for v in g.vertices:
        if v != c:
            arc((v, 0), (v, 1), inf if v in (a, b) else 1)
    for u, v in g.edges:
        arc(tail(u), head(v), 1)
        arc(tail(v), head(u), 1)
    out: dict = {}
    for (x, y) in cap:
        out.setdefault(x, []).append(y)
    src, dst = (a, 1), (b, 0)
    flow = 0
    while True:
        prev = {src: None}
        queue = [src]
        for x in queue:
            if x == dst:
                break
            for y in out.get(x, ()):
                if y not in prev and cap[(x, y)] > 0:
                    prev[y] = x
                    queue.append(y)
        if dst not in prev:
            return flow
        y = dst
        while prev[y] is not None:
            x = prev[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1


def _pair_bound(g: Graph, s: tuple) -> int:
    a, b, c = s
    return min(_paths_via_terminal(g, a, b, c), _paths_via_terminal(g, a, c, b),
               _paths_via_terminal(g, b, c, a))


def _size_schedule(g: Graph) -> list[int]:
    full = max(g.n - 1, 2)
    caps, c = [], 4
    while c < full:
        caps.append(c)
        c += 2
    return caps + [full]


def pack(g: Graph, s: Sequence[str], target: int, max_touching: int | None = None,
         budget: int | None = DEFAULT_BUDGET, touch_edges=None) -> Certificate | None:
    """A certificate of ``target`` trees or None when none exists.

    ``max_touching`` caps how many trees may use an edge of ``touch_edges``
    (default: all edges of G[S]).
    """
    s = _triple(g, s)
    if target <= 0:
        return Certificate(s, [], g.name)
    if not _same_component(g, s):
        return None
    packer = _Packer(g, s, _Budget(budget), touch_edges)
    for cap in _size_schedule(g):
        packer.load(cap)
        hit = packer.find(target, max_touching)
        if hit is not None:
            return packer.certificate(hit)
    return None


def _same_component(g: Graph, s) -> bool:
    for comp in g.components():
        if s[0] in comp:
            return all(v in comp for v in s)
    return False


def kappa_S(g: Graph, s: Sequence[str], budget: int | None = DEFAULT_BUDGET,
            at_least: int | None = None) -> KappaResult:
    """Exact kappa(S) with a witnessing certificate.

    With ``at_least`` the search stops as soon as that many trees are found;
    the returned value is then a lower bound (``exact`` False unless it also
    meets the pairwise connectivity bound).
    """
    s = _triple(g, s)
    if not _same_component(g, s):
        return KappaResult(0, Certificate(s, [], g.name), True, 0)
    upper = _pair_bound(g, s)
    bud = _Budget(budget)
    packer = _Packer(g, s, bud)
    schedule = _size_schedule(g)
    best: list[int] = []
    try:
        packer.load(schedule[0])
        best = packer.greedy()
        best_cert = packer.certificate(best)
        goal = upper if at_least is None else min(upper, at_least)
        t = len(best) + 1
        while t <= goal:
            hit = None
            for cap in schedule:
                packer.load(cap)
                hit = packer.find(t)
                if hit is not None:
                    break
            if hit is None:
                return KappaResult(t - 1, best_cert, True, t - 1)
            best_cert = packer.certificate(hit)
            t += 1
        value = len(best_cert)
        return KappaResult(value, best_cert, value == upper, upper if value < upper else value)
    except BudgetExhausted as exc:
        cert = packer.certificate(best) if packer.trees else Certificate(s, [], g.name)
        exc.lower = max(exc.lower, len(cert))
        exc.upper = upper
        exc.certificate = cert
        raise


@dataclass
class Kappa3Result:
    value: int
    triple: tuple | None
    certificate: Certificate | None
    exact: bool = True
    lower: int | None = None
    upper: int | None = None

    def __iter__(self):
        return iter((self.value, self.triple, self.certificate))


def kappa3(g: Graph, budget: int | None = DEFAULT_BUDGET) -> Kappa3Result:
    """Minimum kappa(S) over all triples, lexicographically least witness.

    Each triple only has to reach the smallest value seen so far.  A triple
    that exhausts its budget contributes the trees it found as a lower bound
    and its pairwise connectivity as an upper bound; the result is then
    inexact unless those bounds meet.
    """
    if g.n == 0 or not g.is_connected():
        return Kappa3Result(0, None, None)
    if g.n < 3:
        return Kappa3Result(1, None, None)
    lower = upper = None
    witness = cert = None
    for s in combinations(g.vertices, 3):
        try:
            r = kappa_S(g, s, budget=budget, at_least=upper)
            lo, hi, c = r.value, (r.value if r.exact else None), r.certificate
        except BudgetExhausted as exc:
            lo, hi, c = exc.lower, exc.upper, exc.certificate
        if hi is not None and (upper is None or hi < upper):
            upper, witness, cert = hi, s, c
        lower = lo if lower is None else min(lower, lo)
    if upper is None:
        # every triple reached the first value found without proof of equality
        upper = lower
    lower = min(lower, upper)
    exact = lower == upper
    if witness is None:
        witness = next(combinations(g.vertices, 3))
    return Kappa3Result(lower if exact else lower, witness, cert, exact, lower, upper)


# ----------------------------------------------------------------------
# independent oracle


def all_strees(g: Graph, s: Sequence[str]) -> list[STree]:
    """Every subtree of ``g`` containing S, by edge-subset enumeration."""
    s = tuple(sorted(s))
    edges = list(g.edges)
    out = []
    terms = set(s)
    # a tree on r edges spans r + 1 vertices, so r runs from 2 to n - 1
    for r in range(2, min(len(edges), g.n - 1) + 1):
        for sub in combinations(edges, r):
            verts = {v for e in sub for v in e}
            if not terms <= verts or len(verts) != r + 1:
                continue
            t = STree(frozenset(sub), s)
            if t.is_valid():
                out.append(t)
    return out


def exhaustive_kappa_S(g: Graph, s: Sequence[str]) -> int:
    """kappa(S) from the definition, with no minimality assumption."""
    s = _triple(g, s)
    trees = all_strees(g, s)
    terms = set(s)

    def ok(a: STree, b: STree) -> bool:
        return not (a.edges & b.edges) and (a.vertices & b.vertices) == terms

    best = 0

    def room(chosen):
        # every further tree needs its own edge at each terminal
        used = [e for t in chosen for e in t.edges]
        return min(g.degree(x) - sum(x in e for e in used) for x in s)

    def rec(cands, chosen):
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + min(len(cands), room(chosen)) <= best:
            return
        for i, t in enumerate(cands):
            chosen.append(t)
            rec([u for u in cands[i + 1:] if ok(t, u)], chosen)
            chosen.pop()

    rec(trees, [])
    return best


# ----------------------------------------------------------------------
# rebalancing trees that use edges inside G[S]


def terminal_edges(g: Graph, s: Sequence[str]) -> set:
    return {edge_key(a, b) for a, b in combinations(s, 2) if g.has_edge(a, b)}


def touching_count(g: Graph, c: Certificate) -> int:
    te = terminal_edges(g, c.terminals)
    return sum(t.touches(te) for t in c.trees)


def is_clique_pattern(g: Graph, s: Sequence[str], a: STree, b: STree) -> bool:
    """Two trees sharing the edges of a triangle on S: one is the two-edge
    path on S, the other uses the remaining triangle edge."""
    te = terminal_edges(g, s)
    if len(te) != 3:
        return False
    for p, q in ((a, b), (b, a)):
        if p.edges <= te and len(p.edges) == 2 and len(q.edges & te) == 1 and not (q.edges & p.edges):
            return True
    return False


def rebalance_trees(g: Graph, s: Sequence[str], c: Certificate,
                    budget: int | None = DEFAULT_BUDGET) -> Certificate:
    """Same-size packing in which at most two trees (G[S] a triangle) or at
    most one tree (otherwise) use edges of G[S].

    When G[S] is a two-edge path the single-tree limit can be out of reach,
    e.g. a terminal whose only neighbours are the other two terminals forces
    every tree through G[S].  Then the packing with the fewest touching trees
    is returned instead.
    """
    s = _triple(g, s)
    report = validate_certificate(g, c)
    if report or set(c.terminals) != set(s):
        raise ValidityError("input certificate is invalid", report)
    te = terminal_edges(g, s)
    limit = 2 if len(te) == 3 else 1
    touching = [t for t in c.trees if t.touches(te)]
    if len(touching) <= limit:
        return c
    clean = [t for t in c.trees if not t.touches(te)]
    # exchange inside the union of the touching trees
    union = Graph([], [e for t in touching for e in t.edges])
    local = pack(union, s, len(touching), max_touching=limit, budget=budget)
    if local is not None:
        out = Certificate(s, clean + list(local.trees), c.host)
        return check(g, out)
    for cap in range(limit, len(touching)):
        full = pack(g, s, len(c.trees), max_touching=cap, budget=budget)
        if full is not None:
            return check(g, Certificate(s, list(full.trees), c.host))
    return c


def min_touching_packing(g: Graph, s: Sequence[str], k: int,
                         budget: int | None = DEFAULT_BUDGET) -> Certificate:
    """A k-tree packing using as few G[S]-touching trees as possible."""
    s = _triple(g, s)
    for limit in range(0, 4):
        c = pack(g, s, k, max_touching=limit, budget=budget)
        if c is not None:
            return c
    raise ConstructionError(f"no packing of {k} trees for {s}")
