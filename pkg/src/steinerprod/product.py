"""Constructive tree packings in Cartesian products.

Given internally disjoint trees (or Menger paths) in a factor G, the builders
here assemble internally disjoint S-trees in G x P, G x T and G x H.  Every
tree of the output is made of three kinds of edges: factor-tree edges inside
the projection layer, their copies in other layers, and two-type edges that
move a vertex along the second factor.

Terminology used throughout: a terminal is a product vertex (u, L) with G
coordinate ``u`` and layer ``L``.  The projection layer is the copy of G in
which the factor trees are laid out; the "column" of ``u`` along a route of
layers is the path (u, L0), (u, L1), ... of two-type edges.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Sequence

from .errors import ArgumentError, BoundError, BudgetExhausted, ConstructionError
from .graph import (
    EdgeKind,
    Graph,
    ProductVertex,
    cartesian_product,
    edge_key,
    edge_kind,
    local_connectivity,
    menger_paths,
    render,
    split,
    vertex_connectivity,
)
from .steiner import (
    Certificate,
    STree,
    kappa3,
    kappa_S,
    minimal_stree,
    pack,
    rebalance_trees,
    shape,
    Shape,
    terminal_edges,
    validate_certificate,
)


class CaseTag(enum.Enum):
    SAME_LAYER = "SameLayer"
    TWO_ONE_SPLIT = "TwoOneSplit"
    THREE_SPLIT = "ThreeSplit"
    TREE_BRANCH = "TreeBranch"
    GROUP_PARTITION = "GroupPartition"


@dataclass
class ConstructionTrace:
    tag: CaseTag
    subcase: str = ""
    relabeling: dict = field(default_factory=dict)
    bound: dict = field(default_factory=dict)
    factor_trees: list = field(default_factory=list)     # G edge lists
    menger_paths: list = field(default_factory=list)     # G vertex lists
    anchor_trees: list = field(default_factory=list)     # second-factor edge lists
    layers: list = field(default_factory=list)           # layers allowed to carry one-type edges
    census: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    slabs: list = field(default_factory=list)

    @property
    def factor_edges(self) -> set:
        edges = {edge_key(u, v) for tree in self.factor_trees for u, v in tree}
        for p in self.menger_paths:
            edges |= {edge_key(u, v) for u, v in zip(p, p[1:])}
        for s in self.slabs:
            edges |= s.factor_edges
        return edges

    @property
    def all_layers(self) -> set:
        out = set(self.layers)
        for s in self.slabs:
            out |= s.all_layers
        return out

    def to_dict(self) -> dict:
        d = {
            "case": self.tag.value,
            "subcase": self.subcase,
            "relabeling": dict(sorted(self.relabeling.items())),
            "bound": self.bound,
            "edge_census": self.census,
            "factor_trees": [sorted(list(e) for e in t) for t in self.factor_trees],
            "menger_paths": [list(p) for p in self.menger_paths],
            "anchor_trees": [sorted(list(e) for e in t) for t in self.anchor_trees],
            "layers": sorted(self.all_layers),
            "notes": list(self.notes),
        }
        if self.slabs:
            d["slabs"] = [s.to_dict() for s in self.slabs]
        return d


@dataclass
class Construction:
    certificate: Certificate
    trace: ConstructionTrace

    def __iter__(self):
        return iter((self.certificate, self.trace))

    def __len__(self):
        return len(self.certificate)


# ----------------------------------------------------------------------
# locating terminals


@dataclass(frozen=True)
class Location:
    coords: tuple              # ((u, L), ...) in input order
    layer_pattern: str         # "all-equal" | "two-equal" | "distinct"
    projection_pattern: str    # same, for the G coordinates

    @property
    def tag(self) -> CaseTag | None:
        if self.layer_pattern == "all-equal":
            return CaseTag.SAME_LAYER
        if self.layer_pattern == "two-equal":
            return CaseTag.TWO_ONE_SPLIT
        return None


def _pattern(values) -> str:
    n = len(set(values))
    return {1: "all-equal", 2: "two-equal", 3: "distinct"}[n]


def _as_pair(v, product: Graph | None) -> tuple[str, str]:
    if isinstance(v, ProductVertex):
        return v.left, v.right
    if isinstance(v, tuple) and len(v) == 2:
        return v
    if product is not None:
        return split(product, v)
    if isinstance(v, str) and v.count("|") == 1:
        left, right = v.split("|")
        return left, right
    raise ArgumentError(f"cannot read product vertex {v!r}")


def locate(s: Sequence, factor: str = "G", product: Graph | None = None) -> Location:
    """G-layer anchors of the terminals and their coincidence patterns.

    With ``factor="H"`` the roles of the two coordinates are exchanged.
    """
    coords = tuple(_as_pair(v, product) for v in s)
    if len(coords) != 3 or len(set(coords)) != 3:
        raise ArgumentError("need three distinct product vertices")
    if factor == "H":
        coords = tuple((v, u) for u, v in coords)
    elif factor != "G":
        raise ArgumentError("factor must be 'G' or 'H'")
    return Location(coords, _pattern(c[1] for c in coords), _pattern(c[0] for c in coords))


# ----------------------------------------------------------------------
# building blocks


def _col(u: str, route: Sequence[str]) -> list[tuple[str, str]]:
    return [(render(u, route[i]), render(u, route[i + 1])) for i in range(len(route) - 1)]


def _emb(edges, layer: str) -> list[tuple[str, str]]:
    return [(render(u, layer), render(w, layer)) for u, w in edges]


def _path_edges(p: Sequence[str]) -> list[tuple[str, str]]:
    return list(zip(p, p[1:]))


def _reroute(t: STree, l0: str, remote: dict[str, list[str]]) -> list[tuple[str, str]]:
    """Lay ``t`` out in layer ``l0`` with each remote terminal replaced by its
    copy at the end of its route, reached through its tree neighbours'
    columns."""
    edges = [(render(u, l0), render(w, l0)) for u, w in t.edges
             if u not in remote and w not in remote]
    for term, route in remote.items():
        end = route[-1]
        for nb in t.neighbors(term):
            if nb in remote:
                raise ConstructionError(f"terminals {term} and {nb} adjacent in a rerouted tree")
            edges += _col(nb, route) + [(render(nb, end), render(term, end))]
    return edges


class _Context:
    """Mutable scratch state of one construction."""

    def __init__(self, g: Graph, tf: Graph, trees_for, paths_for, want: int, opts: dict):
        self.g = g
        self.tf = tf
        self.trees_for = trees_for
        self.paths_for = paths_for
        self.want = want
        self.opts = opts
        self.out: list[list[tuple[str, str]]] = []
        self.trace = ConstructionTrace(CaseTag.SAME_LAYER)

    def route(self, a: str, b: str) -> list[str]:
        return self.tf.tree_path(a, b)

    def add_layers(self, *routes):
        for r in routes:
            for layer in ([r] if isinstance(r, str) else r):
                if layer not in self.trace.layers:
                    self.trace.layers.append(layer)

    def use_trees(self, trees):
        self.trace.factor_trees += [sorted(t.edges) for t in trees]

    def use_paths(self, paths):
        self.trace.menger_paths += [list(p) for p in paths]


def _split_bad(trees: list[STree], bad: set) -> tuple[list[STree], list[STree]]:
    good = [t for t in trees if not t.edges & bad]
    worse = [t for t in trees if t.edges & bad]
    return good, worse


def _residual(ctx: _Context, special: list[STree], used: set, layers: list[str],
              terminals: list[str], need: int) -> list[list[tuple[str, str]]]:
    """Pack ``need`` trees inside the copies of ``special`` over ``layers``.

    Used when two factor trees both run through edges among the projected
    terminals; the search space is exactly the edges the three-kinds rule
    allows.
    """
    gverts = {v for t in special for v in t.vertices}
    gedges = {e for t in special for e in t.edges}
    lset = list(dict.fromkeys(layers))
    verts = {render(u, L) for u in gverts for L in lset} - used
    edges = [(render(u, L), render(w, L)) for u, w in gedges for L in lset]
    edges += [(render(u, L), render(u, M)) for u in gverts for L, M in ctx.tf.edges
              if L in lset and M in lset]
    edges = [e for e in edges if e[0] in verts and e[1] in verts]
    sub = Graph(verts, edges)
    cert = pack(sub, terminals, need, budget=ctx.opts.get("budget", 2_000_000))
    ctx.trace.notes.append(
        f"two factor trees use edges among the projected terminals; {need} trees "
        f"{'found' if cert else 'not found'} by search over their layer copies")
    if cert is None:
        raise ConstructionError("figure-pattern completion failed", ctx.trace)
    return [sorted(t.edges) for t in cert.trees]


def _factor_trees(g: Graph, sp: tuple, bad: set, budget=None) -> list[STree]:
    """A maximum packing for ``sp`` in ``g`` with as few trees as possible
    meeting ``bad`` edges."""
    r = kappa_S(g, sp)
    cert = r.certificate
    if len(cert) >= 2:
        cert = rebalance_trees(g, sp, cert)
    trees = list(cert.trees)
    if sum(bool(t.edges & bad) for t in trees) > 1:
        better = pack(g, sp, len(trees), max_touching=1, touch_edges=bad)
        if better is not None:
            trees = list(better.trees)
    return trees


def _menger(g: Graph, u: str, v: str, want: int) -> list[list[str]]:
    return menger_paths(g, u, v, min(want, local_connectivity(g, u, v)))


# ----------------------------------------------------------------------
# the case analysis


def _same_layer(ctx: _Context, x, y, z):
    (a, L), (b, _), (c, _) = x, y, z
    ctx.trace.tag = CaseTag.SAME_LAYER
    ctx.trace.relabeling.update({"x": render(a, L), "y": render(b, L), "z": render(c, L),
                                 "layer": L})
    trees = ctx.trees_for((a, b, c), set())
    ctx.use_trees(trees)
    ctx.add_layers(L)
    ctx.out += [_emb(t.edges, L) for t in trees]
    nbrs = ctx.tf.neighbors(L)
    if nbrs and ctx.opts.get("extra", True):
        w = ctx.opts.get("neighbor") or nbrs[0]
        ctx.trace.relabeling["copy_layer"] = w
        ctx.add_layers(w)
        ctx.out.append(_emb(trees[0].edges, w)
                       + [(render(u, L), render(u, w)) for u in (a, b, c)])


def _two_one(ctx: _Context, x, y, z):
    """x and y share a layer, z sits elsewhere."""
    ctx.trace.tag = CaseTag.TWO_ONE_SPLIT
    (a, L), (b, _), (c, M) = x, y, z
    if c == a:
        (a, b), (x, y) = (b, a), (y, x)
    route = ctx.route(L, M)
    back = route[::-1]
    ctx.trace.relabeling.update({"x": render(a, L), "y": render(b, L), "z": render(c, M),
                                 "projection_layer": L, "far_layer": M})
    ctx.add_layers(L, M)
    xs, ys, zs = render(a, L), render(b, L), render(c, M)
    if c != b:
        ctx.trace.subcase = "projection-outside"
        sp = (a, b, c)
        bad = {edge_key(c, t) for t in (a, b) if ctx.g.has_edge(c, t)}
        trees = ctx.trees_for(sp, bad)
        ctx.use_trees(trees)
        good, worse = _split_bad(trees, bad)
        if len(worse) <= 1:
            special = worse[0] if worse else good.pop()
            ctx.out += [_reroute(t, L, {c: route}) for t in good]
            ctx.out.append(_emb(special.edges, L) + _col(c, route))
            if ctx.opts.get("extra", True):
                ctx.out.append(_emb(special.edges, M) + _col(a, back) + _col(b, back))
        else:
            ctx.trace.subcase += "+completion"
            generic = [_reroute(t, L, {c: route}) for t in good]
            ctx.out += generic
            used = {v for t in generic for e in t for v in e} - {xs, ys, zs}
            ctx.out += _residual(ctx, worse, used, route, [xs, ys, zs],
                                 len(worse) + int(ctx.opts.get("extra", True)))
        return
    ctx.trace.subcase = "projection-coincides"
    paths = ctx.paths_for(a, b, ctx.want)
    ctx.use_paths(paths)
    for p in paths:
        if len(p) == 2:
            ctx.out.append([(xs, ys)] + _col(b, route))
        else:
            nb = p[-2]
            ctx.out.append(_emb(_path_edges(p), L) + _col(nb, route)
                           + [(render(nb, M), zs)])


def _collinear(ctx: _Context, x, y, z):
    """Three layers on one path of the second factor, y in the middle and x
    at the end used as projection layer."""
    ctx.trace.tag = CaseTag.THREE_SPLIT
    (a, Lx), (b, Ly), (c, Lz) = x, y, z
    ry, rz = ctx.route(Lx, Ly), ctx.route(Lx, Lz)
    xs, ys, zs = render(a, Lx), render(b, Ly), render(c, Lz)
    ctx.trace.relabeling.update({"x": xs, "y": ys, "z": zs, "projection_layer": Lx,
                                 "middle_layer": Ly, "far_layer": Lz})
    ctx.add_layers(rz)
    if len({a, b, c}) == 3:
        ctx.trace.subcase = "distinct"
        sp = (a, b, c)
        bad = terminal_edges(ctx.g, sp)
        trees = ctx.trees_for(sp, bad)
        ctx.use_trees(trees)
        good, worse = _split_bad(trees, bad)
        generic = [_reroute(t, Lx, {b: ry, c: rz}) for t in good[: len(good) - (not worse)]]
        ctx.out += generic
        if len(worse) <= 1:
            special = worse[0] if worse else good[-1]
            ctx.out.append(_emb(special.edges, Lx) + _col(b, ry) + _col(c, rz))
            if ctx.opts.get("extra", True):
                ctx.out.append(_emb(special.edges, Lz) + _col(a, rz[::-1])
                               + _col(b, ctx.route(Lz, Ly)))
        else:
            ctx.trace.subcase += "+completion"
            used = {v for t in generic for e in t for v in e} - {xs, ys, zs}
            ctx.out += _residual(ctx, worse, used, rz, [xs, ys, zs],
                                 len(worse) + int(ctx.opts.get("extra", True)))
        return
    if b == c and a != b:
        ctx.trace.subcase = "two-coincide"
        paths = ctx.paths_for(a, b, ctx.want)
        ctx.use_paths(paths)
        for p in paths:
            if len(p) == 2:
                ctx.out.append([(xs, render(b, Lx))] + _col(b, rz))
            else:
                nb = p[-2]
                ctx.out.append(_emb(_path_edges(p[:-1]), Lx) + _col(nb, rz)
                               + [(render(nb, Ly), ys), (render(nb, Lz), zs)])
        return
    if a == c and a != b:
        ctx.trace.subcase = "two-coincide"
        paths = ctx.paths_for(a, b, ctx.want)
        ctx.use_paths(paths)
        for p in paths:
            if len(p) == 2:
                ctx.out.append(_col(b, rz) + [(render(b, Lx), xs), (render(b, Lz), zs)])
            else:
                na = p[1]
                ctx.out.append(_col(na, rz) + [(render(na, Lx), xs), (render(na, Lz), zs)]
                               + _emb(_path_edges(p[1:]), Ly))
        return
    if a == b and a != c:
        # project from the other end instead
        ctx.trace.relabeling.clear()
        ctx.trace.layers.clear()
        return _collinear(ctx, z, y, x)
    ctx.trace.subcase = "all-coincide"
    w = min(v for v in ctx.g.vertices if v != a)
    paths = ctx.paths_for(a, w, ctx.want)
    ctx.use_paths(paths)
    ctx.trace.relabeling["helper"] = w
    for p in paths:
        na = p[1]
        ctx.out.append(_col(na, rz) + [(render(na, L), render(a, L)) for L in (Lx, Ly, Lz)])


def _median(tf: Graph, p: str, q: str, r: str) -> str:
    common = set(tf.tree_path(p, q)) & set(tf.tree_path(q, r)) & set(tf.tree_path(p, r))
    (m,) = common
    return m


def _branch(ctx: _Context, x, y, z):
    """Three layers not on a common path: project into the branch layer."""
    ctx.trace.tag = CaseTag.TREE_BRANCH
    terms = [x, y, z]
    v4 = _median(ctx.tf, x[1], y[1], z[1])
    routes = {t: ctx.route(v4, t[1]) for t in terms}
    labels = {t: render(*t) for t in terms}
    ctx.trace.relabeling.update({"x": labels[x], "y": labels[y], "z": labels[z],
                                 "branch_layer": v4})
    ctx.add_layers(*routes.values())
    coords = [t[0] for t in terms]
    if len(set(coords)) == 3:
        ctx.trace.subcase = "distinct"
        sp = tuple(coords)
        bad = terminal_edges(ctx.g, sp)
        trees = ctx.trees_for(sp, bad)
        ctx.use_trees(trees)
        good, worse = _split_bad(trees, bad)
        remote = {t[0]: routes[t] for t in terms}
        generic = [_reroute(t, v4, remote) for t in good[: len(good) - (not worse)]]
        ctx.out += generic
        if len(worse) <= 1:
            special = worse[0] if worse else good[-1]
            pivot = _pick_pivot(special, terms, ctx.opts.get("pivot"))
            others = [t for t in terms if t != pivot]
            star = _reroute(special, v4, {t[0]: routes[t] for t in others})
            ctx.out.append(star + _col(pivot[0], routes[pivot]))
            ctx.trace.relabeling["pivot"] = labels[pivot]
            if ctx.opts.get("extra", True):
                extra = _emb(special.edges, pivot[1])
                for t in others:
                    extra += _col(t[0], ctx.route(pivot[1], t[1]))
                ctx.out.append(extra)
        else:
            ctx.trace.subcase += "+completion"
            used = {v for t in generic for e in t for v in e} - set(labels.values())
            layers = [L for r in routes.values() for L in r]
            ctx.out += _residual(ctx, worse, used, layers, list(labels.values()),
                                 len(worse) + int(ctx.opts.get("extra", True)))
        return
    if len(set(coords)) == 2:
        ctx.trace.subcase = "two-coincide"
        odd = next(t for t in terms if coords.count(t[0]) == 1)
        pair = [t for t in terms if t != odd]
        a, b = odd[0], pair[0][0]
        paths = ctx.paths_for(a, b, ctx.want)
        ctx.use_paths(paths)
        for p in paths:
            if len(p) == 2:
                tree = [(render(a, v4), render(b, v4))] + _col(a, routes[odd])
                for t in pair:
                    tree += _col(b, routes[t])
            else:
                na, nb = p[1], p[-2]
                tree = _emb(_path_edges(p[1:-1]), v4) + _col(na, routes[odd])
                tree.append((render(na, odd[1]), labels[odd]))
                for t in pair:
                    tree += _col(nb, routes[t]) + [(render(nb, t[1]), labels[t])]
            ctx.out.append(tree)
        return
    ctx.trace.subcase = "all-coincide"
    a = coords[0]
    w = min(v for v in ctx.g.vertices if v != a)
    ctx.trace.relabeling["helper"] = w
    paths = ctx.paths_for(a, w, ctx.want)
    ctx.use_paths(paths)
    for p in paths:
        na = p[1]
        tree = []
        for t in terms:
            tree += _col(na, routes[t]) + [(render(na, t[1]), labels[t])]
        ctx.out.append(tree)


def _pick_pivot(t: STree, terms, preferred):
    """The terminal kept in the branch layer: forced to be the middle of a
    path-shaped tree, otherwise ``preferred`` (an index) or the first."""
    if shape(t) is Shape.PATH:
        return next(term for term in terms if t.degree(term[0]) == 2)
    return terms[preferred or 0]


def _dispatch(ctx: _Context, x, y, z):
    layers = [x[1], y[1], z[1]]
    if len(set(layers)) == 1:
        return _same_layer(ctx, x, y, z)
    if len(set(layers)) == 2:
        if x[1] == y[1]:
            return _two_one(ctx, x, y, z)
        if x[1] == z[1]:
            return _two_one(ctx, x, z, y)
        return _two_one(ctx, y, z, x)
    terms = [x, y, z]
    for mid in terms:
        ends = [t for t in terms if t is not mid]
        if mid[1] in ctx.tf.tree_path(ends[0][1], ends[1][1]):
            first = ends[ctx.opts.get("extreme", 0) % 2]
            last = ends[1 - ctx.opts.get("extreme", 0) % 2]
            ctx.trace.notes.append("terminal layers lie on one path of the second factor")
            return _collinear(ctx, first, mid, last)
    return _branch(ctx, x, y, z)


def _finish(ctx: _Context, product: Graph, labels: list[str]) -> Certificate:
    terms = tuple(sorted(labels))
    trees = []
    for raw in ctx.out:
        t = STree.from_edges(set(edge_key(u, v) for u, v in raw), terms)
        if t.problems():
            raise ConstructionError(f"assembled subgraph is not a tree: {t.problems()}", ctx.trace)
        trees.append(minimal_stree(t))
    return Certificate(terms, trees, product.name)


def _seal(product: Graph, cert: Certificate, trace: ConstructionTrace) -> Construction:
    report = validate_certificate(product, cert)
    if report:
        trace.notes += [str(v) for v in report]
        raise ConstructionError("constructed certificate failed validation", trace)
    census = census_edge_kinds(cert, trace, product)
    if census["violations"]:
        trace.notes += census["violations"]
        raise ConstructionError("constructed certificate failed the edge census", trace)
    return Construction(cert, trace)


# ----------------------------------------------------------------------
# factor data and bounds


@functools.lru_cache(maxsize=256)
def _factor_numbers(g: Graph) -> tuple[int, int]:
    return kappa3(g).value, vertex_connectivity(g)


def _path_bound(g: Graph, mode: str | None, family: str) -> dict:
    if not g.is_connected():
        raise BoundError("first factor must be connected", "G connected")
    k, kap = _factor_numbers(g)
    if k < 1:
        raise BoundError("first factor needs generalized 3-connectivity at least 1",
                         "kappa3(G) >= 1")
    detected = "ii" if kap > k else "i"
    if mode is None:
        mode = detected
    if mode == "ii" and detected == "i":
        raise BoundError(f"kappa(G) = kappa3(G) = {k}; the +1 bound needs kappa(G) > kappa3(G)",
                         "kappa(G) > kappa3(G)")
    if mode not in ("i", "ii"):
        raise ArgumentError(f"mode must be 'i' or 'ii', not {mode!r}")
    required = k + 1 if mode == "ii" else k
    return {"family": family, "mode": mode, "kappa3_G": k, "kappa_G": kap, "required": required}


def _terminal_pairs(s, product: Graph) -> list[tuple[str, str]]:
    pairs = [_as_pair(v, product) for v in s]
    for u, L in pairs:
        product.require(render(u, L))
    if len(set(pairs)) != 3:
        raise ArgumentError("need three distinct terminals")
    return pairs


def _single(g: Graph, tf: Graph, s, mode: str | None, family: str, opts=None) -> Construction:
    opts = dict(opts or {})
    bound = _path_bound(g, mode, family)
    product = cartesian_product(g, tf)
    pairs = _terminal_pairs(s, product)
    want = bound["kappa3_G"] + 1
    ctx = _Context(g, tf, lambda sp, bad: _factor_trees(g, sp, bad),
                   lambda u, v, n: _menger(g, u, v, n), want, opts)
    _dispatch(ctx, *pairs)
    ctx.trace.bound = bound
    labels = [render(*p) for p in pairs]
    cert = _finish(ctx, product, labels)
    if opts.get("augment", True) and len(cert) < want:
        cert = _augment(g, product, ctx.trace, cert, labels, want, opts.get("budget", 2_000_000))
    return _seal(product, cert, ctx.trace)


def _supplement(g: Graph, trace: ConstructionTrace, coords) -> None:
    """Record a full packing for the projected triple and full Menger
    systems between distinct projections as further factor objects."""
    distinct = sorted(set(coords))
    triples = [tuple(distinct)] if len(distinct) == 3 else [
        tuple(sorted(set(distinct) | {x})) for x in g.vertices if x not in distinct]
    for sp in triples:
        if len(set(sp)) == 3:
            trace.factor_trees += [sorted(t.edges) for t in kappa_S(g, sp).certificate.trees]
    for u, v in combinations(distinct, 2):
        trace.menger_paths += menger_paths(g, u, v, local_connectivity(g, u, v))
    if len(distinct) == 1:
        a = distinct[0]
        w = min(x for x in g.vertices if x != a)
        trace.menger_paths += menger_paths(g, a, w, local_connectivity(g, a, w))


def _augment(g: Graph, product: Graph, trace: ConstructionTrace, cert: Certificate, labels, want: int,
             budget: int) -> Certificate:
    """Try for ``want`` trees when the proven bound is smaller, searching
    only over copies of the factor edges already used and two-type edges."""
    every = {product.pairs[v][1] for v in product.vertices}
    saved = trace.layers, list(trace.factor_trees), list(trace.menger_paths)
    trace.layers = sorted(every)
    _supplement(g, trace, [product.pairs[v][0] for v in labels])
    try:
        found = _complete_groups(product, trace, [], labels, want, budget, every)
    except BudgetExhausted:
        found = []
    trace.notes.pop()
    if not found:
        trace.layers, trace.factor_trees, trace.menger_paths = saved
        return cert
    trace.notes.append(f"proven bound is {len(cert)}; search over factor-edge copies found {want}")
    return Certificate(cert.terminals, found, cert.host)


def construct_path_product(g: Graph, m, s, mode: str | None = None, **opts) -> Construction:
    """Internally disjoint S-trees in g x P_m.

    ``m`` is a path length (layers ``v1..vm``) or a path graph.  ``mode`` is
    "ii" for the kappa3(G)+1 bound (needs kappa(G) > kappa3(G)), "i" for
    kappa3(G), or None to pick from the factor.
    """
    if isinstance(m, int):
        from .families import path
        path_graph = path(m)
    else:
        path_graph = m
        if not path_graph.is_tree() or max((path_graph.degree(v) for v in path_graph), default=0) > 2:
            raise ArgumentError("second factor is not a path")
    return _single(g, path_graph, s, mode, "path", opts)


def construct_tree_product(g: Graph, t: Graph, s, mode: str | None = None, **opts) -> Construction:
    """Internally disjoint S-trees in g x T for a tree T."""
    if not t.is_tree():
        raise ArgumentError("second factor is not a tree")
    return _single(g, t, s, mode, "tree", opts)


# ----------------------------------------------------------------------
# two general factors


def _groups(items: list, parts: int) -> list[list]:
    base, extra = divmod(len(items), parts)
    out, i = [], 0
    for j in range(parts):
        size = base + (j < extra)
        out.append(items[i:i + size])
        i += size
    return out


def _anchor_structures(h: Graph, layers: list[str], ell: int) -> tuple[list[Graph], str]:
    distinct = list(dict.fromkeys(layers))
    if len(distinct) == 3:
        cert = kappa_S(h, distinct).certificate
        trees = [Graph([], sorted(t.edges)) for t in cert.trees[:ell]]
        return trees, "anchor-trees"
    if len(distinct) == 2:
        paths = menger_paths(h, distinct[0], distinct[1], ell)
        return [Graph(p, _path_edges(p)) for p in paths], "anchor-paths"
    (L,) = distinct
    return [Graph([L, w], [(L, w)]) for w in h.neighbors(L)[:ell]], "anchor-edges"


def construct_two_factor(g: Graph, h: Graph, s, mode: str | None = None, **opts) -> Construction:
    """Internally disjoint S-trees in g x h, splitting the factor packing of
    ``g`` into groups, one per second-factor anchor structure."""
    if not g.is_connected() or not h.is_connected():
        raise BoundError("both factors must be connected", "G, H connected")
    k, kap = _factor_numbers(g)
    ell, _ = _factor_numbers(h)
    if k < ell:
        raise ArgumentError(
            f"kappa3(G) = {k} < kappa3(H) = {ell}: swap the factors (the product is commutative)")
    if ell < 1:
        raise BoundError("second factor needs kappa3 >= 1", "kappa3(H) >= 1")
    detected = "i" if kap > k else "ii"
    mode = mode or detected
    if mode == "i" and detected == "ii":
        raise BoundError("the k+l bound needs kappa(G) > kappa3(G)", "kappa(G) > kappa3(G)")
    required = k + ell if mode == "i" else k + ell - 1
    bound = {"family": "two-factor", "mode": mode, "kappa3_G": k, "kappa_G": kap,
             "kappa3_H": ell, "required": required}
    if h.is_tree():
        out = construct_tree_product(g, h, s, "ii" if mode == "i" else "i", **opts)
        out.trace.bound = bound
        out.trace.notes.append("second factor is a tree")
        return out

    product = cartesian_product(g, h)
    pairs = _terminal_pairs(s, product)
    labels = [render(*p) for p in pairs]
    if ell == 1:
        anchors, kind = _anchor_structures(h, [p[1] for p in pairs], 1)
        tf = _spanning_anchor(h, anchors[0], [p[1] for p in pairs])
        ctx = _Context(g, tf, lambda sp, bad: _factor_trees(g, sp, bad),
                       lambda u, v, n: _menger(g, u, v, n), k + 1, dict(opts))
        _dispatch(ctx, *pairs)
        ctx.trace.anchor_trees.append(sorted(tf.edges))
        ctx.trace.bound = bound
        ctx.trace.notes.append(f"single {kind[:-1]} of the second factor")
        cert = _finish(ctx, product, labels)
        cert.host = product.name
        return _seal(product, cert, ctx.trace)

    anchors, kind = _anchor_structures(h, [p[1] for p in pairs], ell)
    coords = [p[0] for p in pairs]
    trace = ConstructionTrace(CaseTag.GROUP_PARTITION, kind, bound=bound)
    trace.anchor_trees = [sorted(a.edges) for a in anchors]
    if len(set(coords)) == 3:
        pool = _factor_trees(g, tuple(coords), terminal_edges(g, tuple(coords)))
        te = terminal_edges(g, tuple(coords))
        # spread trees that use terminal edges over different groups
        touching = [t for t in pool if t.edges & te]
        clean = [t for t in pool if not t.edges & te]
        groups = [[] for _ in range(ell)]
        for i, t in enumerate(touching):
            groups[i % ell].append(t)
        for t in clean:
            min(groups, key=len).append(t)
        providers = [(lambda sp, bad, grp=grp: list(grp), None) for grp in groups]
        trace.subcase += "+distinct-projection"
    else:
        u, v = _coincidence_pair(g, coords)
        paths = _menger(g, u, v, local_connectivity(g, u, v))
        groups = _groups(paths, ell)
        providers = [(None, lambda a, b, n, grp=grp: [p if p[0] == a else p[::-1] for p in grp])
                     for grp in groups]
        trace.subcase += "+coinciding-projection"

    best = None
    for choice in _slab_options(len(anchors)):
        attempt = []
        slab_traces = []
        try:
            for j, (anchor, (tprov, pprov)) in enumerate(zip(anchors, providers)):
                tf = _spanning_anchor(h, anchor, [p[1] for p in pairs])
                ctx = _Context(g, tf, tprov or (lambda sp, bad: []), pprov or
                               (lambda a, b, n: []), k + 1, {**opts, **choice[j]})
                _dispatch(ctx, *pairs)
                ctx.trace.anchor_trees.append(sorted(tf.edges))
                slab_traces.append(ctx.trace)
                attempt.append(_finish(ctx, product, labels).trees)
        except ConstructionError:
            continue
        merged = _merge(attempt, set(labels))
        if best is None or len(merged) > len(best[0]):
            best = (merged, slab_traces, choice)
        if len(merged) >= required:
            break
    if best is None:
        raise ConstructionError("no slab construction succeeded", trace)
    merged, slab_traces, choice = best
    trace.slabs = slab_traces
    trace.relabeling = {"slab_options": [dict(c) for c in choice]}
    if len(merged) < required:
        budget = opts.get("budget", 2_000_000)
        merged = merged + _complete_groups(product, trace, merged, labels,
                                           required - len(merged), budget)
        if len(merged) < required:
            every = {product.pairs[v][1] for v in product.vertices}
            found = _complete_groups(product, trace, [], labels, required, budget, every)
            if found:
                merged = found
                trace.layers = sorted(every)
    cert = Certificate(tuple(sorted(labels)), merged, product.name)
    if len(merged) < required:
        trace.notes.append(f"slabs gave {len(merged)} compatible trees, {required} required")
        raise ConstructionError(
            f"group construction reached {len(merged)} of {required} trees", trace)
    return _seal(product, cert, trace)


def _complete_groups(product: Graph, trace: ConstructionTrace, kept: list[STree],
                     labels: list[str], need: int, budget: int,
                     layers: set | None = None) -> list[STree]:
    """Search for ``need`` more trees among unused vertices, restricted to
    two-type edges and copies of factor edges already in play."""
    terms = set(labels)
    used = {v for t in kept for v in t.vertices} - terms
    taken = {e for t in kept for e in t.edges}
    allowed = trace.factor_edges
    layers = trace.all_layers if layers is None else layers
    edges = []
    for u, v in product.edges:
        if u in used or v in used or (u, v) in taken:
            continue
        if edge_kind(product, u, v) is EdgeKind.ONE_TYPE:
            (a, L), (b, _) = split(product, u), split(product, v)
            if edge_key(a, b) not in allowed or L not in layers:
                continue
        edges.append((u, v))
    sub = Graph(set(product.vertices) - used, edges)
    cert = pack(sub, labels, need, budget=budget)
    trace.notes.append(f"slab merge left {need} trees short; residual search "
                       f"{'found them' if cert else 'failed'}")
    return list(cert.trees) if cert else []


def _coincidence_pair(g: Graph, coords):
    for u, v in combinations(coords, 2):
        if u != v:
            return u, v
    a = coords[0]
    return a, min(v for v in g.vertices if v != a)


def _spanning_anchor(h: Graph, anchor: Graph, layers) -> Graph:
    return anchor if all(L in anchor for L in layers) else h.subgraph(layers)


def _slab_options(n: int):
    """Per-slab pivot / projection choices, distinct pivots first."""
    seen = 0
    for perm in permutations(range(3), min(n, 3)):
        picks = list(perm) + [0] * (n - len(perm))
        yield [{"pivot": p, "extreme": p % 2} for p in picks]
        seen += 1
        if seen >= 6:
            break
    for ext in range(2 ** min(n, 4)):
        yield [{"pivot": 0, "extreme": (ext >> j) & 1} for j in range(n)]


def _merge(slabs: list[list[STree]], terms: set) -> list[STree]:
    """Keep trees in slab order while they stay pairwise internally disjoint."""
    kept: list[STree] = []
    for trees in slabs:
        for t in trees:
            if all(not (t.edges & o.edges) and (t.vertices & o.vertices) <= terms for o in kept):
                kept.append(t)
    return kept


# ----------------------------------------------------------------------
# edge census


def census_edge_kinds(c: Certificate, trace: ConstructionTrace, product: Graph) -> dict:
    """Count one-type/two-type edges; flag any one-type edge that is not a
    factor-tree edge (or its copy) in a layer the construction declared."""
    allowed = trace.factor_edges
    layers = trace.all_layers
    per_tree = []
    violations = []
    one = two = 0
    for i, t in enumerate(c.trees):
        o = w = 0
        for u, v in sorted(t.edges):
            kind = edge_kind(product, u, v)
            if kind is EdgeKind.TWO_TYPE:
                w += 1
                continue
            o += 1
            (a, L), (b, _) = split(product, u), split(product, v)
            if edge_key(a, b) not in allowed:
                violations.append(f"T{i + 1}: one-type edge {u}-{v} copies no factor tree or path edge")
            elif L not in layers:
                violations.append(f"T{i + 1}: one-type edge {u}-{v} lies in layer {L} "
                                  f"which hosts no factor-tree copy")
        per_tree.append({"one_type": o, "two_type": w})
        one += o
        two += w
    trace.census = {"one_type": one, "two_type": two, "per_tree": per_tree}
    return {"one_type": one, "two_type": two, "per_tree": per_tree, "violations": violations}
