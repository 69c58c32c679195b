from itertools import combinations

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from steinerprod.families import complete, example31, path, random_tree, upper_bounds
from steinerprod.graph import (
    Graph,
    brute_force_connectivity,
    cartesian_product,
    is_internally_disjoint_paths,
    local_connectivity,
    menger_paths,
    render,
    vertex_connectivity,
)
from steinerprod.product import census_edge_kinds, construct_tree_product
from steinerprod.steiner import (
    Certificate,
    STree,
    exhaustive_kappa_S,
    kappa3,
    kappa_S,
    minimal_stree,
    pack,
    rebalance_trees,
    shape,
    terminal_edges,
    touching_count,
    validate_certificate,
)

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, min_n=1, max_n=6, connected=False):
    n = draw(st.integers(min_n, max_n))
    names = [f"x{i}" for i in range(n)]
    pairs = list(combinations(names, 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, mask) if keep]
    if connected:
        order = draw(st.permutations(names))
        for i in range(1, n):
            j = draw(st.integers(0, i - 1))
            edges.append((order[i], order[j]))
    return Graph(names, edges)


@st.composite
def graph_with_triple(draw, min_n=3, max_n=6):
    g = draw(graphs(min_n, max_n, connected=draw(st.booleans())))
    s = draw(st.lists(st.sampled_from(g.vertices), min_size=3, max_size=3, unique=True))
    return g, s


@SETTINGS
@given(graphs(1, 4), graphs(1, 4))
def test_product_counts(g, h):
    h = h.relabel({v: v.replace("x", "y") for v in h.vertices})
    p = cartesian_product(g, h)
    assert p.n == g.n * h.n
    assert p.m == g.m * h.n + g.n * h.m


@SETTINGS
@given(graphs(1, 4), graphs(1, 4))
def test_product_commutes_by_explicit_map(g, h):
    h = h.relabel({v: v.replace("x", "y") for v in h.vertices})
    gh, hg = cartesian_product(g, h), cartesian_product(h, g)
    swap = {render(u, v): render(v, u) for u in g for v in h}
    assert {tuple(sorted((swap[a], swap[b]))) for a, b in gh.edges} == set(hg.edges)


@SETTINGS
@given(graphs(1, 3), graphs(1, 3), graphs(1, 3))
def test_product_associates_by_explicit_map(a, b, c):
    b = b.relabel({v: v.replace("x", "y") for v in b.vertices})
    c = c.relabel({v: v.replace("x", "z") for v in c.vertices})
    left = cartesian_product(cartesian_product(a, b), c)
    right = cartesian_product(a, cartesian_product(b, c))
    # both render as "u|v|w"; the map is the identity on labels
    assert set(left.vertices) == set(right.vertices)
    assert set(left.edges) == set(right.edges)


@SETTINGS
@given(graphs(1, 4), graphs(1, 4))
def test_product_connected_iff_factors(g, h):
    h = h.relabel({v: v.replace("x", "y") for v in h.vertices})
    assert cartesian_product(g, h).is_connected() == (g.is_connected() and h.is_connected())


@SETTINGS
@given(graphs(2, 8))
def test_connectivity_matches_brute_force(g):
    assert vertex_connectivity(g) == brute_force_connectivity(g)


@SETTINGS
@given(graphs(2, 7, connected=True), st.data())
def test_menger_paths_valid(g, data):
    x, y = data.draw(st.lists(st.sampled_from(g.vertices), min_size=2, max_size=2, unique=True))
    k = local_connectivity(g, x, y)
    paths = menger_paths(g, x, y, k)
    assert len(paths) == k
    assert is_internally_disjoint_paths(g, x, y, paths) == []


@SETTINGS
@given(graph_with_triple(3, 7))
def test_kappa_s_certificate(gs):
    g, s = gs
    r = kappa_S(g, s)
    assert len(r.certificate) == r.value
    assert validate_certificate(g, r.certificate) == []


@settings(max_examples=30, deadline=None)
@given(graph_with_triple(3, 6))
def test_kappa_s_matches_exhaustive(gs):
    g, s = gs
    assert kappa_S(g, s).value == exhaustive_kappa_S(g, s)


@settings(max_examples=8, deadline=None)
@given(graph_with_triple(7, 7))
def test_kappa_s_matches_exhaustive_seven(gs):
    g, s = gs
    assume(g.m <= 11)
    assert kappa_S(g, s).value == exhaustive_kappa_S(g, s)


@SETTINGS
@given(graphs(3, 8, connected=True), st.data())
def test_minimal_stree_idempotent(g, data):
    s = tuple(data.draw(st.lists(st.sampled_from(g.vertices), min_size=3, max_size=3, unique=True)))
    # a BFS spanning tree from a random root
    root = data.draw(st.sampled_from(g.vertices))
    seen, edges, frontier = {root}, [], [root]
    while frontier:
        v = frontier.pop(0)
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                edges.append((v, w))
                frontier.append(w)
    m = minimal_stree(STree.from_edges(edges, s))
    assert minimal_stree(m) == m
    shape(m)
    assert m.edges <= {tuple(sorted(e)) for e in edges}


@SETTINGS
@given(graph_with_triple(4, 7))
def test_rebalance_keeps_size_and_bound(gs):
    g, s = gs
    c = kappa_S(g, s).certificate
    assume(len(c) >= 2)
    out = rebalance_trees(g, s, c)
    assert len(out) == len(c)
    assert validate_certificate(g, out) == []
    assert touching_count(g, out) <= touching_count(g, c)
    limit = 2 if len(terminal_edges(g, s)) == 3 else 1
    if pack(g, s, len(c), max_touching=limit) is not None:
        assert touching_count(g, out) <= limit


@settings(max_examples=25, deadline=None)
@given(graphs(3, 7, connected=True))
def test_kappa3_below_upper_bounds(g):
    k = kappa3(g).value
    delta_bound, kap = upper_bounds(g)
    assert k <= kap
    if delta_bound is not None:
        assert k <= delta_bound


@SETTINGS
@given(graphs(2, 4, connected=True), graphs(2, 4, connected=True))
def test_sabidussi(g, h):
    h = h.relabel({v: v.replace("x", "y") for v in h.vertices})
    p = cartesian_product(g, h)
    assert vertex_connectivity(p) >= vertex_connectivity(g) + vertex_connectivity(h)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["K4", "K5", "EX31"]), st.integers(2, 6), st.integers(0, 50), st.data())
def test_tree_products_sound(gname, m, seed, data):
    g = {"K4": complete(4), "K5": complete(5), "EX31": example31(2)}[gname]
    t = random_tree(m, seed)
    prod = cartesian_product(g, t)
    s = data.draw(st.lists(st.sampled_from(prod.vertices), min_size=3, max_size=3, unique=True))
    c = construct_tree_product(g, t, s)
    assert validate_certificate(prod, c.certificate) == []
    assert census_edge_kinds(c.certificate, c.trace, prod)["violations"] == []
    assert len(c) >= c.trace.bound["required"]
