import random

import networkx as nx
import pytest

from steinerprod.errors import ArgumentError, InfeasibleError, LabelError, LookupFailure, LoopError, ParseError
from steinerprod.families import complete, cycle, hypercube, path, random_connected_graph
from steinerprod.graph import (
    EdgeKind,
    Graph,
    ProductVertex,
    brute_force_connectivity,
    cartesian_product,
    edge_kind,
    is_internally_disjoint_paths,
    layer,
    local_connectivity,
    menger_paths,
    parse_graph,
    split,
    to_dot,
    vertex_connectivity,
)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


class TestParse:
    def test_basic(self):
        g = parse_graph("a b\nb c")
        assert g.n == 3 and g.m == 2

    def test_duplicate_collapses(self):
        g = parse_graph("a b\nb a")
        assert g.n == 2 and g.m == 1

    def test_loop(self):
        with pytest.raises(LoopError):
            parse_graph("a a")

    def test_comments_blank_and_isolated(self):
        g = parse_graph("# header\n\na b  # trailing\nc\n")
        assert g.vertices == ("a", "b", "c")
        assert g.degree("c") == 0

    def test_malformed_line_number(self):
        with pytest.raises(ParseError) as exc:
            parse_graph("a b\nx y z\n")
        assert exc.value.lineno == 2
        assert "line 2" in str(exc.value)

    def test_pipe_rejected(self):
        with pytest.raises(LabelError):
            parse_graph("a|b c")

    def test_pipe_allowed_for_products(self):
        g = parse_graph("a|x b|x", allow_product_labels=True)
        assert g.m == 1

    def test_roundtrip_edgelist(self):
        g = cycle(5)
        assert parse_graph(g.to_edgelist()) == g


class TestGraph:
    def test_unknown_vertex(self):
        g = path(3)
        with pytest.raises(LookupFailure):
            g.neighbors("zz")

    def test_edges_sorted_and_simple(self):
        g = Graph([], [("b", "a"), ("a", "b")])
        assert g.edges == (("a", "b"),)

    def test_components(self):
        g = Graph(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])
        assert sorted(map(sorted, g.components())) == [["a", "b"], ["c", "d"]]
        assert not g.is_connected()

    def test_tree_path(self):
        assert path(5).tree_path("v1", "v4") == ["v1", "v2", "v3", "v4"]


class TestProduct:
    def test_p2_p2_is_c4(self):
        p = cartesian_product(path(2), path(2))
        assert p.n == 4 and p.m == 4
        assert all(p.degree(v) == 2 for v in p)

    def test_q3(self):
        p = cartesian_product(cartesian_product(path(2), path(2)), path(2))
        assert p.n == 8 and p.m == 12

    def test_prism(self):
        g = complete(3)
        h = path(2)
        p = cartesian_product(g, h)
        assert p.n == 6 and p.m == 9
        expected = set()
        for (a, b) in [(x, y) for x in g for y in g if x < y]:
            for v in h:
                expected.add(tuple(sorted((f"{a}|{v}", f"{b}|{v}"))))
        for u in g:
            expected.add((f"{u}|v1", f"{u}|v2"))
        assert set(p.edges) == expected

    def test_edge_counts_random(self):
        rng = random.Random(3)
        for _ in range(20):
            g = random_connected_graph(rng.randint(1, 5), rng)
            h = random_connected_graph(rng.randint(1, 5), rng)
            p = cartesian_product(g, h)
            assert p.n == g.n * h.n
            assert p.m == g.m * h.n + g.n * h.m

    def test_edge_kinds(self):
        p = cartesian_product(complete(3), path(2))
        assert edge_kind(p, "u1|v1", "u2|v1") is EdgeKind.ONE_TYPE
        assert edge_kind(p, "u1|v1", "u1|v2") is EdgeKind.TWO_TYPE
        with pytest.raises(ArgumentError):
            edge_kind(p, "u1|v1", "u2|v2")

    def test_split_and_render(self):
        p = cartesian_product(complete(2), path(2))
        assert split(p, "u1|v2") == ("u1", "v2")
        assert ProductVertex("u1", "v2").label == "u1|v2"

    def test_layers_isomorphic(self):
        g, h = cycle(4), path(3)
        p = cartesian_product(g, h)
        lay = layer(g, h, "G", "v2")
        assert len(lay) == g.n
        sub = p.subgraph(lay.vertices)
        assert sub.m == g.m
        assert all(p.has_edge(lay.iso[a], lay.iso[b]) for a, b in g.edges)
        hl = layer(g, h, "H", "v1")
        assert p.subgraph(hl.vertices).m == h.m


class TestConnectivity:
    def test_examples(self):
        assert vertex_connectivity(complete(4)) == 3
        assert vertex_connectivity(path(5)) == 1
        assert vertex_connectivity(hypercube(3)) == 3
        assert brute_force_connectivity(hypercube(3)) == 3

    def test_degenerate(self):
        assert vertex_connectivity(Graph(["a"])) == 0
        assert vertex_connectivity(Graph(["a", "b"])) == 0

    def test_against_networkx(self):
        rng = random.Random(11)
        for _ in range(60):
            g = random_connected_graph(rng.randint(2, 8), rng)
            assert vertex_connectivity(g) == nx.node_connectivity(to_nx(g))

    def test_local_against_networkx(self):
        rng = random.Random(5)
        for _ in range(40):
            g = random_connected_graph(rng.randint(3, 8), rng)
            x, y = rng.sample(g.vertices, 2)
            expected = nx.node_connectivity(to_nx(g), x, y) if not g.has_edge(x, y) else None
            got = local_connectivity(g, x, y)
            if expected is not None:
                assert got == expected
            paths = menger_paths(g, x, y, got)
            assert len(paths) == got
            assert is_internally_disjoint_paths(g, x, y, paths) == []

    def test_menger_direct_edge_first(self):
        paths = menger_paths(complete(4), "u1", "u2", 3)
        assert paths[0] == ["u1", "u2"]
        assert sorted(len(p) for p in paths) == [2, 3, 3]

    def test_menger_infeasible(self):
        with pytest.raises(InfeasibleError) as exc:
            menger_paths(cycle(5), "v1", "v3", 3)
        assert exc.value.achievable == 2

    def test_disjoint_path_checker_flags_shared_vertex(self):
        g = complete(4)
        bad = [["u1", "u3", "u2"], ["u1", "u3", "u4", "u2"]]
        assert is_internally_disjoint_paths(g, "u1", "u2", bad)


def test_dot_colours_trees():
    g = cycle(4)
    text = to_dot(g, [[("v1", "v2")], [("v3", "v4")]], terminals=["v1"])
    assert text.startswith('graph "C4"')
    assert 'label="T1"' in text and 'label="T2"' in text
    assert '"v1" [shape=doublecircle]' in text
