import json
import random
from itertools import combinations

import pytest

from steinerprod.errors import ArgumentError, BoundError
from steinerprod.families import complete, complete_bipartite, cycle, example31, path, random_tree, star
from steinerprod.graph import EdgeKind, Graph, cartesian_product, edge_kind
from steinerprod.product import (
    CaseTag,
    census_edge_kinds,
    construct_path_product,
    construct_tree_product,
    construct_two_factor,
    locate,
)
from steinerprod.steiner import Certificate, STree, kappa3, validate_certificate


def assert_sound(product, c):
    assert validate_certificate(product, c.certificate) == []
    assert census_edge_kinds(c.certificate, c.trace, product)["violations"] == []
    assert len(c.certificate) >= c.trace.bound["required"]


class TestLocate:
    def test_patterns(self):
        assert locate(["u1|v1", "u2|v1", "u3|v1"]).tag is CaseTag.SAME_LAYER
        assert locate(["u1|v1", "u2|v1", "u3|v2"]).tag is CaseTag.TWO_ONE_SPLIT
        loc = locate(["u1|v1", "u1|v2", "u3|v3"])
        assert loc.tag is None
        assert loc.layer_pattern == "distinct"
        assert loc.projection_pattern == "two-equal"

    def test_other_factor(self):
        loc = locate(["u1|v1", "u1|v2", "u1|v3"], factor="H")
        assert loc.layer_pattern == "all-equal"

    def test_rejects_repeats(self):
        with pytest.raises(ArgumentError):
            locate(["u1|v1", "u1|v1", "u2|v1"])


class TestPath:
    def test_same_layer(self):
        g = complete(4)
        prod = cartesian_product(g, path(2))
        c = construct_path_product(g, 2, ["u1|v1", "u2|v1", "u3|v1"])
        assert c.trace.tag is CaseTag.SAME_LAYER
        assert len(c) == 3
        assert_sound(prod, c)
        with_two = [t for t in c.certificate.trees
                    if any(edge_kind(prod, u, v) is EdgeKind.TWO_TYPE for u, v in t.edges)]
        assert len(with_two) == 1
        assert sum(edge_kind(prod, u, v) is EdgeKind.TWO_TYPE for u, v in with_two[0].edges) == 3

    def test_three_layers(self):
        g = complete(4)
        c = construct_path_product(g, 3, ["u1|v1", "u2|v2", "u3|v3"])
        assert c.trace.tag is CaseTag.THREE_SPLIT
        assert_sound(cartesian_product(g, path(3)), c)
        assert len(c) >= 3

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_every_triple_k4(self, m):
        g = complete(4)
        prod = cartesian_product(g, path(m))
        tags = set()
        for s in combinations(prod.vertices, 3):
            c = construct_path_product(g, m, s)
            assert_sound(prod, c)
            assert len(c) >= 3
            tags.add((c.trace.tag, c.trace.subcase))
        assert {t for t, _ in tags} >= {CaseTag.SAME_LAYER, CaseTag.TWO_ONE_SPLIT} | (
            {CaseTag.THREE_SPLIT} if m >= 3 else set())

    @pytest.mark.parametrize("second", [path(2), path(3), star(3)])
    def test_every_triple_bipartite(self, second):
        # K_{2,3} terminals such as a1, a2, b1 force two trees through G[S]
        g = complete_bipartite(2, 3)
        prod = cartesian_product(g, second)
        build = construct_path_product if second.name.startswith("P") else construct_tree_product
        for s in combinations(prod.vertices, 3):
            assert_sound(prod, build(g, second, s))

    def test_two_one_subcases(self):
        g = complete(4)
        a = construct_path_product(g, 2, ["u1|v1", "u2|v1", "u3|v2"])
        b = construct_path_product(g, 2, ["u1|v1", "u2|v1", "u2|v2"])
        assert (a.trace.subcase, b.trace.subcase) == ("projection-outside", "projection-coincides")

    def test_mode_checks(self):
        g = example31(2)
        with pytest.raises(BoundError) as exc:
            construct_path_product(g, 2, ["u1|v1", "u2|v1", "w|v1"], mode="ii")
        assert "kappa(G) > kappa3(G)" in exc.value.hypothesis
        c = construct_path_product(g, 2, ["u1|v1", "u2|v1", "w|v1"])
        assert c.trace.bound["mode"] == "i"
        assert_sound(cartesian_product(g, path(2)), c)

    def test_disconnected_factor(self):
        g = Graph(["a", "b", "c"], [("a", "b")])
        with pytest.raises(BoundError):
            construct_path_product(g, 2, ["a|v1", "b|v1", "c|v1"])

    def test_not_a_path(self):
        with pytest.raises(ArgumentError):
            construct_path_product(complete(4), star(3), ["u1|c", "u2|c", "u3|c"])

    def test_trace_json(self):
        c = construct_path_product(complete(4), 3, ["u1|v1", "u2|v2", "u3|v3"])
        d = json.loads(json.dumps(c.trace.to_dict()))
        assert d["case"] == "ThreeSplit"
        assert set(d["edge_census"]) == {"one_type", "two_type", "per_tree"}
        assert len(d["edge_census"]["per_tree"]) == len(c)
        assert d["relabeling"]["projection_layer"] in ("v1", "v3")


class TestTree:
    def test_star_leaves(self):
        g, t = complete(4), star(3)
        c = construct_tree_product(g, t, ["u1|l1", "u2|l2", "u3|l3"])
        assert c.trace.tag is CaseTag.TREE_BRANCH
        assert c.trace.relabeling["branch_layer"] == "c"
        assert len(c) >= 3
        assert_sound(cartesian_product(g, t), c)

    def test_star_all_coincide_helper(self):
        g, t = complete(4), star(3)
        c = construct_tree_product(g, t, ["u2|l1", "u2|l2", "u2|l3"])
        assert c.trace.subcase == "all-coincide"
        assert c.trace.relabeling["helper"] == "u1"
        assert len(c) >= 3
        assert_sound(cartesian_product(g, t), c)

    def test_collinear_matches_path(self):
        g, t = complete(4), star(3)
        s = ["u1|l1", "u2|c", "u3|l2"]
        c = construct_tree_product(g, t, s)
        p = Graph(["l1", "c", "l2"], [("l1", "c"), ("c", "l2")])
        assert len(c) == len(construct_path_product(g, p, s))

    def test_not_a_tree(self):
        with pytest.raises(ArgumentError):
            construct_tree_product(complete(4), cycle(4), ["u1|v1", "u2|v1", "u3|v1"])

    def test_random_trees_every_factor(self):
        rng = random.Random(4)
        for g in (complete(4), complete(5)):
            for seed in range(3):
                t = random_tree(6, seed)
                prod = cartesian_product(g, t)
                for _ in range(15):
                    s = rng.sample(prod.vertices, 3)
                    c = construct_tree_product(g, t, s)
                    assert_sound(prod, c)
                    assert len(c) >= kappa3(g).value + 1


class TestTwoFactor:
    def test_k4_k3(self):
        g, h = complete(4), complete(3)
        prod = cartesian_product(g, h)
        for s in combinations(prod.vertices, 3):
            c = construct_two_factor(g, h, s)
            assert_sound(prod, c)
            assert len(c) >= 3

    def test_k3_k3(self):
        g = complete(3)
        prod = cartesian_product(g, g)
        for s in combinations(prod.vertices, 3):
            c = construct_two_factor(g, g, s)
            assert_sound(prod, c)
            assert len(c) >= 1

    def test_two_groups(self):
        g, h = complete(4), complete(4)
        prod = cartesian_product(g, h)
        rng = random.Random(2)
        for _ in range(20):
            s = rng.sample(prod.vertices, 3)
            c = construct_two_factor(g, h, s)
            assert c.trace.tag is CaseTag.GROUP_PARTITION
            assert_sound(prod, c)
            assert len(c) >= 4

    def test_tree_second_factor_delegates(self):
        g, t = complete(4), star(3)
        s = ["u1|l1", "u2|l2", "u3|l3"]
        a = construct_two_factor(g, t, s)
        b = construct_tree_product(g, t, s)
        assert len(a) == len(b)
        assert a.trace.bound["family"] == "two-factor"

    def test_swap_hint(self):
        with pytest.raises(ArgumentError, match="swap"):
            construct_two_factor(complete(3), complete(4), ["u1|u1", "u2|u2", "u3|u3"])

    def test_disconnected(self):
        g = Graph(["a", "b", "c"], [("a", "b")])
        with pytest.raises(BoundError):
            construct_two_factor(complete(4), g, ["u1|a", "u2|a", "u3|a"])


class TestCensus:
    def test_clean(self):
        g = complete(4)
        c = construct_path_product(g, 3, ["u1|v1", "u1|v2", "u4|v3"])
        rep = census_edge_kinds(c.certificate, c.trace, cartesian_product(g, path(3)))
        assert rep["violations"] == []
        assert rep["one_type"] + rep["two_type"] == sum(len(t.edges) for t in c.certificate.trees)

    def test_foreign_layer_flagged(self):
        g = complete(4)
        prod = cartesian_product(g, path(3))
        c = construct_path_product(g, 3, ["u1|v1", "u2|v1", "u3|v1"])
        c.trace.layers = ["v1"]
        rep = census_edge_kinds(c.certificate, c.trace, prod)
        assert any("layer v2" in v for v in rep["violations"])

    def test_foreign_edge_flagged(self):
        g = complete(4)
        prod = cartesian_product(g, path(2))
        c = construct_path_product(g, 2, ["u1|v1", "u2|v1", "u3|v2"])
        s = c.certificate.terminals
        odd = STree.from_edges([("u1|v1", "u4|v1"), ("u4|v1", "u2|v1"), ("u4|v1", "u4|v2"),
                                ("u4|v2", "u3|v2")], s)
        c.trace.factor_trees = [[("u1", "u2")]]
        c.trace.menger_paths = []
        rep = census_edge_kinds(Certificate(s, [odd]), c.trace, prod)
        assert any("copies no factor" in v for v in rep["violations"])
