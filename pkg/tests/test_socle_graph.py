"""Layered graphs, Condition (Y), disjoint unions, the comparator."""

import pytest

from shiftsocle.families import ArithmeticFamily
from shiftsocle.points import family_member, periodic
from shiftsocle.socle_graph import (
    Component,
    Edge,
    LayeredGraph,
    Vertex,
    build_graph,
    build_layers,
    compare_invariants,
    condition_y_graph,
    condition_y_sigma,
    disjoint_union,
    dot_dump,
    evaluate_condition_y,
    json_dump,
    validate_graph,
)
from shiftsocle.subshift import Bounds, Subshift
from shiftsocle.words import word


def t(m):
    return family_member("t", (m,))


class TestLayers:
    def test_example54_ray_layers(self, example54):
        L = build_layers(example54, t(1), orbit_len=6, depth=3)
        assert L.layers[0] == [t(m) for m in range(1, 7)]
        assert L.layers[1] == []
        assert L.layers_exhausted
        # oracle: preimages of t1 are empty, deeper orbit preimages stay
        # inside the window
        assert example54.preimages(t(1)) == frozenset()

    def test_example55_line_layers(self, example55):
        L = build_layers(example55, t(1), orbit_len=6, depth=4)
        assert L.layers[0] == [t(m) for m in range(1, 7)]
        for k in range(1, 5):
            assert L.layers[k] == [t(1 - k)]
        assert not L.layers_exhausted

    def test_example3x_layers(self, example3x):
        ax = family_member("ax", ())
        L = build_layers(example3x, ax, orbit_len=8, depth=4)
        assert L.layers[0][0] == ax
        assert L.layers[0][1] == family_member("x", (0,))
        assert L.layers[1] == [family_member("cx", ())]
        assert L.layers[2] == []
        assert L.layers_exhausted

    def test_layer_identity(self, example55, example3x):
        for X, base in [(example55, t(1)), (example3x, family_member("ax", ()))]:
            L = build_layers(X, base, orbit_len=6, depth=3)
            earlier = set(L.layers[0])
            for k in range(1, len(L.layers)):
                for z in L.layers[k]:
                    assert X.shift(z) in set(L.layers[k - 1])
                    assert z not in earlier
                earlier |= set(L.layers[k])

    def test_periodic_base_rejected(self, example54):
        with pytest.raises(ValueError):
            build_layers(example54, periodic(word(1, 3)))


class TestGraphStructure:
    def test_example54_is_a_ray(self, example54):
        g = build_graph(build_layers(example54, t(1), 8, 4), example54)
        assert len(g.vertices) == 8
        assert len(g.edges) == 7
        for e in g.edges:
            assert e.target == e.source + 1
        assert g.vertices[7].out_boundary
        assert validate_graph(g, example54) == []

    def test_example55_is_a_line(self, example55):
        g = build_graph(build_layers(example55, t(1), 6, 4), example55)
        # 6 orbit vertices + 4 layer vertices chained into the ray start
        assert len(g.vertices) == 10
        assert len(g.edges) == 9
        assert validate_graph(g, example55) == []
        # deepest layer vertex is an in-boundary
        deepest = [v for v in g.vertices if v.layer == 4]
        assert len(deepest) == 1 and deepest[0].in_boundary

    def test_example3x_ray_plus_attachment(self, example3x):
        ax = family_member("ax", ())
        g = build_graph(build_layers(example3x, ax, 8, 4), example3x)
        assert validate_graph(g, example3x) == []
        cx = [v for v in g.vertices if v.layer == 1]
        assert len(cx) == 1
        (edge,) = g.out_edges(cx[0].vid)
        assert edge.target == 1  # cx attaches onto the vertex of x

    def test_fault_injection_extra_out_edge(self, example54):
        g = build_graph(build_layers(example54, t(1), 6, 2), example54)
        g.edges.append(Edge(eid=99, source=0, target=3))
        report = validate_graph(g, example54)
        assert any("emits 2 edges" in v for v in report)

    def test_fault_injection_back_edge(self):
        vertices = [Vertex(vid=i, layer=0) for i in range(3)]
        edges = [Edge(0, 0, 1), Edge(1, 1, 2), Edge(2, 2, 0)]
        comp = Component(name="loop", vertex_ids=[0, 1, 2])
        g = LayeredGraph(vertices, edges, [comp])
        assert any("closed path" in v for v in validate_graph(g))


class TestConditionY:
    def test_ray_fails_at_origin(self, example54):
        g = build_graph(build_layers(example54, t(1), 8, 4), example54)
        verdict = condition_y_graph(g, k_bound=4)
        assert verdict.is_fails
        assert verdict.witness == ["v0"]

    def test_line_holds(self, example55):
        g = build_graph(build_layers(example55, t(1), 8, 4), example55)
        verdict = condition_y_graph(g, k_bound=2)
        assert verdict.is_holds
        # witness depth 0 everywhere: every interior vertex has an in-edge
        assert all(k == 0 for k in verdict.witness.values())

    def test_single_boundary_vertex_unknown(self):
        v = Vertex(vid=0, layer=0, in_boundary=True)
        g = LayeredGraph([v], [], [Component(name="stub", vertex_ids=[0])])
        assert condition_y_graph(g, k_bound=2).is_holds  # no certifiable vertex

    def test_uncertified_ray_is_unknown(self):
        # same shape as the arithmetic ray but with no certificates
        vertices = [Vertex(vid=i, layer=0) for i in range(5)]
        vertices[-1].out_boundary = True
        edges = [Edge(i, i, i + 1) for i in range(4)]
        comp = Component(
            name="bare", vertex_ids=[0, 1, 2, 3, 4], orbit_index={i: i for i in range(5)}
        )
        g = LayeredGraph(vertices, edges, [comp])
        verdict = condition_y_graph(g, k_bound=3)
        assert verdict.is_unknown

    def test_sigma_line_holds_at_zero(self, example55):
        verdict = condition_y_sigma(example55, [t(1), t(4)], n_bound=3)
        assert verdict.is_holds
        assert set(verdict.witness.values()) == {0}

    def test_sigma_ray_fails(self, example54):
        verdict = condition_y_sigma(example54, [t(1)], n_bound=4)
        assert verdict.is_fails

    def test_sigma_ray_inner_point_holds(self, example54):
        verdict = condition_y_sigma(example54, [t(3)], n_bound=4)
        assert verdict.is_holds

    def test_sigma_vacuous(self, golden):
        assert condition_y_sigma(golden, [], n_bound=2).is_holds

    def test_graph_and_sigma_agree_when_decisive(
        self, example3x, example54, example55
    ):
        for X in (example3x, example54, example55):
            rep = evaluate_condition_y(X)
            if rep.graph_verdict.decisive and rep.sigma_verdict.decisive:
                assert rep.graph_verdict.status is rep.sigma_verdict.status


class TestDisjointUnion:
    def test_union_conjunction(self, example54, example55):
        g54 = build_graph(build_layers(example54, t(1), 6, 3), example54)
        g55 = build_graph(build_layers(example55, t(1), 6, 3), example55)
        union = disjoint_union([g54, g55])
        assert condition_y_graph(union, 4).is_fails
        assert len(union.vertices) == len(g54.vertices) + len(g55.vertices)

    def test_union_of_zero_graphs(self):
        union = disjoint_union([])
        assert condition_y_graph(union, 2).is_holds

    def test_union_of_one_graph(self, example55):
        g = build_graph(build_layers(example55, t(1), 6, 3), example55)
        union = disjoint_union([g])
        assert len(union.vertices) == len(g.vertices)
        assert condition_y_graph(union, 2).status is condition_y_graph(g, 2).status


class TestComparison:
    def test_ray_vs_line_not_conjugate(self, example54, example55):
        report = compare_invariants(example54, example55)
        assert report.verdict == "NotConjugate"
        assert report.left.combined.is_fails
        assert report.right.combined.is_holds

    def test_symmetry(self, example54, example55):
        a = compare_invariants(example54, example55)
        b = compare_invariants(example55, example54)
        assert a.verdict == b.verdict == "NotConjugate"

    def test_self_comparison_inconclusive(self, example54):
        assert compare_invariants(example54, example54).verdict == "Inconclusive"

    def test_empty_socles_inconclusive(self, golden):
        golden2 = Subshift(
            "sft",
            name="golden2",
            sft_spec=__import__("shiftsocle.sft", fromlist=["SftSpec"]).SftSpec(
                "01", [tuple("111")]
            ),
        )
        report = compare_invariants(golden, golden2)
        assert report.verdict == "Inconclusive"
        assert report.left.combined.is_holds  # vacuous

    def test_two_class_spec_evaluates_per_class(self):
        X = Subshift(
            "enumerated",
            name="two-ladders",
            families=[
                ArithmeticFamily("odd", min_start=1, step=2),
                ArithmeticFamily("even", min_start=2, step=2),
            ],
            bounds=Bounds(word_bound=2),
        )
        rep = evaluate_condition_y(X)
        assert len(rep.classes) == 2
        assert rep.combined.is_fails  # both ladders are rays


class TestDumps:
    def test_dot_ray_golden_file(self, example54):
        g = build_graph(build_layers(example54, t(1), 4, 2), example54)
        expected = (
            'digraph "ray" {\n'
            "  rankdir=LR;\n"
            '  v0 [label="v0/J0"];\n'
            '  v1 [label="v1/J0"];\n'
            '  v2 [label="v2/J0"];\n'
            '  v3 [label="v3/J0", style="dashed"];\n'
            '  v0 -> v1 [label="e0"];\n'
            '  v1 -> v2 [label="e1"];\n'
            '  v2 -> v3 [label="e2"];\n'
            "}\n"
        )
        g.name = "ray"
        assert dot_dump(g) == expected

    def test_dumps_deterministic(self, example55):
        def render():
            X = example55
            g = build_graph(build_layers(X, t(1), 6, 3), X)
            g.name = "line"
            return dot_dump(g), json_dump(g)

        assert render() == render()

    def test_json_round_trip(self, example3x):
        import json

        ax = family_member("ax", ())
        g = build_graph(build_layers(example3x, ax, 6, 3), example3x)
        payload = json.loads(json_dump(g))
        assert len(payload["vertices"]) == len(g.vertices)
        assert len(payload["edges"]) == len(g.edges)
        assert payload["components"][0]["layers_exhausted"] is True
