"""Core graph model: validation, file formats, order/reachability primitives."""

import io

import pytest

from mixedcolor import (
    DirectedCycleError,
    DuplicateRelation,
    LoopError,
    MixedGraph,
    ParseError,
    corresponding_digraph,
    layering,
    load_coloring,
    load_graph,
    maxrank,
    mixed_graph,
    save_coloring,
    save_graph,
    topological_order,
    transitive_closure,
    underlying_undirected,
)
from mixedcolor.graphs import Coloring
from mixedcolor.reductions import family_layered_cliques


def parse(text: str) -> MixedGraph:
    return load_graph(io.StringIO(text))


def tournament(n: int) -> MixedGraph:
    return mixed_graph(
        n, arcs=[(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    )


class TestLoadGraph:
    def test_smallest_arc_graph(self):
        g = parse("p mixed 2 0 1\na 1 2\n")
        assert g.n == 2 and g.edges == frozenset() and g.arcs == {(1, 2)}

    def test_two_cycle_rejected(self):
        with pytest.raises(DirectedCycleError):
            parse("p mixed 2 0 2\na 1 2\na 2 1\n")

    def test_parallel_edge_and_arc_rejected(self):
        with pytest.raises(DuplicateRelation):
            parse("p mixed 3 1 1\ne 1 2\na 1 2\n")

    def test_loop_rejected(self):
        with pytest.raises(LoopError):
            parse("p mixed 2 0 1\na 1 1\n")

    def test_malformed_lines(self):
        with pytest.raises(ParseError):
            parse("p mixed 2 0\n")
        with pytest.raises(ParseError):
            parse("p mixed 2 0 1\nq 1 2\n")
        with pytest.raises(ParseError):
            parse("a 1 2\n")
        with pytest.raises(ParseError):
            parse("p mixed 2 1 0\ne 2 1\n")  # edges must be written u < v
        with pytest.raises(ParseError):
            parse("p mixed 2 1 0\n")  # count mismatch

    def test_comments_and_blank_lines(self):
        g = parse("# header comment\n\np mixed 3 1 1  # trailing\ne 1 2\na 2 3\n")
        assert g.edges == {(1, 2)} and g.arcs == {(2, 3)}

    def test_round_trip(self, small_corpus):
        for g in small_corpus:
            buf = io.StringIO()
            save_graph(g, buf)
            assert parse(buf.getvalue()) == g

    def test_coloring_round_trip(self):
        c = Coloring({1: 3, 2: 1, 3: 2})
        buf = io.StringIO()
        save_coloring(c, buf)
        assert load_coloring(io.StringIO(buf.getvalue())) == c


class TestTopologicalOrder:
    def test_directed_path(self):
        g = mixed_graph(3, arcs=[(1, 2), (2, 3)])
        assert topological_order(g) == [1, 2, 3]

    def test_edge_only_triangle_uses_id_order(self):
        g = mixed_graph(3, edges=[(1, 2), (2, 3), (1, 3)])
        assert topological_order(g) == [1, 2, 3]

    def test_arcs_force_order(self):
        g = mixed_graph(3, arcs=[(3, 1), (1, 2)])
        assert topological_order(g) == [3, 1, 2]

    def test_every_arc_respected(self, small_corpus):
        for g in small_corpus:
            pos = {v: i for i, v in enumerate(topological_order(g))}
            assert all(pos[u] < pos[v] for u, v in g.arcs)


class TestTransitiveClosure:
    def test_directed_path(self):
        g = mixed_graph(3, arcs=[(1, 2), (2, 3)])
        assert transitive_closure(g).arcs == {(1, 2), (2, 3), (1, 3)}

    def test_parallel_edge_removed(self):
        g = mixed_graph(3, edges=[(1, 2)], arcs=[(1, 3), (3, 2)])
        tc = transitive_closure(g)
        assert tc.arcs == {(1, 3), (3, 2), (1, 2)}
        assert tc.edges == frozenset()

    def test_idempotent(self, small_corpus):
        for g in small_corpus:
            tc = transitive_closure(g)
            assert transitive_closure(tc) == tc

    def test_maxrank_invariant(self, small_corpus):
        for g in small_corpus:
            assert maxrank(transitive_closure(g)) == maxrank(g)

    def test_vertex_set_preserved(self, small_corpus):
        for g in small_corpus:
            assert transitive_closure(g).n == g.n


class TestLayering:
    def test_edge_only_graph_single_layer(self):
        g = mixed_graph(4, edges=[(1, 2), (3, 4)])
        lay = layering(g)
        assert lay.layers == (frozenset({1, 2, 3, 4}),)

    def test_directed_path_singleton_layers(self):
        g = mixed_graph(4, arcs=[(1, 2), (2, 3), (3, 4)])
        assert [sorted(layer) for layer in layering(g).layers] == [[1], [2], [3], [4]]

    def test_layered_cliques_family(self):
        g = family_layered_cliques(2, 3)
        assert [len(layer) for layer in layering(g).layers] == [3, 3, 3]

    def test_arcs_point_to_higher_layers(self, small_corpus):
        for g in small_corpus:
            lay = layering(g)
            assert all(lay.inrank[u] < lay.inrank[v] for u, v in g.arcs)

    def test_inrank_is_longest_path_length(self):
        # independent oracle: enumerate all simple directed paths
        g = mixed_graph(5, arcs=[(1, 2), (2, 4), (1, 3), (3, 4), (4, 5), (1, 5)])
        out = {v: sorted(g.out_neighbors(v)) for v in g.vertices}

        def longest_ending_at(target):
            best = 0

            def walk(v, length, seen):
                nonlocal best
                if v == target:
                    best = max(best, length)
                for w in out[v]:
                    if w not in seen:
                        walk(w, length + 1, seen | {w})

            for s in g.vertices:
                walk(s, 0, {s})
            return best

        lay = layering(g)
        for v in g.vertices:
            assert lay.inrank[v] == longest_ending_at(v)


class TestMaxrank:
    def test_arc_free(self):
        assert maxrank(mixed_graph(4, edges=[(1, 2)])) == 0

    def test_directed_path(self):
        g = mixed_graph(6, arcs=[(i, i + 1) for i in range(1, 6)])
        assert maxrank(g) == 5

    def test_acyclic_tournament_six_vertices(self):
        g = tournament(6)
        # oracle: longest simple directed path by exhaustive walk
        out = {v: sorted(g.out_neighbors(v)) for v in g.vertices}
        best = 0
        stack = [(v, 0, frozenset({v})) for v in g.vertices]
        while stack:
            v, length, seen = stack.pop()
            best = max(best, length)
            for w in out[v]:
                if w not in seen:
                    stack.append((w, length + 1, seen | {w}))
        assert best == 5
        assert maxrank(g) == 5


class TestUnderlyingAndDigraph:
    def test_single_arc_becomes_edge(self):
        g = mixed_graph(2, arcs=[(1, 2)])
        assert underlying_undirected(g).edges == {(1, 2)}

    def test_already_undirected_identity(self):
        g = mixed_graph(3, edges=[(1, 2), (2, 3)])
        assert underlying_undirected(g) == g

    def test_tournament_underlying_complete(self):
        g = tournament(5)
        assert len(underlying_undirected(g).edges) == 10

    def test_corresponding_digraph(self):
        assert corresponding_digraph(mixed_graph(2, edges=[(1, 2)])) == {(1, 2), (2, 1)}
        assert corresponding_digraph(mixed_graph(2, arcs=[(1, 2)])) == {(1, 2)}
        g = mixed_graph(3, edges=[(1, 2)], arcs=[(2, 3)])
        assert corresponding_digraph(g) == {(1, 2), (2, 1), (2, 3)}

    def test_corresponding_digraph_injective(self, small_corpus):
        seen = {}
        for g in small_corpus:
            key = (g.n, corresponding_digraph(g))
            if key in seen:
                assert seen[key] == g
            seen[key] = g
