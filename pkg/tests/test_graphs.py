import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pathtrop import graphs
from pathtrop.graphs import Graph, GraphError


def brute_hom(h: Graph, g: Graph) -> int:
    count = 0
    for phi in itertools.product(range(g.vertex_count), repeat=h.vertex_count):
        if all(phi[v] in g.neighbors(phi[u]) for u, v in h.edges):
            count += 1
    return count


SMALL = list(graphs.all_graphs(4))


def small_graphs(max_vertices=5):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_vertices))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        return Graph.from_edges(n, chosen)
    return build()


class TestHomCount:
    def test_even_cycle_into_edge(self):
        assert graphs.hom_count(graphs.cycle(4), graphs.complete(2)) == 2

    def test_single_vertex(self):
        g = graphs.turan(7, 3)
        assert graphs.hom_count(graphs.complete(1), g) == 7

    def test_path_into_triangle(self):
        assert graphs.hom_count(graphs.path(2), graphs.complete(3)) == 12
        assert brute_hom(graphs.path(2), graphs.complete(3)) == 12

    def test_odd_cycle_into_bipartite(self):
        assert graphs.cycle_hom(graphs.complete(2), 3) == 0

    def test_c4_into_k3(self):
        # trace of (J-I)^4 on three vertices: 2^4 + 2 * (-1)^4
        assert graphs.cycle_hom(graphs.complete(3), 4) == 18
        assert brute_hom(graphs.cycle(4), graphs.complete(3)) == 18

    @pytest.mark.parametrize("pattern", [graphs.path(3), graphs.cycle(3), graphs.star(2), graphs.cycle(4)])
    def test_matches_brute_force(self, pattern):
        for g in SMALL:
            assert graphs.hom_count(pattern, g) == brute_hom(pattern, g)


class TestSpecialCounts:
    def test_path_vector_edge(self):
        assert graphs.path_hom_vector(graphs.complete(2), 6) == [2] * 7

    def test_path_vector_triangle(self):
        assert graphs.path_hom_vector(graphs.complete(3), 4) == [3, 6, 12, 24, 48]

    def test_path_vector_edgeless(self):
        assert graphs.path_hom_vector(graphs.empty(3), 3) == [3, 0, 0, 0]

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_cherry_into_star(self, n):
        assert graphs.star_hom(graphs.star(n), 2) == n * n + n

    def test_star_small_cases(self):
        assert graphs.star_hom(graphs.cycle(5), 0) == 5
        assert graphs.star_hom(graphs.complete(3), 1) == 6

    def test_cliques(self):
        assert graphs.clique_hom(graphs.complete(3), 3) == 6
        g = graphs.cycle(5)
        assert graphs.clique_hom(g, 2) == 2 * g.edge_count
        assert graphs.clique_hom(graphs.turan(6, 3), 4) == 0

    def test_corpus_agreement(self):
        for g in graphs.all_graphs(6):
            vec = graphs.path_hom_vector(g, 8)
            for k in range(9):
                assert vec[k] == graphs.hom_count(graphs.path(k), g)
            for k in (3, 4, 5):
                assert graphs.cycle_hom(g, k) == graphs.hom_count(graphs.cycle(k), g)
            for k in (0, 1, 2, 3):
                assert graphs.star_hom(g, k) == graphs.hom_count(graphs.star(k), g)
            for k in (1, 2, 3, 4):
                assert graphs.clique_hom(g, k) == graphs.hom_count(graphs.complete(k), g)

    def test_path_counts_nondecreasing(self):
        for g in graphs.all_graphs(6):
            if g.edge_count == 0:
                continue
            vec = graphs.path_hom_vector(g, 8)
            assert all(vec[k] <= vec[k + 1] for k in range(1, 8))


class TestProducts:
    def test_tensor_of_edges(self):
        t = graphs.tensor_product(graphs.complete(2), graphs.complete(2))
        assert t.vertex_count == 4 and t.edge_count == 2
        assert all(t.degree(v) == 1 for v in range(4))

    def test_tensor_with_point(self):
        t = graphs.tensor_product(graphs.cycle(5), graphs.complete(1))
        assert t.vertex_count == 5 and t.edge_count == 0

    def test_tensor_square_of_triangle(self):
        t = graphs.tensor_product(graphs.complete(3), graphs.complete(3))
        assert graphs.hom_count(graphs.path(2), t) == 144

    def test_disjoint_union(self):
        g = graphs.disjoint_union(graphs.complete(2), graphs.complete(3))
        assert graphs.path_hom_vector(g, 2) == [5, 8, 14]
        h = graphs.disjoint_union(g, graphs.empty(4))
        assert graphs.path_hom_vector(h, 5)[1:] == graphs.path_hom_vector(g, 5)[1:]

    @settings(max_examples=40, deadline=None)
    @given(small_graphs(4), small_graphs(4))
    def test_multiplicative_and_additive(self, g1, g2):
        prod = graphs.tensor_product(g1, g2)
        union = graphs.disjoint_union(g1, g2)
        for h in (graphs.path(2), graphs.cycle(3), graphs.star(2)):
            a, b = graphs.hom_count(h, g1), graphs.hom_count(h, g2)
            assert graphs.hom_count(h, prod) == a * b
            assert graphs.hom_count(h, union) == a + b


class TestConstructors:
    def test_named(self):
        assert graphs.complete(3).edge_count == 3
        t = graphs.turan(6, 3)
        assert t.edge_count == 12 and set(t.degrees()) == {4}
        assert graphs.path(4).vertex_count == 5
        assert graphs.make_named("turan", 6, 3) == t

    def test_enumeration_counts(self):
        # numbers of graphs up to isomorphism on 1..6 vertices
        expected = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}
        for n, count in expected.items():
            found = graphs.enumerate_by_canonical_form(n)
            assert len(found) == count
            atlas = {graphs.canonical_form(g) for g in graphs.all_graphs(n, min_vertices=n)}
            assert {graphs.canonical_form(g) for g in found} == atlas

    def test_seven_vertices_is_opt_in(self):
        with pytest.raises(graphs.ResourceLimitError):
            list(graphs.all_graphs(7))


class TestTextFormat:
    def test_round_trip(self):
        g = graphs.cycle(5)
        assert graphs.parse_graph(graphs.format_graph(g)) == g

    def test_comments_and_blanks(self):
        g = graphs.parse_graph("3  # triangle\n\n0 1\n1 2 # edge\n0 2\n")
        assert g == graphs.complete(3)

    @pytest.mark.parametrize("text", ["2\n1 1\n", "3\n0 1\n0 1\n", "2\n0 2\n", "x\n", "3\n1 0 2\n"])
    def test_rejects(self, text):
        with pytest.raises(GraphError):
            graphs.parse_graph(text)
