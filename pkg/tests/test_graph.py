from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import L58, algebra
from lieweights.graph import (
    BadVertex,
    DomainError,
    SimpleGraph,
    are_isomorphic,
    complement,
    complete_graph,
    empty_graph,
    find_isomorphism,
    has_triangle,
    induced,
    is_bipartite,
    is_complete,
    is_connected,
    is_tree,
    isolated_vertices,
    join,
    lemma_inequality_holds,
    max_clique,
    max_sum_edges,
    min_weight_graph_edges,
    odd_cycle,
    path_graph,
    sum_graph,
    to_dot,
    weight_graph,
    weight_label,
)
from lieweights.errors import TooLarge
from lieweights.lie import center
from lieweights.torus import WeightSystem, support_set, weight_system

L6_WEIGHTS = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1), (1, 1, 1)]


@pytest.fixture
def l6ws():
    return WeightSystem.from_vectors(L6_WEIGHTS)


@pytest.fixture
def h3ws():
    return WeightSystem.from_vectors([(1, 0), (0, 1), (1, 1)])


def brute_sum_edges(weights):
    ws = set(weights)
    return {(i, j) for i, j in combinations(range(len(weights)), 2)
            if tuple(a + b for a, b in zip(weights[i], weights[j])) in ws}


def graphs(max_p=8):
    return st.integers(1, max_p).flatmap(
        lambda p: st.sets(st.tuples(st.integers(0, p - 1), st.integers(0, p - 1))
                          .filter(lambda e: e[0] != e[1])).map(lambda es: SimpleGraph.from_edges(p, es)))


class TestSumGraph:
    def test_h3(self, h3ws):
        assert sum_graph(h3ws).sorted_edges() == [(0, 1)]
        assert isolated_vertices(sum_graph(h3ws)) == {2}

    def test_l6(self, l6ws):
        G = sum_graph(l6ws)
        w = L6_WEIGHTS
        named = {frozenset((w[u], w[v])) for u, v in G.edges}
        assert named == {
            frozenset({(1, 0, 0), (0, 1, 0)}),
            frozenset({(1, 0, 0), (0, 0, 1)}),
            frozenset({(0, 1, 0), (1, 0, 1)}),
            frozenset({(0, 0, 1), (1, 1, 0)}),
        }
        assert G.edges == brute_sum_edges(w)
        p5_plus_k1 = SimpleGraph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4)])
        assert are_isomorphic(G, p5_plus_k1)
        assert oracles.isomorphic(6, G.edges, 6, p5_plus_k1.edges)

    def test_abelian_catalog_edgeless(self, catalog_algebras):
        for L in catalog_algebras.values():
            if L.is_abelian():
                assert sum_graph(weight_system(L)).q == 0

    def test_brute_force_on_catalog(self, catalog_algebras):
        for L in catalog_algebras.values():
            ws = weight_system(L)
            assert sum_graph(ws).edges == brute_sum_edges(ws.weights)


class TestComplement:
    def test_examples(self, h3ws, l6ws):
        assert complement(empty_graph(3)) == complete_graph(3)
        wg = complement(sum_graph(h3ws))
        assert wg.sorted_edges() == [(0, 2), (1, 2)] and is_tree(wg)
        assert complement(sum_graph(l6ws)).q == 11

    @given(graphs(10))
    def test_involution(self, G):
        assert complement(complement(G)) == G
        assert G.q + complement(G).q == comb(G.p, 2)


class TestIsolatedConnected:
    def test_l6(self, l6, l6ws):
        iso = isolated_vertices(sum_graph(l6ws))
        assert [L6_WEIGHTS[v] for v in iso] == [(1, 1, 1)]
        assert len(iso) == center(l6).dim

    def test_h3_weight_graph(self, h3ws):
        wg = weight_graph(h3ws)
        assert is_connected(wg) and not isolated_vertices(wg)

    def test_k1(self):
        assert isolated_vertices(empty_graph(1)) == {0}
        assert is_connected(empty_graph(1))

    def test_disconnected(self):
        assert not is_connected(empty_graph(2))


class TestBounds:
    @pytest.mark.parametrize("p,expected", [(1, 0), (2, 0), (3, 1), (4, 2), (5, 4), (6, 6)])
    def test_max_sum_edges(self, p, expected):
        assert max_sum_edges(p) == expected == oracles.sum_pairs(p)

    def test_max_sum_edges_matches_pair_count(self):
        for p in range(1, 60):
            assert max_sum_edges(p) == oracles.sum_pairs(p)

    @pytest.mark.parametrize("p,expected", [(1, 0), (4, 4), (6, 9)])
    def test_min_weight_graph_edges(self, p, expected):
        assert min_weight_graph_edges(p) == expected

    def test_lemma_inequality(self):
        assert comb(3, 2) - max_sum_edges(4) == 1
        assert comb(4, 2) - max_sum_edges(5) == 2
        assert all(lemma_inequality_holds(p) for p in range(4, 51))

    def test_lemma_domain(self):
        with pytest.raises(DomainError):
            lemma_inequality_holds(3)


class TestBipartiteTriangle:
    def test_path(self):
        assert is_bipartite(path_graph(3))
        assert odd_cycle(path_graph(3)) is None

    def test_k3(self):
        assert odd_cycle(complete_graph(3)) == [0, 1, 2]

    def test_l6(self, l6ws):
        wg = weight_graph(l6ws)
        cyc = odd_cycle(wg)
        assert cyc is not None and len(cyc) % 2 == 1
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            assert wg.has_edge(a, b)
        assert has_triangle(wg)

    def test_h3_has_no_triangle(self, h3ws):
        assert not has_triangle(weight_graph(h3ws))

    def test_k4(self):
        assert has_triangle(complete_graph(4))

    @settings(max_examples=60)
    @given(graphs(8))
    def test_bipartite_matches_exhaustive_coloring(self, G):
        exhaustive = any(
            all(((mask >> u) & 1) != ((mask >> v) & 1) for u, v in G.edges)
            for mask in range(1 << G.p)
        )
        assert is_bipartite(G) == exhaustive
        cyc = odd_cycle(G)
        if cyc is not None:
            assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
            assert all(G.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))


class TestTree:
    def test_examples(self, h3ws, l6ws):
        assert is_tree(weight_graph(h3ws))
        assert weight_graph(l6ws).q == 11 and not is_tree(weight_graph(l6ws))
        assert is_tree(empty_graph(1))


class TestClique:
    def test_examples(self, l6ws):
        assert max_clique(complete_graph(5))[0] == 5
        assert max_clique(empty_graph(4)) == (1, (0,))
        size, witness = max_clique(weight_graph(l6ws))
        assert size == 4 == len(L6_WEIGHTS) - 2
        assert {L6_WEIGHTS[v] for v in witness} == {(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)}

    def test_too_large(self):
        with pytest.raises(TooLarge):
            max_clique(empty_graph(33))

    @settings(max_examples=60)
    @given(graphs(9))
    def test_matches_subset_scan(self, G):
        size, witness = max_clique(G)
        assert size == oracles.max_clique_size(G.p, G.edges)
        assert all(G.has_edge(a, b) for a, b in combinations(witness, 2))

    def test_rank3_counterexample(self):
        # [X1,X2]=X4, [X1,X3]=X5: rank 3, yet {X2,X3,X4,X5} is a clique of size p - 1
        L = algebra(L58, 5)
        ws = weight_system(L)
        assert ws.rank == 3
        size, witness = max_clique(weight_graph(ws))
        assert size == 4 == oracles.max_clique_size(5, weight_graph(ws).edges)
        assert witness == (1, 2, 3, 4)


class TestInduced:
    def test_identity(self, l6ws):
        wg = weight_graph(l6ws)
        assert induced(wg, range(6)) == wg

    def test_l6_supports(self, l6ws):
        wg = weight_graph(l6ws)
        e1 = support_set(l6ws, 1)
        assert induced(wg, e1) == complete_graph(4)
        u = e1 | support_set(l6ws, 2)
        sub = induced(wg, u)
        assert sub.p == 5 and not is_complete(sub)
        missing = {frozenset((sub.labels[a], sub.labels[b]))
                   for a, b in combinations(range(5), 2) if not sub.has_edge(a, b)}
        assert missing == {frozenset({(1, 0, 0), (0, 1, 0)}), frozenset({(0, 1, 0), (1, 0, 1)})}

    def test_bad_vertex(self):
        with pytest.raises(BadVertex):
            induced(empty_graph(2), [5])


class TestComplete:
    def test_examples(self):
        assert is_complete(complete_graph(3))
        assert not is_complete(path_graph(3))


class TestJoin:
    def test_examples(self):
        assert join(empty_graph(1), empty_graph(1)) == complete_graph(2)
        assert join(complete_graph(2), complete_graph(2)) == complete_graph(4)
        assert join(path_graph(2), empty_graph(1)) == complete_graph(3)

    @settings(max_examples=40)
    @given(graphs(5), graphs(5))
    def test_complete_iff_parts_complete(self, a, b):
        J = join(a, b)
        assert J.p == a.p + b.p
        assert J.q == a.q + b.q + a.p * b.p
        assert is_complete(J) == (is_complete(a) and is_complete(b))


class TestIsomorphism:
    def test_self(self, l6ws):
        G = weight_graph(l6ws)
        assert find_isomorphism(G, G) == {v: v for v in range(6)}

    def test_path_vs_star(self):
        star = SimpleGraph.from_edges(5, [(0, i) for i in range(1, 5)])
        assert not are_isomorphic(path_graph(5), star)

    def test_too_large(self):
        with pytest.raises(TooLarge):
            find_isomorphism(empty_graph(13), empty_graph(13))

    @settings(max_examples=80)
    @given(graphs(6), graphs(6))
    def test_matches_brute_force(self, a, b):
        assert are_isomorphic(a, b) == oracles.isomorphic(a.p, a.edges, b.p, b.edges)

    @settings(max_examples=40)
    @given(graphs(7), st.randoms())
    def test_relabelled_copy(self, G, rnd):
        perm = list(range(G.p))
        rnd.shuffle(perm)
        H = SimpleGraph.from_edges(G.p, [(perm[u], perm[v]) for u, v in G.edges])
        m = find_isomorphism(G, H)
        assert m is not None
        assert all(H.has_edge(m[u], m[v]) for u, v in G.edges)


class TestDot:
    def test_labels_and_order(self, h3ws):
        text = to_dot(weight_graph(h3ws), "weight", "h3 weight")
        assert text == (
            'graph "h3 weight" {\n'
            '  kind="weight";\n'
            '  v1 [label="b1"];\n'
            '  v2 [label="b2"];\n'
            '  v3 [label="b1+b2"];\n'
            '  v1 -- v3;\n'
            '  v2 -- v3;\n'
            '}\n'
        )

    def test_weight_label(self):
        assert weight_label((1, 1, -1)) == "b1+b2-b3"
        assert weight_label((2, 0, 1)) == "2b1+b3"
        assert weight_label((0, -1)) == "-b2"
