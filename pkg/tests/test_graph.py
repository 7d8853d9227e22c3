import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle, path, random_graph
from netcurv.graph import (Graph, GraphError, bfs_distances, bundled_fixture, components,
                           from_edge_list, is_connected, largest_connected_component,
                           read_edge_list, triangle_counts, triangles, triangles_through_edge,
                           write_edge_list)

edge_lists = st.lists(st.tuples(st.integers(0, 25), st.integers(0, 25)), max_size=80)


def test_triangle_from_pairs():
    g = from_edge_list([(0, 1), (1, 2), (2, 0)])
    assert (g.n, g.m) == (3, 3)


def test_dedup_and_self_loops_reported():
    g = from_edge_list([(0, 1), (1, 0), (2, 2)])
    assert g.m == 1
    assert g.edge_labels().tolist() == [[0, 1]]
    assert g.load_report.duplicates == 1
    assert g.load_report.self_loops == 1


def test_empty_input_gives_empty_graph():
    g = from_edge_list([])
    assert (g.n, g.m) == (0, 0)
    assert largest_connected_component(g).n == 0


def test_relabel_keeps_original_ids():
    g = from_edge_list([(10, 30), (30, 20)])
    assert g.labels.tolist() == [10, 20, 30]
    assert sorted(map(tuple, g.edge_labels().tolist())) == [(10, 30), (20, 30)]


def test_zachary_fixture():
    g = read_edge_list(bundled_fixture("zachary"))
    assert (g.n, g.m) == (34, 78)
    assert is_connected(g)


def test_constructor_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 1), (0, 1)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 5)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 1)], edge_weight=[0.0])
    with pytest.raises(GraphError):
        Graph(2, [(0, 1)], vertex_weight=[1.0, -1.0])


def test_graph_is_immutable():
    g = complete(4)
    with pytest.raises(ValueError):
        g.edges[0, 0] = 3


def test_lcc_tie_goes_to_component_with_smallest_id():
    g = from_edge_list([(5, 6), (6, 7), (7, 5), (0, 1), (1, 2), (2, 0)])
    lcc = largest_connected_component(g)
    assert sorted(lcc.labels.tolist()) == [0, 1, 2]


def test_lcc_drops_isolated_vertex():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4)])
    lcc = largest_connected_component(g)
    assert (lcc.n, lcc.m) == (5, 4)
    assert lcc.labels.tolist() == [0, 1, 2, 3, 4]


def test_lcc_of_connected_graph_is_identity():
    g = cycle(7)
    lcc = largest_connected_component(g)
    assert lcc.n == g.n
    assert np.array_equal(lcc.edges, g.edges)


@pytest.mark.parametrize("g, expected", [(complete(4), 2), (path(6), 0), (complete(3), 1)])
def test_triangles_through_edge(g, expected):
    assert all(triangles_through_edge(g, e) == expected for e in range(g.m))


def test_bfs_examples():
    assert bfs_distances(path(3), 0) == {0: 0, 1: 1, 2: 2}
    assert bfs_distances(cycle(4), 0) == {0: 0, 1: 1, 3: 1, 2: 2}
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert bfs_distances(g, 0) == {0: 0, 1: 1}
    assert bfs_distances(path(5), 0, cutoff=2) == {0: 0, 1: 1, 2: 2}


@settings(max_examples=60, deadline=None)
@given(edge_lists)
def test_handshake_and_adjacency_symmetry(pairs):
    g = from_edge_list(pairs)
    assert g.degree.sum() == 2 * g.m
    for u, v in g.edges:
        assert g.has_edge(u, v) and g.has_edge(v, u)
    rebuilt = {tuple(sorted((v, int(w)))) for v in range(g.n) for w in g.neighbors(v)}
    assert rebuilt == set(map(tuple, g.edges.tolist()))


@settings(max_examples=30, deadline=None)
@given(edge_lists)
def test_edge_list_round_trip(tmp_path_factory, pairs):
    g = from_edge_list(pairs)
    p = tmp_path_factory.mktemp("rt") / "g.edges"
    write_edge_list(g, p, header=["round trip"])
    h = read_edge_list(p)
    assert np.array_equal(h.edge_labels(), g.edge_labels())


def test_reader_ignores_comments_and_extra_columns(tmp_path):
    p = tmp_path / "k.tsv"
    p.write_text("% sym unweighted\n# note\n1 2 1 946684800\n2 3 1 0\n\n")
    g = read_edge_list(p)
    assert (g.n, g.m) == (3, 2)


def test_reader_rejects_garbage(tmp_path):
    p = tmp_path / "bad.edges"
    p.write_text("1 x\n")
    with pytest.raises(GraphError):
        read_edge_list(p)


def test_triangle_counts_match_triple_enumeration(rng):
    for _ in range(20):
        n = int(rng.integers(3, 50))
        g = random_graph(rng, n, rng.uniform(0.05, 0.5))
        brute = sum(1 for a, b, c in itertools.combinations(range(n), 3)
                    if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c))
        assert triangle_counts(g).sum() == 3 * brute
        assert len(triangles(g)) == brute


def test_bfs_triangle_inequality(rng):
    g = random_graph(rng, 30, 0.12)
    dist = [bfs_distances(g, s) for s in range(g.n)]
    for a, b, c in rng.integers(0, g.n, size=(300, 3)):
        if b in dist[a] and c in dist[b]:
            assert dist[a][c] <= dist[a][b] + dist[b][c]


def test_components_count():
    g = Graph.from_edges(7, [(0, 1), (2, 3), (3, 4)])
    count, _ = components(g)
    assert count == 4
