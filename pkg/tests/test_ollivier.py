import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle, path, random_graph, star
from netcurv.generators import generate_ba, generate_hgg, generate_ws
from netcurv.graph import Graph, largest_connected_component
from netcurv.ollivier import (DisconnectedGraphError, WalkKind, ollivier_edge,
                              ollivier_edge_reference, ollivier_vertex, walk_measure)


def test_walk_measures():
    assert walk_measure(complete(3), 0, 0.5).as_dict() == {0: 0.5, 1: 0.25, 2: 0.25}
    assert walk_measure(star(4), 0, 0.0).as_dict() == {1: 0.25, 2: 0.25, 3: 0.25, 4: 0.25}
    assert walk_measure(path(4), 0, 0.5).as_dict() == {0: 0.5, 1: 0.5}


def test_isolated_vertex_measure():
    with pytest.raises(ValueError):
        walk_measure(Graph(2, np.zeros((0, 2))), 0)


def test_idleness_range():
    with pytest.raises(ValueError):
        WalkKind(1.5)


@pytest.mark.parametrize("m", [1, 2, 5, 12])
def test_non_lazy_star_is_flat(m):
    assert np.all(ollivier_edge(star(m), 0.0).values == 0.0)


def test_non_lazy_c4_is_flat():
    assert np.all(ollivier_edge(cycle(4), 0.0).values == 0.0)


def test_lazy_triangle():
    assert np.allclose(ollivier_edge(complete(3), 0.5).values, 0.75, atol=1e-9)
    assert np.allclose(ollivier_edge(complete(3), WalkKind()).values, 0.75, atol=1e-9)


@pytest.mark.parametrize("n", range(5, 21))
def test_non_lazy_complete_graph(n):
    assert np.allclose(ollivier_edge(complete(n), 0.0).values, (n - 2) / (n - 1), atol=1e-9)


def test_vertex_values():
    k3 = complete(3)
    assert np.allclose(ollivier_vertex(k3, ollivier_edge(k3, 0.5)).values, 1.5)
    s = star(5)
    assert np.all(ollivier_vertex(s, ollivier_edge(s, 0.0)).values[1:] == 0)


def test_disconnected_graph_rejected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError, match="largest connected component"):
        ollivier_edge(g)


@pytest.mark.parametrize("alpha", [0.0, 0.5])
def test_batch_kernel_matches_general_path(alpha):
    graphs = [generate_ba(150, 3, seed=1), generate_ws(120, 6, 0.3, seed=2),
              largest_connected_component(generate_hgg(200, 6, 2.0, seed=3))]
    for g in graphs:
        fast = ollivier_edge(g, alpha).values
        slow = np.array([ollivier_edge_reference(g, e, alpha) for e in range(g.m)])
        assert np.allclose(fast, slow, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0.0, 0.25, 0.5]))
def test_bounds(seed, alpha):
    r = np.random.default_rng(seed)
    g = largest_connected_component(random_graph(r, int(r.integers(3, 40)), 0.15))
    if g.m == 0:
        return
    k = ollivier_edge(g, alpha).values
    assert np.all(k <= 1 + 1e-12)
    assert np.all(k >= -2 - 1e-12)


def test_deterministic():
    g = generate_ba(300, 2, seed=9)
    assert np.array_equal(ollivier_edge(g).values, ollivier_edge(g).values)
