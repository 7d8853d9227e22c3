import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netcurv.generators import (GeneratorSpec, SpecError, UnsupportedParameterError, generate,
                                generate_ba, generate_er, generate_hgg, generate_ws,
                                hgg_from_coordinates)
from netcurv.graph import is_connected
from netcurv.metrics import clustering_coefficient


def test_er_extremes():
    assert generate_er(5, 0.0, seed=1).m == 0
    assert generate_er(5, 1.0, seed=1).m == 10


def test_er_edge_count_ensemble():
    n, p = 1000, 0.003
    counts = np.array([generate_er(n, p, seed=s).m for s in range(100)])
    pairs = n * (n - 1) / 2
    mean = pairs * p
    assert abs(counts.mean() - mean) <= 0.03 * mean
    # the mean of 100 binomials is within 4 standard errors
    assert abs(counts.mean() - mean) <= 4 * math.sqrt(pairs * p * (1 - p) / 100)


def test_ws_unrewired_ring():
    g = generate_ws(10, 2, 0.0, seed=0)
    assert g.m == 10 and np.all(g.degree == 2) and is_connected(g)
    g = generate_ws(1000, 10, 0.0, seed=0)
    assert g.m == 5000 and np.all(g.degree == 10)
    # lattice: i ~ j iff the ring distance is at most k/2
    assert all(min(abs(u - v), 1000 - abs(u - v)) <= 5 for u, v in g.edges)


@pytest.mark.parametrize("seed", range(5))
def test_ws_rewiring_preserves_edge_count(seed):
    assert generate_ws(1000, 10, 0.5, seed=seed).m == 5000


def test_ba_small_tree():
    g = generate_ba(5, 1, 1, seed=3)
    assert g.m == 4 and is_connected(g)


def test_ba_edge_count_connected_min_degree():
    for s in range(10):
        g = generate_ba(1000, 2, 2, seed=s)
        assert g.m == 1 + 2 * 998
        assert is_connected(g)
        assert g.degree.min() >= 2


def test_ba_degree_exponent():
    deg = np.concatenate([generate_ba(1000, 4, seed=s).degree for s in range(100)])
    # log-binned density fit
    edges = np.unique(np.round(np.logspace(np.log10(4), np.log10(deg.max() + 1), 15)))
    hist, _ = np.histogram(deg, bins=edges)
    width = np.diff(edges)
    centre = np.sqrt(edges[:-1] * edges[1:])
    ok = hist >= 10
    slope = np.polyfit(np.log(centre[ok]), np.log(hist[ok] / width[ok]), 1)[0]
    assert -3.5 <= slope <= -2.5


def test_hgg_two_points_at_origin():
    g = hgg_from_coordinates([0.0, 0.0], [0.0, 1.0], 5.0)
    assert g.m == 1


def test_hgg_mean_degree_calibrated():
    degs = [2 * generate_hgg(1000, 10, 2.0, seed=s).m / 1000 for s in range(20)]
    assert 9.5 <= np.mean(degs) <= 10.5


def test_hgg_clusters_more_than_er():
    hgg = np.mean([clustering_coefficient(generate_hgg(1000, 10, 2.0, seed=s)).mean()
                   for s in range(5)])
    er = np.mean([clustering_coefficient(generate_er(1000, 10 / 999, seed=s)).mean()
                  for s in range(5)])
    assert hgg > er


def test_hgg_rejects_temperature():
    with pytest.raises(UnsupportedParameterError):
        generate_hgg(100, 5, 2.0, temperature=1.0)


@pytest.mark.parametrize("config, field", [
    ("family=ws n=10 k=3 beta=0.1", "k"),
    ("family=ws n=10 k=10 beta=0.1", "k"),
    ("family=er n=10 p=1.5", "p"),
    ("family=ba n=10 m=3 m0=2", "m0"),
    ("family=ba n=3 m=3", "m0"),
    ("family=hgg n=10 k=3 gamma=1.5", "gamma"),
    ("family=hgg n=10 k=3 gamma=2 temperature=0.5", "temperature"),
    ("family=xx n=10", "family"),
    ("family=er n=0 p=0.1", "n"),
    ("family=er n=10 p=0.1 colour=red", "colour"),
    ("family=er n=ten p=0.1", "n"),
])
def test_spec_errors_name_field(config, field):
    with pytest.raises(SpecError) as info:
        GeneratorSpec.from_config(config).validate()
    assert info.value.field == field


def test_config_round_trip():
    spec = GeneratorSpec.from_config("family=ws n=1000 k=10 beta=0.5 seed=7")
    assert spec.to_config() == "family=ws n=1000 k=10 beta=0.5 seed=7"
    assert GeneratorSpec.from_config(spec.to_config()) == spec


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["family=er n=200 p=0.02", "family=ws n=200 k=4 beta=0.3",
                        "family=ba n=200 m=3", "family=hgg n=200 k=4 gamma=2.5"]),
       st.integers(0, 10**6))
def test_same_spec_same_edges(config, seed):
    spec = GeneratorSpec.from_config(config).with_seed(seed)
    assert np.array_equal(generate(spec).edges, generate(spec).edges)


def test_different_seeds_differ():
    a = generate_er(300, 0.02, seed=1)
    b = generate_er(300, 0.02, seed=2)
    assert set(map(tuple, a.edges.tolist())) != set(map(tuple, b.edges.tolist()))
