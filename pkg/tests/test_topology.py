import random

import pytest
from hypothesis import given, settings, strategies as st

from radio_election.topology import (
    FAMILIES,
    Topology,
    TopologyError,
    TopologySpec,
    build_topology,
    eccentricity,
    from_edge_list,
)

from oracles import floyd_warshall_ecc


def test_path_of_five():
    assert build_topology(TopologySpec("path", 5)).D == 4


def test_complete_eight():
    assert build_topology(TopologySpec("complete", 8)).D == 1


@pytest.mark.parametrize("n", [2, 3, 7, 20])
def test_directed_cycle(n):
    t = build_topology(TopologySpec("cycle", n, directed=True))
    assert t.directed and t.D == n - 1


def test_single_node():
    t = build_topology(TopologySpec("path", 1))
    assert eccentricity(t) == 0


def test_grid_4x4():
    t = build_topology(TopologySpec("grid", 16))
    assert t.D == 6


def test_rejects_empty():
    with pytest.raises(TopologyError):
        build_topology(TopologySpec("path", 0))


def test_rejects_disconnected():
    with pytest.raises(TopologyError):
        from_edge_list(4, [(0, 1), (2, 3)], directed=False)
    with pytest.raises(TopologyError):
        from_edge_list(3, [(0, 1), (1, 2)], directed=True)


def test_rejects_bad_params():
    with pytest.raises(TopologyError):
        build_topology(TopologySpec("cycle", 2))
    with pytest.raises(TopologyError):
        build_topology(TopologySpec("random-digraph", 5, p=1.5))
    with pytest.raises(TopologyError):
        build_topology(TopologySpec("moebius", 5))


def test_undirected_symmetry_enforced():
    with pytest.raises(TopologyError):
        Topology(2, frozenset({(0, 1)}), directed=False)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [1, 2, 5, 12, 33, 64])
def test_families_match_brute_force(family, n):
    if family == "cycle" and n < 3:
        with pytest.raises(TopologyError):
            build_topology(TopologySpec(family, n))
        return
    t = build_topology(TopologySpec(family, n, seed=n, p=0.08, width=3))
    assert t.n == n
    assert t.D == floyd_warshall_ecc(n, t.edges)
    if not t.directed:
        assert all((v, u) in t.edges for u, v in t.edges)
    if n >= 2:
        assert 1 <= t.D <= n - 1


def test_200_random_graphs_against_floyd_warshall():
    rng = random.Random(2024)
    for i in range(200):
        n = rng.randint(1, 64)
        fam = rng.choice(["random-digraph", "random-undirected"])
        t = build_topology(TopologySpec(fam, n, seed=i, p=rng.uniform(0, 0.15)))
        assert t.D == floyd_warshall_ecc(n, t.edges)


@settings(max_examples=40)
@given(st.integers(2, 40), st.integers(0, 2**32), st.floats(0, 0.3))
def test_random_digraph_strongly_connected(n, seed, p):
    t = build_topology(TopologySpec("random-digraph", n, seed=seed, p=p))
    assert t.directed
    assert all(min(t.distances_from(s)) >= 0 for s in range(n))


def test_edge_list_roundtrip():
    t = build_topology(TopologySpec("random-undirected", 20, seed=3, p=0.2))
    again = from_edge_list(20, t.edge_list(), t.directed)
    assert again.edges == t.edges and again.D == t.D
