import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from radio_election.audit import audit_trace
from radio_election.beep import beep_wave, beep_wave_duration, beep_wave_full
from radio_election.bits import EMPTY, Bitstring
from radio_election.network import Network, new_trace
from radio_election.topology import TopologySpec, build_topology, from_edge_list

B = Bitstring.from_str


def undirected(g):
    return from_edge_list(g.number_of_nodes(), list(g.edges()), directed=False)


def bfs(t, s):
    g = nx.Graph()
    g.add_nodes_from(range(t.n))
    g.add_edges_from(t.edge_list())
    d = nx.single_source_shortest_path_length(g, s)
    return [d[v] for v in range(t.n)]


def has_witness(sources, decoded):
    for u in sources:
        for v in sources:
            if u < v:
                need = sources[u] | sources[v]
                if any(not m.empty and m.covers(need) for m in decoded):
                    return True
    return False


def test_duration_formula():
    assert beep_wave_duration(10, 4) == 10 + 15 + 2


def test_empty_source_set_is_silent():
    t = build_topology(TopologySpec("grid", 20))
    net = Network(t, "beep", 0)
    net.trace = new_trace("test", {}, net)
    res = beep_wave_full(net, {}, 5)
    assert res.decoded == [EMPTY] * 20
    assert res.first_beep == [-1] * 20
    assert not any(a.kind == "beep" for r in net.trace.rounds for a in r.actions)


@pytest.mark.parametrize("family,n", [("path", 17), ("grid", 30), ("cycle", 11), ("star", 9),
                                      ("layered", 20), ("complete", 6)])
def test_single_source_exact(family, n):
    t = build_topology(TopologySpec(family, n))
    rng = random.Random(n)
    for s in range(n):
        f = Bitstring(rng.getrandbits(7), 7)
        res = beep_wave_full(Network(t, "beep", 0), {s: f}, 7)
        assert res.decoded == [f] * n
        assert res.first_beep == bfs(t, s)


@given(st.integers(2, 40), st.integers(0, 2**32), st.integers(1, 12))
def test_single_source_random_graph(n, seed, ell):
    t = build_topology(TopologySpec("random-undirected", n, seed=seed, p=0.08))
    rng = random.Random(seed)
    s = rng.randrange(n)
    f = Bitstring(rng.getrandbits(ell), ell)
    res = beep_wave_full(Network(t, "beep", seed), {s: f}, ell)
    assert res.decoded == [f] * n
    assert res.first_beep == bfs(t, s)


def test_adjacent_sources_witness():
    t = build_topology(TopologySpec("path", 6))
    out = beep_wave(Network(t, "beep", 0), {2: B("1010"), 3: B("0110")}, 4)
    assert any(m.covers(B("1110")) for m in out)
    assert all(not m.empty for m in out)


def test_small_graphs_exhaustive():
    rng = random.Random(11)
    checked = 0
    for g in nx.graph_atlas_g()[1:]:
        if g.number_of_nodes() > 4 or not nx.is_connected(g):
            continue
        t = undirected(g)
        for u in range(t.n):
            for v in range(u + 1, t.n):
                for _ in range(5):
                    src = {u: Bitstring(rng.getrandbits(4), 4), v: Bitstring(rng.getrandbits(4), 4)}
                    out = beep_wave(Network(t, "beep", 0), src, 4)
                    assert all(not m.empty for m in out)
                    assert has_witness(src, out)
                    checked += 1
    assert checked > 100


@given(st.integers(3, 30), st.integers(0, 2**32), st.integers(2, 5), st.integers(1, 10))
def test_multi_source_witness_and_quiet_end(n, seed, k, ell):
    t = build_topology(TopologySpec("random-undirected", n, seed=seed, p=0.1))
    rng = random.Random(seed)
    src = {v: Bitstring(rng.getrandbits(ell), ell) for v in rng.sample(range(n), min(k, n))}
    net = Network(t, "beep", seed)
    net.trace = new_trace("test", {}, net)
    out = beep_wave(net, src, ell)
    assert all(not m.empty for m in out)
    assert has_witness(src, out)
    last = max(r.round for r in net.trace.rounds
               if any(a.kind == "beep" for a in r.actions))
    assert last <= t.D + 3 * ell + 2
    assert audit_trace(net.trace).ok


def test_rejects_directed_and_wrong_model():
    d = build_topology(TopologySpec("cycle", 5, directed=True))
    with pytest.raises(ValueError):
        beep_wave(Network(d, "beep", 0), {0: B("1")}, 1)
    u = build_topology(TopologySpec("cycle", 5))
    with pytest.raises(ValueError):
        beep_wave(Network(u, "nocd", 0), {0: B("1")}, 1)
    with pytest.raises(ValueError):
        beep_wave(Network(u, "beep", 0), {0: B("11")}, 1)
