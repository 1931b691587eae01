from fractions import Fraction

import numpy as np
import pytest

from radio_election.bits import Bitstring, log2n
from radio_election.network import Network
from radio_election.radio import decay, decay4, decay_success_probability
from radio_election.topology import TopologySpec, build_topology

from oracles import decay_success_by_enumeration


def star_net(n, seed=0):
    return Network(build_topology(TopologySpec("star", n)), "nocd", seed)


def empirical(net, k, trials, fn):
    src = {v: Bitstring(v, 16) for v in range(1, k + 1)}
    hits = 0
    for _ in range(trials):
        hits += fn(net, src)[0] is not None
    return hits / trials


@pytest.mark.parametrize("k", [1, 2, 3, 4, 6])
@pytest.mark.parametrize("n", [4, 16, 64])
@pytest.mark.parametrize("reps", [1, 4])
def test_formula_matches_enumeration(k, n, reps):
    exact = decay_success_by_enumeration(k, log2n(n), reps)
    assert decay_success_probability(k, n, reps) == pytest.approx(float(exact), abs=1e-12)


def test_k2_n4_is_eleven_sixteenths():
    assert decay_success_by_enumeration(2, 2) == Fraction(11, 16)


def test_decay_transmit_probabilities_n16():
    # a lone source next to a listener: per-round hit rate is exactly the transmit probability
    t = build_topology(TopologySpec("path", 16))
    net = Network(t, "nocd", 5, trace=None)
    from radio_election.network import new_trace
    net.trace = new_trace("decay", {}, net)
    trials = 4000
    for _ in range(trials):
        decay(net, {0: Bitstring.from_str("1")})
    rounds = net.trace.rounds
    assert len(rounds) == trials * 4
    for i in range(4):
        rate = np.mean([r.actions[0].kind == "transmit" for r in rounds[i::4]])
        assert rate == pytest.approx(2.0 ** -(i + 1), abs=4 * np.sqrt(0.25 / trials))


def test_empty_source_set_hears_nothing():
    net = star_net(8)
    assert all(o is None for o in decay(net, {}))
    assert all(o is None for o in decay4(net, {}))


def test_star_k2_n4_empirical():
    p = empirical(star_net(4, seed=1), 2, 100_000, decay)
    assert abs(p - 11 / 16) < 0.01


def test_decay4_k1_n256():
    exact = decay_success_probability(1, 256, 4)
    p = empirical(star_net(256, seed=2), 1, 10_000, decay4)
    assert abs(p - exact) < 0.03
    assert p > 0.5


def test_durations_fixed():
    net = star_net(256)
    decay(net, {1: Bitstring(1, 1)})
    assert net.now == 8
    decay4(net, {})
    assert net.now == 8 + 32


def test_outputs_come_from_in_neighbours():
    t = build_topology(TopologySpec("random-digraph", 30, seed=4, p=0.1))
    net = Network(t, "nocd", 9)
    src = {v: Bitstring(v, 8) for v in range(0, 30, 3)}
    ins = t.in_neighbors()
    for _ in range(50):
        for v, o in enumerate(decay4(net, src)):
            if o is not None:
                assert any(src.get(u) == o for u in ins[v])
