import random

import pytest

from radio_election.bits import Bitstring
from radio_election.channel import (
    BEEP,
    BEEP_HEARD,
    COLLISION,
    LISTEN,
    NO_BEEP,
    SILENCE,
    ChannelError,
    Message,
    Transmit,
    step_beep_round,
    step_radio_round,
    step_round,
)
from radio_election.topology import TopologySpec, build_topology

from oracles import naive_beep, naive_radio

B = Bitstring.from_str


def star(n=5):
    return build_topology(TopologySpec("star", n))


def test_star_single_transmitter():
    t = star()
    acts = {v: LISTEN for v in range(5)}
    acts[3] = Transmit(B("101"))
    rx = step_radio_round(t, acts, cd=False)
    assert rx[0] == Message(B("101"))
    assert rx[3] == SILENCE


@pytest.mark.parametrize("cd,expect", [(False, SILENCE), (True, COLLISION)])
def test_star_two_transmitters(cd, expect):
    t = star()
    acts = {v: LISTEN for v in range(5)}
    acts[1] = Transmit(B("1"))
    acts[2] = Transmit(B("0"))
    assert step_radio_round(t, acts, cd=cd)[0] == expect


def test_radio_rejects_beep_actions():
    t = star()
    acts = {v: LISTEN for v in range(5)}
    acts[0] = BEEP
    with pytest.raises(ChannelError):
        step_radio_round(t, acts, cd=False)
    with pytest.raises(ChannelError):
        step_round(t, {v: LISTEN for v in range(5)}, "beep")


def test_beep_path():
    t = build_topology(TopologySpec("path", 3))
    rx = step_beep_round(t, {0})
    assert rx == {0: NO_BEEP, 1: BEEP_HEARD, 2: NO_BEEP}
    assert step_beep_round(t, {0, 2})[1] == BEEP_HEARD
    assert step_beep_round(t, {0, 1})[0] == NO_BEEP


def test_radio_matches_naive_definition():
    rng = random.Random(11)
    for i in range(1000):
        n = rng.randint(1, 32)
        t = build_topology(TopologySpec(rng.choice(["random-digraph", "random-undirected"]),
                                        n, seed=i, p=rng.uniform(0, 0.3)))
        tx = {v: B(format(rng.getrandbits(3), "03b")) for v in range(n) if rng.random() < 0.3}
        acts = {v: Transmit(tx[v]) if v in tx else LISTEN for v in range(n)}
        cd = rng.random() < 0.5
        got = step_radio_round(t, acts, cd)
        want = naive_radio(n, t.edges, tx, cd)
        for v in range(n):
            w = want[v]
            if w[0] == "message":
                assert got[v] == Message(w[1])
            else:
                assert got[v].kind == w[0]


def test_beep_matches_naive_definition():
    rng = random.Random(12)
    for i in range(1000):
        n = rng.randint(1, 32)
        t = build_topology(TopologySpec("random-undirected", n, seed=i, p=rng.uniform(0, 0.3)))
        beepers = {v for v in range(n) if rng.random() < 0.3}
        got = step_beep_round(t, beepers)
        want = naive_beep(n, t.edges, beepers)
        assert all((got[v] == BEEP_HEARD) == want[v] for v in range(n))
