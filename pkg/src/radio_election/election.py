"""Leader election protocols built from the primitives.

* ``expected``   repeated single-candidate attempts checked by Selection (no CD)
* ``whp``        one candidate draw, Search on an ID prefix, then Selection rounds
* ``beep``       repeated attempts checked by two beep waves (beep model)
* ``single-hop`` single-hop reference with collision detection (complete graph)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .beep import beep_wave
from .bits import ONE, Bitstring, log2n
from .network import DEFAULT_ROUND_CAP, Network, new_trace
from .radio import search, selection
from .rng import DRAW_CANDIDATE, DRAW_ID, KeyedStream, key_uniform
from .topology import Topology
from .trace import Trace
from . import _kernels as K

PROTOCOLS = ("expected", "whp", "beep", "single-hop")
DEFAULT_MODEL = {"expected": "nocd", "whp": "nocd", "beep": "beep", "single-hop": "cd"}
ALLOWED_MODELS = {
    "expected": ("nocd", "cd"),
    "whp": ("nocd", "cd"),
    "beep": ("beep",),
    "single-hop": ("cd",),
}


@dataclass(frozen=True)
class ElectionParams:
    """Candidate probability, ID length and loop bound for one protocol."""

    protocol: str
    n: int
    D: int
    candidate_prob: Fraction
    id_bits: int
    id_weight: int | None = None
    loop_bound: int | None = None

    @classmethod
    def for_protocol(cls, protocol: str, n: int, D: int) -> "ElectionParams":
        L = log2n(n)
        if protocol == "expected":
            return cls(protocol, n, D, Fraction(1, n), 16 * L)
        if protocol == "whp":
            return cls(protocol, n, D, min(Fraction(1), Fraction(4 * L, n)), L,
                       loop_bound=math.ceil(3 * math.sqrt(L)))
        if protocol == "beep":
            return cls(protocol, n, D, Fraction(1, n), 4 * L, id_weight=L)
        if protocol == "single-hop":
            return cls(protocol, n, D, Fraction(1, n), L)
        raise ValueError(f"unknown protocol {protocol!r}")

    @property
    def search_bits(self) -> int:
        return math.ceil(math.sqrt(log2n(self.n)))


@dataclass
class ProtocolOutcome:
    protocol: str
    n: int
    D: int
    seed: int
    outputs: list[Bitstring | None]
    elected: list[bool]
    rounds: int
    iterations: int
    failure: str | None = None

    @property
    def success(self) -> bool:
        if self.failure is not None or any(o is None for o in self.outputs):
            return False
        return sum(self.elected) == 1 and len(set(self.outputs)) == 1

    @property
    def leader_node(self) -> int | None:
        winners = [v for v, e in enumerate(self.elected) if e]
        return winners[0] if len(winners) == 1 else None

    @property
    def output_id(self) -> Bitstring | None:
        outs = set(self.outputs)
        return self.outputs[0] if len(outs) == 1 else None

    def to_record(self) -> dict:
        oid = self.output_id
        return {
            "protocol": self.protocol,
            "n": self.n,
            "D": self.D,
            "seed": self.seed,
            "success": self.success,
            "leader_node": self.leader_node,
            "output_id": None if oid is None else str(oid),
            "rounds": self.rounds,
            "iterations": self.iterations,
        }


def sample_constant_weight_id(rng, length: int, weight: int) -> Bitstring:
    """Uniform ``length``-bit string with exactly ``weight`` ones.

    Partial Fisher-Yates over bit positions; ``rng`` needs a ``random()``
    method returning floats in [0, 1).
    """
    if not 0 <= weight <= length:
        raise ValueError("weight must lie in [0, length]")
    pos = list(range(length))
    for i in range(weight):
        j = i + min(int(rng.random() * (length - i)), length - i - 1)
        pos[i], pos[j] = pos[j], pos[i]
    value = 0
    for p in pos[:weight]:
        value |= 1 << (length - 1 - p)
    return Bitstring(value, length)


def draw_candidates(net: Network, params: ElectionParams, nodes=None) -> dict[int, Bitstring]:
    """Each live node joins with the candidate probability and draws an ID.

    Draws are keyed by (seed, node, current round), so they do not depend on
    the order nodes are visited in.
    """
    prob = float(params.candidate_prob)
    out = {}
    nodes = range(net.n) if nodes is None else nodes
    for v in nodes:
        if not net.alive[v]:
            continue
        if key_uniform(net.seed, v, net.now, DRAW_CANDIDATE) >= prob:
            continue
        stream = KeyedStream(net.seed, v, net.now, DRAW_ID)
        if params.id_weight is None:
            out[v] = Bitstring(stream.getrandbits(params.id_bits), params.id_bits)
        else:
            out[v] = sample_constant_weight_id(stream, params.id_bits, params.id_weight)
    return out


class _Results:
    def __init__(self, n: int):
        self.outputs: list[Bitstring | None] = [None] * n
        self.elected = [False] * n

    def finish(self, net: Network, v: int, output: Bitstring, own: Bitstring | None) -> None:
        self.outputs[v] = output
        self.elected[v] = own is not None and own == output
        net.alive[v] = False


def elect_expected(net: Network, params: ElectionParams, forced: Mapping[int, Bitstring] | None = None) -> ProtocolOutcome:
    res = _Results(net.n)
    while net.alive.any():
        net.iteration += 1
        if forced is not None and net.iteration == 1:
            cands = dict(forced)
        else:
            cands = draw_candidates(net, params)
        with net.within(f"iter{net.iteration}"):
            out = selection(net, cands, width=params.id_bits)
        for v in np.flatnonzero(net.alive):
            if out[v].b == 1:
                res.finish(net, int(v), out[v].m, cands.get(int(v)))
    return ProtocolOutcome("expected", net.n, net.D, net.seed, res.outputs, res.elected,
                           net.now, net.iteration)


def elect_whp(net: Network, params: ElectionParams, forced: Mapping[int, Bitstring] | None = None) -> ProtocolOutcome:
    res = _Results(net.n)
    net.iteration = 0
    cands = dict(forced) if forced is not None else draw_candidates(net, params)
    s = params.search_bits
    with net.within("search"):
        prefix = search(net, cands, s)
    cands = {v: f for v, f in cands.items() if prefix[v] == f.prefix(s)}
    for it in range(1, params.loop_bound + 1):
        net.iteration = it
        with net.within(f"iter{it}"):
            out = selection(net, cands, width=params.id_bits)
        for v in np.flatnonzero(net.alive):
            if out[v].b == 1:
                res.finish(net, int(v), out[v].m, cands.get(int(v)))
        cands = {v: f for v, f in cands.items() if net.alive[v] and not out[v].m > f}
        if not net.alive.any():
            break
    failure = "loop exhausted" if net.alive.any() else None
    return ProtocolOutcome("whp", net.n, net.D, net.seed, res.outputs, res.elected,
                           net.now, net.iteration, failure)


def beep_iteration(net: Network, cands: Mapping[int, Bitstring], L: int):
    """One loop body of the beep election; returns (decoded IDs, witnesses, witness wave)."""
    m = beep_wave(net, cands, 4 * L)
    witnesses = [v for v in range(net.n)
                 if net.alive[v] and not m[v].empty and m[v].popcount() > L]
    with net.within("witness"):
        p = beep_wave(net, {v: ONE for v in witnesses}, 1)
    return m, witnesses, p


def elect_beep(net: Network, params: ElectionParams, forced: Mapping[int, Bitstring] | None = None) -> ProtocolOutcome:
    res = _Results(net.n)
    L = log2n(net.n)
    while net.alive.any():
        net.iteration += 1
        if forced is not None and net.iteration == 1:
            cands = dict(forced)
        else:
            cands = draw_candidates(net, params)
        with net.within(f"iter{net.iteration}"):
            m, _, p = beep_iteration(net, cands, L)
        for v in np.flatnonzero(net.alive):
            if not m[v].empty and p[v].empty:
                res.finish(net, int(v), m[v], cands.get(int(v)))
    return ProtocolOutcome("beep", net.n, net.D, net.seed, res.outputs, res.elected,
                           net.now, net.iteration)


def _slot(net: Network, tx: np.ndarray, table: list[Bitstring], phase: str):
    start = net.reserve(1)
    kind, pay = K.radio_round(net.t.out_ptr, net.t.out_idx, net.n, tx, net.cd)
    with net.within(phase):
        if net.recording:
            net.record_radio("slot", start, tx[None, :], kind[None, :], pay[None, :], table)
        net.event("slot", start, 1, True,
                  transmitters={str(v): str(table[tx[v]]) for v in np.flatnonzero(tx >= 0)})
    return kind, pay


def elect_single_hop(net: Network, params: ElectionParams, forced: Mapping[int, Bitstring] | None = None) -> ProtocolOutcome:
    """Candidates transmit their IDs in one slot; a second slot acknowledges.

    In the acknowledgement slot every node that received an ID transmits,
    so a candidate learns it was the only transmitter by hearing a message
    or a collision there.
    """
    if net.t.n * (net.t.n - 1) != len(net.t.edges):
        raise ValueError("single-hop election needs a complete graph")
    if not net.cd:
        raise ValueError("single-hop election needs collision detection")
    res = _Results(net.n)
    while net.alive.any():
        net.iteration += 1
        if forced is not None and net.iteration == 1:
            cands = dict(forced)
        else:
            cands = draw_candidates(net, params)
        table, handle = sorted(set(cands.values())) + [ONE], None
        handle = {b: h for h, b in enumerate(table[:-1])}
        ack = len(table) - 1
        tx = np.full(net.n, -1, dtype=np.int64)
        for v, f in cands.items():
            tx[v] = handle[f]
        with net.within(f"iter{net.iteration}"):
            kind, pay = _slot(net, tx, table, "announce")
            tx2 = np.where(kind == K.RX_MESSAGE, ack, -1).astype(np.int64)
            tx2[~net.alive] = -1
            kind2, _ = _slot(net, tx2, table, "ack")
        for v in np.flatnonzero(net.alive):
            v = int(v)
            if v in cands:
                if net.n == 1 or kind2[v] != K.RX_SILENCE:
                    res.finish(net, v, cands[v], cands[v])
            elif kind[v] == K.RX_MESSAGE:
                res.finish(net, v, table[pay[v]], None)
    return ProtocolOutcome("single-hop", net.n, net.D, net.seed, res.outputs, res.elected,
                           net.now, net.iteration)


_ELECT = {
    "expected": elect_expected,
    "whp": elect_whp,
    "beep": elect_beep,
    "single-hop": elect_single_hop,
}


@dataclass(frozen=True)
class ProtocolSpec:
    """What to run: protocol name, channel model and engine knobs.

    ``record`` controls the trace: "rounds" keeps every round, "events" keeps
    only primitive summaries, "none" keeps nothing.
    """

    name: str
    model: str | None = None
    alpha: int = 4
    D: int | None = None
    round_cap: int = DEFAULT_ROUND_CAP
    record: str = "rounds"
    forced: Mapping[int, Bitstring] | None = field(default=None, compare=False)

    @property
    def resolved_model(self) -> str:
        return self.model or DEFAULT_MODEL[self.name]


def run_protocol(t: Topology, protocol: ProtocolSpec, seed: int) -> tuple[ProtocolOutcome, Trace | None]:
    """Run one election to completion.

    Raises RoundCapExceeded (carrying the partial trace) if the round cap
    would be passed.
    """
    if protocol.name not in PROTOCOLS:
        raise ValueError(f"unknown protocol {protocol.name!r}")
    model = protocol.resolved_model
    if model not in ALLOWED_MODELS[protocol.name]:
        raise ValueError(f"protocol {protocol.name!r} cannot run under model {model!r}")
    if protocol.record not in ("rounds", "events", "none"):
        raise ValueError(f"bad record mode {protocol.record!r}")
    net = Network(t, model, seed, D=protocol.D, alpha=protocol.alpha, round_cap=protocol.round_cap)
    params = ElectionParams.for_protocol(protocol.name, t.n, net.D)
    trace = None
    if protocol.record != "none":
        trace = new_trace(protocol.name, {"alpha": protocol.alpha, "D": net.D,
                                          "round_cap": protocol.round_cap},
                          net, keep_rounds=protocol.record == "rounds")
        net.trace = trace
    outcome = _ELECT[protocol.name](net, params, protocol.forced)
    if trace is not None:
        trace.outcome = outcome.to_record()
    return outcome, trace
