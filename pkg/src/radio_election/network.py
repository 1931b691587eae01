"""Synchronous round engine shared by all primitives and protocols."""

from __future__ import annotations

from contextlib import contextmanager

import numpy as np

from .bits import Bitstring, log2n
from .channel import BEEP, BEEP_HEARD, COLLISION, LISTEN, MODELS, NO_BEEP, SILENCE, SILENT, Message, Transmit
from .trace import RoundRecord, Trace
from ._kernels import RX_COLLISION, RX_MESSAGE
from .topology import Topology

DEFAULT_ROUND_CAP = 10**7


class RoundCapExceeded(RuntimeError):
    """Raised when a run would pass its round cap; carries the partial trace."""

    def __init__(self, cap: int, now: int, trace: Trace | None):
        super().__init__(f"round cap {cap} exceeded at round {now}")
        self.trace = trace


class Network:
    """One simulation run: topology, channel model, seed, global clock.

    Primitives advance ``now`` by their fixed durations. ``D`` is the
    eccentricity the nodes assume; it defaults to the exact value but can be
    set to an upper bound. ``alive`` marks nodes that have not terminated;
    terminated nodes stay silent.
    """

    def __init__(self, topology: Topology, model: str = "nocd", seed: int = 0, *,
                 D: int | None = None, alpha: int = 4, round_cap: int = DEFAULT_ROUND_CAP,
                 trace: Trace | None = None):
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}")
        if D is not None and D < topology.D:
            raise ValueError(f"assumed D={D} is below the true eccentricity {topology.D}")
        self.t = topology
        self.n = topology.n
        self.model = model
        self.seed = seed & ((1 << 64) - 1)
        self.seed_u64 = np.uint64(self.seed)
        self.D = topology.D if D is None else D
        self.L = log2n(self.n)
        self.alpha = alpha
        self.round_cap = round_cap
        self.trace = trace
        self.now = 0
        self.iteration = 0
        self.alive = np.ones(self.n, dtype=np.bool_)
        self._phase: list[str] = []

    @property
    def cd(self) -> bool:
        return self.model == "cd"

    @property
    def recording(self) -> bool:
        return self.trace is not None and self.trace.keep_rounds

    def reserve(self, rounds: int) -> int:
        """Claim the next ``rounds`` rounds; returns the start round."""
        if self.now + rounds > self.round_cap:
            raise RoundCapExceeded(self.round_cap, self.now, self.trace)
        start = self.now
        self.now += rounds
        return start

    def log_shape(self, rounds: int) -> tuple[int, int]:
        return (rounds, self.n) if self.recording else (1, 1)

    @property
    def phase(self) -> str:
        return "/".join(self._phase)

    @contextmanager
    def within(self, name: str):
        self._phase.append(name)
        try:
            yield
        finally:
            self._phase.pop()

    def event(self, name: str, start: int, rounds: int, leaf: bool, **data) -> None:
        if self.trace is None:
            return
        self.trace.records.append({
            "name": name,
            "phase": self.phase,
            "iteration": self.iteration,
            "start": start,
            "rounds": rounds,
            "leaf": leaf,
            "data": data,
        })

    def record_radio(self, primitive: str, start: int, tx_log, rx_kind_log, rx_pay_log,
                     table: list[Bitstring]) -> None:
        if not self.recording:
            return
        for k in range(tx_log.shape[0]):
            actions = tuple(
                Transmit(table[h]) if h >= 0 else LISTEN for h in tx_log[k].tolist()
            )
            recs = []
            for kind, h in zip(rx_kind_log[k].tolist(), rx_pay_log[k].tolist()):
                if kind == RX_MESSAGE:
                    recs.append(Message(table[h]))
                elif kind == RX_COLLISION:
                    recs.append(COLLISION)
                else:
                    recs.append(SILENCE)
            self.trace.records.append(
                RoundRecord(start + k, primitive, self.phase, self.iteration, actions, tuple(recs))
            )

    def record_beep(self, primitive: str, start: int, beep_log, heard_log) -> None:
        if not self.recording:
            return
        for k in range(beep_log.shape[0]):
            actions = tuple(BEEP if b else SILENT for b in beep_log[k].tolist())
            recs = tuple(BEEP_HEARD if h else NO_BEEP for h in heard_log[k].tolist())
            self.trace.records.append(
                RoundRecord(start + k, primitive, self.phase, self.iteration, actions, recs)
            )

    def record_rounds(self, primitive: str, start: int, actions, receptions) -> None:
        """Record a single round resolved in Python (already as objects)."""
        if self.recording:
            self.trace.records.append(
                RoundRecord(start, primitive, self.phase, self.iteration, tuple(actions), tuple(receptions))
            )


def new_trace(protocol: str, params: dict, net: Network, keep_rounds: bool = True) -> Trace:
    header = {
        "protocol": protocol,
        "params": params,
        "seed": net.seed,
        "n": net.n,
        "D": net.D,
        "model": net.model,
        "directed": net.t.directed,
        "edges": net.t.edge_list(),
    }
    return Trace(header=header, keep_rounds=keep_rounds)
