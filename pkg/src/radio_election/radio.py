"""Radio primitives: Decay, Partial Multi-Broadcast, Selection, Search.

Every primitive has a duration computable from (n, D, alpha) alone and
always consumes exactly that many rounds, whatever the sources are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .bits import EMPTY, ONE, Bitstring
from .network import Network
from . import _kernels as K


@dataclass(frozen=True)
class SelectionOutput:
    m: Bitstring
    b: int


def decay_duration(net: Network) -> int:
    return net.L


def pmb_decays(net: Network) -> int:
    return math.ceil(net.alpha * (net.D + net.L))


def pmb_duration(net: Network) -> int:
    return pmb_decays(net) * net.L


def selection_width(net: Network) -> int:
    return 16 * net.L


def selection_duration(net: Network, width: int | None = None) -> int:
    width = selection_width(net) if width is None else width
    return 2 * pmb_duration(net) + width * 4 * net.L


def search_duration(net: Network, ell: int) -> int:
    return ell * pmb_duration(net)


def _table(values) -> tuple[list[Bitstring], dict[Bitstring, int]]:
    """Distinct payloads sorted by value; handle order equals ID order."""
    table = sorted(set(values))
    return table, {b: h for h, b in enumerate(table)}


def _check_radio(net: Network) -> None:
    if net.model == "beep":
        raise ValueError("radio primitives need the nocd or cd model")


def _flood(net: Network, primitive: str, decays: int, tx_payload: np.ndarray,
           table: list[Bitstring], relay: bool) -> tuple[np.ndarray, int]:
    rounds = decays * net.L
    start = net.reserve(rounds)
    first_rx = np.full(net.n, -1, dtype=np.int64)
    shape = net.log_shape(rounds)
    tx_log = np.zeros(shape, np.int64)
    kind_log = np.zeros(shape, np.int64)
    pay_log = np.zeros(shape, np.int64)
    K.radio_flood(net.t.out_ptr, net.t.out_idx, net.n, net.L, decays, net.seed_u64, start,
                  tx_payload, first_rx, net.alive, relay, net.cd, net.recording,
                  tx_log, kind_log, pay_log)
    net.record_radio(primitive, start, tx_log, kind_log, pay_log, table)
    return first_rx, start


def _decay_reps(net: Network, sources: Mapping[int, Bitstring], reps: int, name: str) -> list[Bitstring | None]:
    _check_radio(net)
    table, handle = _table(sources.values())
    tx = np.full(net.n, -1, dtype=np.int64)
    for v, f in sources.items():
        tx[v] = handle[f]
    first_rx, start = _flood(net, name, reps, tx, table, relay=False)
    out = [table[h] if h >= 0 else None for h in first_rx.tolist()]
    net.event(name, start, reps * net.L, True,
              sources={str(v): str(f) for v, f in sorted(sources.items())},
              outputs=[None if o is None else str(o) for o in out])
    return out


def decay(net: Network, sources: Mapping[int, Bitstring]) -> list[Bitstring | None]:
    """One Decay execution (log n rounds); per node, the first payload heard or None."""
    return _decay_reps(net, sources, 1, "decay")


def decay4(net: Network, sources: Mapping[int, Bitstring]) -> list[Bitstring | None]:
    """Four back-to-back Decay executions."""
    return _decay_reps(net, sources, 4, "decay4")


def decay_success_probability(k: int, n: int, reps: int = 1) -> float:
    """Exact chance that a listener with k transmitting in-neighbours hears one."""
    from .bits import log2n

    if k == 0:
        return 0.0
    miss = 1.0
    for i in range(1, log2n(n) + 1):
        q = 2.0**-i
        miss *= 1.0 - k * q * (1.0 - q) ** (k - 1)
    return 1.0 - miss**reps


def _pmb_handles(net: Network, tx: np.ndarray, table: list[Bitstring], sources: dict) -> np.ndarray:
    with net.within("pmb"):
        first_rx, start = _flood(net, "pmb", pmb_decays(net), tx, table, relay=True)
        net.event("pmb", start, pmb_duration(net), True,
                  sources={str(v): str(f) for v, f in sorted(sources.items())},
                  outputs=[str(table[h]) if h >= 0 else "" for h in tx.tolist()])
    return tx


def partial_multi_broadcast(net: Network, sources: Mapping[int, Bitstring]) -> list[Bitstring]:
    """Decay flooding of the sources' strings; each node keeps the first one it hears.

    Sources keep their own string. Nodes that hear nothing output EMPTY.
    """
    _check_radio(net)
    table, handle = _table(sources.values())
    tx = np.full(net.n, -1, dtype=np.int64)
    for v, f in sources.items():
        if net.alive[v]:
            tx[v] = handle[f]
    tx = _pmb_handles(net, tx, table, dict(sources))
    return [table[h] if h >= 0 else EMPTY for h in tx.tolist()]


def selection(net: Network, ids: Mapping[int, Bitstring], width: int | None = None) -> list[SelectionOutput]:
    """Decide whether there are zero, one or several candidates.

    Outputs per node (m, b): (ID, 1) when a single candidate was heard
    without any witness, (p, 0) when witnesses re-broadcast a larger ID p,
    and (EMPTY, 0) when no candidate was heard at all.
    """
    _check_radio(net)
    width = selection_width(net) if width is None else width
    for v, f in ids.items():
        if len(f) < width:
            raise ValueError(f"candidate {v} ID has {len(f)} bits, need {width}")
    table, handle = _table(ids.values())
    bits = np.zeros((max(1, len(table)), width), dtype=np.uint8)
    for h, f in enumerate(table):
        bits[h, :] = f.bits()[:width]
    start = net.now
    with net.within("selection"):
        tx = np.full(net.n, -1, dtype=np.int64)
        for v, f in ids.items():
            if net.alive[v]:
                tx[v] = handle[f]
        m = _pmb_handles(net, tx, table, dict(ids)).copy()
        after_pmb = m.copy()

        rounds = width * 4 * net.L
        bstart = net.reserve(rounds)
        witness = np.zeros(net.n, dtype=np.bool_)
        shape = net.log_shape(rounds)
        tx_log = np.zeros(shape, np.int64)
        kind_log = np.zeros(shape, np.int64)
        pay_log = np.zeros(shape, np.int64)
        with net.within("bits"):
            K.selection_bits(net.t.out_ptr, net.t.out_idx, net.n, net.L, width, net.seed_u64,
                             bstart, m, bits, witness, net.alive, net.cd, net.recording,
                             tx_log, kind_log, pay_log)
            net.record_radio("decay4", bstart, tx_log, kind_log, pay_log, table)
            net.event("selection_bits", bstart, rounds, True,
                      width=width,
                      before=[str(table[h]) if h >= 0 else "" for h in after_pmb.tolist()],
                      witnesses=[int(v) for v in np.flatnonzero(witness)],
                      after=[str(table[h]) if h >= 0 else "" for h in m.tolist()])

        wtx = np.where(witness, m, -1).astype(np.int64)
        witness_src = {int(v): table[m[v]] for v in np.flatnonzero(witness)}
        with net.within("witness"):
            p = _pmb_handles(net, wtx, table, witness_src)

        out = []
        for v in range(net.n):
            if m[v] < 0:
                out.append(SelectionOutput(EMPTY, 0))
            elif p[v] < 0:
                out.append(SelectionOutput(table[m[v]], 1))
            else:
                out.append(SelectionOutput(table[p[v]], 0))
        net.event("selection", start, net.now - start, False,
                  candidates={str(v): str(f) for v, f in sorted(ids.items())},
                  outputs=[[str(o.m), o.b] for o in out])
    return out


def search(net: Network, ids: Mapping[int, Bitstring], ell: int) -> list[Bitstring]:
    """Agree on the first ``ell`` bits of the largest candidate ID.

    Iteration i recomputes its participants: candidates whose ID matches
    their agreed prefix so far and has bit i set. They broadcast "1"; a node
    sets bit i iff it heard the broadcast.
    """
    _check_radio(net)
    for v, f in ids.items():
        if len(f) < ell:
            raise ValueError(f"candidate {v} ID shorter than {ell}")
    cand = [v for v in sorted(ids) if net.alive[v]]
    id_bits = {v: ids[v].bits() for v in cand}
    agreed = np.zeros((net.n, ell), dtype=np.uint8)
    table = [ONE]
    start = net.now
    with net.within("search"):
        for i in range(ell):
            part = [v for v in cand
                    if id_bits[v][i] == 1 and tuple(agreed[v, :i]) == id_bits[v][:i]]
            tx = np.full(net.n, -1, dtype=np.int64)
            tx[part] = 0
            with net.within(f"bit{i + 1}"):
                got = _pmb_handles(net, tx, table, {v: ONE for v in part})
            agreed[:, i] = got >= 0
        out = [Bitstring.from_bits(agreed[v].tolist()) for v in range(net.n)]
        net.event("search", start, net.now - start, False,
                  candidates={str(v): str(ids[v]) for v in sorted(ids)},
                  ell=ell, outputs=[str(o) for o in out])
    return out
