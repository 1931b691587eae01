"""Compiled per-round loops for the primitives.

Node state lives in flat arrays and every round runs the same three steps
for all nodes in lockstep: choose actions, resolve the channel, update
state. Payloads are integer handles into a table owned by the caller.
When ``record`` is set, actions and receptions are written to the log
arrays (one row per round); otherwise the logs are 1x1 dummies.
"""

import numpy as np
from numba import njit

from .rng import uniform_nb

RX_SILENCE = 0
RX_MESSAGE = 1
RX_COLLISION = 2


@njit(cache=True)
def _resolve_radio(out_ptr, out_idx, n, tx, cnt, sender):
    for v in range(n):
        if tx[v] >= 0:
            for e in range(out_ptr[v], out_ptr[v + 1]):
                w = out_idx[e]
                cnt[w] += 1
                sender[w] = v


@njit(cache=True)
def radio_flood(out_ptr, out_idx, n, L, n_decays, seed, round0, tx_payload, first_rx,
                alive, relay, cd, record, tx_log, rx_kind_log, rx_pay_log):
    """Back-to-back Decay executions of L rounds each.

    In step i of each execution every holder of a payload transmits it with
    probability 2**-i. ``first_rx`` keeps the first payload a node receives.
    With ``relay`` a node that first receives a payload holds it from the
    next round on (Decay flooding); otherwise the transmitter set is fixed.
    """
    cnt = np.zeros(n, np.int64)
    sender = np.zeros(n, np.int64)
    tx = np.empty(n, np.int64)
    rnd = round0
    row = 0
    for _ in range(n_decays):
        for i in range(1, L + 1):
            p = 0.5 ** i
            for v in range(n):
                tx[v] = -1
                if alive[v] and tx_payload[v] >= 0:
                    if uniform_nb(seed, v, rnd, 0) < p:
                        tx[v] = tx_payload[v]
            _resolve_radio(out_ptr, out_idx, n, tx, cnt, sender)
            for v in range(n):
                kind = RX_SILENCE
                pay = -1
                if tx[v] < 0:
                    if cnt[v] == 1:
                        kind = RX_MESSAGE
                        pay = tx[sender[v]]
                    elif cnt[v] >= 2 and cd:
                        kind = RX_COLLISION
                cnt[v] = 0
                if record:
                    tx_log[row, v] = tx[v]
                    rx_kind_log[row, v] = kind
                    rx_pay_log[row, v] = pay
                if kind == RX_MESSAGE and first_rx[v] < 0:
                    first_rx[v] = pay
                    if relay and tx_payload[v] < 0:
                        tx_payload[v] = pay
            rnd += 1
            row += 1


@njit(cache=True)
def selection_bits(out_ptr, out_idx, n, L, width, seed, round0, m, bits, witness,
                   alive, cd, record, tx_log, rx_kind_log, rx_pay_log):
    """Witness-detection loop of Selection.

    ``m`` holds payload handles (-1 = empty); handles are ordered by ID
    value, so max over IDs is max over handles. For bit i, nodes whose
    current m has bit i set run four Decays transmitting m; a listener with
    bit i of m clear that receives an ID becomes a witness and keeps the
    larger of the two.
    """
    cnt = np.zeros(n, np.int64)
    sender = np.zeros(n, np.int64)
    tx = np.empty(n, np.int64)
    member = np.zeros(n, np.bool_)
    rnd = round0
    row = 0
    for b in range(width):
        for v in range(n):
            member[v] = alive[v] and m[v] >= 0 and bits[m[v], b] == 1
        for _ in range(4):
            for i in range(1, L + 1):
                p = 0.5 ** i
                for v in range(n):
                    tx[v] = -1
                    if member[v] and uniform_nb(seed, v, rnd, 0) < p:
                        tx[v] = m[v]
                _resolve_radio(out_ptr, out_idx, n, tx, cnt, sender)
                for v in range(n):
                    kind = RX_SILENCE
                    pay = -1
                    if tx[v] < 0:
                        if cnt[v] == 1:
                            kind = RX_MESSAGE
                            pay = tx[sender[v]]
                        elif cnt[v] >= 2 and cd:
                            kind = RX_COLLISION
                    cnt[v] = 0
                    if record:
                        tx_log[row, v] = tx[v]
                        rx_kind_log[row, v] = kind
                        rx_pay_log[row, v] = pay
                    if kind == RX_MESSAGE and alive[v] and m[v] >= 0 and bits[m[v], b] == 0:
                        witness[v] = True
                        if pay > m[v]:
                            m[v] = pay
                rnd += 1
                row += 1


@njit(cache=True)
def beep_wave(out_ptr, out_idx, n, T, ell, is_source, f_bits, alive,
              record, beep_log, heard_log):
    """Deterministic beep wave; returns (decoded bits, has_message, first own beep round).

    Sources beep at round 0 and at 3i when bit i of their string is 1, and
    decode bit i from their own beep or a beep heard at 3i. Other nodes take
    the round j of their first heard beep as reference, relay every beep
    heard at j or j+3i one round later, and set bit i on a beep heard at
    j+3i or j+3i+1.
    """
    m = np.zeros((n, ell), np.uint8)
    j = np.full(n, -1, np.int64)
    first_beep = np.full(n, -1, np.int64)
    relay_next = np.zeros(n, np.bool_)
    beeping = np.zeros(n, np.bool_)
    heard = np.zeros(n, np.bool_)
    for v in range(n):
        if is_source[v] and alive[v]:
            for i in range(ell):
                m[v, i] = f_bits[v, i]
    for r in range(T):
        for v in range(n):
            bp = False
            if alive[v]:
                if is_source[v]:
                    if r == 0:
                        bp = True
                    elif r % 3 == 0 and 1 <= r // 3 <= ell:
                        bp = f_bits[v, r // 3 - 1] == 1
                else:
                    bp = relay_next[v]
            beeping[v] = bp
            heard[v] = False
            if bp and first_beep[v] < 0:
                first_beep[v] = r
        for v in range(n):
            if beeping[v]:
                for e in range(out_ptr[v], out_ptr[v + 1]):
                    heard[out_idx[e]] = True
        for v in range(n):
            h = heard[v] and not beeping[v]
            if record:
                beep_log[r, v] = beeping[v]
                heard_log[r, v] = h
            relay_next[v] = False
            if not alive[v]:
                continue
            if is_source[v]:
                if h and r % 3 == 0 and 1 <= r // 3 <= ell:
                    m[v, r // 3 - 1] = 1
            elif j[v] < 0:
                if h:
                    j[v] = r
                    relay_next[v] = True
            else:
                d = r - j[v]
                if h and d % 3 == 0 and 1 <= d // 3 <= ell:
                    m[v, d // 3 - 1] = 1
                    relay_next[v] = True
                elif h and d % 3 == 1 and 1 <= d // 3 <= ell:
                    # a beep one round late comes from a wave of the other parity
                    m[v, d // 3 - 1] = 1
    has_msg = np.zeros(n, np.bool_)
    for v in range(n):
        has_msg[v] = alive[v] and (is_source[v] or j[v] >= 0)
    return m, has_msg, first_beep


@njit(cache=True)
def radio_round(out_ptr, out_idx, n, tx, cd):
    """Resolve a single radio round; returns (reception kinds, payload handles)."""
    cnt = np.zeros(n, np.int64)
    sender = np.zeros(n, np.int64)
    _resolve_radio(out_ptr, out_idx, n, tx, cnt, sender)
    kind = np.zeros(n, np.int64)
    pay = np.full(n, -1, np.int64)
    for v in range(n):
        if tx[v] < 0:
            if cnt[v] == 1:
                kind[v] = RX_MESSAGE
                pay[v] = tx[sender[v]]
            elif cnt[v] >= 2 and cd:
                kind[v] = RX_COLLISION
    return kind, pay


@njit(cache=True)
def all_pairs_ecc(out_ptr, out_idx, n):
    """Largest BFS distance over all sources; -1 if some node is unreachable."""
    dist = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    ecc = 0
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            for e in range(out_ptr[u], out_ptr[u + 1]):
                w = out_idx[e]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue[tail] = w
                    tail += 1
        if tail < n:
            return -1
        if dist[queue[tail - 1]] > ecc:
            ecc = dist[queue[tail - 1]]
    return ecc
