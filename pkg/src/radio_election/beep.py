"""Beep-wave dissemination of bit strings in the beep model."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .bits import EMPTY, Bitstring
from .network import Network
from . import _kernels as K


def beep_wave_duration(D: int, ell: int) -> int:
    return D + 3 * (ell + 1) + 2


@dataclass(frozen=True)
class WaveResult:
    decoded: list[Bitstring]
    first_beep: list[int]


def beep_wave_full(net: Network, sources: Mapping[int, Bitstring], ell: int) -> WaveResult:
    """Run one wave and also return each node's first own beep round (-1 if never)."""
    if net.model != "beep":
        raise ValueError("beep_wave needs the beep model")
    if net.t.directed:
        raise ValueError("beep waves are only defined on undirected topologies")
    if ell < 1:
        raise ValueError("ell must be positive")
    is_source = np.zeros(net.n, dtype=np.bool_)
    f_bits = np.zeros((net.n, ell), dtype=np.uint8)
    for v, f in sources.items():
        if len(f) != ell:
            raise ValueError(f"source {v} string has {len(f)} bits, expected {ell}")
        is_source[v] = True
        f_bits[v, :] = f.bits()
    T = beep_wave_duration(net.D, ell)
    start = net.reserve(T)
    shape = net.log_shape(T)
    beep_log = np.zeros(shape, np.bool_)
    heard_log = np.zeros(shape, np.bool_)
    m, has_msg, first = K.beep_wave(net.t.out_ptr, net.t.out_idx, net.n, T, ell, is_source,
                                    f_bits, net.alive, net.recording, beep_log, heard_log)
    net.record_beep("beep_wave", start, beep_log, heard_log)
    decoded = [Bitstring.from_bits(m[v].tolist()) if has_msg[v] else EMPTY for v in range(net.n)]
    first_beep = first.tolist()
    net.event("beep_wave", start, T, True,
              sources={str(v): str(f) for v, f in sorted(sources.items()) if net.alive[v]},
              ell=ell, outputs=[str(d) for d in decoded], first_beep=first_beep)
    return WaveResult(decoded, first_beep)


def beep_wave(net: Network, sources: Mapping[int, Bitstring], ell: int) -> list[Bitstring]:
    """Disseminate the sources' ``ell``-bit strings; EMPTY at nodes that heard nothing."""
    return beep_wave_full(net, sources, ell).decoded
