"""Counter-based randomness keyed by (seed, node, round, draw).

Every random decision in a run is a pure function of its key, so results do
not depend on the order in which nodes are visited. The mixer is the
splitmix64 finalizer; the same arithmetic is compiled into the numba kernels.
"""

from __future__ import annotations

from numba import njit, uint64

MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

# draw-index namespaces; decay transmissions use draw 0
DRAW_TRANSMIT = 0
DRAW_CANDIDATE = 1
DRAW_ID = 2


def mix64(z: int) -> int:
    z = (z + _GOLDEN) & MASK
    z = ((z ^ (z >> 30)) * _M1) & MASK
    z = ((z ^ (z >> 27)) * _M2) & MASK
    return z ^ (z >> 31)


def key_hash(seed: int, node: int, rnd: int, draw: int) -> int:
    h = mix64((seed & MASK) ^ mix64(node & MASK))
    h = mix64(h ^ (rnd & MASK))
    return mix64(h ^ (draw & MASK))


def key_uniform(seed: int, node: int, rnd: int, draw: int) -> float:
    """Uniform double in [0, 1) for the given key."""
    return (key_hash(seed, node, rnd, draw) >> 11) * 2.0**-53


def derive_seed(*parts: int) -> int:
    """64-bit seed derived from a tuple of integers (e.g. root, cell, trial)."""
    h = 0
    for p in parts:
        h = mix64(h ^ (p & MASK))
    return h


class KeyedStream:
    """Sequential draws for one (node, round) key; draw index auto-increments.

    Exposes ``random()`` and ``randbelow()`` so it can stand in for a
    ``random.Random`` in the samplers.
    """

    def __init__(self, seed: int, node: int, rnd: int, start: int = DRAW_ID):
        self.seed, self.node, self.rnd = seed, node, rnd
        self.draw = start

    def _next(self) -> int:
        h = key_hash(self.seed, self.node, self.rnd, self.draw)
        self.draw += 1
        return h

    def random(self) -> float:
        return (self._next() >> 11) * 2.0**-53

    def randbelow(self, k: int) -> int:
        return int(self.random() * k)

    def getrandbits(self, k: int) -> int:
        out, have = 0, 0
        while have < k:
            take = min(64, k - have)
            out = (out << take) | (self._next() >> (64 - take))
            have += take
        return out


@njit(cache=True, inline="always")
def _mix64_nb(z):
    z = z + uint64(_GOLDEN)
    z = (z ^ (z >> uint64(30))) * uint64(_M1)
    z = (z ^ (z >> uint64(27))) * uint64(_M2)
    return z ^ (z >> uint64(31))


@njit(cache=True, inline="always")
def uniform_nb(seed, node, rnd, draw):
    h = _mix64_nb(uint64(seed) ^ _mix64_nb(uint64(node)))
    h = _mix64_nb(h ^ uint64(rnd))
    h = _mix64_nb(h ^ uint64(draw))
    return float(h >> uint64(11)) * 1.1102230246251565e-16

