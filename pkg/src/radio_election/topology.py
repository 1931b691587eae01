"""Graph model: immutable topologies, generator families, eccentricity."""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ._kernels import all_pairs_ecc

FAMILIES = (
    "path",
    "cycle",
    "star",
    "grid",
    "layered",
    "complete",
    "random-digraph",
    "random-undirected",
)


class TopologyError(ValueError):
    pass


def _bfs(out_adj, src: int) -> list[int]:
    dist = [-1] * len(out_adj)
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for w in out_adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


@dataclass(frozen=True)
class Topology:
    """A connected (or strongly connected) graph on nodes ``0..n-1``.

    ``edges`` holds ordered pairs; an undirected topology stores both
    orientations. Construction rejects graphs that are not connected.
    """

    n: int
    edges: frozenset
    directed: bool = False
    D: int = field(init=False)
    out_ptr: np.ndarray = field(init=False, repr=False, compare=False)
    out_idx: np.ndarray = field(init=False, repr=False, compare=False)
    _out: tuple = field(init=False, repr=False, compare=False)
    _in: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise TopologyError("a topology needs at least one node")
        for u, v in self.edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise TopologyError(f"bad edge {(u, v)}")
            if not self.directed and (v, u) not in self.edges:
                raise TopologyError(f"undirected topology missing reverse of {(u, v)}")
        out_adj: list[list[int]] = [[] for _ in range(self.n)]
        in_adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in sorted(self.edges):
            out_adj[u].append(v)
            in_adj[v].append(u)
        object.__setattr__(self, "_out", tuple(tuple(a) for a in out_adj))
        object.__setattr__(self, "_in", tuple(tuple(a) for a in in_adj))
        ptr = np.zeros(self.n + 1, dtype=np.int64)
        ptr[1:] = np.cumsum([len(a) for a in out_adj])
        idx = np.array([w for a in out_adj for w in a], dtype=np.int64)
        object.__setattr__(self, "out_ptr", ptr)
        object.__setattr__(self, "out_idx", idx)
        object.__setattr__(self, "D", _eccentricity(ptr, idx, self.n))

    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        return self._out

    def in_neighbors(self) -> tuple[tuple[int, ...], ...]:
        return self._in

    def distances_from(self, src: int) -> list[int]:
        return _bfs(self.out_neighbors(), src)

    def edge_list(self) -> list[list[int]]:
        """Edges for serialization: each undirected edge once, as [u, v] with u < v."""
        if self.directed:
            return [list(e) for e in sorted(self.edges)]
        return [[u, v] for u, v in sorted(self.edges) if u < v]


def _eccentricity(ptr: np.ndarray, idx: np.ndarray, n: int) -> int:
    ecc = all_pairs_ecc(ptr, idx, n)
    if ecc < 0:
        raise TopologyError("graph is not (strongly) connected")
    return int(ecc)


def eccentricity(t: Topology) -> int:
    """Maximum over ordered node pairs of the shortest-path distance."""
    return t.D


def from_edge_list(n: int, edges, directed: bool) -> Topology:
    es = set()
    for u, v in edges:
        es.add((int(u), int(v)))
        if not directed:
            es.add((int(v), int(u)))
    return Topology(n, frozenset(es), directed)


@dataclass(frozen=True)
class TopologySpec:
    """Generator family plus parameters.

    ``p`` is the extra-edge probability for the random families; ``width`` is
    the layer width for ``layered``. ``directed`` only affects ``cycle``; the
    random digraph family is always directed.
    """

    family: str
    n: int
    seed: int = 0
    p: float = 0.1
    width: int = 2
    directed: bool = False


def build_topology(spec: TopologySpec) -> Topology:
    n = spec.n
    if n < 1:
        raise TopologyError("n must be at least 1")
    fam = spec.family
    if fam not in FAMILIES:
        raise TopologyError(f"unknown family {fam!r}; choose from {FAMILIES}")
    if not 0.0 <= spec.p <= 1.0:
        raise TopologyError("p must lie in [0, 1]")
    rng = random.Random(spec.seed)
    directed = False
    edges: list[tuple[int, int]] = []
    if fam == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif fam == "cycle":
        if n < 3 and not spec.directed:
            raise TopologyError("undirected cycle needs n >= 3")
        directed = spec.directed
        edges = [(i, (i + 1) % n) for i in range(n)] if n > 1 else []
    elif fam == "star":
        edges = [(0, i) for i in range(1, n)]
    elif fam == "complete":
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif fam == "grid":
        rows = max(d for d in range(1, math.isqrt(n) + 1) if n % d == 0)
        cols = n // rows
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
    elif fam == "layered":
        w = spec.width
        if w < 1:
            raise TopologyError("layer width must be positive")
        layers = [list(range(i, min(i + w, n))) for i in range(0, n, w)]
        for a, b in zip(layers, layers[1:]):
            edges.extend((u, v) for u in a for v in b)
        for layer in layers:
            edges.extend((u, v) for i, u in enumerate(layer) for v in layer[i + 1:])
    elif fam == "random-digraph":
        directed = True
        order = list(range(n))
        rng.shuffle(order)
        planted = {(order[i], order[(i + 1) % n]) for i in range(n)} if n > 1 else set()
        edges = sorted(planted)
        for u in range(n):
            for v in range(n):
                if u != v and (u, v) not in planted and rng.random() < spec.p:
                    edges.append((u, v))
    elif fam == "random-undirected":
        order = list(range(n))
        rng.shuffle(order)
        planted = {tuple(sorted((order[i], order[i + 1]))) for i in range(n - 1)}
        edges = sorted(planted)
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) not in planted and rng.random() < spec.p:
                    edges.append((u, v))
    return from_edge_list(n, edges, directed)
