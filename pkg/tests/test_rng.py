import numpy as np
from hypothesis import given, strategies as st
from numba import njit

from radio_election.rng import KeyedStream, derive_seed, key_uniform, uniform_nb


@njit
def _nb(seed, node, rnd, draw):
    return uniform_nb(seed, node, rnd, draw)


@given(st.integers(0, 2**64 - 1), st.integers(0, 10**4), st.integers(0, 10**8), st.integers(0, 100))
def test_python_and_compiled_agree(seed, node, rnd, draw):
    assert key_uniform(seed, node, rnd, draw) == _nb(np.uint64(seed), node, rnd, draw)


def test_uniformity_rough():
    u = np.array([key_uniform(7, v, r, 0) for v in range(100) for r in range(100)])
    assert 0 <= u.min() and u.max() < 1
    assert abs(u.mean() - 0.5) < 0.01
    counts, _ = np.histogram(u, bins=10, range=(0, 1))
    assert counts.min() > 900 and counts.max() < 1100


def test_keys_independent_of_order():
    a = [key_uniform(1, v, 5, 0) for v in range(10)]
    b = [key_uniform(1, v, 5, 0) for v in reversed(range(10))][::-1]
    assert a == b


def test_stream_draws_advance():
    s = KeyedStream(3, 4, 5)
    x, y = s.random(), s.random()
    assert x != y
    assert KeyedStream(3, 4, 5).random() == x
    bits = KeyedStream(3, 4, 5).getrandbits(130)
    assert 0 <= bits < 2**130


def test_derive_seed_distinct():
    seeds = {derive_seed(0, c, t) for c in range(10) for t in range(100)}
    assert len(seeds) == 1000
