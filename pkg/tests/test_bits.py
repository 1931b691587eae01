import pytest
from hypothesis import given, strategies as st

from radio_election.bits import EMPTY, Bitstring, log2n


def test_from_str_roundtrip():
    b = Bitstring.from_str("0101")
    assert str(b) == "0101" and len(b) == 4 and b.value == 5
    assert b.bits() == (0, 1, 0, 1)
    assert b.bit(2) == 1 and b.bit(1) == 0


def test_empty_sorts_first():
    assert EMPTY < Bitstring.from_str("0")
    assert EMPTY < Bitstring.from_str("0000")
    assert str(EMPTY) == ""


def test_rejects_overflow():
    with pytest.raises(ValueError):
        Bitstring(4, 2)
    with pytest.raises(ValueError):
        Bitstring.from_str("012")


@pytest.mark.parametrize("n,expect", [(1, 1), (2, 1), (3, 2), (4, 2), (5, 3), (16, 4), (17, 5), (256, 8)])
def test_log2n_clamped(n, expect):
    assert log2n(n) == expect


bitstr = st.integers(1, 40).flatmap(
    lambda k: st.tuples(st.integers(0, 2**k - 1), st.just(k))
).map(lambda t: Bitstring(*t))


@given(st.integers(1, 40).flatmap(lambda k: st.tuples(st.integers(0, 2**k - 1), st.integers(0, 2**k - 1), st.just(k))))
def test_equal_length_order_is_unsigned(t):
    a, b, k = t
    assert (Bitstring(a, k) < Bitstring(b, k)) == (a < b)


@given(bitstr, bitstr)
def test_order_is_lexicographic(a, b):
    assert (a < b) == (str(a) < str(b))


@given(bitstr)
def test_prefix_and_popcount(a):
    for k in range(len(a) + 1):
        assert str(a.prefix(k)) == str(a)[:k]
    assert a.popcount() == str(a).count("1")


@given(st.integers(1, 30).flatmap(lambda k: st.tuples(st.integers(0, 2**k - 1), st.integers(0, 2**k - 1), st.just(k))))
def test_or_covers_both(t):
    a, b = Bitstring(t[0], t[2]), Bitstring(t[1], t[2])
    c = a | b
    assert c.covers(a) and c.covers(b)
