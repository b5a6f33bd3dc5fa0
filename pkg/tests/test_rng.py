from collections import Counter

import pytest
from hypothesis import given, strategies as st

from gapkit.rng import SplitMix64


def test_reference_vectors():
    # published SplitMix64 outputs
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF
    r = SplitMix64(1234567)
    assert [r.next_u64() for _ in range(5)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
        4593380528125082431,
        16408922859458223821,
    ]


def test_seed_range():
    with pytest.raises(ValueError):
        SplitMix64(-1)
    with pytest.raises(ValueError):
        SplitMix64(1 << 64)
    SplitMix64((1 << 64) - 1).next_u64()


@given(st.integers(0, 2**64 - 1), st.integers(1, 1000))
def test_below_in_range(seed, bound):
    r = SplitMix64(seed)
    assert all(0 <= r.below(bound) < bound for _ in range(20))


@given(st.integers(0, 2**64 - 1), st.lists(st.integers(), max_size=30))
def test_shuffle_is_permutation(seed, items):
    out = list(items)
    SplitMix64(seed).shuffle(out)
    assert Counter(out) == Counter(items)


def test_shuffle_reproducible():
    a, b = list(range(20)), list(range(20))
    SplitMix64(7).shuffle(a)
    SplitMix64(7).shuffle(b)
    assert a == b != list(range(20))


def test_below_roughly_uniform():
    r = SplitMix64(99)
    counts = Counter(r.below(6) for _ in range(6000))
    assert all(850 < c < 1150 for c in counts.values())
