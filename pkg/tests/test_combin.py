import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zecap import combin


def test_next_primes_examples():
    assert combin.next_primes(2, 3) == [3, 5, 7]
    assert combin.next_primes(7, 2) == [11, 13]
    assert combin.next_primes(13, 1) == [17]


def test_next_primes_pass_trial_division():
    for p in combin.next_primes(2, 60):
        assert all(p % d for d in range(2, p))


def test_next_primes_rejects_bad_inputs():
    with pytest.raises(ValueError):
        combin.next_primes(1, 3)
    with pytest.raises(ValueError):
        combin.next_primes(5, 0)


def test_binomial_examples():
    assert combin.binomial(8, 4) == 70
    assert combin.binomial(100, 0) == 1
    assert combin.binomial(16, 8) == 12870
    assert combin.binomial(4, 9) == 0


def test_binomial_pascal_exhaustive():
    # Pascal-triangle oracle, built independently of math.comb
    row = [1]
    for n in range(41):
        for k, expect in enumerate(row):
            assert combin.binomial(n, k) == expect
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]


def test_colex_examples():
    assert combin.colex_unrank(4, 2, 0) == (1, 2)
    assert combin.colex_unrank(4, 2, 5) == (3, 4)
    assert combin.colex_rank(combin.colex_unrank(8, 4, 37)) == 37
    # enumerate all 6 pairs of [4] in colex order
    assert combin.ksubsets_colex(4, 2) == [
        (1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]


def test_colex_roundtrip_exhaustive_small():
    for r in range(13):
        for k in range(r + 1):
            subs = combin.ksubsets_colex(r, k)
            assert len(subs) == math.comb(r, k)
            for idx, s in enumerate(subs):
                assert combin.colex_rank(s) == idx
                assert combin.colex_unrank(r, k, idx) == s


def test_colex_unrank_out_of_range():
    with pytest.raises(ValueError):
        combin.colex_unrank(4, 2, 6)
    with pytest.raises(ValueError):
        combin.colex_unrank(4, 2, -1)


@given(st.integers(1, 16), st.data())
@settings(max_examples=60, deadline=None)
def test_colex_roundtrip_property(r, data):
    k = data.draw(st.integers(0, r))
    idx = data.draw(st.integers(0, math.comb(r, k) - 1))
    sub = combin.colex_unrank(r, k, idx)
    assert len(sub) == k
    assert all(1 <= e <= r for e in sub)
    assert combin.colex_rank(sub) == idx


def test_subset_masks_match_tuples():
    masks = combin.subset_masks(10, 3)
    subs = combin.ksubsets_colex(10, 3)
    assert len(masks) == len(subs) == 120
    for m, s in zip(masks, subs):
        assert int(m) == sum(1 << (e - 1) for e in s)


def test_subset_masks_requires_word_width():
    with pytest.raises(ValueError):
        combin.subset_masks(65, 2)


def test_check_ksubset():
    assert combin.check_ksubset(8, [1, 5, 8]) == (1, 5, 8)
    with pytest.raises(ValueError):
        combin.check_ksubset(8, [0, 1])
    with pytest.raises(ValueError):
        combin.check_ksubset(8, [3, 3])
    with pytest.raises(ValueError):
        combin.check_ksubset(8, [5, 2])


def test_crt_examples():
    assert combin.crt_unique_below([(8 % 3, 3), (8 % 5, 5)], 15) == 8
    assert combin.crt_unique_below([(8 % 3, 3), (8 % 5, 5)], 8) is None
    assert combin.crt_unique_below([(0, 3)], 3) == 0


def test_crt_not_unique_below_large_bound():
    # both 8 and 23 satisfy the congruences below 30
    assert combin.crt_unique_below([(8 % 3, 3), (8 % 5, 5)], 30) is None


@given(st.integers(0, 14), st.integers(1, 40))
@settings(max_examples=80, deadline=None)
def test_crt_agrees_with_scan(x, bound):
    pairs = [(x % 3, 3), (x % 5, 5)]
    hits = [v for v in range(bound) if all(v % m == r for r, m in pairs)]
    expect = hits[0] if len(hits) == 1 else None
    assert combin.crt_unique_below(pairs, bound) == expect


def test_check_prime_list():
    assert combin.check_prime_list([3, 5, 7]) == [3, 5, 7]
    with pytest.raises(ValueError):
        combin.check_prime_list([3, 4])
    with pytest.raises(ValueError):
        combin.check_prime_list([5, 3])
