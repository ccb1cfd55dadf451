"""Exact integer combinatorics: primes, binomials, colexicographic subset
codes, and Chinese-remainder utilities.

Subsets of [r] = {1, ..., r} are plain sorted tuples of 1-based elements.
The canonical vertex numbering used everywhere else in the package is the
colexicographic rank of the subset: rank(S) = sum(C(a_i - 1, i)) over the
i-th smallest element a_i (i starting at 1), which orders subsets by their
largest differing element.  For r <= 64 a subset also has a machine-word
bit-mask (bit j-1 set iff j in S) so intersection sizes reduce to popcounts.
"""

from __future__ import annotations

import functools
import math

import numpy as np

binomial = math.comb


def is_prime(m: int) -> bool:
    """Deterministic trial-division primality check (moduli here are tiny)."""
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def next_primes(after: int, count: int) -> list[int]:
    """The `count` smallest primes strictly greater than `after`, ascending."""
    if after < 2:
        raise ValueError(f"after must be >= 2, got {after}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    out = []
    m = after + 1
    while len(out) < count:
        if is_prime(m):
            out.append(m)
        m += 1
    return out


def check_prime_list(values) -> list[int]:
    """Validate a strictly increasing list of primes; returns it as ints."""
    vals = [int(v) for v in values]
    for i, v in enumerate(vals):
        if not is_prime(v):
            raise ValueError(f"{v} is not prime")
        if i > 0 and vals[i - 1] >= v:
            raise ValueError(f"prime list must be strictly increasing, got {vals}")
    return vals


def check_ksubset(r: int, elements) -> tuple[int, ...]:
    """Validate a k-subset of [1, r]: sorted, distinct, in range."""
    elems = tuple(int(e) for e in elements)
    for i, e in enumerate(elems):
        if not 1 <= e <= r:
            raise ValueError(f"element {e} outside [1, {r}]")
        if i > 0 and elems[i - 1] >= e:
            raise ValueError(f"elements must be strictly increasing, got {elems}")
    return elems


def colex_rank(elements) -> int:
    """Colexicographic rank of a sorted subset (1-based elements)."""
    return sum(math.comb(a - 1, i + 1) for i, a in enumerate(elements))


def colex_unrank(r: int, k: int, index: int) -> tuple[int, ...]:
    """Subset of [1, r] with the given colex rank; inverse of colex_rank."""
    if not 0 <= index < math.comb(r, k):
        raise ValueError(f"index {index} out of range [0, C({r},{k}))")
    out = [0] * k
    rem = index
    m = r
    for i in range(k, 0, -1):
        # largest m with C(m-1, i) <= rem
        while math.comb(m - 1, i) > rem:
            m -= 1
        rem -= math.comb(m - 1, i)
        out[i - 1] = m
        m -= 1
    return tuple(out)


def ksubsets_colex(r: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of [1, r] in colex order (list index == colex rank)."""
    if k < 0 or k > r:
        return []

    # colex order: subsets grouped by largest element ascending
    def gen(prefix_max: int, kk: int):
        if kk == 0:
            return [()]
        res = []
        for m in range(kk, prefix_max + 1):
            for s in gen(m - 1, kk - 1):
                res.append(s + (m,))
        return res

    return gen(r, k)


@functools.lru_cache(maxsize=32)
def subset_masks(r: int, k: int) -> np.ndarray:
    """uint64 bit-masks of all k-subsets of [1, r] in colex order.

    Requires r <= 64 so a subset fits one machine word; mask index equals
    colex rank.  Cached: every graph on the (r, k) vertex set shares it.
    """
    if r > 64:
        raise ValueError(f"bit-mask representation requires r <= 64, got {r}")
    subs = ksubsets_colex(r, k)
    masks = np.zeros(len(subs), dtype=np.uint64)
    for i, s in enumerate(subs):
        m = 0
        for e in s:
            m |= 1 << (e - 1)
        masks[i] = m
    return masks


def crt_unique_below(residue_pairs, bound: int) -> int | None:
    """The unique x in [0, bound) matching all (residue, modulus) pairs, or None.

    Moduli must be pairwise coprime (distinct primes in practice).  Returns
    None when no solution lies below the bound or when more than one does.
    """
    x, mod = 0, 1
    for res, m in residue_pairs:
        m = int(m)
        res = int(res) % m
        if math.gcd(mod, m) != 1:
            raise ValueError("moduli must be pairwise coprime")
        # solve x + mod*t ≡ res (mod m)
        t = ((res - x) * pow(mod, -1, m)) % m
        x = x + mod * t
        mod *= m
    if x >= bound:
        return None
    if x + mod < bound:
        return None  # not unique below the bound
    return x
