"""Shared test utilities: seeded random graphs and independent alpha
oracles used to cross-check the branch-and-bound solver.

The oracles deliberately share no code with the solver: one enumerates
subsets directly, the other runs a subset-DP over all 2^n masks.
"""

from __future__ import annotations

import itertools

import numpy as np
from numba import njit

import zecap as z


def random_graph(rng: np.random.Generator, n: int, p: float) -> z.Graph:
    upper = np.triu(rng.random((n, n)) < p, 1)
    return z.from_bool(upper | upper.T)


def alpha_brute_subsets(g: z.Graph) -> int:
    """Largest independent set by direct subset enumeration (tiny n only)."""
    adj = g.adjacency_bool()
    for size in range(g.n, 0, -1):
        for comb in itertools.combinations(range(g.n), size):
            if not adj[np.ix_(comb, comb)].any():
                return size
    return 0


@njit(cache=True)
def _alpha_dp(masks):
    # f[m] = alpha of the subgraph induced on the vertex mask m;
    # branch on the lowest vertex: skip it, or take it and drop neighbors
    n = masks.shape[0]
    size = 1 << n
    f = np.zeros(size, dtype=np.int8)
    for m in range(1, size):
        v = 0
        while (m >> v) & 1 == 0:
            v += 1
        vbit = 1 << v
        skip = f[m ^ vbit]
        take = 1 + f[m & ~(vbit | masks[v])]
        f[m] = max(skip, take)
    return int(f[size - 1])


def alpha_exhaustive(g: z.Graph) -> int:
    """Brute-force alpha over all 2^n subsets (n <= 24)."""
    if g.n == 0:
        return 0
    if g.n > 24:
        raise ValueError("exhaustive oracle limited to n <= 24")
    adj = g.adjacency_bool()
    masks = np.zeros(g.n, dtype=np.int64)
    for v in range(g.n):
        m = 0
        for u in np.flatnonzero(adj[v]):
            m |= 1 << int(u)
        masks[v] = m
    return _alpha_dp(masks)
