import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import zecap as z

from helpers import alpha_brute_subsets, alpha_exhaustive, random_graph


def test_is_independent_examples(c5):
    assert z.is_independent(c5, [1, 3])
    assert not z.is_independent(c5, [1, 2])
    assert z.is_independent(c5, [4])
    assert z.is_independent(c5, [])
    with pytest.raises(ValueError):
        z.is_independent(c5, [9])


def test_alpha_classics(c5):
    res = z.max_independent_set(c5)
    assert res.size == 2 and res.exact
    res2 = z.max_independent_set(z.power(c5, 2))
    assert res2.size == 5 and res2.exact
    assert z.max_independent_set(z.complete(7)).size == 1
    assert z.max_independent_set(z.edgeless(7)).size == 7
    assert z.max_independent_set(z.edgeless(0)).size == 0


def test_alpha_matches_subset_oracle(rng):
    for _ in range(25):
        n = int(rng.integers(1, 12))
        g = random_graph(rng, n, rng.uniform(0.05, 0.95))
        res = z.max_independent_set(g)
        assert res.exact
        assert res.size == alpha_brute_subsets(g)


def test_alpha_matches_dp_oracle(rng):
    for _ in range(25):
        n = int(rng.integers(1, 21))
        g = random_graph(rng, n, rng.uniform(0.05, 0.95))
        res = z.max_independent_set(g)
        assert res.exact
        assert res.size == alpha_exhaustive(g)


def test_oracles_agree(rng):
    for _ in range(10):
        g = random_graph(rng, int(rng.integers(1, 11)), rng.uniform(0, 1))
        assert alpha_brute_subsets(g) == alpha_exhaustive(g)


@given(st.integers(1, 12), st.floats(0, 1), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_witness_always_independent(n, p, seed):
    g = random_graph(np.random.default_rng(seed), n, p)
    res = z.max_independent_set(g)
    assert z.is_independent(g, res.witness)
    assert len(res.witness) == res.size


def test_budget_exhaustion_is_inband(c5):
    g = z.power(c5, 2)
    res = z.max_independent_set(g, node_budget=3)
    assert not res.exact
    assert res.nodes == 3
    assert 1 <= res.size <= 5
    assert z.is_independent(g, res.witness)
    with pytest.raises(ValueError):
        z.max_independent_set(g, node_budget=0)


def test_budgeted_runs_are_deterministic(rng):
    g = random_graph(rng, 60, 0.3)
    runs = [z.max_independent_set(g, node_budget=500) for _ in range(3)]
    assert len({(r.size, r.nodes, r.witness, r.exact) for r in runs}) == 1


def test_compact_reencoding_changes_nothing(rng):
    for _ in range(10):
        n = int(rng.integers(80, 320))
        g = random_graph(rng, n, rng.uniform(0.1, 0.9))
        a = z.max_independent_set(g, node_budget=20_000)
        b = z.max_independent_set(g, node_budget=20_000, compact_limit=0)
        assert (a.size, a.nodes, a.exact, a.witness) == \
               (b.size, b.nodes, b.exact, b.witness)


def test_alpha_of_union(c5):
    r5 = z.max_independent_set(c5)
    assert z.alpha_of_union([r5, r5]) == 4
    k3 = z.max_independent_set(z.complete(3))
    e4 = z.max_independent_set(z.edgeless(4))
    assert z.alpha_of_union([k3, e4]) == 5
    assert z.alpha_of_union([r5]) == 2
    # and it matches the solver on the materialized union
    u = z.disjoint_union([z.complete(3), z.edgeless(4)])
    assert z.max_independent_set(u).size == 5
    inexact = z.AlphaResult(1, (0,), False, 10, 10)
    with pytest.raises(ValueError):
        z.alpha_of_union([inexact])
    with pytest.raises(ValueError):
        z.alpha_of_union([])


def test_union_additivity_random(rng):
    for _ in range(10):
        g = random_graph(rng, int(rng.integers(1, 8)), rng.uniform(0, 1))
        h = random_graph(rng, int(rng.integers(1, 8)), rng.uniform(0, 1))
        lhs = z.max_independent_set(z.disjoint_union([g, h])).size
        assert lhs == (z.max_independent_set(g).size
                       + z.max_independent_set(h).size)


def test_product_superadditivity_random(rng):
    for _ in range(10):
        g = random_graph(rng, int(rng.integers(1, 7)), rng.uniform(0.2, 0.9))
        a1 = z.max_independent_set(g).size
        a2 = z.max_independent_set(z.power(g, 2)).size
        a3 = z.max_independent_set(z.power(g, 3)).size
        assert a2 >= a1 * a1
        assert a3 >= a1 * a2


def test_independent_in_power_examples(c5):
    # (0,1) adjacent in C5 but (0,2) non-adjacent: the pair is independent
    assert z.is_independent_in_power(c5, 2, [(0, 0), (1, 2)])
    assert z.is_independent_in_power(c5, 2, [(0, 0)])
    assert not z.is_independent_in_power(z.complete(2), 1, [(0,), (1,)])
    # adjacent in both coordinates
    assert not z.is_independent_in_power(c5, 2, [(0, 0), (1, 1)])
    # duplicate tuples are the same power vertex, not a violation
    assert z.is_independent_in_power(c5, 2, [(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        z.is_independent_in_power(c5, 2, [(0, 0, 0)])
    with pytest.raises(ValueError):
        z.is_independent_in_power(c5, 2, [(0, 17)])


def test_independent_in_power_matches_materialized_power(rng):
    for _ in range(10):
        g = random_graph(rng, int(rng.integers(2, 6)), rng.uniform(0.2, 0.8))
        gk = z.power(g, 2)
        ids = rng.choice(gk.n, size=min(gk.n, 6), replace=False)
        tuples = [(v // g.n, v % g.n) for v in ids]
        expect = z.is_independent(gk, ids)
        assert z.is_independent_in_power(g, 2, tuples) == expect


def test_independent_in_power_worker_invariance(c5):
    tuples = [(i, j) for i in range(5) for j in range(5)]
    r1 = z.is_independent_in_power(c5, 2, tuples, workers=1)
    r8 = z.is_independent_in_power(c5, 2, tuples, workers=8)
    assert r1 == r8 is False


def test_capacity_bracket(c5):
    br = z.capacity_bracket(c5, 2)
    assert br.lower == math.sqrt(5)
    assert br.lower_witness == (2, 5)
    assert br.upper == math.inf
    e4 = z.edgeless(4)
    br = z.capacity_bracket(e4, 1, upper=4.0)
    assert br.lower == 4.0 and br.upper == 4.0
    assert z.capacity_bracket(z.complete(6), 1).lower == 1.0
    with pytest.raises(ValueError):
        z.capacity_bracket(c5, 1, upper=1.5)  # alpha(C5)=2 beats it
