import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import zecap as z
from zecap.graphs import assert_valid, check_cap, SizeCapExceeded

from helpers import random_graph


def adj(g):
    return g.adjacency_bool()


def test_union_examples(c5):
    k2 = z.complete(2)
    u = z.disjoint_union([k2, k2])
    assert u.n == 4 and u.edge_count() == 2
    assert not u.has_edge(0, 2) and not u.has_edge(1, 3)
    assert z.disjoint_union([c5]) is c5
    u2 = z.disjoint_union([c5, z.complete(1)])
    assert u2.n == 6 and u2.edge_count() == 5


def test_union_keeps_part_labels():
    a = z.edgeless(2, labels=[(1, (1, 2)), (1, (1, 3))])
    b = z.edgeless(1, labels=[(2, (2, 3))])
    u = z.disjoint_union([a, b])
    assert u.labels == ((1, (1, 2)), (1, (1, 3)), (2, (2, 3)))


def test_strong_product_examples(c5):
    sq = z.strong_product(c5, c5)
    assert sq.n == 25
    assert z.strong_product(z.complete(2), z.complete(2)).edge_count() == 6
    # K2 x K2 = K4: exhaustive check of all pairs against the definition
    k4 = z.strong_product(z.complete(2), z.complete(2))
    assert adj(k4).sum() == 12
    g1 = z.strong_product(c5, z.complete(1))
    assert np.array_equal(adj(g1), adj(c5))


def test_power_examples(c5):
    assert np.array_equal(adj(z.power(c5, 1)), adj(c5))
    sq = z.power(c5, 2)
    assert sq.n == 25 and (sq.degrees() == 8).all()
    assert z.power(z.complete(1), 3).n == 1
    with pytest.raises(ValueError):
        z.power(c5, 0)


def test_product_transposition_symmetry(rng):
    for _ in range(10):
        g = random_graph(rng, int(rng.integers(1, 6)), rng.uniform(0, 1))
        h = random_graph(rng, int(rng.integers(1, 6)), rng.uniform(0, 1))
        gh = adj(z.strong_product(g, h))
        hg = adj(z.strong_product(h, g))
        # index transposition (i, j) -> (j, i)
        perm = np.arange(g.n * h.n).reshape(g.n, h.n).T.ravel()
        assert np.array_equal(hg, gh[np.ix_(perm, perm)])


def test_power_splits_as_products(rng):
    for _ in range(8):
        g = random_graph(rng, int(rng.integers(1, 7)), rng.uniform(0.2, 0.8))
        for a, b in [(1, 1), (1, 2), (2, 1)]:
            lhs = adj(z.power(g, a + b))
            rhs = adj(z.strong_product(z.power(g, a), z.power(g, b)))
            assert np.array_equal(lhs, rhs)


def test_induced_examples(c5):
    path = z.induced(c5, [1, 2, 3])
    assert path.n == 3 and path.edge_count() == 2
    assert np.array_equal(adj(z.induced(c5, range(5))), adj(c5))
    assert z.induced(z.complete(5), [0, 3]).edge_count() == 1
    with pytest.raises(ValueError):
        z.induced(c5, [])


def test_induced_inherits_labels():
    g = z.edgeless(3, labels=[(1, (1,)), (1, (2,)), (1, (3,))])
    assert z.induced(g, [0, 2]).labels == ((1, (1,)), (1, (3,)))


def test_complement_examples(c5):
    assert z.complement(z.complete(4)).edge_count() == 0
    assert np.array_equal(adj(z.complement(z.complement(c5))), adj(c5))
    # C5 is self-complementary under the doubling map i -> 2i mod 5
    comp = z.complement(c5)
    perm = np.array([(2 * i) % 5 for i in range(5)])
    assert np.array_equal(adj(comp)[np.ix_(perm, perm)], adj(c5))


@given(st.integers(1, 9), st.floats(0, 1), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_constructors_validate(n, p, seed):
    g = random_graph(np.random.default_rng(seed), n, p)
    assert_valid(g)
    assert_valid(z.complement(g))
    assert_valid(z.power(g, 2))
    assert_valid(z.disjoint_union([g, g]))


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        check_cap(10**6, None)
    with pytest.raises(SizeCapExceeded):
        z.strong_product(z.complete(10), z.complete(10), cap_bits=99 * 99)
    z.strong_product(z.complete(10), z.complete(10), cap_bits=100 * 100)


def test_workers_do_not_change_results(c5):
    g = z.power(c5, 2)
    a = z.strong_product(g, c5, workers=1)
    b = z.strong_product(g, c5, workers=4)
    assert np.array_equal(a.rows, b.rows)
    u1 = z.disjoint_union([g, c5, g], workers=1)
    u8 = z.disjoint_union([g, c5, g], workers=8)
    assert np.array_equal(u1.rows, u8.rows)


def test_dimacs_roundtrip(tmp_path, c5):
    path = str(tmp_path / "c5.dimacs")
    z.save_graph(c5, path)
    g = z.load_graph(path)
    assert g.n == 5 and np.array_equal(adj(g), adj(c5))
    text = open(path).read().splitlines()
    assert text[0] == "p edge 5 5"
    assert all(line.startswith("e ") for line in text[1:])


def test_dimacs_label_sidecar(tmp_path):
    g = z.build_graph(5, 2, [2], channel_id=3)
    path = str(tmp_path / "g.dimacs")
    z.save_graph(g, path)
    assert (tmp_path / "g.dimacs.labels.json").exists()
    back = z.load_graph(path)
    assert back.labels == g.labels
    assert np.array_equal(back.rows, g.rows)


def test_dimacs_rejects_garbage(tmp_path):
    p = tmp_path / "bad.dimacs"
    p.write_text("q nonsense\n")
    with pytest.raises(ValueError):
        z.load_graph(str(p))
    p.write_text("e 1 2\n")
    with pytest.raises(ValueError):
        z.load_graph(str(p))
