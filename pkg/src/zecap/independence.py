"""Maximum independent sets, independence verification (including in strong
powers, without materializing them), and capacity brackets.

The exact solver is branch-and-bound maximum clique on the complement with
greedy-coloring bounds (see _bbsolver).  Budgets are expressed in search
nodes, so exact/inexact outcomes and witnesses are reproducible; a result
with exact=False is still a valid lower bound on alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bitmat
from ._bbsolver import COMPACT_LIMIT, solve_max_clique
from .graphs import Graph, complement, power
from .parallel import run_chunks

DEFAULT_NODE_BUDGET = 10_000_000

_DEPTH_CAP = 16384


@dataclass(frozen=True)
class AlphaResult:
    """Outcome of an independence-number search.

    size is alpha(g) when exact, otherwise the best lower bound found
    within the node budget.  The witness is always an independent set of
    the stated size.
    """

    size: int
    witness: tuple[int, ...]
    exact: bool
    nodes: int
    budget: int

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "witness": list(self.witness),
            "exact": self.exact,
            "nodes": self.nodes,
            "budget": self.budget,
        }


@dataclass(frozen=True)
class CapacityBracket:
    """Certified bracket on the capacity sup_k alpha(G^k)^(1/k).

    lower comes from an exact independent set in some power G^k (value
    size^(1/k)); upper from a supplied certificate bound, +inf if none.
    """

    lower: float
    upper: float
    lower_witness: tuple[int, int]  # (k, independent set size in G^k)
    upper_certificate: object | None = None

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "lower_witness": {"k": self.lower_witness[0],
                              "size": self.lower_witness[1]},
            "has_upper_certificate": self.upper_certificate is not None,
        }


def is_independent(g: Graph, vertices) -> bool:
    """True iff no two distinct members of the set are adjacent."""
    verts = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if verts.size and (verts[0] < 0 or verts[-1] >= g.n):
        raise ValueError("vertex out of range")
    if verts.size < 2:
        return True
    sub = bitmat.unpack_rows(g.rows[verts], g.n)[:, verts]
    return not sub.any()


def _permuted_rows(g: Graph, perm: np.ndarray) -> np.ndarray:
    """Adjacency of g relabeled so internal vertex i is original perm[i]."""
    n = g.n
    out = np.empty((n, bitmat.words_for(n)), dtype=np.uint64)

    def build(lo: int, hi: int):
        block = bitmat.unpack_rows(g.rows[perm[lo:hi]], n)[:, perm]
        out[lo:hi] = bitmat.pack_bool_rows(block)

    run_chunks(n, build)
    return out


def max_independent_set(g: Graph, node_budget: int = DEFAULT_NODE_BUDGET,
                        compact_limit: int = COMPACT_LIMIT) -> AlphaResult:
    """Exact alpha via branch-and-bound within a node budget.

    exact=True means the search space was exhausted and size == alpha(g);
    otherwise size is the largest independent set found in `node_budget`
    search nodes.  Deterministic for a fixed budget; compact_limit only
    re-encodes subproblem storage and cannot change any outcome (tests
    compare against compact_limit=0).
    """
    if node_budget < 1:
        raise ValueError("node budget must be positive")
    n = g.n
    if n == 0:
        return AlphaResult(0, (), True, 0, node_budget)
    comp = complement(g)
    deg = comp.degrees()
    perm = np.lexsort((np.arange(n), -deg))  # degree desc, ties by index
    rows = _permuted_rows(comp, perm)

    depth_cap = min(n, _DEPTH_CAP) + 2
    if n <= 4096:
        buf_cap = n * (n + 1) // 2 + n + 2
    else:
        buf_cap = 128 * n + 65536
    pstack = np.zeros((depth_cap, rows.shape[1]), dtype=np.uint64)
    order_buf = np.zeros(buf_cap, dtype=np.int32)
    color_buf = np.zeros(buf_cap, dtype=np.int32)
    cur = np.zeros(depth_cap, dtype=np.int32)
    best_wit = np.zeros(depth_cap + COMPACT_LIMIT + 2, dtype=np.int32)
    scratch = np.zeros((2, rows.shape[1]), dtype=np.uint64)
    sub_n = min(COMPACT_LIMIT, max(compact_limit, 1))
    sub_w = bitmat.words_for(sub_n)
    sub_rows = np.zeros((sub_n, sub_w), dtype=np.uint64)
    sub_cand = np.zeros(sub_n, dtype=np.int32)
    sub_pstack = np.zeros((sub_n + 2, sub_w), dtype=np.uint64)
    sub_buf_cap = sub_n * (sub_n + 1) // 2 + sub_n + 2
    sub_order = np.zeros(sub_buf_cap, dtype=np.int32)
    sub_color = np.zeros(sub_buf_cap, dtype=np.int32)
    sub_cur = np.zeros(sub_n + 2, dtype=np.int32)
    sub_wit = np.zeros(sub_n + 2, dtype=np.int32)
    sub_scratch = np.zeros((2, sub_w), dtype=np.uint64)

    size, nodes, completed = solve_max_clique(
        rows, np.int64(node_budget), np.int64(min(compact_limit, sub_n)),
        pstack, order_buf, color_buf, cur, best_wit, scratch,
        sub_rows, sub_cand, sub_pstack, sub_order, sub_color, sub_cur,
        sub_wit, sub_scratch)
    witness = tuple(sorted(int(perm[v]) for v in best_wit[:size]))
    result = AlphaResult(int(size), witness, bool(completed), int(nodes),
                         node_budget)
    if not is_independent(g, result.witness) or len(witness) != size:
        raise AssertionError("solver returned an invalid witness")
    return result


def alpha_of_union(parts: list[AlphaResult]) -> int:
    """alpha of a disjoint union from exact per-part results (additive)."""
    if not parts:
        raise ValueError("need at least one part")
    for p in parts:
        if not p.exact:
            raise ValueError("alpha_of_union requires exact part results")
    return sum(p.size for p in parts)


def is_independent_in_power(g: Graph, k: int, tuples,
                            workers: int = 1) -> bool:
    """Independence of a set of k-tuples in G^k, checked pair-by-pair from
    the definition without building the power graph.

    Two distinct tuples are non-adjacent iff some coordinate holds two
    distinct non-adjacent vertices of g.  Duplicate tuples denote the same
    power vertex and do not violate independence.
    """
    ts = np.asarray(list(tuples), dtype=np.int64)
    if ts.ndim == 1:
        ts = ts.reshape(-1, 1)
    if ts.shape[1] != k:
        raise ValueError(f"expected arity-{k} tuples, got shape {ts.shape}")
    m = ts.shape[0]
    if m and (ts.min() < 0 or ts.max() >= g.n):
        raise ValueError("tuple entry out of range")
    if m < 2 or k < 1:
        return True

    def scan(lo: int, hi: int) -> bool:
        # linked[x, y]: every coordinate equal-or-adjacent
        linked = np.ones((hi - lo, m), dtype=bool)
        same = np.ones((hi - lo, m), dtype=bool)
        for c in range(k):
            a = ts[lo:hi, c][:, None]
            b = ts[:, c][None, :]
            eq = a == b
            adj = bitmat.get_bits(g.rows, a, b)
            linked &= eq | adj
            same &= eq
        viol = linked & ~same
        viol[:, lo:hi][np.arange(hi - lo), np.arange(lo, hi) - lo] = False
        return bool(viol.any())

    found = run_chunks(m, scan, workers=workers)
    return not any(found)


def capacity_bracket(g: Graph, k_max: int, upper: float | None = None,
                     upper_certificate: object | None = None,
                     node_budget: int = DEFAULT_NODE_BUDGET,
                     cap_bits: int | None = None,
                     workers: int = 1) -> CapacityBracket:
    """Bracket the capacity of g: best exact alpha(G^k)^(1/k) for k <= k_max
    against a caller-supplied certified upper bound (or +inf)."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    best = 0.0
    best_at = (0, 0)
    for k in range(1, k_max + 1):
        gk = g if k == 1 else power(g, k, cap_bits=cap_bits, workers=workers)
        res = max_independent_set(gk, node_budget=node_budget)
        if not res.exact:
            continue
        val = res.size ** (1.0 / k)
        if val > best:
            best = val
            best_at = (k, res.size)
    if best_at == (0, 0):
        raise RuntimeError("no exact alpha within budget for any k <= k_max")
    up = math.inf if upper is None else float(upper)
    if up < best:
        raise ValueError(
            f"certified upper bound {up} below certified lower bound {best}")
    return CapacityBracket(best, up, best_at, upper_certificate)
