"""Branch-and-bound maximum-clique kernel over uint64 bitset rows.

Compiled with numba; single-threaded and fully deterministic for a fixed
node budget.  The independence solver runs this on the complement graph.

Algorithm: at each node the candidate set is greedily colored (classes of
pairwise non-adjacent vertices); candidates are branched in reverse color
order and the whole node is cut once depth + color <= incumbent.  A cheap
popcount bound skips the coloring for subtrees that cannot improve the
incumbent.

Wide instances spend most of their time AND-NOTing nearly empty candidate
sets across the full word span, so once a subproblem shrinks to at most
`compact_limit` candidates (and that re-encoding shrinks the row width at
least fourfold) the subtree is relabeled into a dense sub-universe and
solved there.  Branching order, color classes, node counts and results are
bit-identical with the re-encoding disabled; only the words touched per
operation change.

A "node" is one visited candidate expansion (leaf, pruned, or interior);
the search aborts at `budget` visited nodes and reports the best clique
found so far with completed=False.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U0 = np.uint64(0)
U1 = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)

COMPACT_LIMIT = 1024


@njit(cache=True, inline="always")
def _pc(x):
    # SWAR popcount of a uint64
    x = x - ((x >> U1) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True)
def _color_sort(rows, w, P, Q, Qc, order_buf, color_buf, base):
    """Greedy-color the candidate set P in ascending vertex order.

    Writes vertices (nondecreasing color) into order_buf/color_buf starting
    at `base`; returns the number of candidates.
    """
    for j in range(w):
        Q[j] = P[j]
    idx = 0
    color = np.int32(0)
    lo = 0
    while True:
        while lo < w and Q[lo] == U0:
            lo += 1
        if lo == w:
            break
        color += np.int32(1)
        for j in range(lo, w):
            Qc[j] = Q[j]
        j = lo
        while j < w:
            x = Qc[j]
            if x == U0:
                j += 1
                continue
            lsb = x & (U0 - x)
            v = (j << 6) + _pc(lsb - U1)
            Qc[j] = x ^ lsb
            Q[j] ^= lsb
            row = rows[v]
            for jj in range(j, w):
                Qc[jj] &= ~row[jj]
            order_buf[base + idx] = v
            color_buf[base + idx] = color
            idx += 1
    return idx


@njit(cache=True)
def _bb_loop(rows, w, base_size, best_in, budget, Pstack, order_buf,
             color_buf, cur, wit_out, scratch):
    """Exhaust the instance whose full vertex set is the root candidates.

    base_size is the clique size already fixed outside this instance; all
    bounds compare against the absolute incumbent best_in.  Returns
    (best_abs, wit_len, nodes, completed): wit_len > 0 iff the incumbent
    improved, in which case wit_out[:wit_len] lists the added vertices.
    """
    n = rows.shape[0]
    depth_cap = Pstack.shape[0]
    buf_cap = order_buf.shape[0]
    nodes = np.int64(0)
    best = best_in
    wit_len = 0
    full = Pstack[0]
    for j in range(w):
        full[j] = U0
    for v in range(n):
        full[v >> 6] |= U1 << np.uint64(v & 63)
    lvl_off = np.zeros(depth_cap, np.int64)
    lvl_cnt = np.zeros(depth_cap, np.int64)
    lvl_pos = np.zeros(depth_cap, np.int64)
    cnt = _color_sort(rows, w, Pstack[0], scratch[0], scratch[1],
                      order_buf, color_buf, 0)
    lvl_cnt[0] = cnt
    lvl_pos[0] = cnt - 1
    completed = True
    d = 0
    while d >= 0:
        i = lvl_pos[d]
        if i < 0:
            d -= 1
            continue
        base = lvl_off[d]
        if base_size + d + color_buf[base + i] <= best:
            lvl_pos[d] = -1  # colors nondecreasing: the whole level is cut
            continue
        lvl_pos[d] = i - 1
        v = np.int64(order_buf[base + i])
        Pd = Pstack[d]
        Pd[v >> 6] &= ~(U1 << np.uint64(v & 63))
        cur[d] = v
        Pc = Pstack[d + 1]
        row = rows[v]
        pc = np.int64(0)
        for j in range(w):
            y = Pd[j] & row[j]
            Pc[j] = y
            if y != U0:
                pc += _pc(y)
        nodes += 1
        if pc == 0:
            if base_size + d + 1 > best:
                best = base_size + d + 1
                wit_len = d + 1
                for z in range(wit_len):
                    wit_out[z] = cur[z]
            if nodes >= budget:
                completed = False
                break
            continue
        if nodes >= budget:
            completed = False
            break
        if base_size + d + 1 + pc <= best:
            continue
        nbase = lvl_off[d] + lvl_cnt[d]
        if nbase + pc > buf_cap or d + 2 >= depth_cap:
            completed = False
            break
        cnt = _color_sort(rows, w, Pc, scratch[0], scratch[1],
                          order_buf, color_buf, nbase)
        lvl_off[d + 1] = nbase
        lvl_cnt[d + 1] = cnt
        lvl_pos[d + 1] = cnt - 1
        d += 1
    return best, wit_len, nodes, completed


@njit(cache=True)
def solve_max_clique(rows, budget, compact_limit, Pstack, order_buf,
                     color_buf, cur, best_wit, scratch, sub_rows, sub_cand,
                     sub_Pstack, sub_order, sub_color, sub_cur, sub_wit,
                     sub_scratch):
    """Returns (best_size, nodes_visited, completed); best_wit[:best_size]
    holds a maximum (or best-found) clique.

    Overflow of the depth cap or the flat order/color buffers aborts with
    completed=False, same as budget exhaustion (neither can happen when the
    buffers are allocated for the triangular worst case).
    """
    n = rows.shape[0]
    w = rows.shape[1]
    depth_cap = Pstack.shape[0]
    buf_cap = order_buf.shape[0]
    nodes = np.int64(0)
    if n == 0:
        return 0, nodes, True

    full = Pstack[0]
    for j in range(w):
        full[j] = U0
    for v in range(n):
        full[v >> 6] |= U1 << np.uint64(v & 63)

    # greedy clique in static order seeds the incumbent
    Q = scratch[0]
    for j in range(w):
        Q[j] = full[j]
    best = 0
    lo = 0
    while True:
        while lo < w and Q[lo] == U0:
            lo += 1
        if lo == w:
            break
        x = Q[lo]
        lsb = x & (U0 - x)
        v = (lo << 6) + _pc(lsb - U1)
        best_wit[best] = v
        best += 1
        row = rows[v]
        for j in range(lo, w):
            Q[j] &= row[j]

    lvl_off = np.zeros(depth_cap, np.int64)
    lvl_cnt = np.zeros(depth_cap, np.int64)
    lvl_pos = np.zeros(depth_cap, np.int64)
    cnt = _color_sort(rows, w, Pstack[0], scratch[0], scratch[1],
                      order_buf, color_buf, 0)
    lvl_cnt[0] = cnt
    lvl_pos[0] = cnt - 1
    completed = True
    d = 0
    while d >= 0:
        i = lvl_pos[d]
        if i < 0:
            d -= 1
            continue
        base = lvl_off[d]
        if d + color_buf[base + i] <= best:
            lvl_pos[d] = -1
            continue
        lvl_pos[d] = i - 1
        v = np.int64(order_buf[base + i])
        Pd = Pstack[d]
        Pd[v >> 6] &= ~(U1 << np.uint64(v & 63))
        cur[d] = v
        Pc = Pstack[d + 1]
        row = rows[v]
        pc = np.int64(0)
        for j in range(w):
            y = Pd[j] & row[j]
            Pc[j] = y
            if y != U0:
                pc += _pc(y)
        nodes += 1
        if pc == 0:
            if d + 1 > best:
                best = d + 1
                for z in range(best):
                    best_wit[z] = cur[z]
            if nodes >= budget:
                completed = False
                break
            continue
        if nodes >= budget:
            completed = False
            break
        if d + 1 + pc <= best:
            continue
        sub_w = np.int64((pc + 63) >> 6)
        if pc <= compact_limit and 4 * sub_w <= w:
            # relabel the subproblem into a dense sub-universe
            m = 0
            for j in range(w):
                y = Pc[j]
                while y != U0:
                    lsb = y & (U0 - y)
                    sub_cand[m] = (j << 6) + _pc(lsb - U1)
                    m += 1
                    y ^= lsb
            for a in range(m):
                for j in range(sub_w):
                    sub_rows[a, j] = U0
            for a in range(m):
                ra = rows[np.int64(sub_cand[a])]
                for b in range(a + 1, m):
                    cb = np.int64(sub_cand[b])
                    if (ra[cb >> 6] >> np.uint64(cb & 63)) & U1 != U0:
                        sub_rows[a, b >> 6] |= U1 << np.uint64(b & 63)
                        sub_rows[b, a >> 6] |= U1 << np.uint64(a & 63)
            sbest, swit, snodes, sdone = _bb_loop(
                sub_rows[:m], sub_w, d + 1, best, budget - nodes,
                sub_Pstack, sub_order, sub_color, sub_cur, sub_wit,
                sub_scratch)
            nodes += snodes
            if sbest > best:
                best = sbest
                for z in range(d + 1):
                    best_wit[z] = cur[z]
                for z in range(swit):
                    best_wit[d + 1 + z] = sub_cand[sub_wit[z]]
            if not sdone:
                completed = False
                break
            continue
        nbase = lvl_off[d] + lvl_cnt[d]
        if nbase + pc > buf_cap or d + 2 >= depth_cap:
            completed = False
            break
        cnt = _color_sort(rows, w, Pc, scratch[0], scratch[1],
                          order_buf, color_buf, nbase)
        lvl_off[d + 1] = nbase
        lvl_cnt[d + 1] = cnt
        lvl_pos[d + 1] = cnt - 1
        d += 1
    return best, nodes, completed
