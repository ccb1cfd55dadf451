"""Dense bit-matrix primitives backing the graph type and the O(n^2) scan
kernels.

A bit matrix is a numpy array of shape (n, words_for(n)) and dtype uint64,
little-endian within each word: bit v of row u is

    (rows[u, v >> 6] >> (v & 63)) & 1

Row conjunction + popcount is the workhorse of every verification kernel,
so everything here stays vectorized.
"""

from __future__ import annotations

import numpy as np

U64 = np.uint64


def words_for(n: int) -> int:
    return (n + 63) >> 6


def zero_rows(n: int, m: int | None = None) -> np.ndarray:
    """(n, words_for(m or n)) zeroed bit matrix."""
    return np.zeros((n, words_for(n if m is None else m)), dtype=np.uint64)


def pack_bool_rows(mat: np.ndarray) -> np.ndarray:
    """Pack a boolean (k, n) matrix into (k, words_for(n)) uint64 rows."""
    k, n = mat.shape
    packed = np.packbits(mat, axis=1, bitorder="little")
    pad = 8 * words_for(n) - packed.shape[1]
    if pad:
        packed = np.pad(packed, ((0, 0), (0, pad)))
    return np.ascontiguousarray(packed).view("<u8").reshape(k, words_for(n))


def unpack_rows(rows: np.ndarray, n: int) -> np.ndarray:
    """Inverse of pack_bool_rows: (k, w) uint64 -> boolean (k, n)."""
    k = rows.shape[0]
    bits = np.unpackbits(rows.view(np.uint8).reshape(k, -1), axis=1,
                         bitorder="little")
    return bits[:, :n].astype(bool)


def get_bits(rows: np.ndarray, u, v) -> np.ndarray:
    """Vectorized bit gather: bit v[i] of row u[i] (u, v broadcast together)."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    words = rows[u, v >> 6]
    return ((words >> (v & 63).astype(np.uint64)) & U64(1)).astype(bool)


def set_bit(rows: np.ndarray, u: int, v: int) -> None:
    rows[u, v >> 6] |= U64(1) << U64(v & 63)


def test_bit(rows: np.ndarray, u: int, v: int) -> bool:
    return bool((rows[u, v >> 6] >> U64(v & 63)) & U64(1))


def tail_mask(n: int) -> np.ndarray:
    """(w,) uint64 with exactly the low n bits set across the row."""
    w = words_for(n)
    mask = np.full(w, ~U64(0), dtype=np.uint64)
    rem = n & 63
    if rem:
        mask[-1] = (U64(1) << U64(rem)) - U64(1)
    return mask


def popcount_rows(rows: np.ndarray) -> np.ndarray:
    """Per-row popcount, int64."""
    return np.bitwise_count(rows).sum(axis=1, dtype=np.int64)


def row_members(rows: np.ndarray, u: int, n: int) -> np.ndarray:
    """Sorted indices of the set bits in row u."""
    return np.flatnonzero(unpack_rows(rows[u : u + 1], n)[0])


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(u, v, n: int):
    """Linear index of pair (u, v), u < v, in row-major upper-triangle order.

    Pairs are enumerated with u ascending and, within u, v ascending; this
    is the canonical pair order used by the coloring file format.
    """
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def triangle_row_span(u: int, n: int) -> tuple[int, int]:
    """[start, stop) slice of the triangle array holding pairs (u, u+1..n-1)."""
    start = u * (2 * n - u - 1) // 2
    return start, start + (n - 1 - u)
