"""Finite simple graphs as dense symmetric bit matrices, with the graph
algebra used throughout: disjoint union, strong product, powers, complement,
induced subgraphs, and DIMACS-style file I/O.

Vertices are 0-based ints.  A vertex may carry a label (channel id, subset)
tying it to a channel construction; labels ride along through unions,
induced subgraphs and complements, and are serialized to a JSON sidecar
next to the DIMACS file.

Canonical index maps (documented so independent implementations agree):
  - strong_product(g, h): pair (i, j) -> i * h.n + j (row-major).
  - power(g, k): left-fold of strong_product, i.e. tuple (v_1, ..., v_k)
    -> ((v_1 * n + v_2) * n + ...) * n + v_k.
  - disjoint_union(parts): vertices of part p are offset by the total size
    of the preceding parts.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from . import bitmat
from .parallel import run_chunks

# Cap on n^2 adjacency bits a single constructed graph may occupy (250 MB).
# Exceeding it raises SizeCapExceeded rather than silently truncating.
DEFAULT_CAP_BITS = 2_000_000_000

FORMAT_VERSION = 1


class SizeCapExceeded(RuntimeError):
    pass


def check_cap(n: int, cap_bits: int | None) -> None:
    cap = DEFAULT_CAP_BITS if cap_bits is None else cap_bits
    if n * n > cap:
        raise SizeCapExceeded(
            f"graph on {n} vertices needs {n * n} adjacency bits > cap {cap}")


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple graph on n vertices; rows is the packed adjacency bit matrix.

    Invariants: rows is (n, words_for(n)) uint64, symmetric, zero diagonal;
    labels, when present, is a length-n tuple of (channel, subset) pairs.
    """

    n: int
    rows: np.ndarray
    labels: tuple[tuple[int, tuple[int, ...]], ...] | None = None

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bitmat.test_bit(self.rows, u, v)

    def neighbors(self, u: int) -> np.ndarray:
        return bitmat.row_members(self.rows, u, self.n)

    def degrees(self) -> np.ndarray:
        return bitmat.popcount_rows(self.rows)

    def edge_count(self) -> int:
        return int(self.degrees().sum()) // 2

    def adjacency_bool(self) -> np.ndarray:
        """Dense boolean adjacency; only sensible for small graphs."""
        return bitmat.unpack_rows(self.rows, self.n)


def _finish(rows: np.ndarray, n: int, labels) -> Graph:
    rows.setflags(write=False)
    return Graph(n=n, rows=rows, labels=tuple(labels) if labels else None)


def from_bool(adj: np.ndarray, labels=None) -> Graph:
    """Graph from a dense boolean adjacency matrix (symmetrized, diag cleared)."""
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    if adj.shape != (n, n):
        raise ValueError("adjacency matrix must be square")
    adj = adj | adj.T
    np.fill_diagonal(adj, False)
    return _finish(bitmat.pack_bool_rows(adj), n, labels)


def from_edges(n: int, edges, labels=None) -> Graph:
    rows = bitmat.zero_rows(n)
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        bitmat.set_bit(rows, u, v)
        bitmat.set_bit(rows, v, u)
    return _finish(rows, n, labels)


def edgeless(n: int, labels=None) -> Graph:
    return _finish(bitmat.zero_rows(n), n, labels)


def complete(n: int) -> Graph:
    rows = np.broadcast_to(bitmat.tail_mask(n), (n, bitmat.words_for(n))).copy()
    for v in range(n):
        rows[v, v >> 6] &= ~(np.uint64(1) << np.uint64(v & 63))
    return _finish(rows, n, None)


def cycle(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def assert_valid(g: Graph) -> None:
    """Validation pass: symmetric, irreflexive, in-range bits, label length."""
    w = bitmat.words_for(g.n)
    if g.rows.shape != (g.n, w) or g.rows.dtype != np.uint64:
        raise AssertionError("bad row storage")
    mask = bitmat.tail_mask(g.n)
    if g.n and np.any(g.rows & ~mask):
        raise AssertionError("adjacency bits beyond vertex range")
    adj = bitmat.unpack_rows(g.rows, g.n)
    if np.any(adj != adj.T):
        raise AssertionError("adjacency not symmetric")
    if np.any(np.diagonal(adj)):
        raise AssertionError("adjacency not irreflexive")
    if g.labels is not None and len(g.labels) != g.n:
        raise AssertionError("labels length != n")


def disjoint_union(parts, cap_bits: int | None = None,
                   workers: int = 1) -> Graph:
    """Disjoint union; part p's vertices are offset by sum of earlier sizes."""
    parts = list(parts)
    if not parts:
        raise ValueError("disjoint_union needs at least one part")
    if len(parts) == 1:
        return parts[0]
    n = sum(p.n for p in parts)
    check_cap(n, cap_bits)
    rows = bitmat.zero_rows(n)
    offset = 0
    for p in parts:
        def build(lo: int, hi: int, p=p, offset=offset):
            block = np.zeros((hi - lo, n), dtype=bool)
            block[:, offset : offset + p.n] = bitmat.unpack_rows(
                p.rows[lo:hi], p.n)
            rows[offset + lo : offset + hi] = bitmat.pack_bool_rows(block)

        run_chunks(p.n, build, workers=workers)
        offset += p.n
    labels = None
    if all(p.labels is not None for p in parts):
        labels = tuple(lab for p in parts for lab in p.labels)
    return _finish(rows, n, labels)


def strong_product(g: Graph, h: Graph, cap_bits: int | None = None,
                   workers: int = 1) -> Graph:
    """Strong product: distinct pairs adjacent iff both coordinates are
    equal-or-adjacent.  Pair (i, j) gets index i * h.n + j."""
    n = g.n * h.n
    check_cap(n, cap_bits)
    ag = bitmat.unpack_rows(g.rows, g.n)
    np.fill_diagonal(ag, True)
    ah = bitmat.unpack_rows(h.rows, h.n)
    np.fill_diagonal(ah, True)
    rows = bitmat.zero_rows(n)

    def build(lo: int, hi: int):
        for i in range(lo, hi):
            block = np.kron(ag[i], ah).astype(bool)  # (h.n, n): rows (i, *)
            block[np.arange(h.n), i * h.n + np.arange(h.n)] = False
            rows[i * h.n : (i + 1) * h.n] = bitmat.pack_bool_rows(block)

    run_chunks(g.n, build, workers=workers, chunk=max(1, 4096 // max(h.n, 1)))
    return _finish(rows, n, None)


def power(g: Graph, k: int, cap_bits: int | None = None,
          workers: int = 1) -> Graph:
    """k-fold strong power; index map is the left-fold of the product map."""
    if k < 1:
        raise ValueError("power requires k >= 1")
    check_cap(g.n ** k, cap_bits)
    out = g
    for _ in range(k - 1):
        out = strong_product(out, g, cap_bits=cap_bits, workers=workers)
    return out


def induced(g: Graph, vertices) -> Graph:
    """Induced subgraph on the given vertex set (kept in ascending order)."""
    verts = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if verts.size == 0:
        raise ValueError("induced subgraph needs a nonempty vertex set")
    if verts[0] < 0 or verts[-1] >= g.n:
        raise ValueError("vertex out of range")
    sub = bitmat.unpack_rows(g.rows[verts], g.n)[:, verts]
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[v] for v in verts)
    return _finish(bitmat.pack_bool_rows(sub), verts.size, labels)


def complement(g: Graph) -> Graph:
    mask = bitmat.tail_mask(g.n)
    rows = (~g.rows) & mask
    for v in range(g.n):
        rows[v, v >> 6] &= ~(np.uint64(1) << np.uint64(v & 63))
    return _finish(rows, g.n, g.labels)


# ---------------------------------------------------------------------------
# File I/O: DIMACS-like text plus a JSON label sidecar.

def _sidecar_path(path: str) -> str:
    return path + ".labels.json"


def save_graph(g: Graph, path: str) -> None:
    """Write `p edge n m` + `e u v` lines (1-based); labels to a sidecar."""
    with open(path, "w") as f:
        f.write(f"p edge {g.n} {g.edge_count()}\n")
        for u in range(g.n):
            nbrs = g.neighbors(u)
            nbrs = nbrs[nbrs > u]
            if nbrs.size:
                f.write("".join(f"e {u + 1} {v + 1}\n" for v in nbrs))
    if g.labels is not None:
        sidecar = {
            "format_version": FORMAT_VERSION,
            "labels": [{"channel": c, "subset": list(s)} for c, s in g.labels],
        }
        with open(_sidecar_path(path), "w") as f:
            json.dump(sidecar, f)
            f.write("\n")


def load_graph(path: str) -> Graph:
    n = None
    edges = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if len(parts) != 4 or parts[1] != "edge":
                    raise ValueError(f"bad problem line: {line!r}")
                n = int(parts[2])
            elif parts[0] == "e":
                u, v = int(parts[1]), int(parts[2])
                edges.append((u - 1, v - 1))
            else:
                raise ValueError(f"unrecognized line: {line!r}")
    if n is None:
        raise ValueError("missing `p edge` header")
    labels = None
    side = _sidecar_path(path)
    if os.path.exists(side):
        with open(side) as f:
            data = json.load(f)
        labels = tuple((int(e["channel"]), tuple(int(x) for x in e["subset"]))
                       for e in data["labels"])
    return from_edges(n, edges, labels=labels)
