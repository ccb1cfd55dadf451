"""Polynomial-representation certificates for intersection-rule graphs and
the capacity upper bounds they force.

A certificate fixes a prime modulus q and per-vertex labels (channel id,
s-subset of [r]).  Vertex A in channel i carries the degree-(q-1) polynomial

    f_A(x) = prod over residues u mod q, u != s mod q, of (u - sum_{j in A} x_j^(i))

and the 0/1 point c_A setting exactly the coordinates x_j^(i), j in A.
Then f_A(c_B) depends only on w = |A on B| mod q (same channel) or w = 0
(different channels), and vanishes exactly when w != s mod q.  A graph is
certified when f_v(c_v) != 0 for every vertex and f_u(c_v) = 0 for every
non-adjacent pair; the capacity is then at most the dimension of the
polynomial space, copies * sum_{i<q} C(r, i).

Polynomials are never materialized: the closed-form product above is the
whole evaluation, so a certificate is just (q, r, s, labels).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import bitmat
from .combin import binomial, check_ksubset, is_prime
from .graphs import Graph
from .parallel import run_chunks

MAX_REPORTED_VIOLATIONS = 50


@dataclass(frozen=True)
class RepresentationCertificate:
    """(q, r, s) plus the per-channel vertex subsets, in graph vertex order."""

    q: int
    r: int
    s: int
    channels: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"modulus {self.q} is not prime")
        if self.s % self.q == 0:
            raise ValueError(f"modulus {self.q} divides subset size {self.s}")
        for _, subs in self.channels:
            for sub in subs:
                elems = check_ksubset(self.r, sub)
                if len(elems) != self.s:
                    raise ValueError(
                        f"vertex subset {sub} is not an {self.s}-subset")

    @property
    def copies(self) -> int:
        return len(self.channels)

    def vertex_labels(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """Concatenated (channel, subset) labels in graph vertex order."""
        return tuple((cid, sub) for cid, subs in self.channels for sub in subs)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "s": self.s,
            "channels": [{"id": cid, "vertex_subsets": [list(s) for s in subs]}
                         for cid, subs in self.channels],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RepresentationCertificate":
        channels = tuple(
            (int(ch["id"]),
             tuple(tuple(int(x) for x in sub) for sub in ch["vertex_subsets"]))
            for ch in data["channels"])
        return cls(q=int(data["q"]), r=int(data["r"]), s=int(data["s"]),
                   channels=channels)


def save_certificate(cert: RepresentationCertificate, path: str) -> None:
    with open(path, "w") as f:
        json.dump(cert.to_dict(), f)
        f.write("\n")


def load_certificate(path: str) -> RepresentationCertificate:
    with open(path) as f:
        return RepresentationCertificate.from_dict(json.load(f))


@dataclass(frozen=True)
class DimensionBound:
    """copies * sum_{i<q} C(r, i): the certified capacity upper bound."""

    copies: int
    q: int
    r: int
    value: int

    def to_dict(self) -> dict:
        return {"copies": self.copies, "q": self.q, "r": self.r,
                "value": self.value}


def dimension_bound(copies: int, q: int, r: int) -> DimensionBound:
    if copies < 1:
        raise ValueError("copies must be positive")
    value = copies * sum(binomial(r, i) for i in range(q))
    return DimensionBound(copies=copies, q=q, r=r, value=value)


def fw_evaluate(a_subset, channel_a: int, b_subset, channel_b: int,
                q: int, s: int) -> int:
    """f_A evaluated at c_B, as a residue mod q.

    Reduces to prod over u in {0..q-1} minus {s mod q} of (u - w) mod q,
    where w = |A on B| mod q for same-channel pairs and w = 0 otherwise.
    Nonzero iff w == s mod q (so cross-channel evaluations always vanish
    when q does not divide s).
    """
    if channel_a == channel_b:
        w = len(set(a_subset) & set(b_subset)) % q
    else:
        w = 0
    excluded = s % q
    out = 1
    for u in range(q):
        if u == excluded:
            continue
        out = (out * (u - w)) % q
    return out


@dataclass(frozen=True)
class CertReport:
    valid: bool
    violations: tuple[tuple[int, int], ...]  # offending non-adjacent pairs
    violation_count: int
    pairs_checked: int
    vertices_checked: int

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [list(p) for p in self.violations],
            "violation_count": self.violation_count,
            "pairs_checked": self.pairs_checked,
            "vertices_checked": self.vertices_checked,
        }


def _label_arrays(labels, r: int):
    """(channel ids, subset bit-masks) as numpy arrays from vertex labels."""
    ch = np.fromiter((c for c, _ in labels), dtype=np.int64, count=len(labels))
    masks = np.zeros(len(labels), dtype=np.uint64)
    for i, (_, sub) in enumerate(labels):
        m = 0
        for e in sub:
            m |= 1 << (e - 1)
        masks[i] = m
    return ch, masks


def verify_certificate(g: Graph, cert: RepresentationCertificate,
                       workers: int = 1) -> CertReport:
    """Full O(n^2) check of the representation conditions on g.

    Valid iff every vertex self-evaluates nonzero and every non-adjacent
    distinct pair evaluates to zero.  The verdict and the reported
    violation set are independent of the worker partitioning.
    """
    if g.labels is None:
        raise ValueError("graph carries no (channel, subset) labels")
    if g.labels != cert.vertex_labels():
        raise ValueError("graph labels do not match the certificate")
    n = g.n
    q, s = cert.q, cert.s
    ch, masks = _label_arrays(g.labels, cert.r)
    # nonzero-evaluation test by intersection size: overlap == s only on the
    # diagonal, so a lookup over 0..s covers all pairs
    fires = np.array([(v % q) == (s % q) for v in range(s + 1)], dtype=bool)

    diag_ok = np.ones(1, dtype=bool)

    def scan(lo: int, hi: int):
        ov = np.bitwise_count(masks[lo:hi, None] & masks[None, :])
        nonzero = fires[ov.astype(np.int64)]
        nonzero &= ch[lo:hi, None] == ch[None, :]
        rows_idx = np.arange(lo, hi)
        if not nonzero[rows_idx - lo, rows_idx].all():
            diag_ok[0] = False
        adj = bitmat.unpack_rows(g.rows[lo:hi], n)
        viol = nonzero & ~adj
        viol[rows_idx - lo, rows_idx] = False
        count = int(viol.sum())
        pairs = []
        if count:
            where = np.argwhere(viol)[:MAX_REPORTED_VIOLATIONS]
            pairs = [(int(u + lo), int(v)) for u, v in where]
        return count, pairs

    results = run_chunks(n, scan, workers=workers)
    total = sum(c for c, _ in results)
    reported: list[tuple[int, int]] = []
    for _, pairs in results:
        for p in pairs:
            if len(reported) >= MAX_REPORTED_VIOLATIONS:
                break
            reported.append(p)
    return CertReport(
        valid=bool(diag_ok[0]) and total == 0,
        violations=tuple(reported),
        violation_count=total,
        pairs_checked=n * n - n,
        vertices_checked=n,
    )
