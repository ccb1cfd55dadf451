"""Explicit t-edge-colorings of the complete graph on the C(r, s) subset
vertices, with per-color independence certificates and rainbow checks.

Pair (A, B) gets color i when |A on B| == s mod p_i; validate_params
guarantees at most one rule can fire per pair (p_i * p_j > s pins the
overlap otherwise).  Pairs matching no rule fall back to the deterministic
1 + ((rank(A) + rank(B)) mod t), which can never break a per-color
certificate because fallback pairs satisfy no congruence.

The color-class graph H_i has exactly the i-colored pairs as edges.  Its
non-edges all violate the i-th congruence, so H_i carries a representation
certificate at modulus p_i and any set with no i-colored edge has size at
most sum_{j < p_i} C(r, j); one more vertex forces the color to appear.
That exact sum sharpens the coarser single-binomial bound C(r, p_i), and
both are reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import bitmat
from .combin import binomial, ksubsets_colex, subset_masks
from .graphs import Graph, check_cap
from .independence import DEFAULT_NODE_BUDGET, max_independent_set
from .parallel import run_chunks
from .polyrep import RepresentationCertificate, dimension_bound, \
    verify_certificate
from .privileged import achievable_overlaps, validate_params

FALLBACK_RANK_SUM = "rank-sum-mod-t"
COLORING_FORMAT_VERSION = 1


@dataclass(frozen=True)
class EdgeColoring:
    """t-edge-coloring of K_n; tri[k] in [1, t] is the color of the k-th
    pair in canonical order (u < v, ordered by u then v)."""

    n: int
    t: int
    r: int
    s: int
    primes: tuple[int, ...]
    fallback_rule: str
    tri: np.ndarray  # uint8, length n*(n-1)//2

    def pair_color(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("no color on the diagonal")
        a, b = (u, v) if u < v else (v, u)
        return int(self.tri[bitmat.pair_index(a, b, self.n)])

    def rule_lut(self) -> np.ndarray:
        """Color assigned by the congruence rules per overlap value (0 =
        no rule fires), indexed by |A on B| in 0..s."""
        lut = np.zeros(self.s + 1, dtype=np.uint8)
        for v in achievable_overlaps(self.r, self.s):
            for i, q in enumerate(self.primes, start=1):
                if v % q == self.s % q:
                    lut[v] = i
                    break
        return lut


def build_coloring(r: int, s: int, primes, cap_bits: int | None = None,
                   workers: int = 1) -> EdgeColoring:
    """Color every pair of s-subsets of [r]; rule pairs get their unique
    congruence color, the rest the rank-sum fallback."""
    params = validate_params(r, s, primes)
    if not params.ok:
        raise ValueError("invalid parameters: " + "; ".join(params.failures))
    prs = params.primes
    t = len(prs)
    if t < 1:
        raise ValueError("need at least one prime")
    n = binomial(r, s)
    check_cap(n, cap_bits)
    masks = subset_masks(r, s)
    col = EdgeColoring(n=n, t=t, r=r, s=s, primes=prs,
                       fallback_rule=FALLBACK_RANK_SUM,
                       tri=np.zeros(bitmat.pair_count(n), dtype=np.uint8))
    lut = col.rule_lut()
    tri = col.tri

    def build(lo: int, hi: int):
        ov = np.bitwise_count(masks[lo:hi, None] & masks[None, :])
        colors = lut[ov.astype(np.int64)]
        for u in range(lo, hi):
            row = colors[u - lo, u + 1 :]
            vs = np.arange(u + 1, n, dtype=np.int64)
            fallback = (1 + (u + vs) % t).astype(np.uint8)
            start, stop = bitmat.triangle_row_span(u, n)
            tri[start:stop] = np.where(row == 0, fallback, row)

    run_chunks(n, build, workers=workers)
    tri.setflags(write=False)
    return col


@dataclass(frozen=True)
class WellDefinedReport:
    ok: bool
    conflicts: tuple[tuple[int, tuple[int, ...]], ...]  # (overlap, colors)

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "conflicts": [{"overlap": v, "colors": list(cs)}
                              for v, cs in self.conflicts]}


def check_well_defined(coloring: EdgeColoring) -> WellDefinedReport:
    """No realizable overlap may satisfy two rule congruences at once.

    Scans overlap values rather than pairs: the rules only see |A on B|.
    """
    conflicts = []
    for v in achievable_overlaps(coloring.r, coloring.s):
        hit = tuple(i for i, q in enumerate(coloring.primes, start=1)
                    if v % q == coloring.s % q)
        if len(hit) > 1:
            conflicts.append((v, hit))
    return WellDefinedReport(ok=not conflicts, conflicts=tuple(conflicts))


def color_class(coloring: EdgeColoring, color: int,
                workers: int = 1) -> Graph:
    """Graph H_i whose edges are exactly the i-colored pairs, labeled with
    (i, subset) so certificate verification applies directly."""
    if not 1 <= color <= coloring.t:
        raise ValueError(f"color {color} outside [1, {coloring.t}]")
    n = coloring.n
    tri = coloring.tri
    rows = bitmat.zero_rows(n)

    def build(lo: int, hi: int):
        u = np.arange(lo, hi, dtype=np.int64)[:, None]
        v = np.arange(n, dtype=np.int64)[None, :]
        k = bitmat.pair_index(np.minimum(u, v), np.maximum(u, v), n)
        bits = tri[k] == color
        bits[np.arange(hi - lo), np.arange(lo, hi)] = False  # diag garbage
        rows[lo:hi] = bitmat.pack_bool_rows(bits)

    run_chunks(n, build, workers=workers, chunk=128)
    rows.setflags(write=False)
    labels = tuple((color, sub)
                   for sub in ksubsets_colex(coloring.r, coloring.s))
    return Graph(n=n, rows=rows, labels=labels)


def color_realizable(coloring: EdgeColoring, color: int) -> bool:
    q = coloring.primes[color - 1]
    return any(v % q == coloring.s % q
               for v in achievable_overlaps(coloring.r, coloring.s))


def rainbow_threshold(coloring: EdgeColoring, color: int) -> int:
    """Any induced subgraph of this size contains an i-colored edge: one
    more than the certified bound on an i-free set."""
    if not color_realizable(coloring, color):
        raise ValueError(
            f"color {color} (prime {coloring.primes[color - 1]}) is "
            f"unrealizable: its rule never fires at r={coloring.r}, "
            f"s={coloring.s}")
    return 1 + dimension_bound(1, coloring.primes[color - 1], coloring.r).value


def per_color_bounds(coloring: EdgeColoring) -> list[dict]:
    """Independence bound data per color: the exact dimension sum and the
    coarser single-binomial relaxation."""
    out = []
    for i, q in enumerate(coloring.primes, start=1):
        realizable = color_realizable(coloring, i)
        exact = dimension_bound(1, q, coloring.r).value
        out.append({
            "color": i,
            "prime": q,
            "realizable": realizable,
            "independence_bound": exact,
            "relaxed_bound": binomial(coloring.r, q),
            "threshold": 1 + exact if realizable else None,
        })
    return out


def certificate_for_color(coloring: EdgeColoring,
                          color: int) -> RepresentationCertificate:
    subs = tuple(ksubsets_colex(coloring.r, coloring.s))
    return RepresentationCertificate(
        q=coloring.primes[color - 1], r=coloring.r, s=coloring.s,
        channels=((color, subs),))


def verify_rainbow(coloring: EdgeColoring, mode: str, size: int = 0,
                   trials: int = 0, seed: int = 0,
                   alpha_budget: int = DEFAULT_NODE_BUDGET,
                   workers: int = 1) -> dict:
    """Rainbow verification report.

    exact mode: per color, full certificate verification of H_i at
    modulus p_i plus an alpha search under the node budget; any
    independent set found must respect the dimension bound, and exactly
    when the search completes the bound certifies alpha itself.

    sampled mode: `trials` seed-reproducible random induced subgraphs of
    `size` vertices, each required to contain all t colors.
    """
    if mode == "exact":
        return _verify_exact(coloring, alpha_budget, workers)
    if mode == "sampled":
        return _verify_sampled(coloring, size, trials, seed, workers)
    raise ValueError(f"unknown mode {mode!r}")


def _verify_exact(coloring: EdgeColoring, alpha_budget: int,
                  workers: int) -> dict:
    colors = []
    ok = True
    for i in range(1, coloring.t + 1):
        h = color_class(coloring, i, workers=workers)
        rep = verify_certificate(h, certificate_for_color(coloring, i),
                                 workers=workers)
        bound = dimension_bound(1, coloring.primes[i - 1], coloring.r).value
        entry = {
            "color": i,
            "prime": coloring.primes[i - 1],
            "certificate_valid": rep.valid,
            "violations": rep.violation_count,
            "independence_bound": bound,
        }
        if alpha_budget > 0:
            res = max_independent_set(h, node_budget=alpha_budget)
            entry["alpha"] = {"size": res.size, "exact": res.exact,
                              "nodes": res.nodes}
            entry["alpha_within_bound"] = res.size <= bound
            ok = ok and entry["alpha_within_bound"]
        ok = ok and rep.valid
        colors.append(entry)
    return {"mode": "exact", "pass": ok, "colors": colors}


def _verify_sampled(coloring: EdgeColoring, size: int, trials: int,
                    seed: int, workers: int) -> dict:
    if size < 2:
        raise ValueError("sampled mode needs subgraphs of size >= 2")
    if size > coloring.n:
        raise ValueError(f"size {size} exceeds n={coloring.n}")
    if trials < 1:
        raise ValueError("need at least one trial")
    children = np.random.SeedSequence(seed).spawn(trials)
    n, t = coloring.n, coloring.t
    iu, ju = np.triu_indices(size, 1)
    all_colors = frozenset(range(1, t + 1))

    def run(lo: int, hi: int):
        failures = []
        for j in range(lo, hi):
            rng = np.random.default_rng(children[j])
            verts = np.sort(rng.choice(n, size=size, replace=False))
            k = bitmat.pair_index(verts[iu], verts[ju], n)
            present = frozenset(np.unique(coloring.tri[k]).tolist())
            missing = sorted(all_colors - present)
            if missing:
                failures.append({"trial": j, "missing_colors": missing})
        return failures

    chunks = run_chunks(trials, run, workers=workers,
                        chunk=max(1, trials // 32))
    failures = [f for chunk in chunks for f in chunk]
    return {"mode": "sampled", "size": size, "trials": trials, "seed": seed,
            "failures": failures, "pass": not failures}


# ---------------------------------------------------------------------------
# Coloring file: one JSON header line, then the triangle bytes.

def save_coloring(coloring: EdgeColoring, path: str) -> None:
    header = {
        "format_version": COLORING_FORMAT_VERSION,
        "n": coloring.n,
        "t": coloring.t,
        "r": coloring.r,
        "s": coloring.s,
        "primes": list(coloring.primes),
        "fallback_rule": coloring.fallback_rule,
    }
    with open(path, "wb") as f:
        f.write(json.dumps(header, sort_keys=True).encode())
        f.write(b"\n")
        f.write(coloring.tri.tobytes())


def load_coloring(path: str) -> EdgeColoring:
    with open(path, "rb") as f:
        header = json.loads(f.readline().decode())
        body = f.read()
    n = int(header["n"])
    tri = np.frombuffer(body, dtype=np.uint8)
    if tri.size != bitmat.pair_count(n):
        raise ValueError(
            f"triangle length {tri.size} != C({n},2)={bitmat.pair_count(n)}")
    t = int(header["t"])
    if tri.size and (tri.min() < 1 or tri.max() > t):
        raise ValueError("color byte outside [1, t]")
    return EdgeColoring(
        n=n, t=t, r=int(header["r"]), s=int(header["s"]),
        primes=tuple(int(p) for p in header["primes"]),
        fallback_rule=header["fallback_rule"], tri=tri)
