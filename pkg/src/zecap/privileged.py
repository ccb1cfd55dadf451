"""Channel-graph systems in which exactly the designated coalitions get a
high zero-error capacity.

Given a family F of subsets of the sender set [t], the antichain of maximal
F-free subsets receives distinct primes; sender i's prime set A_i collects
the primes of the maximal free sets containing i, so that a coalition X has
a common prime iff X contains no member of F (the free/forbidden dichotomy).

Every sender's graph lives on the same vertex set, the s-subsets of [r] in
colex order, with A and B adjacent in channel i iff |A on B| == s mod q for
some q in A_i.  Coalitions containing some F in the family get the diagonal
independent set of size n = C(r, s) in the |F|-th power of their channel
union (capacity >= n^(1/|F|)); every other coalition is capped by a
verified representation certificate at its common prime.

Parameters (r, s, primes) are accepted whenever each prime pair multiplies
beyond s (so an intersection size matching two moduli pins A = B), no prime
divides s, and s <= r; whether the classical shape s = p^2, r = p^3 holds
is recorded but not required, since that shape is astronomically large for
any interesting prime.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

import numpy as np

from . import bitmat
from .combin import (binomial, check_prime_list, is_prime, ksubsets_colex,
                     next_primes, subset_masks)
from .graphs import Graph, check_cap, disjoint_union, save_graph, load_graph
from .parallel import run_chunks
from .polyrep import (CertReport, DimensionBound, RepresentationCertificate,
                      dimension_bound, verify_certificate)

MANIFEST_NAME = "manifest.json"
MANIFEST_VERSION = 1


def _mask_of(subset) -> int:
    m = 0
    for e in subset:
        m |= 1 << (e - 1)
    return m


def _subset_of(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class SubsetFamily:
    """Family of nonempty subsets of [t], deduplicated, in colex order.

    A family containing the empty set would leave no free subsets at all
    and degenerate every bound, so it is rejected outright.
    """

    t: int
    member_masks: tuple[int, ...]

    def __post_init__(self):
        if not 2 <= self.t <= 20:
            raise ValueError(f"t must be in [2, 20], got {self.t}")
        full = (1 << self.t) - 1
        for m in self.member_masks:
            if m == 0:
                raise ValueError("family contains the empty set")
            if m & ~full:
                raise ValueError(f"member {_subset_of(m)} not a subset of "
                                 f"[{self.t}]")
        if list(self.member_masks) != sorted(set(self.member_masks)):
            raise ValueError("member masks must be deduplicated and sorted")

    @classmethod
    def from_lists(cls, t: int, members) -> "SubsetFamily":
        masks = sorted({_mask_of(m) for m in members})
        return cls(t=t, member_masks=tuple(masks))

    def members(self) -> list[tuple[int, ...]]:
        return [_subset_of(m) for m in self.member_masks]

    def contains_subset_of(self, coalition_mask: int) -> bool:
        return any((coalition_mask & m) == m for m in self.member_masks)


def maximal_free_sets(family: SubsetFamily) -> list[int]:
    """Inclusion-maximal subsets of [t] containing no family member, as
    bit-masks in colex (ascending mask) order.  Exhaustive over 2^t."""
    t = family.t
    size = 1 << t
    xs = np.arange(size, dtype=np.int64)
    free = np.ones(size, dtype=bool)
    for m in family.member_masks:
        free &= (xs & m) != m
    maximal = free.copy()
    for i in range(t):
        bit = 1 << i
        lacks = (xs & bit) == 0
        maximal[lacks & free[xs | bit]] = False
    return [int(x) for x in xs[maximal]]


@dataclass(frozen=True)
class AntichainAssignment:
    """Primes assigned to the maximal free sets, and the per-sender sets
    A_i = {prime of Y : i in Y}."""

    family: SubsetFamily
    free_sets: tuple[int, ...]      # masks, colex order
    primes: tuple[int, ...]         # primes[k] belongs to free_sets[k]
    a_sets: tuple[tuple[int, ...], ...]

    def prime_of(self, free_set_mask: int) -> int:
        return self.primes[self.free_sets.index(free_set_mask)]


def build_assignment(family: SubsetFamily, prime_pool) -> AntichainAssignment:
    """Assign pool primes to the maximal free sets in colex order."""
    pool = check_prime_list(prime_pool)
    ys = maximal_free_sets(family)
    if len(pool) < len(ys):
        raise ValueError(
            f"prime pool of size {len(pool)} < {len(ys)} maximal free sets")
    primes = tuple(pool[: len(ys)])
    a_sets = []
    for i in range(1, family.t + 1):
        bit = 1 << (i - 1)
        a_sets.append(tuple(p for y, p in zip(ys, primes) if y & bit))
    return AntichainAssignment(family=family, free_sets=tuple(ys),
                               primes=primes, a_sets=tuple(a_sets))


@dataclass(frozen=True)
class CoalitionStatus:
    coalition: tuple[int, ...]
    free_intersection: tuple[int, ...]  # common primes of the coalition
    contains_member: bool


def _check_coalition(t: int, coalition) -> tuple[int, ...]:
    xs = tuple(sorted(set(int(i) for i in coalition)))
    if not xs:
        raise ValueError("coalition must be nonempty")
    if xs[0] < 1 or xs[-1] > t:
        raise ValueError(f"coalition {xs} not within [1, {t}]")
    return xs


def coalition_status(assignment: AntichainAssignment,
                     coalition) -> CoalitionStatus:
    """Common primes of the coalition's A_i sets, and whether the coalition
    contains a family member; the free-set lemma makes these complementary."""
    xs = _check_coalition(assignment.family.t, coalition)
    inter = set(assignment.a_sets[xs[0] - 1])
    for i in xs[1:]:
        inter &= set(assignment.a_sets[i - 1])
    xmask = _mask_of(xs)
    return CoalitionStatus(
        coalition=xs,
        free_intersection=tuple(sorted(inter)),
        contains_member=assignment.family.contains_subset_of(xmask),
    )


@dataclass(frozen=True)
class ParamReport:
    r: int
    s: int
    primes: tuple[int, ...]
    failures: tuple[str, ...]
    warnings: tuple[str, ...]
    canonical_shape: bool  # s = p^2 and r = p^3 for a prime p

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"r": self.r, "s": self.s, "primes": list(self.primes),
                "ok": self.ok, "failures": list(self.failures),
                "warnings": list(self.warnings),
                "canonical_shape": self.canonical_shape}


def achievable_overlaps(r: int, s: int) -> range:
    """Intersection sizes |A on B| realizable by distinct s-subsets of [r]."""
    return range(max(0, 2 * s - r), s)


def validate_params(r: int, s: int, primes) -> ParamReport:
    """Admissibility report for a construction on s-subsets of [r].

    Hard failures: a non-prime or non-increasing pool entry, a prime pair
    with q * q' <= s (two congruences could then agree on a realizable
    overlap without forcing A = B), a prime dividing s, or s outside
    [1, r].  A prime whose congruence no realizable overlap satisfies only
    warns: its edge rule can never fire.
    """
    failures = []
    warnings = []
    prs = [int(p) for p in primes]
    try:
        prs = check_prime_list(prs)
    except ValueError as e:
        failures.append(str(e))
    if s < 1 or s > r:
        failures.append(f"need 1 <= s <= r, got s={s}, r={r}")
    if not failures:
        for i, q in enumerate(prs):
            for qq in prs[i + 1:]:
                if q * qq <= s:
                    failures.append(
                        f"prime pair ({q}, {qq}) has product <= s={s}")
            if s % q == 0:
                failures.append(f"prime {q} divides s={s}")
        for q in prs:
            if not any(v % q == s % q for v in achievable_overlaps(r, s)):
                warnings.append(
                    f"no realizable overlap matches s mod {q}; "
                    f"the edge rule for {q} never fires")
    p = math.isqrt(s)
    canonical = is_prime(p) and p * p == s and p ** 3 == r
    return ParamReport(r=r, s=s, primes=tuple(prs),
                       failures=tuple(failures), warnings=tuple(warnings),
                       canonical_shape=canonical)


def build_graph(r: int, s: int, channel_primes, channel_id: int = 1,
                cap_bits: int | None = None, workers: int = 1) -> Graph:
    """Graph on all s-subsets of [r] (colex order): distinct A, B adjacent
    iff |A on B| == s mod q for some q in channel_primes."""
    n = binomial(r, s)
    check_cap(n, cap_bits)
    masks = subset_masks(r, s)
    qs = tuple(sorted(set(int(q) for q in channel_primes)))
    # overlap lookup: index s (self-intersection) only occurs on the
    # diagonal and is deliberately False
    fires = np.zeros(s + 1, dtype=bool)
    for v in achievable_overlaps(r, s):
        fires[v] = any(v % q == s % q for q in qs)
    rows = bitmat.zero_rows(n)

    def build(lo: int, hi: int):
        ov = np.bitwise_count(masks[lo:hi, None] & masks[None, :])
        rows[lo:hi] = bitmat.pack_bool_rows(fires[ov.astype(np.int64)])

    run_chunks(n, build, workers=workers)
    rows.setflags(write=False)
    labels = tuple((channel_id, sub) for sub in ksubsets_colex(r, s))
    return Graph(n=n, rows=rows, labels=labels)


@dataclass(frozen=True)
class PrivilegedSystem:
    """The full construction: parameters, prime assignment, and the t
    channel graphs on the common C(r, s) vertex set."""

    family: SubsetFamily
    r: int
    s: int
    prime_pool: tuple[int, ...]
    assignment: AntichainAssignment
    params: ParamReport
    graphs: tuple[Graph, ...]

    @property
    def t(self) -> int:
        return self.family.t

    @property
    def n(self) -> int:
        return binomial(self.r, self.s)


def build_system(family: SubsetFamily, r: int, s: int, prime_pool=None,
                 base_prime: int | None = None, cap_bits: int | None = None,
                 workers: int = 1) -> PrivilegedSystem:
    """Build all t channel graphs for the family.

    Provide either an explicit prime pool or a base prime, in which case
    the pool is the first |maximal free sets| primes above it.
    """
    ys = maximal_free_sets(family)
    if prime_pool is None:
        if base_prime is None:
            raise ValueError("need prime_pool or base_prime")
        prime_pool = next_primes(base_prime, max(1, len(ys)))
    pool = [int(p) for p in prime_pool]
    if len(pool) < len(ys):
        raise ValueError(
            f"prime pool of size {len(pool)} < {len(ys)} maximal free sets")
    params = validate_params(r, s, pool[: len(ys)])
    if not params.ok:
        raise ValueError("invalid parameters: " + "; ".join(params.failures))
    assignment = build_assignment(family, pool)
    graphs = tuple(
        build_graph(r, s, assignment.a_sets[i - 1], channel_id=i,
                    cap_bits=cap_bits, workers=workers)
        for i in range(1, family.t + 1))
    return PrivilegedSystem(family=family, r=r, s=s, prime_pool=tuple(pool),
                            assignment=assignment, params=params,
                            graphs=graphs)


def union_graph(system: PrivilegedSystem, coalition,
                cap_bits: int | None = None, workers: int = 1) -> Graph:
    xs = _check_coalition(system.t, coalition)
    return disjoint_union([system.graphs[i - 1] for i in xs],
                          cap_bits=cap_bits, workers=workers)


def diagonal_tuples(system: PrivilegedSystem, member,
                    coalition=None) -> np.ndarray:
    """The n diagonal |F|-tuples (A in channel i_1, ..., A in channel i_k)
    as vertex ids of the coalition's union graph; one tuple per s-subset.

    Distinct diagonal tuples are never adjacent in the power: adjacency in
    every coordinate would put |A on B| == s modulo two distinct primes
    whose product exceeds s, pinning |A on B| = s and hence A = B.
    """
    f = tuple(sorted(set(int(i) for i in member)))
    fmask = _mask_of(f)
    if fmask not in system.family.member_masks:
        raise ValueError(f"{f} is not a member of the family")
    xs = _check_coalition(system.t, f if coalition is None else coalition)
    if any(i not in xs for i in f):
        raise ValueError(f"member {f} not contained in coalition {xs}")
    n = system.n
    offsets = {i: pos * n for pos, i in enumerate(xs)}
    base = np.arange(n, dtype=np.int64)
    return np.stack([offsets[i] + base for i in f], axis=1)


@dataclass(frozen=True)
class BoundReport:
    """Certified capacity bounds for one coalition's channel union."""

    coalition: tuple[int, ...]
    verdict: str  # "privileged" | "restricted"
    lower: float
    lower_witness: dict
    upper: DimensionBound | None
    common_prime: int | None
    certificate: RepresentationCertificate | None
    cert_report: CertReport | None

    def to_dict(self) -> dict:
        return {
            "coalition": list(self.coalition),
            "verdict": self.verdict,
            "lower": self.lower,
            "lower_witness": self.lower_witness,
            "upper": self.upper.to_dict() if self.upper else None,
            "common_prime": self.common_prime,
            "certificate_verified": (self.cert_report.valid
                                     if self.cert_report else None),
        }


def certificate_for(system: PrivilegedSystem, coalition,
                    q: int) -> RepresentationCertificate:
    xs = _check_coalition(system.t, coalition)
    subs = tuple(ksubsets_colex(system.r, system.s))
    return RepresentationCertificate(
        q=q, r=system.r, s=system.s,
        channels=tuple((i, subs) for i in xs))


def bound_report(system: PrivilegedSystem, coalition, verify: bool = True,
                 cap_bits: int | None = None, workers: int = 1) -> BoundReport:
    """Dichotomy-certified bounds for a coalition.

    Privileged (contains a family member F): capacity >= n^(1/|F|) via the
    diagonal tuples, maximized over the smallest contained member.
    Restricted (common prime q): capacity <= |X| * sum_{i<q} C(r, i) via a
    representation certificate, verified on the union graph by default.
    """
    status = coalition_status(system.assignment, coalition)
    xs = status.coalition
    if status.contains_member and status.free_intersection:
        raise RuntimeError(
            f"dichotomy violated for {xs}: contains a member and has "
            f"common primes {status.free_intersection}")
    if not status.contains_member and not status.free_intersection:
        raise RuntimeError(f"dichotomy violated for {xs}: neither side holds")
    n = system.n
    if status.contains_member:
        xmask = _mask_of(xs)
        best = min((m for m in system.family.member_masks
                    if (xmask & m) == m),
                   key=lambda m: (m.bit_count(), m))
        arity = best.bit_count()
        return BoundReport(
            coalition=xs, verdict="privileged",
            lower=n ** (1.0 / arity),
            lower_witness={"type": "diagonal", "member": list(_subset_of(best)),
                           "arity": arity, "tuples": n},
            upper=None, common_prime=None, certificate=None, cert_report=None)
    q = status.free_intersection[0]
    bound = dimension_bound(len(xs), q, system.r)
    cert = certificate_for(system, xs, q)
    report = None
    if verify:
        union = union_graph(system, xs, cap_bits=cap_bits, workers=workers)
        report = verify_certificate(union, cert, workers=workers)
        if not report.valid:
            raise RuntimeError(
                f"representation certificate failed for {xs} at q={q}: "
                f"{report.violation_count} violations")
    return BoundReport(
        coalition=xs, verdict="restricted",
        lower=1.0,
        lower_witness={"type": "single-vertex", "tuples": 1},
        upper=bound, common_prime=q, certificate=cert, cert_report=report)


# ---------------------------------------------------------------------------
# System manifest I/O

def save_system(system: PrivilegedSystem, out_dir: str) -> str:
    """Write manifest.json plus one DIMACS file (and label sidecar) per
    channel; returns the manifest path."""
    os.makedirs(out_dir, exist_ok=True)
    graph_files = []
    for i, g in enumerate(system.graphs, start=1):
        name = f"channel_{i}.dimacs"
        save_graph(g, os.path.join(out_dir, name))
        graph_files.append(name)
    manifest = {
        "format_version": MANIFEST_VERSION,
        "t": system.t,
        "family": [list(m) for m in system.family.members()],
        "r": system.r,
        "s": system.s,
        "n": system.n,
        "prime_pool": list(system.prime_pool),
        "assignment": [{"Y": list(_subset_of(y)), "prime": p}
                       for y, p in zip(system.assignment.free_sets,
                                       system.assignment.primes)],
        "A_sets": [list(a) for a in system.assignment.a_sets],
        "graph_files": graph_files,
        "canonical_shape": system.params.canonical_shape,
        "warnings": list(system.params.warnings),
    }
    path = os.path.join(out_dir, MANIFEST_NAME)
    with open(path, "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def load_system(sys_dir: str) -> PrivilegedSystem:
    with open(os.path.join(sys_dir, MANIFEST_NAME)) as f:
        manifest = json.load(f)
    family = SubsetFamily.from_lists(manifest["t"], manifest["family"])
    r, s = manifest["r"], manifest["s"]
    pool = [int(p) for p in manifest["prime_pool"]]
    params = validate_params(r, s, pool[: len(manifest["assignment"])])
    assignment = build_assignment(family, pool)
    recorded = [(tuple(e["Y"]), e["prime"]) for e in manifest["assignment"]]
    rebuilt = [(_subset_of(y), p) for y, p in zip(assignment.free_sets,
                                                  assignment.primes)]
    if recorded != rebuilt:
        raise ValueError("manifest assignment does not match the family")
    graphs = tuple(load_graph(os.path.join(sys_dir, name))
                   for name in manifest["graph_files"])
    return PrivilegedSystem(family=family, r=r, s=s, prime_pool=tuple(pool),
                            assignment=assignment, params=params,
                            graphs=graphs)
