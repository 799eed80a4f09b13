"""Reconstruction of a complex from its vertex set and indegree queries.

find_unfound locates the cofacets of one simplex that are not yet known by
binary-searching radially sorted candidates with indegree queries; the count
test compares each query against the found total plus the number of known
cofacets inside the queried closed halfspace.  reconstruct_next runs it along
a circle-reporting sweeping order, which guarantees that everything strictly
below each simplex is already known, and reconstruct_all iterates skeleton by
skeleton starting from the vertices.

One degenerate shape needs care: exact arithmetic admits candidates at angles
exactly 0 and pi simultaneously (two candidates at the exact height of the
simplex, e.g. a collinear pair through it).  An unfound cofacet at angle pi is
then counted by a query at angle 0 as well, which would steer the search to
the wrong end.  When both axis candidates exist, one extra probe query at an
interior angle above every other candidate separates the two boundary
statuses before the verbatim search runs; the probe is recorded in the call
stats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from random import Random
from typing import Callable, Optional

from .candidates import (CandidateSet, candidate_ordering_circle,
                         candidate_vertices, global_vertex_circle, DEFAULT_RETRIES)
from .complexes import PropertyX, Simplex, SimplicialComplex, as_simplex
from .errors import (InternalInvariantViolation, InvalidInput,
                     ReconstructionMismatch)
from .geometry import (AngleKey, DirectionCircle, Vec, vadd, vdot, vneg, vsub)
from .oracle import IndegreeOracle
from .sweep import SweepingOrder, order_next, order_vertices

AuditHook = Callable[[Simplex, Vec, list[int]], None]


@dataclass(frozen=True)
class FindUnfoundCall:
    """Per-call accounting used by the query-bound acceptance checks."""

    dim: int
    initially_unfound: int
    prefix_len: int
    queries: int
    max_depth: int
    degenerate: bool

    @property
    def query_allowance(self) -> int:
        """1 + U * ceil(log2(l+1)): the per-call indegree budget."""
        return 1 + self.initially_unfound * math.ceil(math.log2(self.prefix_len + 1))

    def within_bound(self) -> bool:
        return self.queries <= self.query_allowance


@dataclass
class ReconStats:
    """Simplex counts, per-call search records, and oracle query totals."""

    calls: list[FindUnfoundCall] = field(default_factory=list)
    n_per_dim: list[int] = field(default_factory=list)
    queries_total: int = 0
    queries_per_dim: list[int] = field(default_factory=list)
    orders: list[SweepingOrder] = field(default_factory=list)

    @property
    def max_binary_search_depth(self) -> int:
        return max((c.max_depth for c in self.calls), default=0)

    def finalize(self, K: SimplicialComplex, oracle: IndegreeOracle) -> None:
        self.n_per_dim = [K.n(i) for i in range(K.dim + 1)]
        qs = oracle.query_stats()
        self.queries_total = qs.total
        dims = range(max(qs.per_dim) + 1) if qs.per_dim else range(0)
        self.queries_per_dim = [qs.per_dim.get(i, 0) for i in dims]

    def to_json_obj(self) -> dict:
        return {
            "n": self.n_per_dim,
            "queries": {"total": self.queries_total, "per_dim": self.queries_per_dim},
            "max_binary_search_depth": self.max_binary_search_depth,
        }


def _count_at_most(direction: Vec, height, points: list[Vec]) -> int:
    return sum(1 for p in points if vdot(direction, p) <= height)


def _known_window_counts(cand_keys: list[AngleKey],
                         known_keys: list[AngleKey]) -> list[int]:
    """For each candidate key, the number of known keys in its closed lower window.

    The window of a key at angle a is the closed halfcircle [a - pi, a].  Both
    lists are sorted, so one rotational sweep with monotone pointers covers all
    candidates in O(#known + #cand) comparisons.
    """
    m = len(known_keys)
    counts = [0] * len(cand_keys)
    if m == 0:
        return counts
    hi = 0   # known keys <= current candidate key
    lo = 0   # known keys < antipode(key), antipode in [pi, 2pi)
    hi2 = 0  # second pass, keys beyond pi
    lo2 = 0
    for idx, key in enumerate(cand_keys):
        if key.at_most_pi:
            while hi < m and known_keys[hi] <= key:
                hi += 1
            if key.is_pi:
                counts[idx] = hi  # window is exactly [0, pi]
                continue
            ant = key.antipode()
            while lo < m and known_keys[lo] < ant:
                lo += 1
            counts[idx] = hi + (m - lo)
        else:
            while hi2 < m and known_keys[hi2] <= key:
                hi2 += 1
            ant = key.antipode()
            while lo2 < m and known_keys[lo2] < ant:
                lo2 += 1
            counts[idx] = hi2 - lo2
    return counts


def find_unfound(oracle: IndegreeOracle, sigma, s: Vec, gamma: DirectionCircle,
                 known: list[int], cand: CandidateSet,
                 stats: Optional[ReconStats] = None) -> list[int]:
    """All cofacet-defining vertices of sigma that are not in ``known``.

    Requires s proportional to gamma(0), gamma candidate-ordering for sigma,
    and ``known`` to contain every vertex of a cofacet strictly below sigma
    along s.  Performs one initial indegree query plus ceil(log2(l+1)) queries
    per unfound cofacet, l being the number of candidates at angle <= pi.
    """
    sigma = as_simplex(sigma)
    d = oracle.ambient_dim
    dim_sigma = len(sigma) - 1
    base = gamma.base

    ranked = []
    for v in cand.sorted_vertices():
        key, direction = gamma.normal_of(oracle.vertex_point(v))
        ranked.append((key, v, direction))
    ranked.sort(key=lambda t: (t[0], t[1]))
    known_pts = [oracle.vertex_point(v) for v in known]
    known_keys = sorted(gamma.normal_of(p)[0] for p in known_pts)

    queries_before = oracle.query_stats().total
    neg_s = vneg(s)
    neg_height = vdot(neg_s, base)
    initially_unfound = oracle.indeg(sigma, neg_s) - _count_at_most(
        neg_s, neg_height, known_pts)
    if initially_unfound < 0:
        raise InternalInvariantViolation(
            f"more known cofacets than indegree reports at {sigma}")

    outputs: list[int] = []
    max_depth = 0
    degenerate = False

    if dim_sigma == d - 1:
        if initially_unfound > 0:
            if initially_unfound > 1 or not ranked:
                raise InternalInvariantViolation(
                    f"codimension-1 simplex {sigma} reports {initially_unfound} "
                    "unfound cofacets")
            outputs.append(ranked[0][1])
    elif dim_sigma < d - 1:
        prefix = [t for t in ranked if t[0].at_most_pi]
        l = len(prefix)
        if initially_unfound > 0 and l == 0:
            raise InternalInvariantViolation(
                f"unfound cofacets of {sigma} but no candidate at angle <= pi")

        unfound = initially_unfound
        peeled: Optional[int] = None
        has_zero = any(t[0].is_zero for t in prefix)
        has_pi = any(t[0].is_pi for t in prefix)
        if unfound > 0 and has_zero and has_pi:
            # both axis candidates exist: one probe strictly between the last
            # interior candidate and pi splits the boundary statuses
            degenerate = True
            interior = [t for t in prefix if not t[0].is_zero and not t[0].is_pi]
            if interior:
                probe = vadd(interior[-1][2], vneg(gamma.u))
            else:
                probe = gamma.w
            below_probe = oracle.indeg(sigma, probe) - _count_at_most(
                probe, vdot(probe, base), known_pts)
            unfound_at_pi = unfound - below_probe
            if unfound_at_pi not in (0, 1) or below_probe < 0:
                raise InternalInvariantViolation(
                    f"inconsistent axis-candidate resolution at {sigma}")
            if unfound_at_pi == 1:
                peeled = next(t[1] for t in prefix if t[0].is_pi)
                known = known + [peeled]
                known_pts = [oracle.vertex_point(v) for v in known]
                known_keys = sorted(gamma.normal_of(p)[0] for p in known_pts)
                unfound -= 1

        window_counts = _known_window_counts([t[0] for t in prefix], known_keys)
        found = 0
        while found < unfound:
            a, b = 1, l + 1
            depth = 0
            while a + 1 < b:
                c = (a + b) // 2 - 1
                depth += 1
                count = oracle.indeg(sigma, prefix[c - 1][2])
                if count > found + window_counts[c - 1]:
                    b = c + 1
                else:
                    a = c + 1
            max_depth = max(max_depth, depth)
            vid = prefix[a - 1][1]
            if vid in outputs or vid in known:
                raise InternalInvariantViolation(
                    f"binary search at {sigma} revisited vertex {vid}")
            outputs.append(vid)
            found += 1
        if peeled is not None:
            outputs.append(peeled)
    else:
        # a simplex of dimension above d-1 admits no rotation at all; with the
        # preconditions intact it cannot have unfound cofacets either
        if initially_unfound > 0:
            raise InternalInvariantViolation(
                f"cannot search above codimension-0 simplex {sigma}")

    if stats is not None:
        used = oracle.query_stats().total - queries_before
        stats.calls.append(FindUnfoundCall(
            dim=dim_sigma, initially_unfound=initially_unfound,
            prefix_len=len([t for t in ranked if t[0].at_most_pi]),
            queries=used, max_depth=max_depth, degenerate=degenerate))
    return outputs


def reconstruct_next(oracle: IndegreeOracle, K: SimplicialComplex,
                     so: SweepingOrder, prop: PropertyX,
                     stats: Optional[ReconStats] = None,
                     audit: Optional[AuditHook] = None,
                     cand_cache: Optional[dict[Simplex, CandidateSet]] = None,
                     ) -> list[Simplex]:
    """All (i+1)-simplices of the hidden complex, given its complete i-skeleton.

    Walks the circle-reporting sweeping order, finds the unknown cofacets of
    each entry, and records every output simplex as a known cofacet of all its
    facets so later entries never re-find it.
    """
    known: dict[Simplex, list[int]] = {e.simplex: [] for e in so}
    known_sets: dict[Simplex, set[int]] = {e.simplex: set() for e in so}
    out: list[Simplex] = []
    for e in so:
        if e.circle is None:
            raise InvalidInput("reconstruction needs a circle-reporting order")
        if cand_cache is not None and e.simplex in cand_cache:
            cand = cand_cache[e.simplex]
        else:
            cand = candidate_vertices(K, e.simplex, prop)
        if audit is not None:
            audit(e.simplex, e.direction, list(known[e.simplex]))
        for u in find_unfound(oracle, e.simplex, e.direction, e.circle,
                              known[e.simplex], cand, stats):
            rho = as_simplex(e.simplex + (u,))
            out.append(rho)
            for v in rho:
                f = tuple(x for x in rho if x != v)
                if f not in known_sets:
                    raise InternalInvariantViolation(
                        f"facet {f} of output {rho} missing from the sweep")
                if v in known_sets[f]:
                    raise InternalInvariantViolation(
                        f"simplex {rho} recorded twice at facet {f}")
                known[f].append(v)
                known_sets[f].add(v)
    return out


def reconstruct_all(oracle: IndegreeOracle, K0: SimplicialComplex,
                    prop: PropertyX, rng: Random,
                    max_retries: int = DEFAULT_RETRIES,
                    verify_against: Optional[SimplicialComplex] = None,
                    keep_orders: bool = False,
                    audit: Optional[AuditHook] = None,
                    ) -> tuple[SimplicialComplex, ReconStats]:
    """Reconstruct the hidden complex from its 0-skeleton.

    Alternates reconstruct_next with computing the next circle-reporting
    sweeping order, stopping when a skeleton gains nothing; under an embedded
    promise it also stops once dimension d is reached, where no further
    simplices can exist.  The reconstructed complex is independent of the rng
    seed; only circle choices (and hence the query trace) vary.
    """
    if K0.dim != 0:
        raise InvalidInput("reconstruction starts from a plain vertex set")
    stats = ReconStats()
    cand_cache = {(v,): candidate_vertices(K0, (v,), prop)
                  for v in range(len(K0.vertices))}
    circle = global_vertex_circle(K0, prop, rng, max_retries, cand_map=cand_cache)
    so = order_vertices(K0, circle)
    if keep_orders:
        stats.orders.append(so)
    K = K0
    i = 0
    while True:
        new = reconstruct_next(oracle, K, so, prop, stats=stats, audit=audit,
                               cand_cache=cand_cache)
        if not new:
            break
        K = K.with_added(new)
        i += 1
        if prop is PropertyX.EMBEDDED and i >= K.d:
            break  # an embedded complex has no simplices above dimension d
        cand_cache = {sigma: candidate_vertices(K, sigma, prop)
                      for sigma in K.simplices(i)}

        def provider(sigma: Simplex, s: Vec, _K=K, _cache=cand_cache) -> DirectionCircle:
            return candidate_ordering_circle(_K, sigma, s, prop, rng,
                                             max_retries, cand=_cache[sigma])

        so = order_next(K, so, provider)
        if keep_orders:
            stats.orders.append(so)
    stats.finalize(K, oracle)
    if verify_against is not None and K != verify_against:
        raise ReconstructionMismatch(
            "reconstructed complex differs from the hidden ground truth")
    return K, stats
