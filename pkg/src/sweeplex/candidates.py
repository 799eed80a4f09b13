"""Candidate cofacets and verified candidate-ordering circles.

A candidate vertex of an i-simplex is one whose join with the simplex has its
full boundary present in the i-skeleton and stays compatible with the declared
structural property.  Ordering circles around a simplex are rejection-sampled
and then verified exactly: every candidate must receive a distinct angle key,
and two candidates may share an axis of the circle (antipodal keys) only when
their joins share an affine hull, i.e. when they are separated by the simplex
inside one common flat.  Without that last condition the radial search could
not tell the pair's contributions apart.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from random import Random
from typing import Callable, Optional

from .complexes import PropertyX, Simplex, SimplicialComplex, as_simplex, facets
from .errors import InvalidInput, NoPerpendicular, NotFound, VerificationFailed
from .geometry import (CODIM1, PERP, DirectionCircle, Vec, affine_dim, as_vec,
                       injective_pair_test, is_zero_vec, orthogonal_span_basis,
                       orthogonalize, vdot, vsub)

DEFAULT_RETRIES = 64


@dataclass(frozen=True)
class CandidateSet:
    """Candidate vertices of one simplex under a declared property."""

    center: Simplex
    vertices: frozenset[int]
    prop: PropertyX

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)


def _edge_span(K: SimplicialComplex, sigma: Simplex) -> list[Vec]:
    pts = K.points_of(sigma)
    return orthogonal_span_basis(vsub(p, pts[0]) for p in pts[1:])


def candidate_vertices(K: SimplicialComplex, sigma, prop: PropertyX) -> CandidateSet:
    """Candidate vertices of sigma in the skeleton K under the given property.

    FACETS_ONLY keeps every vertex whose join has all facets present;
    LOCALLY_INJECTIVE additionally requires the join to be nondegenerate and an
    injective pair with every face-sharing simplex of K; EMBEDDED extends the
    pair test to all simplices of K.
    """
    sigma = as_simplex(sigma)
    if sigma not in K:
        raise NotFound(f"simplex {sigma} not in complex")
    i = len(sigma) - 1
    found: set[int] = set()
    members = list(K.all_simplices())
    for v in range(len(K.vertices)):
        if v in sigma:
            continue
        tau = as_simplex(sigma + (v,))
        if any(f not in K for f in facets(tau)):
            continue
        if prop is not PropertyX.FACETS_ONLY:
            tau_pts = K.points_of(tau)
            if affine_dim(tau_pts) != i + 1:
                continue
            tau_set = set(tau)
            ok = True
            for member in members:
                mset = set(member)
                if mset <= tau_set:
                    continue  # faces of tau are always injective with it
                if prop is PropertyX.LOCALLY_INJECTIVE and not (mset & tau_set):
                    continue
                if not injective_pair_test(tau_pts, K.points_of(member)):
                    ok = False
                    break
            if not ok:
                continue
        found.add(v)
    return CandidateSet(sigma, frozenset(found), prop)


@dataclass
class AssumptionReport:
    """Violations of the general-position requirement for reconstruction."""

    violations: list[tuple[Simplex, Simplex, Simplex]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [f"around {s}: candidate cofacets {a} and {b} are not an injective pair"
                for s, a, b in self.violations]


def check_assumption_reconstruction(K: SimplicialComplex, i: int,
                                    prop: PropertyX) -> AssumptionReport:
    """Verify that every i-simplex's candidate cofacets plus K stay locally injective.

    An embedded promise passes outright: embedded candidates can never overlap
    beyond a common face.
    """
    report = AssumptionReport()
    if prop is PropertyX.EMBEDDED:
        return report
    members = list(K.all_simplices())
    for sigma in K.simplices(i):
        cand = candidate_vertices(K, sigma, prop)
        taus = [as_simplex(sigma + (v,)) for v in cand.sorted_vertices()]
        for ta, tb in itertools.combinations(taus, 2):
            if not injective_pair_test(K.points_of(ta), K.points_of(tb)):
                report.violations.append((sigma, ta, tb))
        for tau in taus:
            tau_set = set(tau)
            for member in members:
                mset = set(member)
                if mset <= tau_set or not (mset & tau_set):
                    continue
                if not injective_pair_test(K.points_of(tau), K.points_of(member)):
                    report.violations.append((sigma, tau, member))
    return report


# ---------------------------------------------------------------------------
# circle construction
# ---------------------------------------------------------------------------

def _random_vec(rng: Random, d: int) -> Vec:
    while True:
        v = as_vec([rng.randrange(-99, 100) for _ in range(d)])
        if not is_zero_vec(v):
            return v


def _orders_candidates(circle: DirectionCircle, sigma_pts: list[Vec],
                       cand_pts: dict[int, Vec], forbid_axes: bool = False) -> bool:
    """Exact verification that a circle radially orders a candidate set.

    Checks that all candidate angle keys are pairwise distinct and that any
    antipodal key pair comes from candidates sharing one affine hull with the
    center simplex (those pairs are antipodal on every circle and are the only
    ones the downstream search can disambiguate).  With ``forbid_axes`` no
    candidate may sit at angle 0 or pi at all.
    """
    sigma_ad = affine_dim(sigma_pts)
    by_key: dict = {}
    for v in sorted(cand_pts):
        key, _ = circle.normal_of(cand_pts[v])
        if forbid_axes and key.s == 0:
            return False
        if key in by_key:
            return False
        by_key[key] = v
    for key, v in by_key.items():
        other = by_key.get(key.antipode())
        if other is None or other <= v:
            continue
        joined = sigma_pts + [cand_pts[v], cand_pts[other]]
        if affine_dim(joined) > sigma_ad + 1:
            return False
    return True


def candidate_ordering_circle(K: SimplicialComplex, sigma, s: Vec, prop: PropertyX,
                              rng: Random, max_retries: int = DEFAULT_RETRIES,
                              cand: Optional[CandidateSet] = None) -> DirectionCircle:
    """Maximally perpendicular circle through s that radially orders sigma's candidates.

    For a codimension-1 hull the circle is forced up to the second axis and is
    verified once; otherwise the second axis is rejection-sampled and verified
    exactly against the candidate set.  Persistent failure signals a
    general-position violation (or an extremely unlucky complex).
    """
    sigma = as_simplex(sigma)
    if sigma not in K:
        raise NotFound(f"simplex {sigma} not in complex")
    pts = K.points_of(sigma)
    d = K.d
    ad = affine_dim(pts)
    if ad == d:
        raise NoPerpendicular(f"simplex {sigma} affinely spans the ambient space")
    s = as_vec(s)
    if is_zero_vec(s):
        raise InvalidInput("direction must be nonzero")
    span = _edge_span(K, sigma)
    if any(vdot(s, g) != 0 for g in span):
        raise InvalidInput(f"direction {s} is not perpendicular to {sigma}")
    if cand is None:
        cand = candidate_vertices(K, sigma, prop)
    cand_pts = {v: K.point(v) for v in cand.vertices}
    base = pts[0]
    if ad == d - 1:
        w = None
        for i in range(d):
            e = tuple(int(j == i) for j in range(d))
            r = orthogonalize(as_vec(e), [s])
            if not is_zero_vec(r):
                w = r
                break
        circle = DirectionCircle(base, s, w, CODIM1)
        if not _orders_candidates(circle, pts, cand_pts):
            raise VerificationFailed(
                f"no candidate-ordering circle around {sigma}: "
                "two candidates on the same side of a codimension-1 hull")
        return circle
    axes = span + [s]
    for _ in range(max_retries):
        w = orthogonalize(_random_vec(rng, d), axes)
        if is_zero_vec(w):
            continue
        circle = DirectionCircle(base, s, w, PERP)
        if _orders_candidates(circle, pts, cand_pts):
            return circle
    raise VerificationFailed(
        f"could not verify a candidate-ordering circle around {sigma} "
        f"after {max_retries} attempts (general-position violation?)")


def global_vertex_circle(K: SimplicialComplex, prop: PropertyX, rng: Random,
                         max_retries: int = DEFAULT_RETRIES,
                         cand_map: Optional[dict[Simplex, CandidateSet]] = None,
                         ) -> DirectionCircle:
    """One circle that radially orders the candidates of every vertex at once.

    The sampled plane must give distinct keys per vertex and must not put any
    candidate at angle exactly 0 or pi: the sweep direction is gamma(0), and a
    candidate at the exact height of its center would sit on the boundary of
    both initial halfspaces, which the radial search cannot untangle.
    """
    if not K.vertices:
        raise InvalidInput("complex has no vertices")
    if cand_map is None:
        cand_map = {(v,): candidate_vertices(K, (v,), prop)
                    for v in range(len(K.vertices))}
    d = K.d
    base = K.point(0)
    for _ in range(max_retries):
        u = _random_vec(rng, d)
        w = orthogonalize(_random_vec(rng, d), [u])
        if is_zero_vec(w):
            continue
        ok = True
        for v in range(len(K.vertices)):
            circle = DirectionCircle(K.point(v), u, w, PERP)
            cand = cand_map[(v,)]
            cand_pts = {c: K.point(c) for c in cand.vertices}
            if not _orders_candidates(circle, [K.point(v)], cand_pts, forbid_axes=True):
                ok = False
                break
        if ok:
            return DirectionCircle(base, u, w, PERP)
    raise VerificationFailed(
        f"could not verify a globally candidate-ordering circle after "
        f"{max_retries} attempts (general-position violation for vertices?)")
