"""Generalized sweeping orders over the i-simplices of a complex.

An order is a sequence of (simplex, direction) pairs in which every cofacet
strictly below an entry (w.r.t. its paired perpendicular direction) is a
cofacet of some earlier entry.  Vertices are ordered by height along a fixed
direction; higher skeleta are ordered by rotating a maximally perpendicular
circle around each previously output simplex and emitting the not-yet-seen
cofacets by their normal angle.  The circle-reporting variant additionally
attaches a candidate-ordering circle to every entry, which is what the
reconstruction layer consumes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .complexes import Simplex, SimplicialComplex, as_simplex, facets
from .errors import InvalidInput
from .geometry import (CODIM1, PERP, DirectionCircle, Side, Vec, as_vec,
                       halfspace_side, is_zero_vec, vdot, vsub)

CircleProvider = Callable[[Simplex, Vec], DirectionCircle]


@dataclass(frozen=True)
class SweepEntry:
    simplex: Simplex
    direction: Vec
    circle: Optional[DirectionCircle] = None


@dataclass
class SweepingOrder:
    dim: int
    entries: list[SweepEntry] = field(default_factory=list)

    def simplices(self) -> list[Simplex]:
        return [e.simplex for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    # -- JSON interchange ---------------------------------------------------

    def to_json_obj(self) -> list[dict]:
        out = []
        for e in self.entries:
            circle = None
            if e.circle is not None:
                circle = {
                    "u": [str(c) for c in e.circle.u],
                    "w": [str(c) for c in e.circle.w],
                    "mode": e.circle.mode,
                }
            out.append({
                "simplex": list(e.simplex),
                "direction": [str(c) for c in e.direction],
                "circle": circle,
            })
        return out

    @classmethod
    def from_json_obj(cls, obj: list, K: SimplicialComplex, dim: int) -> "SweepingOrder":
        entries = []
        try:
            for item in obj:
                sigma = as_simplex(item["simplex"])
                direction = as_vec(item["direction"])
                circle = None
                if item.get("circle") is not None:
                    c = item["circle"]
                    # circles are serialized without a base; re-anchor at the
                    # simplex's first vertex, a point of its affine hull
                    circle = DirectionCircle(K.point(sigma[0]), as_vec(c["u"]),
                                             as_vec(c["w"]), c["mode"])
                entries.append(SweepEntry(sigma, direction, circle))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed sweeping-order object: {exc}") from exc
        return cls(dim, entries)

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"


def order_vertices(K: SimplicialComplex, circle: DirectionCircle,
                   report_circles: bool = True) -> SweepingOrder:
    """Sweeping order of the vertices: ascending height along gamma(0), ties by id."""
    if not K.vertices:
        raise InvalidInput("cannot order an empty vertex set")
    s = circle.u
    order = sorted(range(len(K.vertices)), key=lambda v: (vdot(s, K.point(v)), v))
    entries = []
    for v in order:
        attached = circle.rebased(K.point(v)) if report_circles else None
        entries.append(SweepEntry((v,), s, attached))
    return SweepingOrder(0, entries)


def order_next(K: SimplicialComplex, so_prev: SweepingOrder,
               circle_provider: Optional[CircleProvider] = None) -> SweepingOrder:
    """Sweeping order of the (i+1)-simplices from a circle-reporting order of the i-simplices.

    For each previous entry, the not-yet-output cofacets are emitted sorted by
    the angle of their extra vertex's normal on the entry's circle (ties by
    vertex id), paired with that normal direction.  When a circle provider is
    given, each emitted entry is annotated with a fresh candidate-ordering
    circle around it through its direction.
    """
    dim = so_prev.dim + 1
    seen: set[Simplex] = set()
    entries: list[SweepEntry] = []
    for prev in so_prev:
        gamma = prev.circle
        if gamma is None:
            raise InvalidInput("order_next requires a circle-reporting input order")
        pending = []
        for tau in K.cofacets_of(prev.simplex):
            if tau in seen:
                continue
            (v,) = set(tau) - set(prev.simplex)
            key, direction = gamma.normal_of(K.point(v))
            pending.append((key, v, tau, direction))
        pending.sort(key=lambda t: (t[0], t[1]))
        for _, _, tau, direction in pending:
            seen.add(tau)
            attached = circle_provider(tau, direction) if circle_provider else None
            entries.append(SweepEntry(tau, direction, attached))
    return SweepingOrder(dim, entries)


@dataclass
class OrderReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_sweeping_order(K: SimplicialComplex, so: SweepingOrder) -> OrderReport:
    """Brute-force audit of the three sweeping-order properties.

    1. every direction is nonzero and exactly perpendicular to its simplex;
    2. the entries are exactly the dim-simplices of K, each once;
    3. every cofacet strictly below an entry has a facet among earlier entries.
    """
    report = OrderReport()
    for e in so:
        if is_zero_vec(e.direction):
            report.violations.append(f"zero direction at {e.simplex}")
            continue
        base = K.point(e.simplex[0]) if e.simplex[0] < len(K.vertices) else None
        if base is None or e.simplex not in K:
            report.violations.append(f"entry {e.simplex} is not a simplex of K")
            continue
        for v in e.simplex[1:]:
            if vdot(e.direction, vsub(K.point(v), base)) != 0:
                report.violations.append(
                    f"direction {e.direction} not perpendicular to {e.simplex}")
                break
    expected = set(K.simplices(so.dim))
    got = so.simplices()
    for sigma in got:
        if got.count(sigma) > 1:
            report.violations.append(f"simplex {sigma} appears more than once")
            expected.discard(sigma)
    missing = expected - set(got)
    foreign = set(got) - set(K.simplices(so.dim))
    for sigma in sorted(missing):
        report.violations.append(f"simplex {sigma} missing from the order")
    for sigma in sorted(foreign):
        report.violations.append(f"simplex {sigma} is not a {so.dim}-simplex of K")
    earlier: set[Simplex] = set()
    for e in so:
        if e.simplex in K and not is_zero_vec(e.direction):
            height = K.height_of(e.direction, e.simplex)
            for tau in K.cofacets_of(e.simplex):
                (v,) = set(tau) - set(e.simplex)
                if halfspace_side(e.direction, height, K.point(v)) is Side.BELOW:
                    if not any(f in earlier for f in facets(tau)):
                        report.violations.append(
                            f"cofacet {tau} lies below {e.simplex} but no facet "
                            f"of it was swept earlier")
        earlier.add(e.simplex)
    # deduplicate while keeping first-seen order
    seen: set[str] = set()
    report.violations = [v for v in report.violations
                         if not (v in seen or seen.add(v))]
    return report
