"""Geometric simplicial complexes: face closure, cofacet lookup, validators.

A simplex is a strictly increasing tuple of vertex ids; a complex maps ids to
exact points and stores per-dimension simplex sets together with a cofacet
adjacency built at construction (cofacet lookup is the hottest read in every
algorithm downstream).
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InvalidInput, NotFound
from .geometry import Vec, affine_dim, as_vec, injective_pair_test

Simplex = tuple[int, ...]


def as_simplex(ids: Iterable[int]) -> Simplex:
    out = tuple(sorted(ids))
    if not out:
        raise InvalidInput("empty simplex")
    if len(set(out)) != len(out):
        raise InvalidInput(f"duplicate vertex ids in simplex {out}")
    if out[0] < 0:
        raise InvalidInput(f"negative vertex id in simplex {out}")
    return out


def simplex_dim(sigma: Simplex) -> int:
    return len(sigma) - 1


def facets(sigma: Simplex) -> tuple[Simplex, ...]:
    if len(sigma) == 1:
        return ()
    return tuple(sigma[:i] + sigma[i + 1:] for i in range(len(sigma)))


def faces(sigma: Simplex) -> set[Simplex]:
    """All nonempty faces of sigma, including sigma itself."""
    out: set[Simplex] = set()
    for k in range(1, len(sigma) + 1):
        out.update(itertools.combinations(sigma, k))
    return out


class SimplicialComplex:
    """Immutable geometric simplicial complex over an exact vertex table."""

    def __init__(self, d: int, vertices: Sequence[Vec], simplices: Iterable[Simplex]):
        pts = [as_vec(p) for p in vertices]
        if d < 2:
            # ambient dimensions below 2 are lifted by appending zero coordinates
            pad = 2 - d
            pts = [p + (Fraction(0),) * pad for p in pts]
            d = 2
        if any(len(p) != d for p in pts):
            raise InvalidInput("vertex coordinates of wrong dimension")
        if len(set(pts)) != len(pts):
            raise InvalidInput("vertex map is not injective")
        self.d = d
        self.vertices: tuple[Vec, ...] = tuple(pts)
        by_dim: dict[int, set[Simplex]] = {0: {(v,) for v in range(len(pts))}}
        for raw in simplices:
            sigma = as_simplex(raw)
            if sigma[-1] >= len(pts):
                raise InvalidInput(f"simplex {sigma} references unknown vertex")
            by_dim.setdefault(simplex_dim(sigma), set()).add(sigma)
        for k in sorted(by_dim, reverse=True):
            if k == 0:
                continue
            for sigma in by_dim[k]:
                for f in facets(sigma):
                    if f not in by_dim.get(k - 1, ()):
                        raise InvalidInput(f"complex is not face-closed at {f}")
        self._by_dim: dict[int, tuple[Simplex, ...]] = {
            k: tuple(sorted(v)) for k, v in by_dim.items()
        }
        self._members: set[Simplex] = set().union(*by_dim.values())
        cof: dict[Simplex, list[Simplex]] = {s: [] for s in self._members}
        for k in sorted(self._by_dim):
            if k == 0:
                continue
            for sigma in self._by_dim[k]:
                for f in facets(sigma):
                    cof[f].append(sigma)
        self._cofacets = {s: tuple(sorted(v)) for s, v in cof.items()}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_maximal(cls, d: int, vertices: Sequence[Vec],
                     maximal: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Complex holding exactly the vertices plus all faces of the given simplices."""
        closed: set[Simplex] = set()
        for raw in maximal:
            closed |= faces(as_simplex(raw))
        return cls(d, vertices, closed)

    def with_added(self, simplices: Iterable[Simplex]) -> "SimplicialComplex":
        """New complex with the given simplices added (facets must exist)."""
        current = set(self._members)
        current.update(as_simplex(s) for s in simplices)
        return SimplicialComplex(self.d, self.vertices, current)

    def skeleton(self, i: int) -> "SimplicialComplex":
        keep = [s for k, group in self._by_dim.items() if k <= i for s in group]
        return SimplicialComplex(self.d, self.vertices, keep)

    # -- reads -------------------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._by_dim)

    def n(self, i: int) -> int:
        return len(self._by_dim.get(i, ()))

    @property
    def size(self) -> int:
        return len(self._members)

    def simplices(self, i: int) -> tuple[Simplex, ...]:
        return self._by_dim.get(i, ())

    def all_simplices(self) -> Iterable[Simplex]:
        for k in sorted(self._by_dim):
            yield from self._by_dim[k]

    def __contains__(self, sigma: Simplex) -> bool:
        return tuple(sigma) in self._members

    def point(self, v: int) -> Vec:
        return self.vertices[v]

    def points_of(self, sigma: Simplex) -> list[Vec]:
        return [self.vertices[v] for v in sigma]

    def height_of(self, s: Vec, sigma: Simplex) -> Fraction:
        """s-coordinate of sigma (requires s perpendicular to sigma)."""
        return sum(a * b for a, b in zip(s, self.vertices[sigma[0]]))

    def cofacets_of(self, sigma) -> tuple[Simplex, ...]:
        sigma = tuple(sigma)
        if sigma not in self._members:
            raise NotFound(f"simplex {sigma} not in complex")
        return self._cofacets[sigma]

    def maximal_simplices(self) -> list[Simplex]:
        out = [s for s in self.all_simplices() if not self._cofacets[s]]
        return sorted(out, key=lambda s: (len(s), s))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (self.d == other.d and self.vertices == other.vertices
                and self._by_dim == other._by_dim)

    def __repr__(self) -> str:
        counts = ", ".join(f"n{k}={len(v)}" for k, v in sorted(self._by_dim.items()))
        return f"SimplicialComplex(d={self.d}, {counts})"

    # -- JSON interchange ---------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "dimension": self.d,
            "vertices": [[str(c) for c in p] for p in self.vertices],
            "maximal_simplices": [list(s) for s in self.maximal_simplices()],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SimplicialComplex":
        try:
            d = int(obj["dimension"])
            vertices = [as_vec(p) for p in obj["vertices"]]
            maximal = [as_simplex(s) for s in obj["maximal_simplices"]]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed complex object: {exc}") from exc
        return cls.from_maximal(d, vertices, maximal)

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "SimplicialComplex":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"not valid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise InvalidInput("complex JSON must be an object")
        return cls.from_json_obj(obj)


class PropertyX(enum.Enum):
    """Structural promise about the (hidden) complex, ordered by restrictiveness."""

    FACETS_ONLY = "facets-only"
    LOCALLY_INJECTIVE = "locally-injective"
    EMBEDDED = "embedded"


@dataclass
class StructureReport:
    """Violation lists from check_structure; empty lists mean the check passed."""

    spanning_simplices: list[Simplex] = field(default_factory=list)
    bad_pairs: list[tuple[Simplex, Simplex]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.spanning_simplices and not self.bad_pairs

    def lines(self) -> list[str]:
        out = [f"simplex {s} affinely spans the ambient space"
               for s in self.spanning_simplices]
        out += [f"simplices {a} and {b} are not an injective pair"
                for a, b in self.bad_pairs]
        return out


def check_structure(K: SimplicialComplex,
                    prop: PropertyX = PropertyX.EMBEDDED) -> StructureReport:
    """Audit a complex for perpendicular-existence and injective-pair violations.

    Pairs are checked between all simplices for EMBEDDED, only between
    common-face-sharing pairs for LOCALLY_INJECTIVE, and not at all for
    FACETS_ONLY.  Violations are data, not errors.
    """
    report = StructureReport()
    for sigma in K.all_simplices():
        if len(sigma) > 1 and affine_dim(K.points_of(sigma)) == K.d:
            report.spanning_simplices.append(sigma)
    if prop is PropertyX.FACETS_ONLY:
        return report
    shared_only = prop is PropertyX.LOCALLY_INJECTIVE
    members = [s for s in K.all_simplices() if len(s) > 1]
    members += [s for s in K.all_simplices() if len(s) == 1]
    for a, b in itertools.combinations(members, 2):
        if len(a) == 1 and len(b) == 1:
            continue  # distinct points always form an injective pair
        sa, sb = set(a), set(b)
        if sa <= sb or sb <= sa:
            continue  # face/coface pairs are injective by definition
        if shared_only and not (sa & sb):
            continue
        if not injective_pair_test(K.points_of(a), K.points_of(b)):
            report.bad_pairs.append((a, b))
    report.spanning_simplices.sort(key=lambda s: (len(s), s))
    report.bad_pairs.sort(key=lambda p: (len(p[0]), p[0], len(p[1]), p[1]))
    return report
