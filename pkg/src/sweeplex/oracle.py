"""Indegree queries against a hidden ground-truth complex, with query accounting.

The oracle is the only channel through which reconstruction sees simplices of
dimension greater than zero.  A query Indeg(sigma, s) counts the cofacets of
sigma whose extra vertex is not strictly above sigma along s; perpendicularity
of s is enforced exactly and violations are treated as caller bugs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .complexes import Simplex, SimplicialComplex, as_simplex
from .errors import InvalidInput, NotFound, NotPerpendicular
from .geometry import Vec, as_vec, is_zero_vec, vdot, vsub


@dataclass(frozen=True)
class QueryRecord:
    sigma: Simplex
    s: Vec
    result: int

    def to_json_line(self) -> str:
        return json.dumps({
            "sigma": list(self.sigma),
            "s": [str(c) for c in self.s],
            "result": self.result,
        })


@dataclass
class QueryStats:
    total: int
    per_dim: dict[int, int]
    trace: Optional[list[QueryRecord]]

    def to_json_obj(self) -> dict:
        dims = range(max(self.per_dim) + 1) if self.per_dim else range(0)
        return {"total": self.total,
                "per_dim": [self.per_dim.get(i, 0) for i in dims]}


class IndegreeOracle:
    """Counts cofacets of a hidden complex in closed lower halfspaces."""

    def __init__(self, hidden: SimplicialComplex, record_trace: bool = False):
        self._hidden = hidden
        self._counts: dict[int, int] = {}
        self._total = 0
        self._trace: Optional[list[QueryRecord]] = [] if record_trace else None

    @property
    def ambient_dim(self) -> int:
        return self._hidden.d

    def vertex_count(self) -> int:
        return len(self._hidden.vertices)

    def vertex_point(self, v: int) -> Vec:
        return self._hidden.point(v)

    def indeg(self, sigma, s: Vec) -> int:
        """Number of cofacets of sigma with no vertex higher than sigma along s."""
        sigma = as_simplex(sigma)
        if sigma not in self._hidden:
            raise NotFound(f"simplex {sigma} not in hidden complex")
        s = as_vec(s)
        if is_zero_vec(s):
            raise InvalidInput("query direction must be nonzero")
        base = self._hidden.point(sigma[0])
        for v in sigma[1:]:
            if vdot(s, vsub(self._hidden.point(v), base)) != 0:
                raise NotPerpendicular(
                    f"direction {s} is not perpendicular to {sigma}")
        height = vdot(s, base)
        count = 0
        for tau in self._hidden.cofacets_of(sigma):
            (v,) = set(tau) - set(sigma)
            if vdot(s, self._hidden.point(v)) <= height:
                count += 1
        dim = len(sigma) - 1
        self._counts[dim] = self._counts.get(dim, 0) + 1
        self._total += 1
        if self._trace is not None:
            self._trace.append(QueryRecord(sigma, s, count))
        return count

    def query_stats(self) -> QueryStats:
        return QueryStats(self._total, dict(self._counts),
                          list(self._trace) if self._trace is not None else None)

    def dump_trace(self) -> str:
        if self._trace is None:
            raise InvalidInput("oracle was created without trace recording")
        return "".join(rec.to_json_line() + "\n" for rec in self._trace)
