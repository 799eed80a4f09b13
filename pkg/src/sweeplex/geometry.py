"""Exact rational geometry kernel.

All coordinates and directions are tuples of fractions.Fraction and nothing is
ever normalized: square roots never appear, and every predicate below is
invariant under positive rational rescaling of the vectors involved.

Angles on a circle of directions are carried by AngleKey, an exact encoding of
an angle in [0, 2*pi) as a pair proportional to (cos, sin).  Keys are compared
by quadrant sign pattern first and by the sign of a cross product within a
quadrant, so the total order over keys of one circle equals the order of the
true angles.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InvalidInput, NoPerpendicular

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# scalars and vectors
# ---------------------------------------------------------------------------

def parse_scalar(value) -> Fraction:
    """Exact scalar from an int, Fraction, or a decimal/rational string.

    Strings are read with decimal semantics: "1.5" -> 3/2, "-3/7" -> -3/7.
    Floats are accepted for convenience and converted through their decimal
    repr, never through their binary expansion.
    """
    if isinstance(value, bool):
        raise InvalidInput(f"not a scalar: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"cannot parse scalar {value!r}") from exc
    raise InvalidInput(f"cannot parse scalar {value!r}")


def as_vec(coords: Iterable) -> Vec:
    return tuple(parse_scalar(c) for c in coords)


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vscale(q: Fraction, a: Vec) -> Vec:
    return tuple(q * x for x in a)


def vdot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), ZERO)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def parallel_positive(a: Vec, b: Vec) -> bool:
    """True iff b is a strictly positive rational multiple of a."""
    if is_zero_vec(a) or is_zero_vec(b):
        return False
    ratio = None
    for x, y in zip(a, b, strict=True):
        if (x == 0) != (y == 0):
            return False
        if x != 0:
            r = y / x
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return ratio is not None and ratio > 0


# ---------------------------------------------------------------------------
# exact Gram-Schmidt and affine hulls
# ---------------------------------------------------------------------------

def orthogonalize(v: Vec, basis: Sequence[Vec]) -> Vec:
    """Residual of v against a pairwise-orthogonal (unnormalized) basis."""
    r = v
    for g in basis:
        gg = vdot(g, g)
        if gg == 0:
            continue
        r = vsub(r, vscale(vdot(r, g) / gg, g))
    return r


def orthogonal_span_basis(vectors: Iterable[Vec]) -> list[Vec]:
    """Orthogonal basis of span(vectors), dropping dependent inputs in order."""
    basis: list[Vec] = []
    for v in vectors:
        r = orthogonalize(v, basis)
        if not is_zero_vec(r):
            basis.append(r)
    return basis


def affine_dim(points: Sequence[Vec]) -> int:
    """Dimension of the affine hull of the given points."""
    if not points:
        raise InvalidInput("affine_dim of empty point set")
    d = len(points[0])
    if any(len(p) != d for p in points):
        raise InvalidInput("points of mixed ambient dimension")
    base = points[0]
    return len(orthogonal_span_basis(vsub(p, base) for p in points[1:]))


def complement_basis(simplex_points: Sequence[Vec], keep: Optional[Vec] = None) -> list[Vec]:
    """Orthogonal basis of the orthogonal complement of a simplex's direction space.

    Standard basis vectors are processed in index order with exact unnormalized
    Gram-Schmidt, skipping dependents, so the completion is deterministic.  If
    ``keep`` is given it must already be perpendicular to every edge vector and
    becomes the first basis vector.
    """
    if not simplex_points:
        raise InvalidInput("complement_basis of empty point set")
    d = len(simplex_points[0])
    base = simplex_points[0]
    span = orthogonal_span_basis(vsub(p, base) for p in simplex_points[1:])
    if len(span) == d:
        raise NoPerpendicular("simplex affinely spans the ambient space")
    comp: list[Vec] = []
    if keep is not None:
        if is_zero_vec(keep):
            raise InvalidInput("keep vector must be nonzero")
        if any(vdot(keep, g) != 0 for g in span):
            raise InvalidInput("keep vector is not perpendicular to the simplex")
        comp.append(keep)
    want = d - len(span)
    for i in range(d):
        if len(comp) == want:
            break
        e = tuple(ONE if j == i else ZERO for j in range(d))
        r = orthogonalize(e, span + comp)
        if not is_zero_vec(r):
            comp.append(r)
    return comp


# ---------------------------------------------------------------------------
# halfspace sides
# ---------------------------------------------------------------------------

class Side(enum.Enum):
    BELOW = "below"
    ON = "on"
    ABOVE = "above"


def halfspace_side(s: Vec, sigma_height: Fraction, v: Vec) -> Side:
    """Position of point v against the hyperplane <s, .> = sigma_height."""
    if is_zero_vec(s):
        raise InvalidInput("direction must be nonzero")
    h = vdot(s, v)
    if h < sigma_height:
        return Side.BELOW
    if h == sigma_height:
        return Side.ON
    return Side.ABOVE


# ---------------------------------------------------------------------------
# exact angles
# ---------------------------------------------------------------------------

class AngleKey:
    """Exact total order on angles in [0, 2*pi).

    A key (c, s) stands for the angle whose (cos, sin) is a positive multiple
    of (c, s) after the per-circle correction factors, which are positive and
    therefore never change a sign or a cross product.  (1, 0) is angle 0, and
    the angle is <= pi exactly when s >= 0.
    """

    __slots__ = ("c", "s")

    def __init__(self, c, s):
        c = parse_scalar(c)
        s = parse_scalar(s)
        if c == 0 and s == 0:
            raise InvalidInput("angle key (0, 0) is undefined")
        g = abs(c) + abs(s)  # canonical scale: invariant under positive rescaling
        self.c = c / g
        self.s = s / g

    # quadrant rank walks [0, 2pi) counterclockwise; axes get their own rank
    def _quadrant(self) -> int:
        c, s = self.c, self.s
        if s == 0:
            return 0 if c > 0 else 4
        if s > 0:
            if c > 0:
                return 1
            return 2 if c == 0 else 3
        if c < 0:
            return 5
        return 6 if c == 0 else 7

    def cross(self, other: "AngleKey") -> Fraction:
        return self.c * other.s - other.c * self.s

    def __eq__(self, other) -> bool:
        if not isinstance(other, AngleKey):
            return NotImplemented
        return self._quadrant() == other._quadrant() and self.cross(other) == 0

    def __lt__(self, other: "AngleKey") -> bool:
        qa, qb = self._quadrant(), other._quadrant()
        if qa != qb:
            return qa < qb
        return self.cross(other) > 0

    def __le__(self, other: "AngleKey") -> bool:
        return self == other or self < other

    def __gt__(self, other: "AngleKey") -> bool:
        return other < self

    def __ge__(self, other: "AngleKey") -> bool:
        return other <= self

    def __hash__(self) -> int:
        return hash((self.c, self.s))

    def __repr__(self) -> str:
        return f"AngleKey({self.c}, {self.s})"

    def antipode(self) -> "AngleKey":
        """Key of the angle rotated by pi."""
        return AngleKey(-self.c, -self.s)

    def quarter_turn(self) -> "AngleKey":
        """Key of the angle rotated by +pi/2."""
        return AngleKey(-self.s, self.c)

    @property
    def at_most_pi(self) -> bool:
        return self.s >= 0

    @property
    def is_zero(self) -> bool:
        return self.s == 0 and self.c > 0

    @property
    def is_pi(self) -> bool:
        return self.s == 0 and self.c < 0


ANGLE_ZERO = AngleKey(1, 0)
ANGLE_PI = AngleKey(-1, 0)


# ---------------------------------------------------------------------------
# direction circles
# ---------------------------------------------------------------------------

PERP = "perp"
CODIM1 = "codim1"


@dataclass(frozen=True)
class DirectionCircle:
    """Angularly parameterized circle of directions around a simplex.

    ``base`` is a point of the simplex's affine hull; gamma(0) is the direction
    of ``u`` and gamma(pi/2) the direction of ``w``.  In "perp" mode both u and
    w are perpendicular to the simplex, so every direction on the circle is; in
    "codim1" mode only u is (it spans the 1-dimensional perpendicular space)
    and normals collapse to the angles 0 and pi.
    """

    base: Vec
    u: Vec
    w: Vec
    mode: str = PERP

    def __post_init__(self):
        if self.mode not in (PERP, CODIM1):
            raise InvalidInput(f"unknown circle mode {self.mode!r}")
        if is_zero_vec(self.u) or is_zero_vec(self.w):
            raise InvalidInput("circle axes must be nonzero")
        if vdot(self.u, self.w) != 0:
            raise InvalidInput("circle axes must be orthogonal")
        if not len(self.base) == len(self.u) == len(self.w):
            raise InvalidInput("circle fields of mixed ambient dimension")

    def rebased(self, base: Vec) -> "DirectionCircle":
        return DirectionCircle(base, self.u, self.w, self.mode)

    def normal_of(self, p: Vec) -> tuple[AngleKey, Vec]:
        """Angle key and rational direction of the normal of point p.

        In perp mode the returned direction v satisfies <v, p - base> = 0
        exactly, and p lies strictly below the simplex for any direction at
        angle strictly between the returned one and its antipode.
        """
        rel = vsub(p, self.base)
        a = vdot(rel, self.u)
        if self.mode == CODIM1:
            if a >= 0:
                return ANGLE_ZERO, self.u
            return ANGLE_PI, vneg(self.u)
        b = vdot(rel, self.w)
        if a == 0 and b == 0:
            # p projects onto the circle center; by convention its normal is gamma(0)
            return ANGLE_ZERO, self.u
        key = AngleKey(-b, a)
        direction = vadd(vscale(-b, self.u), vscale(a, self.w))
        return key, direction

    def key_of_direction(self, v: Vec) -> AngleKey:
        """Angle key of a direction lying in the circle's plane."""
        p = vdot(v, self.u) * vdot(self.w, self.w)
        q = vdot(v, self.w) * vdot(self.u, self.u)
        if p == 0 and q == 0:
            raise InvalidInput("direction is orthogonal to the circle plane")
        return AngleKey(p, q)

    def direction_at(self, key: AngleKey) -> Vec:
        """Rational direction vector realizing the given angle key."""
        return vadd(vscale(key.c, self.u), vscale(key.s, self.w))


def gamma_normal(circle: DirectionCircle, p: Vec) -> tuple[AngleKey, Vec]:
    """Normal of p relative to the circle's simplex; see DirectionCircle.normal_of."""
    return circle.normal_of(p)


# ---------------------------------------------------------------------------
# exact linear programming (tiny two-phase simplex, Bland's rule)
# ---------------------------------------------------------------------------

def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tab[row][col]
    tab[row] = [x / piv for x in tab[row]]
    for r, line in enumerate(tab):
        if r != row and line[col] != 0:
            f = line[col]
            tab[r] = [x - f * y for x, y in zip(line, tab[row])]
    basis[row] = col


def _optimize(tab: list[list[Fraction]], basis: list[int], cost: list[Fraction],
              ncols: int, enterable: int) -> Fraction:
    """Maximize cost over the tableau in place; returns the optimum.

    Only the first ``enterable`` columns may enter the basis (phase 2 must not
    reintroduce artificials).
    """
    m = len(tab)
    # reduced costs: z row = cost - cost_B * tab
    while True:
        zrow = cost[:]
        for r in range(m):
            cb = cost[basis[r]]
            if cb != 0:
                zrow = [z - cb * t for z, t in zip(zrow, tab[r])]
        enter = -1
        for j in range(enterable):
            if zrow[j] > 0:  # improves a maximization
                enter = j
                break  # Bland: smallest index
        if enter < 0:
            value = ZERO
            for r in range(m):
                value += cost[basis[r]] * tab[r][ncols]
            return value
        leave = -1
        best = None
        for r in range(m):
            if tab[r][enter] > 0:
                ratio = tab[r][ncols] / tab[r][enter]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave < 0:
            raise InvalidInput("unbounded linear program")  # cannot happen on a polytope
        _pivot(tab, basis, leave, enter)


def lp_max(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction],
           objective: Sequence[Fraction]) -> Optional[Fraction]:
    """Maximize objective . x subject to rows . x = rhs, x >= 0.

    Returns None when infeasible.  Exact two-phase simplex with Bland's rule,
    so it terminates on every rational input.
    """
    m = len(rows)
    n = len(objective)
    tab: list[list[Fraction]] = []
    for i in range(m):
        line = [Fraction(x) for x in rows[i]]
        b = Fraction(rhs[i])
        if b < 0:
            line = [-x for x in line]
            b = -b
        line.extend(ONE if j == i else ZERO for j in range(m))  # artificials
        line.append(b)
        tab.append(line)
    total = n + m
    basis = [n + i for i in range(m)]
    phase1 = [ZERO] * total
    for j in range(n, total):
        phase1[j] = Fraction(-1)  # maximize -sum(artificials)
    if _optimize(tab, basis, phase1, total, total) != 0:
        return None
    # drive leftover artificials out of the basis where possible
    for r in range(m):
        if basis[r] >= n:
            for j in range(n):
                if tab[r][j] != 0:
                    _pivot(tab, basis, r, j)
                    break
    phase2 = [Fraction(objective[j]) if j < n else ZERO for j in range(total)]
    return _optimize(tab, basis, phase2, total, n)


# ---------------------------------------------------------------------------
# convex-hull intersection predicate
# ---------------------------------------------------------------------------

def _bbox_disjoint(a: Sequence[Vec], b: Sequence[Vec]) -> bool:
    d = len(a[0])
    for i in range(d):
        if max(p[i] for p in a) < min(p[i] for p in b):
            return True
        if max(p[i] for p in b) < min(p[i] for p in a):
            return True
    return False


def _point_in_hull(p: Vec, hull: Sequence[Vec]) -> bool:
    """Exact membership of p in conv(hull)."""
    if _bbox_disjoint([p], hull):
        return False
    n = len(hull)
    if n == 1:
        return p == hull[0]
    d = len(p)
    # affinely independent hulls have unique barycentric coordinates
    if affine_dim(hull) == n - 1:
        base = hull[0]
        basis = orthogonal_span_basis(vsub(q, base) for q in hull[1:])
        rel = vsub(p, base)
        if not is_zero_vec(orthogonalize(rel, basis)):
            return False  # p outside the affine hull
        # solve rel = sum mu_k (hull_k - base) by exact elimination
        rows = [[hull[k + 1][i] - base[i] for k in range(n - 1)] for i in range(d)]
        sol = _solve_unique(rows, list(rel))
        if sol is None:
            return False
        rest = sum(sol, ZERO)
        return rest <= 1 and all(x >= 0 for x in sol)
    # degenerate hull: fall back to exact feasibility
    rows = [[q[i] for q in hull] for i in range(d)]
    rows.append([ONE] * n)
    rhs = list(p) + [ONE]
    return lp_max(rows, rhs, [ZERO] * n) is not None


def _solve_unique(rows: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Solve an overdetermined full-column-rank system exactly; None if inconsistent."""
    m, n = len(rows), len(rows[0]) if rows else 0
    aug = [rows[i][:] + [rhs[i]] for i in range(m)]
    piv_rows = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pr is None:
            return None  # not full column rank; caller guarantees this never happens
        aug[r], aug[pr] = aug[pr], aug[r]
        piv = aug[r][c]
        aug[r] = [x / piv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_rows.append(r)
        r += 1
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    return [aug[i][n] for i in range(n)]


def injective_pair_test(a: Sequence[Vec], b: Sequence[Vec]) -> bool:
    """True iff conv(a) and conv(b) meet exactly in the hull of their shared points.

    Points are compared exactly, so with an injective vertex embedding shared
    coordinates identify shared vertex ids.  The pair fails when some common
    point admits convex combinations whose supports are not both inside the
    shared vertex set; that mass is found by one exact LP.
    """
    a = [as_vec(p) for p in a]
    b = [as_vec(p) for p in b]
    if not a or not b:
        raise InvalidInput("empty simplex")
    d = len(a[0])
    if any(len(p) != d for p in itertools.chain(a, b)):
        raise InvalidInput("simplices of mixed ambient dimension")
    aset, bset = set(a), set(b)
    if aset <= bset or bset <= aset:
        return True  # one is a face of the other
    if _bbox_disjoint(a, b):
        return True  # hulls disjoint and no shared vertex possible
    if len(a) == 1:
        return not _point_in_hull(a[0], b)
    if len(b) == 1:
        return not _point_in_hull(b[0], a)
    na, nb = len(a), len(b)
    rows = []
    for i in range(d):
        rows.append([p[i] for p in a] + [-q[i] for q in b])
    rows.append([ONE] * na + [ZERO] * nb)
    rows.append([ZERO] * na + [ONE] * nb)
    rhs = [ZERO] * d + [ONE, ONE]
    objective = [ZERO if p in bset else ONE for p in a] + \
                [ZERO if q in aset else ONE for q in b]
    best = lp_max(rows, rhs, objective)
    if best is None:
        return True  # hulls disjoint
    return best == 0
