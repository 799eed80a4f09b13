"""Command-line surface: validate, sweep-order, reconstruct, gen, plot.

Exit codes: 0 success, 1 reconstruction mismatch under --check, 2 assumption
or general-position violation, 3 malformed input.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from random import Random
from typing import Optional

from .candidates import check_assumption_reconstruction
from .complexes import (PropertyX, SimplicialComplex, as_simplex,
                        check_structure, faces)
from .errors import (InvalidInput, NoPerpendicular, NotFound, SweeplexError,
                     Unsupported, VerificationFailed)
from .oracle import IndegreeOracle
from .reconstruct import reconstruct_all
from .sweep import SweepingOrder, order_next, order_vertices
from .candidates import candidate_ordering_circle, candidate_vertices, global_vertex_circle

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ASSUMPTION = 2
EXIT_BAD_INPUT = 3


# ---------------------------------------------------------------------------
# test-instance generator
# ---------------------------------------------------------------------------

def _grid_triangles(side: int, chosen: set[int]) -> list[tuple[int, ...]]:
    tris = []
    for gy in range(side - 1):
        for gx in range(side - 1):
            a = gy * side + gx
            b = a + 1
            c = a + side
            e = c + 1
            for tri in ((a, b, e), (a, e, c)):
                if all(v in chosen for v in tri):
                    tris.append(tri)
    return tris


def _grid_tetrahedra(side: int, chosen: set[int]) -> list[tuple[int, ...]]:
    import itertools
    tets = []
    idx = lambda x, y, z: (z * side + y) * side + x
    for gz in range(side - 1):
        for gy in range(side - 1):
            for gx in range(side - 1):
                corner = (gx, gy, gz)
                for perm in itertools.permutations(range(3)):
                    walk = [corner]
                    for axis in perm:
                        x, y, z = walk[-1]
                        step = [x, y, z]
                        step[axis] += 1
                        walk.append(tuple(step))
                    tet = tuple(idx(*p) for p in walk)
                    if all(v in chosen for v in tet):
                        tets.append(tet)
    return tets


def gen_complex(d: int, n: int, seed: int) -> SimplicialComplex:
    """Deterministic embedded test complex with n vertices in dimension d.

    Vertices are grid points perturbed inside disjoint cells; maximal simplices
    are a random subset of the grid triangulation plus a few leftover grid
    edges.  Regenerates until the embedded-structure and reconstruction
    validators pass.
    """
    if d not in (2, 3):
        raise InvalidInput("generator supports d in {2, 3}")
    if n < 1:
        raise InvalidInput("need at least one vertex")
    for attempt in range(100):
        rng = Random((seed, attempt))
        side = max(2, math.ceil(n ** (1.0 / d)))
        total = side ** d
        chosen = set(rng.sample(range(total), n)) if n <= total else None
        if chosen is None:
            side = math.ceil(n ** (1.0 / d)) + 1
            total = side ** d
            chosen = set(rng.sample(range(total), n))
        remap = {g: i for i, g in enumerate(sorted(chosen))}
        points = []
        for g in sorted(chosen):
            if d == 2:
                coords = (g % side, g // side)
            else:
                coords = (g % side, (g // side) % side, g // (side * side))
            points.append(tuple(Fraction(c) + Fraction(rng.randrange(-19, 20), 100)
                                for c in coords))
        if d == 2:
            cells = _grid_triangles(side, chosen)
        else:
            cells = _grid_tetrahedra(side, chosen)
        maximal = [tuple(remap[v] for v in cell)
                   for cell in cells if rng.random() < 0.55]
        covered = set()
        for m in maximal:
            covered |= faces(as_simplex(m))
        extra_edges = []
        for cell in cells:
            verts = sorted(remap[v] for v in cell)
            for i in range(len(verts)):
                for j in range(i + 1, len(verts)):
                    e = (verts[i], verts[j])
                    if e not in covered and rng.random() < 0.35:
                        extra_edges.append(e)
                        covered.add(e)
        K = SimplicialComplex.from_maximal(d, points, maximal + extra_edges)
        if not check_structure(K, PropertyX.EMBEDDED).ok:
            continue
        ok = all(check_assumption_reconstruction(K, i, PropertyX.EMBEDDED).ok
                 for i in range(K.dim))
        if ok:
            return K
    raise VerificationFailed(f"generator failed for d={d} n={n} seed={seed}")


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

def _project(p, d: int) -> tuple[float, float]:
    x, y = float(p[0]), float(p[1])
    if d >= 3:
        z = float(p[2])
        x += 0.35 * z
        y += 0.18 * z
    return x, y


def plot_svg(K: SimplicialComplex, order: Optional[SweepingOrder] = None) -> str:
    """Deterministic SVG rendering: vertices, edges, translucent triangles.

    With an order, each entry's simplex is labeled with its 1-based index and
    a direction arrow is drawn at its centroid.
    """
    if K.d > 3:
        raise Unsupported("plotting supports d <= 3 only")
    pts = [_project(p, K.d) for p in K.vertices]
    if pts:
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        minx, maxx = min(xs) - 1.0, max(xs) + 1.0
        miny, maxy = min(ys) - 1.0, max(ys) + 1.0
    else:
        minx, maxx, miny, maxy = 0.0, 10.0, 0.0, 10.0
    scale = 60.0
    width = (maxx - minx) * scale
    height = (maxy - miny) * scale

    def at(p) -> tuple[float, float]:
        return ((p[0] - minx) * scale, (maxy - p[1]) * scale)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">',
    ]
    for tri in K.simplices(2):
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in (at(pts[v]) for v in tri))
        lines.append(f'<polygon points="{coords}" fill="#7799dd" '
                     f'fill-opacity="0.3" stroke="none"/>')
    for edge in K.simplices(1):
        (x1, y1), (x2, y2) = at(pts[edge[0]]), at(pts[edge[1]])
        lines.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" '
                     f'y2="{y2:.2f}" stroke="#334466" stroke-width="1.5"/>')
    for v in range(len(pts)):
        x, y = at(pts[v])
        lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3.5" fill="#223355"/>')
        lines.append(f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="11" '
                     f'fill="#223355">v{v}</text>')
    if order is not None:
        for idx, entry in enumerate(order, start=1):
            proj = [pts[v] for v in entry.simplex]
            cx = sum(p[0] for p in proj) / len(proj)
            cy = sum(p[1] for p in proj) / len(proj)
            dx, dy = _project([float(c) for c in entry.direction] +
                              [0.0] * (3 - len(entry.direction)), K.d)
            norm = math.hypot(dx, dy) or 1.0
            x, y = at((cx, cy))
            tx, ty = at((cx + 0.6 * dx / norm, cy + 0.6 * dy / norm))
            lines.append(f'<line x1="{x:.2f}" y1="{y:.2f}" x2="{tx:.2f}" '
                         f'y2="{ty:.2f}" stroke="#cc3333" stroke-width="1.2"/>')
            lines.append(f'<circle cx="{tx:.2f}" cy="{ty:.2f}" r="2.0" fill="#cc3333"/>')
            lines.append(f'<text x="{x + 4:.2f}" y="{y + 12:.2f}" font-size="11" '
                         f'fill="#cc3333">{idx}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _load_complex(path: str) -> SimplicialComplex:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    return SimplicialComplex.loads(text)


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_validate(args) -> int:
    K = _load_complex(args.file)
    prop = PropertyX(args.property)
    report = check_structure(K, prop)
    problems = report.lines()
    for i in range(K.dim):
        problems += check_assumption_reconstruction(K, i, prop).lines()
    for line in problems:
        print(line)
    if problems:
        return EXIT_ASSUMPTION
    print(f"ok: {K!r} satisfies {prop.value} checks")
    return EXIT_OK


def _cmd_sweep_order(args) -> int:
    K = _load_complex(args.file)
    prop = PropertyX(args.property)
    rng = Random(args.seed)
    if args.dim < 0 or args.dim > K.dim:
        raise InvalidInput(f"complex has no {args.dim}-simplices to order")
    sk = K.skeleton(0)
    cand_map = {(v,): candidate_vertices(sk, (v,), prop)
                for v in range(len(K.vertices))}
    circle = global_vertex_circle(sk, prop, rng, cand_map=cand_map)
    so = order_vertices(sk, circle)
    for i in range(1, args.dim + 1):
        ski = K.skeleton(i)

        def provider(sigma, s, _K=ski):
            return candidate_ordering_circle(_K, sigma, s, prop, rng)

        so = order_next(ski, so, provider)
    _write(args.out, so.dumps())
    return EXIT_OK


def _cmd_reconstruct(args) -> int:
    hidden = _load_complex(args.file)
    prop = PropertyX(args.property)
    oracle = IndegreeOracle(hidden, record_trace=args.trace is not None)
    K0 = hidden.skeleton(0)
    rng = Random(args.seed)
    result, stats = reconstruct_all(oracle, K0, prop, rng)
    if args.trace is not None:
        _write(args.trace, oracle.dump_trace())
    if args.out is not None:
        _write(args.out, result.dumps())
    import json as _json
    _write(args.stats, _json.dumps(stats.to_json_obj(), indent=2) + "\n")
    if args.check and result != hidden:
        print("mismatch: reconstruction differs from input", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_gen(args) -> int:
    K = gen_complex(args.d, args.n, args.seed)
    _write(args.out, K.dumps())
    return EXIT_OK


def _cmd_plot(args) -> int:
    K = _load_complex(args.file)
    order = None
    if args.order is not None:
        import json as _json
        try:
            with open(args.order, "r", encoding="utf-8") as fh:
                obj = _json.load(fh)
        except (OSError, _json.JSONDecodeError) as exc:
            raise InvalidInput(f"cannot read order {args.order}: {exc}") from exc
        dim = len(obj[0]["simplex"]) - 1 if obj else 0
        order = SweepingOrder.from_json_obj(obj, K, dim)
    _write(args.out, plot_svg(K, order))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sweeplex",
        description="Sweeping orders and indegree-query reconstruction of "
                    "geometric simplicial complexes (exact arithmetic).")
    sub = parser.add_subparsers(dest="command", required=True)
    props = [p.value for p in PropertyX]

    p = sub.add_parser("validate", help="structure and general-position checks")
    p.add_argument("file")
    p.add_argument("--property", choices=props, default="embedded")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("sweep-order", help="compute a circle-reporting sweeping order")
    p.add_argument("file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--property", choices=props, default="embedded")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sweep_order)

    p = sub.add_parser("reconstruct",
                       help="rebuild the complex from its vertices via indegree queries")
    p.add_argument("file")
    p.add_argument("--property", choices=props, default="embedded")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", action="store_true")
    p.add_argument("--trace", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--stats", default=None)
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("gen", help="generate an embedded test complex")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("plot", help="render a complex (and optional order) as SVG")
    p.add_argument("file")
    p.add_argument("--order", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_plot)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (VerificationFailed, NoPerpendicular) as exc:
        print(f"assumption violation: {exc}", file=sys.stderr)
        return EXIT_ASSUMPTION
    except (InvalidInput, NotFound, Unsupported) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except SweeplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
