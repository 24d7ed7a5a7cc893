"""Exact piecewise-linear embeddings of bipartite graphs in 3-space.

Coordinates are ``fractions.Fraction`` values.  Every geometric decision is
made after clearing denominators, on plain integers, so validation and
projection are bit-reproducible; floating point never enters a predicate.

An embedding assigns a point to every vertex and a polyline route to every
edge.  Routes may carry interior bend points, so arbitrary piecewise-linear
isotopy classes are representable, not only straight-line placements.
Validity means: distinct vertex points, simple routes, and routes meeting
only at shared graph vertices.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

from .bipartite import DomainError, Edge, PartitionedGraph, Square

COORD_NUMERATOR_BOUND = 1000
COORD_DENOMINATOR_BOUND = 8


class GenerationError(RuntimeError):
    """Random instance generation exhausted its resample budget."""


class Point3(NamedTuple):
    x: Fraction
    y: Fraction
    z: Fraction

    def __str__(self) -> str:
        return f"({self.x}, {self.y}, {self.z})"


def point(x, y, z) -> Point3:
    """Build an exact point, coercing ints/strings through Fraction."""
    return Point3(Fraction(x), Fraction(y), Fraction(z))


def _p_add(a: Point3, b: Point3) -> Point3:
    return Point3(a.x + b.x, a.y + b.y, a.z + b.z)


def _p_sub(a: Point3, b: Point3) -> Point3:
    return Point3(a.x - b.x, a.y - b.y, a.z - b.z)


def _p_scale(a: Point3, k: Fraction) -> Point3:
    return Point3(a.x * k, a.y * k, a.z * k)


def _p_cross(a: Point3, b: Point3) -> Point3:
    return Point3(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )


def _p_dot(a: Point3, b: Point3) -> Fraction:
    return a.x * b.x + a.y * b.y + a.z * b.z


@dataclass(frozen=True)
class Polyline:
    """An open or closed chain of exact points.

    Consecutive points must differ; a closed chain needs at least three
    points (its segments wrap around).
    """

    points: tuple[Point3, ...]
    closed: bool = False

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise DomainError("a polyline needs at least two points")
        if self.closed and len(pts) < 3:
            raise DomainError("a closed polyline needs at least three points")
        pairs = list(zip(pts, pts[1:]))
        if self.closed:
            pairs.append((pts[-1], pts[0]))
        for a, b in pairs:
            if a == b:
                raise DomainError("consecutive polyline points must differ")

    def segments(self) -> list[tuple[Point3, Point3]]:
        segs = list(zip(self.points, self.points[1:]))
        if self.closed:
            segs.append((self.points[-1], self.points[0]))
        return segs

    def reversed(self) -> "Polyline":
        return Polyline(tuple(reversed(self.points)), self.closed)


@dataclass(frozen=True)
class EmbeddedGraph:
    """A piecewise-linear embedding: vertex points plus per-edge routes."""

    graph: PartitionedGraph
    vertex_position: dict
    edge_route: dict

    def __post_init__(self) -> None:
        g = self.graph
        labels = set(g.part_x) | set(g.part_y)
        if set(self.vertex_position) != labels:
            raise DomainError("vertex_position must cover exactly the graph's vertices")
        expected = set(g.edges())
        if set(self.edge_route) != expected:
            raise DomainError("edge_route must cover exactly the graph's edges")
        for e, route in self.edge_route.items():
            if route.closed:
                raise DomainError(f"edge route {e} must be an open polyline")
            if route.points[0] != self.vertex_position[e.x]:
                raise DomainError(f"route of {e} must start at the x endpoint")
            if route.points[-1] != self.vertex_position[e.y]:
                raise DomainError(f"route of {e} must end at the y endpoint")

    def route(self, e: Edge) -> Polyline:
        return self.edge_route[e]

    def edges_in_order(self) -> list[Edge]:
        return self.graph.edges()


def embed(
    g: PartitionedGraph,
    positions: dict,
    bends: dict | None = None,
) -> EmbeddedGraph:
    """Assemble an embedding from vertex points and optional per-edge bends."""
    bends = bends or {}
    routes = {}
    for e in g.edges():
        middle = tuple(bends.get(e, ()))
        routes[e] = Polyline((positions[e.x],) + middle + (positions[e.y],))
    return EmbeddedGraph(g, dict(positions), routes)


# ---------------------------------------------------------------------------
# Exact integer cores.  Scene coordinates are multiplied by the least common
# denominator once, after which every test is pure integer arithmetic.
# ---------------------------------------------------------------------------

IVec = tuple[int, int, int]


def _iv_sub(a: IVec, b: IVec) -> IVec:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _iv_cross(a: IVec, b: IVec) -> IVec:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _iv_dot(a: IVec, b: IVec) -> int:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _iv_zero(a: IVec) -> bool:
    return a == (0, 0, 0)


def scene_scale(point_groups: Iterable[Iterable[Point3]]) -> int:
    """Least common multiple of all coordinate denominators in the scene."""
    scale = 1
    for group in point_groups:
        for p in group:
            for c in p:
                scale = scale * c.denominator // math.gcd(scale, c.denominator)
    return scale


def scale_point(p: Point3, scale: int) -> IVec:
    return (
        int(p.x * scale),
        int(p.y * scale),
        int(p.z * scale),
    )


def _seg3_hit(p: IVec, q: IVec, r: IVec, s: IVec):
    """Intersection of closed segments pq and rs (integer endpoints).

    Returns None, ``("point", t_num, t_den)`` with t the parameter along pq,
    or ``("overlap",)`` for a collinear intersection in more than one point.
    """
    d1 = _iv_sub(q, p)
    d2 = _iv_sub(s, r)
    rp = _iv_sub(r, p)
    n = _iv_cross(d1, d2)
    if not _iv_zero(n):
        if _iv_dot(rp, n) != 0:
            return None  # skew lines
        n2 = _iv_dot(n, n)
        tn = _iv_dot(_iv_cross(rp, d2), n)
        sn = _iv_dot(_iv_cross(rp, d1), n)
        if 0 <= tn <= n2 and 0 <= sn <= n2:
            return ("point", tn, n2)
        return None
    # parallel
    if not _iv_zero(_iv_cross(rp, d1)):
        return None
    # collinear: compare parameters along pq (scaled by |d1|^2 > 0)
    den = _iv_dot(d1, d1)
    a = _iv_dot(rp, d1)
    b = _iv_dot(_iv_sub(s, p), d1)
    lo, hi = min(a, b), max(a, b)
    lo = max(lo, 0)
    hi = min(hi, den)
    if lo > hi:
        return None
    if lo == hi:
        return ("point", lo, den)
    return ("overlap",)


def _hit_point(p: Point3, q: Point3, t_num: int, t_den: int) -> Point3:
    t = Fraction(t_num, t_den)
    return _p_add(p, _p_scale(_p_sub(q, p), t))


def _on_segment(w: IVec, a: IVec, b: IVec) -> bool:
    """True iff point w lies on the closed segment ab."""
    d = _iv_sub(b, a)
    v = _iv_sub(w, a)
    if not _iv_zero(_iv_cross(v, d)):
        return False
    proj = _iv_dot(v, d)
    return 0 <= proj <= _iv_dot(d, d)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    subjects: tuple
    point: Point3 | None = None

    def __str__(self) -> str:
        where = f" at {self.point}" if self.point is not None else ""
        subj = ", ".join(str(s) for s in self.subjects)
        return f"{self.kind}: {subj}{where}"


@dataclass(frozen=True)
class EmbeddingReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(str(v) for v in self.violations)


class _ScaledScene:
    """Shared integer view of an embedding plus any extra closed curves."""

    def __init__(self, e: EmbeddedGraph | None, curves: Sequence[Polyline] = ()):
        groups: list[Iterable[Point3]] = []
        if e is not None:
            groups.append(e.vertex_position.values())
            groups.extend(r.points for r in e.edge_route.values())
        groups.extend(c.points for c in curves)
        self.scale = scene_scale(groups)
        self.embedding = e
        self.curves = list(curves)
        self.vpos: dict[str, IVec] = {}
        self.routes: dict[Edge, list[IVec]] = {}
        if e is not None:
            self.vpos = {v: scale_point(p, self.scale) for v, p in e.vertex_position.items()}
            self.routes = {
                edge: [scale_point(p, self.scale) for p in r.points]
                for edge, r in e.edge_route.items()
            }
        self.curve_pts: list[list[IVec]] = [
            [scale_point(p, self.scale) for p in c.points] for c in curves
        ]

    def strands(self) -> list[tuple[object, list[IVec], list[Point3], bool]]:
        """(owner, scaled points, original points, closed) per strand."""
        out: list[tuple[object, list[IVec], list[Point3], bool]] = []
        if self.embedding is not None:
            for e in self.embedding.edges_in_order():
                out.append((e, self.routes[e], list(self.embedding.edge_route[e].points), False))
        for k, c in enumerate(self.curves):
            out.append((k, self.curve_pts[k], list(c.points), True))
        return out


def _strand_segments(pts: list, closed: bool) -> list[tuple[int, object, object]]:
    segs = [(i, pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
    if closed:
        segs.append((len(pts) - 1, pts[-1], pts[0]))
    return segs


def _adjacent_segments(i: int, j: int, count: int, closed: bool) -> bool:
    if abs(i - j) == 1:
        return True
    return closed and {i, j} == {0, count - 1}


def _self_intersections(owner, pts, orig, closed, out: list[Violation]) -> None:
    segs = _strand_segments(pts, closed)
    osegs = _strand_segments(orig, closed)
    n = len(segs)
    for a in range(n):
        ia, pa, qa = segs[a]
        for b in range(a + 1, n):
            ib, pb, qb = segs[b]
            hit = _seg3_hit(pa, qa, pb, qb)
            if hit is None:
                continue
            if _adjacent_segments(ia, ib, n, closed):
                if hit[0] == "overlap":
                    out.append(Violation("route-backtrack", (owner,)))
                continue  # single shared endpoint is the only possibility
            kind = "self-intersection"
            pt = None
            if hit[0] == "point":
                _, oa, ob_ = osegs[a][1], osegs[a][2], None
                pt = _hit_point(osegs[a][1], osegs[a][2], hit[1], hit[2])
            out.append(Violation(kind, (owner,), pt))


def _cross_intersections(
    owner_a, segs_a, osegs_a, owner_b, segs_b, osegs_b, allowed: set, out: list[Violation]
) -> None:
    for a in range(len(segs_a)):
        _, pa, qa = segs_a[a]
        for b in range(len(segs_b)):
            _, pb, qb = segs_b[b]
            hit = _seg3_hit(pa, qa, pb, qb)
            if hit is None:
                continue
            if hit[0] == "overlap":
                out.append(Violation("overlap", (owner_a, owner_b)))
                continue
            w = tuple(
                Fraction(pa[k]) + Fraction(hit[1], hit[2]) * (qa[k] - pa[k]) for k in range(3)
            )
            if w in allowed:
                continue
            pt = _hit_point(osegs_a[a][1], osegs_a[a][2], hit[1], hit[2])
            out.append(Violation("crossing", (owner_a, owner_b), pt))


def validate_embedding(e: EmbeddedGraph) -> EmbeddingReport:
    """Check every embedding invariant with exact arithmetic.

    Violations are data, not exceptions: distinct vertex points, simple
    routes, no route through a vertex it does not end at, and routes of
    different edges meeting only at a shared endpoint.
    """
    return validate_scene(e, ())


def validate_scene(e: EmbeddedGraph | None, curves: Sequence[Polyline]) -> EmbeddingReport:
    """Validate an embedding together with extra closed curves.

    Curves must be simple, closed, pairwise disjoint, and disjoint from the
    embedded graph entirely (unlike edges they may not even share vertices).
    """
    for k, c in enumerate(curves):
        if not c.closed:
            raise DomainError(f"extra curve {k} must be closed")
    scene = _ScaledScene(e, curves)
    out: list[Violation] = []

    if e is not None:
        labels = list(e.graph.part_x) + list(e.graph.part_y)
        for i, v in enumerate(labels):
            for w in labels[i + 1 :]:
                if scene.vpos[v] == scene.vpos[w]:
                    out.append(Violation("vertex-collision", (v, w), e.vertex_position[v]))

        # a route may meet a vertex point only as its own terminal
        for v in labels:
            pv = scene.vpos[v]
            for edge in e.edges_in_order():
                pts = scene.routes[edge]
                for i in range(len(pts) - 1):
                    if not _on_segment(pv, pts[i], pts[i + 1]):
                        continue
                    terminal = (v == edge.x and pv == pts[0] and i == 0) or (
                        v == edge.y and pv == pts[-1] and i == len(pts) - 2
                    )
                    if not terminal:
                        out.append(Violation("vertex-on-route", (v, edge), e.vertex_position[v]))

    strands = scene.strands()
    for owner, pts, orig, closed in strands:
        _self_intersections(owner, pts, orig, closed, out)

    for a in range(len(strands)):
        owner_a, pts_a, orig_a, closed_a = strands[a]
        segs_a = _strand_segments(pts_a, closed_a)
        osegs_a = _strand_segments(orig_a, closed_a)
        for b in range(a + 1, len(strands)):
            owner_b, pts_b, orig_b, closed_b = strands[b]
            allowed: set = set()
            if isinstance(owner_a, Edge) and isinstance(owner_b, Edge):
                shared = ({owner_a.x, owner_a.y} & {owner_b.x, owner_b.y})
                allowed = {tuple(Fraction(c) for c in scene.vpos[v]) for v in shared}
            segs_b = _strand_segments(pts_b, closed_b)
            osegs_b = _strand_segments(orig_b, closed_b)
            _cross_intersections(
                owner_a, segs_a, osegs_a, owner_b, segs_b, osegs_b, allowed, out
            )
    return EmbeddingReport(tuple(out))


# ---------------------------------------------------------------------------
# Instance generation
# ---------------------------------------------------------------------------


def _random_coord(rng: random.Random) -> Fraction:
    return Fraction(
        rng.randint(-COORD_NUMERATOR_BOUND, COORD_NUMERATOR_BOUND),
        rng.randint(1, COORD_DENOMINATOR_BOUND),
    )


def _random_point(rng: random.Random) -> Point3:
    return Point3(_random_coord(rng), _random_coord(rng), _random_coord(rng))


def random_embedding(
    g: PartitionedGraph, seed: int, bends_per_edge: int = 0, budget: int = 200
) -> EmbeddedGraph:
    """A valid random embedding, deterministic per seed.

    Coordinates are drawn from the bounded rational lattice (numerators up to
    1000, denominators up to 8) and the draw is repeated until validation
    passes.  Raises :class:`GenerationError` when the budget runs out.
    """
    if bends_per_edge < 0:
        raise DomainError("bends_per_edge must be nonnegative")
    rng = random.Random(seed)
    for _ in range(budget):
        positions = {v: _random_point(rng) for v in list(g.part_x) + list(g.part_y)}
        bends = {
            e: [_random_point(rng) for _ in range(bends_per_edge)] for e in g.edges()
        }
        try:
            emb = embed(g, positions, bends)
        except DomainError:
            continue
        if validate_embedding(emb).ok:
            return emb
    raise GenerationError(
        f"no valid embedding of {len(g.part_x)}+{len(g.part_y)} in {budget} draws "
        f"(lattice bound {COORD_NUMERATOR_BOUND}/{COORD_DENOMINATOR_BOUND})"
    )


def random_closed_curve(
    seed: int,
    embedding: EmbeddedGraph | None = None,
    curves: Sequence[Polyline] = (),
    min_points: int = 4,
    max_points: int = 8,
    budget: int = 400,
) -> Polyline:
    """A simple closed polyline disjoint from the given scene, per seed."""
    rng = random.Random(seed)
    for _ in range(budget):
        k = rng.randint(min_points, max_points)
        pts = tuple(_random_point(rng) for _ in range(k))
        try:
            cand = Polyline(pts, closed=True)
        except DomainError:
            continue
        if validate_scene(embedding, list(curves) + [cand]).ok:
            return cand
    raise GenerationError(f"no disjoint simple closed curve found in {budget} draws")


def _pierce_parallelogram(center: Point3, u: Point3, v: Point3, a: Point3, b: Point3) -> str:
    """How segment ab meets the diamond {center + s*u + t*v : |s|+|t| <= 1}.

    Returns "inside", "none", or "unsafe" (touching the spanning plane or the
    diamond boundary, where the answer would not be stable).
    """
    n = _p_cross(u, v)
    h1 = _p_dot(n, _p_sub(a, center))
    h2 = _p_dot(n, _p_sub(b, center))
    if h1 == 0 or h2 == 0:
        if h1 == 0 and h2 == 0:
            return "none" if _far_from_plane_region(center, u, v, a, b) else "unsafe"
        return "unsafe"
    if (h1 > 0) == (h2 > 0):
        return "none"
    t = h1 / (h1 - h2)
    w = _p_sub(_p_add(a, _p_scale(_p_sub(b, a), t)), center)
    n2 = _p_dot(n, n)
    s_co = _p_dot(_p_cross(w, v), n) / n2
    t_co = _p_dot(_p_cross(u, w), n) / n2
    reach = abs(s_co) + abs(t_co)
    if reach < 1:
        return "inside"
    if reach == 1:
        return "unsafe"
    return "none"


def _far_from_plane_region(center, u, v, a, b) -> bool:
    # both endpoints in the spanning plane: safe only if clearly outside
    n = _p_cross(u, v)
    n2 = _p_dot(n, n)
    for w0 in (a, b):
        w = _p_sub(w0, center)
        s_co = _p_dot(_p_cross(w, v), n) / n2
        t_co = _p_dot(_p_cross(u, w), n) / n2
        if abs(s_co) + abs(t_co) <= 2:
            return False
    return True


def loop_around_edge(
    e: EmbeddedGraph,
    edge: Edge,
    scale: Fraction = Fraction(1, 16),
    budget: int = 12,
) -> Polyline:
    """A small closed quadrilateral encircling one segment of an edge route.

    The loop spans a diamond centred on the segment midpoint, normal to the
    segment; it is shrunk until it is disjoint from the scene and the only
    scene segment piercing its span is the encircled one.  The result links
    the edge exactly once.
    """
    route = e.edge_route[edge]
    segs = route.segments()
    idx = len(segs) // 2
    p, q = segs[idx]
    mid = _p_scale(_p_add(p, q), Fraction(1, 2))
    t = _p_sub(q, p)
    zero = point(0, 0, 0)
    u = _p_cross(t, point(1, 0, 0))
    if u == zero:
        u = _p_cross(t, point(0, 1, 0))
    v = _p_cross(t, u)
    u = _p_scale(u, 1 / max(abs(c) for c in u))
    v = _p_scale(v, 1 / max(abs(c) for c in v))

    all_segments = []
    for ed in e.edges_in_order():
        for k, (a, b) in enumerate(e.edge_route[ed].segments()):
            all_segments.append((ed, k, a, b))

    s = scale
    for _ in range(budget):
        su, sv = _p_scale(u, s), _p_scale(v, s)
        corners = (_p_add(mid, su), _p_add(mid, sv), _p_sub(mid, su), _p_sub(mid, sv))
        loop = Polyline(corners, closed=True)
        ok = validate_scene(e, [loop]).ok
        if ok:
            for ed, k, a, b in all_segments:
                state = _pierce_parallelogram(mid, su, sv, a, b)
                if (ed, k) == (edge, idx):
                    if state != "inside":
                        ok = False
                        break
                elif state != "none":
                    ok = False
                    break
        if ok:
            return loop
        s = s / 4
    raise GenerationError(f"could not isolate a loop around {edge} in {budget} shrink steps")


def cycle_polyline(e: EmbeddedGraph, cycle) -> Polyline:
    """The closed polyline traced by a cycle of vertices through edge routes.

    Accepts a :class:`Square` or an even-length alternating vertex tuple;
    orientation follows the given order.
    """
    if isinstance(cycle, Square):
        verts = list(cycle.cycle())
    else:
        verts = list(cycle)
    if len(verts) < 4 or len(verts) % 2 != 0:
        raise DomainError("a cycle needs an even number (>= 4) of vertices")
    if len(set(verts)) != len(verts):
        raise DomainError("cycle vertices must be distinct")
    g = e.graph
    pts: list[Point3] = []
    for i, a in enumerate(verts):
        b = verts[(i + 1) % len(verts)]
        edge = g.edge(a, b)
        route = e.edge_route[edge].points
        if a == edge.x:
            step = route
        else:
            step = tuple(reversed(route))
        if i == 0:
            pts.extend(step)
        else:
            if pts[-1] != step[0]:
                raise DomainError("cycle edges do not chain")
            pts.extend(step[1:])
    if pts[-1] != pts[0]:
        raise DomainError("cycle does not close")
    return Polyline(tuple(pts[:-1]), closed=True)
