"""Regular projection diagrams and mod-2 linking numbers.

Conventions
-----------
A projection direction is a nonzero integer vector ``d`` (rational input is
cleared to coprime integers).  The image plane is coordinatized by the frame
``(u . p, v . p)`` where ``u = d x a`` for the first coordinate axis ``a``
not parallel to ``d`` and ``v = d x u``; heights are measured by ``d . p``
and the strand with the larger height at a crossing is the *upper* strand.
All of this is exact integer arithmetic on the denominator-cleared scene.

A direction is *regular* when no segment projects to a point, distinct scene
points project to distinct image points, no point projects into another
segment, all crossings are transverse with distinct heights, and no two
crossings coincide (which also rules out three concurrent segments).
Directions failing any predicate are rejected, never perturbed.

``omega(d, a, b)`` is the parity of crossings where curve ``a`` runs over
curve ``b``; for disjoint closed curves it equals the linking number mod 2
and is symmetric in its arguments.

``crossing_change`` swaps over/under at one crossing *formally*: the result
is a valid diagram value but need not be realizable by the original scene.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .bipartite import DomainError, Edge, Square
from .geometry import EmbeddedGraph, Polyline, _ScaledScene

Owner = tuple  # ("edge", x, y) | ("curve", k)


class DegenerateProjectionError(RuntimeError):
    """The direction is not regular for the scene; names the offenders."""


class DegenerateSceneError(RuntimeError):
    """No regular direction was found within the attempt budget."""


@dataclass(frozen=True)
class ProjectionDirection:
    """A nonzero projection direction with exact components."""

    vector: tuple[int, int, int]

    def __post_init__(self) -> None:
        fracs = tuple(Fraction(c) for c in self.vector)
        if all(c == 0 for c in fracs):
            raise DomainError("projection direction must be nonzero")
        scale = 1
        for c in fracs:
            scale = scale * c.denominator // _gcd(scale, c.denominator)
        ints = [int(c * scale) for c in fracs]
        g = 0
        for c in ints:
            g = _gcd(g, abs(c))
        object.__setattr__(self, "vector", tuple(c // g for c in ints))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a else 1


class Crossing(NamedTuple):
    """One transverse double point: which strand segment passes over which,
    and the exact image-plane coordinates in the diagram's frame."""

    upper: str
    upper_seg: int
    lower: str
    lower_seg: int
    x: Fraction
    y: Fraction


class Strand(NamedTuple):
    """One projected polyline: a graph edge's route or an external curve."""

    sid: str
    owner: Owner
    points: tuple
    closed: bool


@dataclass(frozen=True)
class Diagram:
    """A regular projection of an embedded graph plus external closed curves."""

    scene: str
    direction: ProjectionDirection
    strands: tuple
    crossings: tuple
    _owners: dict = field(compare=False, repr=False, default_factory=dict)
    _owner_set: frozenset = field(compare=False, repr=False, default_factory=frozenset)
    _overs: dict = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        owners = {s.sid: s.owner for s in self.strands}
        object.__setattr__(self, "_owners", owners)
        object.__setattr__(self, "_owner_set", frozenset(owners.values()))
        object.__setattr__(self, "_overs", _over_counts(owners, self.crossings))

    def owner_of(self, sid: str) -> Owner:
        return self._owners[sid]


def _over_counts(owners: dict, crossings: Iterable[Crossing]) -> dict:
    counts: dict = {}
    for c in crossings:
        key = (owners[c.upper], owners[c.lower])
        counts[key] = counts.get(key, 0) + 1
    return counts


def _sid(owner: Owner) -> str:
    if owner[0] == "edge":
        return f"e:{owner[1]}-{owner[2]}"
    return f"c:{owner[1]}"


def _cross2(ax, ay, bx, by) -> int:
    return ax * by - ay * bx


def _orient(a, b, c) -> int:
    return _cross2(b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1])


def _dot2(ax, ay, bx, by) -> int:
    return ax * bx + ay * by


def project(
    e: EmbeddedGraph | None,
    extra: Sequence[Polyline],
    direction: ProjectionDirection,
    scene_id: str = "",
) -> Diagram:
    """Project the scene along ``direction`` and extract every crossing.

    Raises :class:`DegenerateProjectionError` if any regularity predicate
    fails, naming the offending strands.  The crossing list is complete for
    the scene (edge/edge crossings included) and sorted by (upper strand,
    segment index, image coordinates).
    """
    d = direction.vector
    u = _ivcross(d, (1, 0, 0))
    if u == (0, 0, 0):
        u = _ivcross(d, (0, 1, 0))
    v = _ivcross(d, u)

    scene = _ScaledScene(e, list(extra))
    raw = scene.strands()

    strands = []
    seg_table = []  # (sid, seg index, a2, b2, ha, hb, a3, b3)
    point_table = []  # (sid, 2d, 3d)
    for owner_raw, ipts, _orig, closed in raw:
        owner: Owner = (
            ("edge", owner_raw.x, owner_raw.y)
            if isinstance(owner_raw, Edge)
            else ("curve", owner_raw)
        )
        sid = _sid(owner)
        pts2 = tuple((_ivdot(u, p), _ivdot(v, p)) for p in ipts)
        hts = tuple(_ivdot(d, p) for p in ipts)
        strands.append(Strand(sid, owner, pts2, closed))
        idx = list(range(len(ipts) - 1))
        pairs = [(i, i + 1) for i in idx]
        if closed:
            pairs.append((len(ipts) - 1, 0))
        for k, (i, j) in enumerate(pairs):
            if pts2[i] == pts2[j]:
                raise DegenerateProjectionError(
                    f"segment {k} of {sid} projects to a point"
                )
            seg_table.append((sid, k, pts2[i], pts2[j], hts[i], hts[j], ipts[i], ipts[j]))
        for i, p2 in enumerate(pts2):
            point_table.append((sid, p2, ipts[i]))

    seen: dict = {}
    for sid, p2, p3 in point_table:
        prev = seen.setdefault(p2, p3)
        if prev != p3:
            raise DegenerateProjectionError(
                f"distinct scene points of {sid} and another strand project together"
            )

    for sid_p, p2, p3 in point_table:
        for sid_s, k, a2, b2, _ha, _hb, a3, b3 in seg_table:
            if p3 == a3 or p3 == b3:
                continue
            dx, dy = b2[0] - a2[0], b2[1] - a2[1]
            wx, wy = p2[0] - a2[0], p2[1] - a2[1]
            if _cross2(dx, dy, wx, wy) != 0:
                continue
            t = _dot2(wx, wy, dx, dy)
            if 0 <= t <= _dot2(dx, dy, dx, dy):
                raise DegenerateProjectionError(
                    f"a point of {sid_p} projects onto segment {k} of {sid_s}"
                )

    crossings: list[Crossing] = []
    points_seen: dict = {}
    n = len(seg_table)
    for i in range(n):
        sid_a, ka, a2, b2, ha, hb, a3, b3 = seg_table[i]
        for j in range(i + 1, n):
            sid_b, kb, c2, d2, hc, hd, c3, d3 = seg_table[j]
            if a3 in (c3, d3) or b3 in (c3, d3):
                continue  # shared scene point; no transverse crossing possible
            o1 = _orient(a2, b2, c2)
            o2 = _orient(a2, b2, d2)
            o3 = _orient(c2, d2, a2)
            o4 = _orient(c2, d2, b2)
            if o1 == 0 and o2 == 0:
                continue  # collinear projections: contacts were excluded above
            if not (((o1 > 0) != (o2 > 0)) and ((o3 > 0) != (o4 > 0))):
                continue
            if o1 == 0 or o2 == 0 or o3 == 0 or o4 == 0:
                raise DegenerateProjectionError(
                    f"non-transverse contact between {sid_a}#{ka} and {sid_b}#{kb}"
                )
            den = _cross2(b2[0] - a2[0], b2[1] - a2[1], d2[0] - c2[0], d2[1] - c2[1])
            t_num = _cross2(c2[0] - a2[0], c2[1] - a2[1], d2[0] - c2[0], d2[1] - c2[1])
            s_num = _cross2(c2[0] - a2[0], c2[1] - a2[1], b2[0] - a2[0], b2[1] - a2[1])
            t = Fraction(t_num, den)
            s = Fraction(s_num, den)
            wx = a2[0] + t * (b2[0] - a2[0])
            wy = a2[1] + t * (b2[1] - a2[1])
            h_a = ha + t * (hb - ha)
            h_b = hc + s * (hd - hc)
            if h_a == h_b:
                raise DegenerateProjectionError(
                    f"equal heights at a crossing of {sid_a}#{ka} and {sid_b}#{kb}"
                )
            key = (wx, wy)
            if key in points_seen:
                raise DegenerateProjectionError(
                    f"coincident crossings at {key} ({sid_a}#{ka}, {sid_b}#{kb}, "
                    f"{points_seen[key]})"
                )
            points_seen[key] = f"{sid_a}#{ka}/{sid_b}#{kb}"
            if h_a > h_b:
                crossings.append(Crossing(sid_a, ka, sid_b, kb, wx, wy))
            else:
                crossings.append(Crossing(sid_b, kb, sid_a, ka, wx, wy))

    crossings.sort(key=lambda c: (c.upper, c.upper_seg, c.x, c.y))
    return Diagram(scene_id, direction, tuple(strands), tuple(crossings))


def _ivcross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _ivdot(a, b) -> int:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def pick_generic_direction(
    e: EmbeddedGraph | None,
    extra_curves: Sequence[Polyline],
    seed: int,
    attempts: int = 128,
    bound: int = 64,
) -> ProjectionDirection:
    """A regular direction for the scene, found by seeded rejection sampling.

    Deterministic per seed.  Raises :class:`DegenerateSceneError` with the
    last failing predicate if the budget runs out, which should not happen
    for valid exact scenes.
    """
    rng = random.Random(seed)
    last: Exception | None = None
    for _ in range(attempts):
        vec = (
            rng.randint(-bound, bound),
            rng.randint(-bound, bound),
            rng.randint(-bound, bound),
        )
        if vec == (0, 0, 0):
            continue
        cand = ProjectionDirection(vec)
        try:
            project(e, extra_curves, cand)
        except DegenerateProjectionError as exc:
            last = exc
            continue
        return cand
    raise DegenerateSceneError(f"no regular direction in {attempts} attempts: {last}")


# ---------------------------------------------------------------------------
# Curve references and linking parity
# ---------------------------------------------------------------------------


def _owners_of(ref) -> tuple[list[Owner], frozenset]:
    if isinstance(ref, Square):
        return [("edge", ed.x, ed.y) for ed in ref.edges], ref.vertices
    if isinstance(ref, int):
        return [("curve", ref)], frozenset()
    raise DomainError(f"not a curve reference: {ref!r}")


def omega(d: Diagram, a, b) -> int:
    """The mod-2 linking number of two disjoint closed curves of the scene.

    ``a`` and ``b`` are :class:`Square` values (cycles through edge routes)
    or integer indices of external curves.  Returns the parity of crossings
    where ``a`` runs over ``b``; equal to ``omega(d, b, a)``.
    """
    owners_a, verts_a = _owners_of(a)
    owners_b, verts_b = _owners_of(b)
    if a == b:
        raise DomainError("omega is undefined for a curve against itself")
    if verts_a & verts_b:
        raise DomainError(f"curves {a} and {b} share a graph vertex")
    known = d._owner_set
    for o in owners_a + owners_b:
        if o not in known:
            raise DomainError(f"curve component {o} is not in the diagram")
    total = 0
    for oa in owners_a:
        for ob in owners_b:
            total += d._overs.get((oa, ob), 0)
    return total % 2


def linking_matrix(d: Diagram, curves: Sequence) -> tuple:
    """Symmetric 0/1 matrix of pairwise omega values, zero diagonal."""
    n = len(curves)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w = omega(d, curves[i], curves[j])
            m[i][j] = w
            m[j][i] = w
    return tuple(tuple(row) for row in m)


def crossing_change(d: Diagram, c: Crossing) -> Diagram:
    """The diagram with one crossing's over/under formally swapped."""
    if c not in d.crossings:
        raise DomainError("crossing is not part of the diagram")
    swapped = Crossing(c.lower, c.lower_seg, c.upper, c.upper_seg, c.x, c.y)
    rest = [x for x in d.crossings if x != c]
    rest.append(swapped)
    rest.sort(key=lambda k: (k.upper, k.upper_seg, k.x, k.y))
    return Diagram(d.scene, d.direction, d.strands, tuple(rest))


def crossings_between(d: Diagram, a, b) -> list[Crossing]:
    """Crossings where curve ``a`` passes over curve ``b``, in diagram order."""
    owners_a, _ = _owners_of(a)
    owners_b, _ = _owners_of(b)
    sa = {_sid(o) for o in owners_a}
    sb = {_sid(o) for o in owners_b}
    return [c for c in d.crossings if c.upper in sa and c.lower in sb]
