"""Complete bipartite graphs, squares, and subgraph selection.

Vertex labels are opaque strings.  Every ordering in this package (canonical
square form, enumeration order, tie-breaking) is positional with respect to
the part lists, never alphabetical on label text, so subgraphs can be
relabelled freely without perturbing any derived order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple


class DomainError(ValueError):
    """An argument lies outside an operation's domain."""


class Edge(NamedTuple):
    """An edge of a bipartite graph, endpoints in fixed part order."""

    x: str
    y: str

    def __str__(self) -> str:
        return f"{self.x}-{self.y}"


def adjacent(e: Edge, f: Edge) -> bool:
    """True iff two distinct edges share an endpoint."""
    return e != f and (e.x == f.x or e.y == f.y)


def mutually_nonadjacent(e1: Edge, e2: Edge, e3: Edge) -> bool:
    """True iff the three edges are distinct and pairwise share no vertex."""
    if len({e1, e2, e3}) != 3:
        return False
    return len({e1.x, e2.x, e3.x}) == 3 and len({e1.y, e2.y, e3.y}) == 3


class Square(NamedTuple):
    """A 4-cycle on two vertices per part, held as the canonical cycle
    ``(x1, y1, x2, y2)`` with x1 before x2 and y1 before y2 in part order."""

    x1: str
    y1: str
    x2: str
    y2: str

    @property
    def xs(self) -> tuple[str, str]:
        return (self.x1, self.x2)

    @property
    def ys(self) -> tuple[str, str]:
        return (self.y1, self.y2)

    @property
    def vertices(self) -> frozenset[str]:
        return frozenset(self)

    @property
    def edges(self) -> tuple[Edge, Edge, Edge, Edge]:
        return (
            Edge(self.x1, self.y1),
            Edge(self.x1, self.y2),
            Edge(self.x2, self.y1),
            Edge(self.x2, self.y2),
        )

    def cycle(self) -> tuple[str, str, str, str]:
        """Vertex order around the cycle: x1, y1, x2, y2."""
        return (self.x1, self.y1, self.x2, self.y2)

    def __str__(self) -> str:
        if all(len(v) == 1 for v in self):
            return "".join(self)
        return ",".join(self)


class SubgraphRef(NamedTuple):
    """The induced complete bipartite subgraph on the given vertex subsets.

    Part tuples are kept in ambient part order; build refs through
    :func:`subgraph` or :meth:`PartitionedGraph.subgraph` to guarantee it.
    """

    part_x: tuple[str, ...]
    part_y: tuple[str, ...]

    @property
    def vertices(self) -> frozenset[str]:
        return frozenset(self.part_x) | frozenset(self.part_y)

    def __str__(self) -> str:
        return f"{','.join(self.part_x)}:{','.join(self.part_y)}"


@dataclass(frozen=True)
class PartitionedGraph:
    """A complete bipartite graph on two ordered, disjoint label lists."""

    part_x: tuple[str, ...]
    part_y: tuple[str, ...]
    _xi: dict = field(init=False, repr=False, compare=False)
    _yi: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        px, py = tuple(self.part_x), tuple(self.part_y)
        object.__setattr__(self, "part_x", px)
        object.__setattr__(self, "part_y", py)
        if not px or not py:
            raise DomainError("both parts must be nonempty")
        if len(set(px)) != len(px) or len(set(py)) != len(py):
            raise DomainError("vertex labels must be unique within a part")
        if set(px) & set(py):
            raise DomainError("parts must be disjoint")
        object.__setattr__(self, "_xi", {v: i for i, v in enumerate(px)})
        object.__setattr__(self, "_yi", {v: i for i, v in enumerate(py)})

    @classmethod
    def complete(cls, nx: int, ny: int) -> "PartitionedGraph":
        """K_{nx,ny} with odd labels on one part and even on the other."""
        if nx < 1 or ny < 1:
            raise DomainError("part sizes must be at least 1")
        return cls(
            tuple(str(2 * i + 1) for i in range(nx)),
            tuple(str(2 * j + 2) for j in range(ny)),
        )

    def edges(self) -> list[Edge]:
        return [Edge(x, y) for x in self.part_x for y in self.part_y]

    def edge(self, a: str, b: str) -> Edge:
        """The edge on two labels, normalized to (x-part, y-part) order."""
        if a in self._xi and b in self._yi:
            return Edge(a, b)
        if b in self._xi and a in self._yi:
            return Edge(b, a)
        raise DomainError(f"no edge on labels {a!r}, {b!r}")

    def subgraph(self, xs: Iterable[str], ys: Iterable[str]) -> SubgraphRef:
        return subgraph(self, xs, ys)

    def full(self) -> SubgraphRef:
        return SubgraphRef(self.part_x, self.part_y)

    def x_index(self, v: str) -> int:
        return self._xi[v]

    def y_index(self, v: str) -> int:
        return self._yi[v]

    def square_key(self, s: Square) -> tuple[int, int, int, int]:
        """Positional sort key for deterministic square comparisons."""
        return (
            self._xi[s.x1],
            self._xi[s.x2],
            self._yi[s.y1],
            self._yi[s.y2],
        )


def _parts(owner: PartitionedGraph | SubgraphRef) -> tuple[tuple[str, ...], tuple[str, ...]]:
    return tuple(owner.part_x), tuple(owner.part_y)


def subgraph(
    owner: PartitionedGraph | SubgraphRef, xs: Iterable[str], ys: Iterable[str]
) -> SubgraphRef:
    """The induced subgraph ref, part tuples sorted into the owner's order."""
    px, py = _parts(owner)
    xs, ys = set(xs), set(ys)
    if not xs <= set(px) or not ys <= set(py):
        raise DomainError("subgraph vertices must lie in the owner's parts")
    if not xs or not ys:
        raise DomainError("subgraph parts must be nonempty")
    return SubgraphRef(
        tuple(v for v in px if v in xs),
        tuple(v for v in py if v in ys),
    )


def make_square(
    owner: PartitionedGraph | SubgraphRef, xs: Iterable[str], ys: Iterable[str]
) -> Square:
    """The canonical square on two x-labels and two y-labels of the owner."""
    px, py = _parts(owner)
    xs, ys = set(xs), set(ys)
    if len(xs) != 2 or len(ys) != 2:
        raise DomainError("a square needs exactly two vertices per part")
    if not xs <= set(px) or not ys <= set(py):
        raise DomainError("square vertices must lie in the owner's parts")
    (x1, x2) = sorted(xs, key=px.index)
    (y1, y2) = sorted(ys, key=py.index)
    return Square(x1, y1, x2, y2)


def square_from_cycle(
    owner: PartitionedGraph | SubgraphRef, cycle: Iterable[str]
) -> Square:
    """Canonicalize a 4-cycle given as any rotation/reflection of its vertices."""
    verts = list(cycle)
    if len(verts) != 4 or len(set(verts)) != 4:
        raise DomainError("a square cycle has four distinct vertices")
    px, py = _parts(owner)
    xs = [v for v in verts if v in px]
    ys = [v for v in verts if v in py]
    if len(xs) != 2 or len(ys) != 2:
        raise DomainError("a square has two vertices in each part")
    return make_square(owner, xs, ys)


def squares(g: PartitionedGraph | SubgraphRef) -> list[Square]:
    """All squares of the (sub)graph, canonical, in positional lexicographic
    order; C(|X|,2)*C(|Y|,2) of them, empty when a part has fewer than 2
    vertices."""
    px, py = _parts(g)
    out = []
    for x1, x2 in combinations(px, 2):
        for y1, y2 in combinations(py, 2):
            out.append(Square(x1, y1, x2, y2))
    return out


def squares_containing_edge(g: PartitionedGraph | SubgraphRef, e: Edge) -> list[Square]:
    """The squares of ``g`` through edge ``e``, in enumeration order."""
    px, py = _parts(g)
    if e.x not in px or e.y not in py:
        raise DomainError(f"edge {e} does not lie in the subgraph")
    return [s for s in squares(g) if e.x in s.xs and e.y in s.ys]


def disjoint(a: Square, b: Square) -> bool:
    """True iff the two squares share no vertex."""
    return not (a.vertices & b.vertices)


def alpha_opposite(
    containing: SubgraphRef, m: SubgraphRef, alpha: Square
) -> SubgraphRef:
    """The opposite partner of ``m`` across ``alpha`` inside a 4+4 subgraph.

    ``m`` is a 3+3 subgraph of the 4+4 ``containing`` and ``alpha`` a square
    of ``m``; the partner is the 3+3 subgraph on alpha's four vertices plus
    the two vertices of ``containing`` outside ``m``.  With ``alpha`` fixed
    the pairing is an involution.
    """
    if len(containing.part_x) != 4 or len(containing.part_y) != 4:
        raise DomainError("containing subgraph must be 4+4")
    if len(m.part_x) != 3 or len(m.part_y) != 3:
        raise DomainError("m must be 3+3")
    if not (set(m.part_x) <= set(containing.part_x) and set(m.part_y) <= set(containing.part_y)):
        raise DomainError("m must lie inside the containing subgraph")
    if not (set(alpha.xs) <= set(m.part_x) and set(alpha.ys) <= set(m.part_y)):
        raise DomainError("alpha must be a square of m")
    extra_x = set(containing.part_x) - set(m.part_x)
    extra_y = set(containing.part_y) - set(m.part_y)
    return subgraph(containing, set(alpha.xs) | extra_x, set(alpha.ys) | extra_y)


def opposite_pairs(
    quad: SubgraphRef, alpha: Square
) -> list[tuple[SubgraphRef, SubgraphRef]]:
    """The two opposite 3+3 pairs of a 4+4 subgraph sharing square ``alpha``."""
    if len(quad.part_x) != 4 or len(quad.part_y) != 4:
        raise DomainError("quad must be 4+4")
    sx = [v for v in quad.part_x if v not in alpha.xs]
    sy = [v for v in quad.part_y if v not in alpha.ys]
    if len(sx) != 2 or len(sy) != 2:
        raise DomainError("alpha must be a square of the quad")
    pairs = []
    for ya, yb in ((sy[0], sy[1]), (sy[1], sy[0])):
        first = subgraph(quad, set(alpha.xs) | {sx[0]}, set(alpha.ys) | {ya})
        second = subgraph(quad, set(alpha.xs) | {sx[1]}, set(alpha.ys) | {yb})
        pairs.append((first, second))
    return pairs


def complement_square(quad: SubgraphRef, s: Square) -> Square:
    """The unique square of a 4+4 subgraph vertex-disjoint from ``s``."""
    if len(quad.part_x) != 4 or len(quad.part_y) != 4:
        raise DomainError("quad must be 4+4")
    xs = [v for v in quad.part_x if v not in s.xs]
    ys = [v for v in quad.part_y if v not in s.ys]
    if len(xs) != 2 or len(ys) != 2:
        raise DomainError("square must lie in the quad")
    return make_square(quad, xs, ys)


def subrefs(
    g: PartitionedGraph | SubgraphRef,
    nx: int,
    ny: int,
    containing: Iterable[str] = (),
) -> Iterator[SubgraphRef]:
    """Enumerate nx+ny subgraph refs in positional lexicographic order,
    restricted to those containing the given vertices."""
    px, py = _parts(g)
    need_x = [v for v in containing if v in px]
    need_y = [v for v in containing if v in py]
    free_x = [v for v in px if v not in need_x]
    free_y = [v for v in py if v not in need_y]
    if len(need_x) > nx or len(need_y) > ny:
        return
    for cx in combinations(free_x, nx - len(need_x)):
        for cy in combinations(free_y, ny - len(need_y)):
            yield subgraph(g, set(need_x) | set(cx), set(need_y) | set(cy))
