"""The linked-square trichotomy of a closed curve against a 3+3 subgraph.

For a disjoint simple closed curve and an embedded K_{3,3}, the set of
squares with odd linking parity is always one of exactly three shapes:

* ZERO -- no square is linked;
* FOUR -- four squares, all through one common edge;
* SIX  -- six squares, with three mutually nonadjacent edges each appearing
  in exactly two of them (every other edge appears in exactly three, and
  each linked square contains exactly one of the doubled triple).

``classify`` recomputes the parity of every square directly from the
diagram; the pure transition function ``predict_after_crossing_change``
states how the pattern changes when one crossing on an edge is flipped, and
is kept independent so the two can be checked against each other.

A set matching none of the three shapes cannot arise from a genuine scene;
``PatternViolationError`` therefore signals an implementation bug and is
surfaced as data by the reporting layers rather than crashing them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bipartite import (
    DomainError,
    Edge,
    Square,
    SubgraphRef,
    mutually_nonadjacent,
    squares,
    squares_containing_edge,
)
from .diagram import Diagram, omega

ZERO = "ZERO"
FOUR = "FOUR"
SIX = "SIX"


class PatternViolationError(Exception):
    """The observed linked-square set fits none of the lawful patterns."""

    def __init__(self, subgraph: SubgraphRef, observed, reason: str):
        self.subgraph = subgraph
        self.observed = frozenset(observed)
        self.reason = reason
        names = ", ".join(sorted(str(s) for s in self.observed))
        super().__init__(f"{reason} (subgraph {subgraph}; linked: {{{names}}})")


@dataclass(frozen=True)
class LinkingPattern:
    """One arm of the trichotomy, with its witness data."""

    kind: str
    subgraph: SubgraphRef
    squares: frozenset
    common_edge: Edge | None = None
    doubled_triple: tuple | None = None

    def __str__(self) -> str:
        if self.kind == FOUR:
            return f"FOUR common={self.common_edge}"
        if self.kind == SIX:
            return "SIX triple=" + ",".join(str(e) for e in self.doubled_triple)
        return "ZERO"


def _subgraph_edges(m: SubgraphRef) -> list[Edge]:
    return [Edge(x, y) for x in m.part_x for y in m.part_y]


def linked_squares(d: Diagram, gamma, m: SubgraphRef) -> set:
    """The squares of ``m`` with odd linking parity against ``gamma``."""
    if len(m.part_x) != 3 or len(m.part_y) != 3:
        raise DomainError("linking patterns are defined against 3+3 subgraphs")
    return {s for s in squares(m) if omega(d, gamma, s) == 1}


def classify_linked_set(m: SubgraphRef, linked) -> LinkingPattern:
    """Classify an explicit linked-square set of a 3+3 subgraph."""
    linked = frozenset(linked)
    if not linked:
        return LinkingPattern(ZERO, m, linked)
    if len(linked) == 4:
        common = set(next(iter(linked)).edges)
        for s in linked:
            common &= set(s.edges)
        if len(common) != 1:
            raise PatternViolationError(m, linked, "four squares without a unique common edge")
        e = common.pop()
        if linked != frozenset(squares_containing_edge(m, e)):
            raise PatternViolationError(
                m, linked, f"four squares are not exactly those through {e}"
            )
        return LinkingPattern(FOUR, m, linked, common_edge=e)
    if len(linked) == 6:
        counts = {e: 0 for e in _subgraph_edges(m)}
        for s in linked:
            for e in s.edges:
                counts[e] += 1
        doubled = tuple(e for e in counts if counts[e] == 2)
        if len(doubled) != 3 or not mutually_nonadjacent(*doubled):
            raise PatternViolationError(
                m, linked, "six squares without a doubled nonadjacent triple"
            )
        if any(counts[e] != 3 for e in counts if e not in doubled):
            raise PatternViolationError(
                m, linked, "six squares with an edge outside the 2/3 occurrence law"
            )
        for s in linked:
            if sum(1 for e in s.edges if e in doubled) != 1:
                raise PatternViolationError(
                    m, linked, f"square {s} does not contain exactly one doubled edge"
                )
        return LinkingPattern(SIX, m, linked, doubled_triple=doubled)
    raise PatternViolationError(m, linked, f"{len(linked)} linked squares")


def classify(d: Diagram, gamma, m: SubgraphRef) -> LinkingPattern:
    """Classify the linking pattern of a curve against a 3+3 subgraph."""
    return classify_linked_set(m, linked_squares(d, gamma, m))


def predict_after_crossing_change(p: LinkingPattern, f: Edge) -> LinkingPattern:
    """The pattern after one crossing on edge ``f`` is formally flipped.

    Flipping a crossing between the curve and ``f`` toggles the parity of
    exactly the squares through ``f``, so the new linked set is the
    symmetric difference with those four squares.  Applying the same edge
    twice is the identity.
    """
    if f.x not in p.subgraph.part_x or f.y not in p.subgraph.part_y:
        raise DomainError(f"edge {f} is not in the pattern's subgraph")
    flipped = frozenset(squares_containing_edge(p.subgraph, f))
    return classify_linked_set(p.subgraph, p.squares ^ flipped)
