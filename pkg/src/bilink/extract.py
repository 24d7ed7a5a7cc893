"""Certified extraction of non-split n-component links of squares.

All linking arithmetic runs over one regular diagram of the full embedded
graph.  A certificate's components are pairwise vertex-disjoint squares,
and non-splitness is certified combinatorially: the graph on components
with an edge wherever the mod-2 linking number is 1 must be connected (an
embedded sphere separating the components would force even linking across
the split, so connectivity suffices and is finitely checkable).

Extraction is inductive.  A 2-component link is found inside a 4+4 subgraph
(one always exists; every edge even lies inside one, which the edge-pinned
variant uses).  Each later round removes the certificate's *designated*
component, forms the 5+5 *arena* on the freed vertices plus that component,
and finds two disjoint squares in the arena that reconnect the link: either
both link the *anchor* (a surviving component that linked the designated
one), or they link each other and one links the anchor.

The guided search dispatches on the linking patterns of the anchor against
the arena's 3+3 subgraphs.  Trace case labels:

* ``base``          seed 2-link inside a 4+4 subgraph.
* ``1a``            no six-pattern anywhere; an opposite 3+3 pair is linked
                    on nonadjacent common edges, and the pair of disjoint
                    linked squares is read off directly.
* ``1a-cascade``    the adjacent-common-edge escalation: the search moves
                    through one or two auxiliary 4+4 subgraphs that swap in
                    the arena's spare vertices, ending in a direct pair or
                    an all-nine resolution.
* ``1b``            an opposite pair shares its common edge; the anchor then
                    links all nine squares of the 4+4 subgraph on that edge
                    and a 2-link whose first square carries the edge exists.
* ``2a``            a six-pattern exists but no opposite pair is doubly six;
                    the doubled triple of the six side pins a disjoint
                    linked pair (the one triple placement that cannot be
                    resolved this way is provably absent here and raises).
* ``2b``            an opposite pair is doubly six; three of the four
                    squares on each side's leftover matching edge are
                    linked, so a disjoint cross pair exists.
* ``exhaustive`` / ``exhaustive-fallback``  direct scan over disjoint
                    square pairs of the arena (the search method, or the
                    explicit fallback when the guided dispatch dead-ends).

Searches marked "guaranteed" by the underlying theory raise
:class:`TheoremViolationError` when they come up empty; that is always an
implementation bug, never an input condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .bipartite import (
    DomainError,
    Edge,
    PartitionedGraph,
    Square,
    SubgraphRef,
    adjacent,
    alpha_opposite,
    complement_square,
    make_square,
    opposite_pairs,
    squares,
    squares_containing_edge,
    subgraph,
    subrefs,
)
from .classify import FOUR, SIX, ZERO, LinkingPattern, classify
from .diagram import Diagram, linking_matrix, omega, pick_generic_direction, project
from .geometry import EmbeddedGraph, validate_embedding

VERIFY_SEED = 104729


class TheoremViolationError(RuntimeError):
    """A search that is guaranteed to succeed found nothing: a bug."""

    def __init__(self, message: str, trace=()):
        self.trace = tuple(trace)
        super().__init__(message)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def _ref_json(r: SubgraphRef | None):
    if r is None:
        return None
    return {"x": list(r.part_x), "y": list(r.part_y)}


def _square_json(s: Square | None):
    return None if s is None else list(s.cycle())


@dataclass(frozen=True)
class TraceStep:
    """One extraction round: where it worked, what it saw, what it chose."""

    case: str
    pair: tuple
    ambient: SubgraphRef | None = None
    link_support: SubgraphRef | None = None
    arena: SubgraphRef | None = None
    quad: SubgraphRef | None = None
    cascade: tuple = ()
    anchor: Square | None = None
    pivot: Square | None = None
    common_edge: Edge | None = None
    possibility: int | None = None
    pattern_counts: tuple = ()
    evidence: tuple = ()

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "pair": [_square_json(s) for s in self.pair],
            "ambient": _ref_json(self.ambient),
            "link_support": _ref_json(self.link_support),
            "arena": _ref_json(self.arena),
            "quad": _ref_json(self.quad),
            "cascade": [_ref_json(r) for r in self.cascade],
            "anchor": _square_json(self.anchor),
            "pivot": _square_json(self.pivot),
            "common_edge": str(self.common_edge) if self.common_edge else None,
            "possibility": self.possibility,
            "pattern_counts": dict(self.pattern_counts) if self.pattern_counts else None,
            "evidence": [
                {
                    "subgraph": _ref_json(m),
                    "kind": p.kind,
                    "common": str(p.common_edge) if p.common_edge else None,
                    "triple": [str(e) for e in p.doubled_triple] if p.doubled_triple else None,
                }
                for (m, p) in self.evidence
            ],
        }


@dataclass(frozen=True)
class LinkCertificate:
    """n disjoint squares, their mod-2 linking matrix, a connectivity
    witness, the designated component, and the extraction trace."""

    graph: PartitionedGraph
    components: tuple
    designated: int
    matrix: tuple
    witness_tree: tuple
    trace: tuple
    projection_seed: int
    method: str

    @property
    def n(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class CertificateReport:
    """Per-check verification outcome; failures are data, not exceptions."""

    entries: tuple  # (name, ok, detail)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def summary(self) -> str:
        return "; ".join(f"{name}: {'pass' if ok else 'FAIL ' + detail}" for name, ok, detail in self.entries)


def _spanning_tree(matrix) -> tuple | None:
    """BFS spanning tree of the linking graph, or None if disconnected."""
    n = len(matrix)
    if n == 0:
        return None
    seen = {0}
    frontier = [0]
    edges = []
    while frontier:
        nxt = []
        for i in frontier:
            for j in range(n):
                if j not in seen and matrix[i][j] == 1:
                    seen.add(j)
                    edges.append((min(i, j), max(i, j)))
                    nxt.append(j)
        frontier = nxt
    if len(seen) != n:
        return None
    return tuple(edges)


def _connected_without(matrix, skip: int) -> bool:
    n = len(matrix)
    rest = [i for i in range(n) if i != skip]
    if len(rest) <= 1:
        return True
    seen = {rest[0]}
    frontier = [rest[0]]
    while frontier:
        nxt = []
        for i in frontier:
            for j in rest:
                if j not in seen and matrix[i][j] == 1:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return len(seen) == len(rest)


def _certify(
    d: Diagram,
    g: PartitionedGraph,
    components: tuple,
    designated: int,
    trace: tuple,
    projection_seed: int,
    method: str,
) -> LinkCertificate:
    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            if components[i].vertices & components[j].vertices:
                raise TheoremViolationError(
                    f"components {components[i]} and {components[j]} overlap", trace
                )
    matrix = linking_matrix(d, components)
    tree = _spanning_tree(matrix)
    if tree is None:
        raise TheoremViolationError("linking graph of the new components is disconnected", trace)
    if not _connected_without(matrix, designated):
        raise TheoremViolationError(
            "removing the designated component disconnects the linking graph", trace
        )
    return LinkCertificate(
        g, components, designated, matrix, tree, trace, projection_seed, method
    )


# ---------------------------------------------------------------------------
# Pair searches
# ---------------------------------------------------------------------------


class _OmegaContext:
    """Linking queries used by the dispatch; tests may substitute a
    synthetic implementation with the same three methods."""

    def __init__(self, d: Diagram, anchor):
        self.d = d
        self.anchor = anchor

    def sq(self, s: Square) -> int:
        return omega(self.d, self.anchor, s)

    def pair(self, a: Square, b: Square) -> int:
        return omega(self.d, a, b)

    def classify(self, m: SubgraphRef) -> LinkingPattern:
        return classify(self.d, self.anchor, m)


@dataclass
class _Resolution:
    pair: tuple
    case: str
    quad: SubgraphRef | None = None
    cascade: tuple = ()
    common_edge: Edge | None = None
    possibility: int | None = None
    pattern_counts: tuple = ()
    evidence: tuple = ()


def _find_2link(pair_omega: Callable, quad: SubgraphRef, required_edge: Edge | None):
    """First disjoint square pair of a 4+4 subgraph with odd linking.

    Scans the (at most 18, or 9 when edge-pinned) disjoint pairs in
    enumeration order; existence is guaranteed for every valid embedding.
    """
    sqs = squares(quad)
    pos = {s: i for i, s in enumerate(sqs)}
    if required_edge is not None:
        cands = [
            (a, complement_square(quad, a))
            for a in squares_containing_edge(quad, required_edge)
        ]
    else:
        cands = []
        for a in sqs:
            b = complement_square(quad, a)
            if pos[a] < pos[b]:
                cands.append((a, b))
    for a, b in cands:
        if pair_omega(a, b) == 1:
            return a, b
    raise TheoremViolationError(
        f"no linked disjoint square pair in {quad}"
        + (f" through {required_edge}" if required_edge else "")
    )


def find_2link_k44(d: Diagram, g0: SubgraphRef, required_edge: Edge | None = None):
    """A 2-component link of squares inside a 4+4 subgraph.

    Returns the first (in enumeration order) disjoint square pair with odd
    mod-2 linking; when ``required_edge`` is given the first square contains
    it.  Raises :class:`TheoremViolationError` if none exists, which for a
    valid embedding indicates a bug upstream.
    """
    if len(g0.part_x) != 4 or len(g0.part_y) != 4:
        raise DomainError("find_2link_k44 needs a 4+4 subgraph")
    return _find_2link(lambda a, b: omega(d, a, b), g0, required_edge)


def _count_kinds(pats: dict) -> tuple:
    counts = {ZERO: 0, FOUR: 0, SIX: 0}
    for p in pats.values():
        counts[p.kind] += 1
    return tuple(counts.items())


def _leftover(m: SubgraphRef, alpha: Square) -> tuple[str, str]:
    """The one vertex per part of a 3+3 subgraph outside a square of it."""
    lx = [v for v in m.part_x if v not in alpha.xs]
    ly = [v for v in m.part_y if v not in alpha.ys]
    return lx[0], ly[0]


def _resolve_all_nine(ctx, quad, e, case, evidence, counts, cascade=()):
    """All nine squares of the 4+4 subgraph on ``e`` must be linked; take a
    2-link whose first component carries ``e``."""
    for s in squares_containing_edge(quad, e):
        if ctx.sq(s) != 1:
            raise TheoremViolationError(
                f"square {s} on forced common edge {e} of {quad} is unlinked"
            )
    a, b = _find_2link(ctx.pair, quad, required_edge=e)
    return _Resolution(
        (a, b), case, quad=quad, cascade=cascade, common_edge=e,
        pattern_counts=counts, evidence=tuple(evidence),
    )


def _guided_pair(ctx, arena: SubgraphRef, pivot: Square) -> _Resolution:
    order = list(subrefs(arena, 3, 3))
    pats = {m: ctx.classify(m) for m in order}
    counts = _count_kinds(pats)
    six_refs = [m for m in order if pats[m].kind == SIX]
    if six_refs:
        return _case_six(ctx, arena, six_refs[0], pats, counts)
    return _case_four(ctx, arena, pivot, pats, counts)


def _case_four(ctx, arena, pivot, pats, counts) -> _Resolution:
    """No six-pattern anywhere in the arena (cases 1a / 1a-cascade / 1b)."""
    quad = next(subrefs(arena, 4, 4, containing=pivot.vertices))
    spare_x = [v for v in arena.part_x if v not in quad.part_x][0]
    spare_y = [v for v in arena.part_y if v not in quad.part_y][0]

    for alpha in squares(quad):
        for m, nn in opposite_pairs(quad, alpha):
            pm, pn = pats[m], pats[nn]
            if pm.kind == FOUR and pn.kind == FOUR and pm.common_edge == pn.common_edge:
                return _resolve_all_nine(
                    ctx, quad, pm.common_edge, "1b", [(m, pm), (nn, pn)], counts
                )

    witness = None
    for m in subrefs(quad, 3, 3):
        pm = pats[m]
        if pm.kind != FOUR:
            continue
        e = pm.common_edge
        for alpha in (s for s in squares(m) if s in pm.squares):
            nn = alpha_opposite(quad, m, alpha)
            pn = pats[nn]
            if pn.kind != FOUR:
                raise TheoremViolationError(
                    f"opposite of a linked square is {pn.kind} under a four-only arena"
                )
            f = pn.common_edge
            if f == e:
                continue  # an equal-common pair would have resolved above
            if not adjacent(e, f):
                mx, my = _leftover(m, alpha)
                ox, oy = _leftover(nn, alpha)
                first = make_square(arena, {e.x, mx}, {e.y, my})
                second = make_square(arena, {f.x, ox}, {f.y, oy})
                return _Resolution(
                    (first, second), "1a", quad=quad, pattern_counts=counts,
                    evidence=((m, pm), (nn, pn)),
                )
            if witness is None:
                witness = (m, pm, alpha, nn, pn)
    if witness is None:
        raise TheoremViolationError(f"no linked four-pattern pair found in {quad}")
    return _cascade(ctx, arena, quad, spare_x, spare_y, witness, pats, counts)


def _cascade(ctx, arena, quad, spare_x, spare_y, witness, pats, counts) -> _Resolution:
    """Adjacent common edges: escalate through auxiliary 4+4 subgraphs.

    The construction is symmetric in the two parts; ``v`` is the endpoint
    the two common edges share and ``u``/``w`` their other endpoints.  The
    first auxiliary subgraph trades ``u`` for the arena's spare vertex of
    the same part; if that also lands on an adjacent common edge (which can
    only be the edge through ``v`` and ``w``), the second and final
    auxiliary subgraph drops ``w`` instead, where an equal-common pair is
    guaranteed.  Anything off this script raises.
    """
    m, pm, alpha, nn, pn = witness
    e, f = pm.common_edge, pn.common_edge
    evidence = [(m, pm), (nn, pn)]

    if e.x == f.x:
        v, u, w = e.x, e.y, f.y
        third = [y for y in m.part_y if y not in (u, w)][0]
        outer = [y for y in quad.part_y if y not in m.part_y][0]
        x2 = [x for x in alpha.xs if x != v][0]
        quad_b = subgraph(arena, quad.part_x, (set(quad.part_y) - {u}) | {spare_y})
        m_b = subgraph(arena, m.part_x, {w, third, outer})
        alpha_b = make_square(arena, {v, x2}, {w, outer})
        e_b = Edge(v, outer)
        f_same = Edge(v, w)
    elif e.y == f.y:
        v, u, w = e.y, e.x, f.x
        third = [x for x in m.part_x if x not in (u, w)][0]
        outer = [x for x in quad.part_x if x not in m.part_x][0]
        y2 = [y for y in alpha.ys if y != v][0]
        quad_b = subgraph(arena, (set(quad.part_x) - {u}) | {spare_x}, quad.part_y)
        m_b = subgraph(arena, {w, third, outer}, m.part_y)
        alpha_b = make_square(arena, {w, outer}, {v, y2})
        e_b = Edge(outer, v)
        f_same = Edge(w, v)
    else:  # pragma: no cover - witness edges are adjacent by construction
        raise TheoremViolationError("cascade witness edges are not adjacent")

    p_b = pats[m_b]
    if p_b.kind != FOUR or p_b.common_edge != e_b:
        raise TheoremViolationError(
            f"auxiliary subgraph {m_b} is {p_b} rather than four on {e_b}"
        )
    n_b = alpha_opposite(quad_b, m_b, alpha_b)
    pn_b = pats[n_b]
    evidence += [(m_b, p_b), (n_b, pn_b)]
    if pn_b.kind != FOUR:
        raise TheoremViolationError(f"auxiliary opposite {n_b} is {pn_b.kind}")
    f_b = pn_b.common_edge

    if f_b == e_b:
        return _resolve_all_nine(
            ctx, quad_b, e_b, "1a-cascade", evidence, counts, cascade=(quad_b,)
        )
    if not adjacent(f_b, e_b):
        mx, my = _leftover(m_b, alpha_b)
        ox, oy = _leftover(n_b, alpha_b)
        first = make_square(arena, {e_b.x, mx}, {e_b.y, my})
        second = make_square(arena, {f_b.x, ox}, {f_b.y, oy})
        return _Resolution(
            (first, second), "1a-cascade", quad=quad, cascade=(quad_b,),
            pattern_counts=counts, evidence=tuple(evidence),
        )
    if f_b != f_same:
        raise TheoremViolationError(
            f"escalation met adjacent common edge {f_b}, outside its guaranteed form {f_same}"
        )

    # final stage: drop w across the whole arena part
    if e.x == f.x:
        quad_c = subgraph(arena, quad.part_x, set(arena.part_y) - {w})
        m_c = subgraph(arena, m.part_x, {u, third, outer})
        alpha_c = make_square(arena, {v, x2}, {u, third})
        e_c = Edge(v, third)
    else:
        quad_c = subgraph(arena, set(arena.part_x) - {w}, quad.part_y)
        m_c = subgraph(arena, {u, third, outer}, m.part_y)
        alpha_c = make_square(arena, {u, third}, {v, y2})
        e_c = Edge(third, v)
    p_c = pats[m_c]
    n_c = alpha_opposite(quad_c, m_c, alpha_c)
    pn_c = pats[n_c]
    evidence += [(m_c, p_c), (n_c, pn_c)]
    if not (
        p_c.kind == FOUR
        and pn_c.kind == FOUR
        and p_c.common_edge == e_c
        and pn_c.common_edge == e_c
    ):
        raise TheoremViolationError(
            f"final escalation stage is not equal-common on {e_c}: {p_c} / {pn_c}"
        )
    return _resolve_all_nine(
        ctx, quad_c, e_c, "1a-cascade", evidence, counts, cascade=(quad_b, quad_c)
    )


def _case_six(ctx, arena, six_ref, pats, counts) -> _Resolution:
    """Some 3+3 subgraph shows a six-pattern (cases 2a / 2b)."""
    quad = next(subrefs(arena, 4, 4, containing=six_ref.vertices))

    for alpha in squares(quad):
        if ctx.sq(alpha) != 1:
            continue
        for mr, nr in opposite_pairs(quad, alpha):
            if pats[mr].kind == SIX and pats[nr].kind == SIX:
                return _resolve_doubly_six(
                    ctx, arena, quad, alpha, mr, pats[mr], nr, pats[nr], counts
                )

    p_six = pats[six_ref]
    alpha = next(s for s in squares(six_ref) if s in p_six.squares)
    partner = alpha_opposite(quad, six_ref, alpha)
    pp = pats[partner]
    if pp.kind != FOUR:
        raise TheoremViolationError(
            f"opposite {partner} of a six-pattern through a linked square is {pp.kind}"
        )
    e = pp.common_edge
    in_alpha = [t for t in p_six.doubled_triple if t in alpha.edges]
    if len(in_alpha) != 1:
        raise TheoremViolationError(f"doubled triple meets {alpha} in {len(in_alpha)} edges")
    t = in_alpha[0]
    if t == e:
        poss = 4
    elif not adjacent(t, e):
        poss = 1
    elif t.y == e.y:
        poss = 2
    else:
        poss = 3
    if poss == 4:
        raise TheoremViolationError(
            "six-pattern landed on the contradictory triple placement"
        )
    px, py = _leftover(partner, alpha)
    sx, sy = _leftover(six_ref, alpha)
    ax = [x for x in alpha.xs if x != e.x][0]
    ay = [y for y in alpha.ys if y != e.y][0]
    first = make_square(arena, {e.x, px}, {e.y, py})
    second = make_square(arena, {ax, sx}, {ay, sy})
    if ctx.sq(second) != 1:
        raise TheoremViolationError(f"predicted linked square {second} is unlinked")
    return _Resolution(
        (first, second), "2a", quad=quad, common_edge=e, possibility=poss,
        pattern_counts=counts, evidence=((six_ref, p_six), (partner, pp)),
    )


def _resolve_doubly_six(ctx, arena, quad, alpha, mr, pm, nr, pn, counts) -> _Resolution:
    mx, my = _leftover(mr, alpha)
    nx, ny = _leftover(nr, alpha)
    far_m = Edge(mx, my)
    far_n = Edge(nx, ny)
    fam_m = [s for s in squares_containing_edge(mr, far_m) if s in pm.squares]
    fam_n = [s for s in squares_containing_edge(nr, far_n) if s in pn.squares]
    if len(fam_m) != 3 or len(fam_n) != 3:
        raise TheoremViolationError(
            f"expected three linked squares on {far_m}/{far_n}, "
            f"got {len(fam_m)}/{len(fam_n)}"
        )
    for a in fam_m:
        for b in fam_n:
            if a.vertices & b.vertices:
                continue
            return _Resolution(
                (a, b), "2b", quad=quad, pattern_counts=counts,
                evidence=((mr, pm), (nr, pn)),
            )
    raise TheoremViolationError("no disjoint cross pair among the linked edge families")


def _search_pair(ctx, arena: SubgraphRef) -> _Resolution:
    """Direct scan of disjoint square pairs for the reconnection condition."""
    sqs = squares(arena)
    for i in range(len(sqs)):
        a = sqs[i]
        oa = None
        for j in range(i + 1, len(sqs)):
            b = sqs[j]
            if a.vertices & b.vertices:
                continue
            if oa is None:
                oa = ctx.sq(a)
            ob = ctx.sq(b)
            if oa == 1 and ob == 1:
                return _Resolution((a, b), "exhaustive")
            if (oa == 1 or ob == 1) and ctx.pair(a, b) == 1:
                pair = (a, b) if oa == 1 else (b, a)
                return _Resolution(pair, "exhaustive")
    raise TheoremViolationError(f"no qualifying disjoint square pair in {arena}")


# ---------------------------------------------------------------------------
# Inductive extraction
# ---------------------------------------------------------------------------


def extend_link(
    d: Diagram,
    e: EmbeddedGraph,
    ambient: SubgraphRef,
    cert: LinkCertificate,
    method: str = "proof",
    allow_fallback: bool = False,
) -> LinkCertificate:
    """Grow a certificate by one component inside the ambient subgraph.

    Removes the designated component, forms the 5+5 arena on the ambient
    vertices not used by the rest of the link plus the removed component,
    and adds a reconnecting disjoint pair found by the requested method.
    The new designated component is the second square of the pair.
    """
    if method not in ("proof", "search"):
        raise DomainError(f"unknown method {method!r}")
    g = e.graph
    comps = cert.components
    pivot = comps[cert.designated]
    anchor = None
    for c in comps:
        if c != pivot and omega(d, c, pivot) == 1:
            anchor = c
            break
    if anchor is None:
        raise DomainError("no component links the designated one")
    support_x = {v for c in comps for v in c.xs}
    support_y = {v for c in comps for v in c.ys}
    arena = subgraph(
        g,
        (set(ambient.part_x) - support_x) | set(pivot.xs),
        (set(ambient.part_y) - support_y) | set(pivot.ys),
    )
    if len(arena.part_x) != 5 or len(arena.part_y) != 5:
        raise DomainError(
            f"ambient {ambient} leaves a {len(arena.part_x)}+{len(arena.part_y)} arena"
        )
    ctx = _OmegaContext(d, anchor)
    if method == "search":
        res = _search_pair(ctx, arena)
    else:
        try:
            res = _guided_pair(ctx, arena, pivot)
        except TheoremViolationError:
            if not allow_fallback:
                raise
            res = _search_pair(ctx, arena)
            res.case = "exhaustive-fallback"
    step = TraceStep(
        case=res.case,
        pair=res.pair,
        ambient=ambient,
        link_support=subgraph(g, support_x, support_y),
        arena=arena,
        quad=res.quad,
        cascade=res.cascade,
        anchor=anchor,
        pivot=pivot,
        common_edge=res.common_edge,
        possibility=res.possibility,
        pattern_counts=res.pattern_counts,
        evidence=res.evidence,
    )
    new_comps = tuple(c for c in comps if c != pivot) + tuple(res.pair)
    return _certify(
        d, g, new_comps, len(new_comps) - 1, cert.trace + (step,),
        cert.projection_seed, cert.method,
    )


def _vertex_orders(g: PartitionedGraph, target: Edge | None):
    xs = list(g.part_x)
    ys = list(g.part_y)
    if target is not None:
        xs = [target.x] + [v for v in xs if v != target.x]
        ys = [target.y] + [v for v in ys if v != target.y]
    return xs, ys


def _run_extraction(
    e: EmbeddedGraph,
    n: int,
    method: str,
    seed: int,
    allow_fallback: bool,
    target: Edge | None,
    validate: bool,
) -> LinkCertificate:
    g = e.graph
    if n < 2:
        raise DomainError("a link certificate needs at least 2 components")
    if len(g.part_x) != 2 * n + 1 or len(g.part_y) != 2 * n + 1:
        raise DomainError(
            f"graph is {len(g.part_x)}+{len(g.part_y)}, not {2*n+1}+{2*n+1} as n={n} needs"
        )
    if method not in ("proof", "search"):
        raise DomainError(f"unknown method {method!r}")
    if target is not None:
        target = g.edge(target.x, target.y)
    if validate:
        report = validate_embedding(e)
        if not report.ok:
            raise DomainError(f"embedding is invalid: {report.summary()}")
    direction = pick_generic_direction(e, [], seed)
    d = project(e, [], direction)

    xs, ys = _vertex_orders(g, target)
    quad = subgraph(g, xs[:4], ys[:4])
    a, b = find_2link_k44(d, quad, required_edge=target)
    if target is not None:
        designated = 1  # keep the edge carrier for good
    else:
        designated = 0 if g.square_key(a) <= g.square_key(b) else 1
    step = TraceStep(case="base", pair=(a, b), quad=quad, common_edge=target)
    cert = _certify(d, g, (a, b), designated, (step,), seed, method)

    for k in range(3, n + 1):
        ambient = subgraph(g, xs[: 2 * k + 1], ys[: 2 * k + 1])
        cert = extend_link(d, e, ambient, cert, method, allow_fallback)
    return cert


def extract_nlink(
    e: EmbeddedGraph,
    n: int,
    method: str = "proof",
    seed: int = 0,
    allow_fallback: bool = False,
    validate: bool = True,
) -> LinkCertificate:
    """A non-split n-component link certificate from an embedding of
    K_{2n+1,2n+1}.

    Starts from a 2-link inside a 4+4 subgraph and extends one component at
    a time through nested 5+5, 7+7, ... subgraphs.  Deterministic per seed.
    """
    return _run_extraction(e, n, method, seed, allow_fallback, None, validate)


def edge_nlink(
    e: EmbeddedGraph,
    target: Edge,
    n: int,
    method: str = "proof",
    seed: int = 0,
    allow_fallback: bool = False,
    validate: bool = True,
) -> LinkCertificate:
    """A certificate whose components include a square through ``target``.

    The seed 2-link is taken inside a 4+4 subgraph containing the edge with
    the carrier square first; the carrier is never designated afterwards, so
    every later round keeps it and the final link contains the edge.
    """
    return _run_extraction(e, n, method, seed, allow_fallback, target, validate)


def verify_certificate(
    e: EmbeddedGraph, cert: LinkCertificate, seed: int = VERIFY_SEED
) -> CertificateReport:
    """Re-check a certificate under a freshly chosen projection direction.

    Recomputes disjointness, the linking matrix (which is projection
    independent, so any regular direction must reproduce it), the witness
    tree, and the designated-removal connectivity.  Failures are report
    entries, never exceptions.
    """
    entries = []
    g = e.graph
    comps = cert.components

    ok = cert.graph.part_x == g.part_x and cert.graph.part_y == g.part_y
    entries.append(("graph-match", ok, "" if ok else "certificate graph differs"))

    bad = []
    for s in comps:
        if not (
            set(s.xs) <= set(g.part_x)
            and set(s.ys) <= set(g.part_y)
            and len(set(s.vertices)) == 4
        ):
            bad.append(str(s))
    entries.append(("well-formed", not bad, ",".join(bad)))
    ok_n = len(comps) >= 2 and 0 <= cert.designated < len(comps)
    entries.append(("component-count", ok_n, f"{len(comps)} components"))

    overlap = []
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            if comps[i].vertices & comps[j].vertices:
                overlap.append(f"{comps[i]}/{comps[j]}")
    entries.append(("disjointness", not overlap, ",".join(overlap)))

    m = cert.matrix
    form_ok = (
        len(m) == len(comps)
        and all(len(row) == len(comps) for row in m)
        and all(m[i][i] == 0 for i in range(len(m)))
        and all(m[i][j] == m[j][i] and m[i][j] in (0, 1) for i in range(len(m)) for j in range(len(m)))
    )
    entries.append(("matrix-form", form_ok, "" if form_ok else "matrix is malformed"))

    fresh = None
    if not bad and not overlap and form_ok:
        try:
            direction = pick_generic_direction(e, [], seed)
            d = project(e, [], direction)
            fresh = linking_matrix(d, comps)
        except Exception as exc:  # degenerate scene or bad components
            entries.append(("matrix-recompute", False, str(exc)))
        else:
            ok = fresh == m
            entries.append(("matrix-recompute", ok, "" if ok else "matrix mismatch under fresh direction"))
    else:
        entries.append(("matrix-recompute", False, "skipped: earlier structural failure"))

    basis = fresh if fresh is not None else m
    tree = cert.witness_tree
    tree_ok = form_ok and len(tree) == len(comps) - 1
    if tree_ok:
        for i, j in tree:
            if not (0 <= i < len(comps) and 0 <= j < len(comps) and basis[i][j] == 1):
                tree_ok = False
                break
    if tree_ok:
        seen = {0}
        changed = True
        while changed:
            changed = False
            for i, j in tree:
                if (i in seen) != (j in seen):
                    seen.update((i, j))
                    changed = True
        tree_ok = len(seen) == len(comps)
    entries.append(("witness-tree", tree_ok, "" if tree_ok else "witness tree does not span"))

    rm_ok = form_ok and ok_n and _connected_without(basis, cert.designated)
    entries.append(
        ("designated-removal", rm_ok, "" if rm_ok else "removal disconnects the linking graph")
    )
    return CertificateReport(tuple(entries))
