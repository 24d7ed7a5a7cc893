"""Exact text formats for embeddings, curves, and certificates.

Everything is JSON with rational coordinates encoded as canonical strings
("p" or "p/q"), so files are human-diffable and round-trip bit-exactly;
no floating point ever reaches a file.  Serialization is byte-deterministic:
fixed key order, fixed separators, one trailing newline.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .bipartite import (
    DomainError,
    Edge,
    PartitionedGraph,
    make_square,
    squares,
    squares_containing_edge,
)
from .classify import FOUR, SIX, ZERO, LinkingPattern
from .extract import LinkCertificate, TraceStep
from .geometry import EmbeddedGraph, Point3, Polyline, embed

EMBEDDING_FORMAT = "bilink-embedding/1"
CURVE_FORMAT = "bilink-curve/1"
CERTIFICATE_FORMAT = "bilink-certificate/1"


def _rat(value: Fraction) -> str:
    return str(value)


def _point_json(p: Point3) -> list[str]:
    return [_rat(p.x), _rat(p.y), _rat(p.z)]


def _parse_point(triple) -> Point3:
    if len(triple) != 3:
        raise DomainError(f"a point needs 3 coordinates, got {triple!r}")
    return Point3(*(Fraction(c) for c in triple))


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def _write(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _read(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


# -- embeddings -------------------------------------------------------------


def embedding_doc(e: EmbeddedGraph) -> dict:
    g = e.graph
    return {
        "format": EMBEDDING_FORMAT,
        "parts": {"x": list(g.part_x), "y": list(g.part_y)},
        "vertices": {v: _point_json(p) for v, p in sorted(e.vertex_position.items())},
        "edges": [
            {
                "x": ed.x,
                "y": ed.y,
                "bends": [_point_json(p) for p in e.edge_route[ed].points[1:-1]],
            }
            for ed in g.edges()
        ],
    }


def save_embedding(e: EmbeddedGraph, path) -> None:
    _write(path, dumps(embedding_doc(e)))


def parse_embedding(doc: dict) -> EmbeddedGraph:
    if doc.get("format") != EMBEDDING_FORMAT:
        raise DomainError(f"not an embedding document: {doc.get('format')!r}")
    g = PartitionedGraph(tuple(doc["parts"]["x"]), tuple(doc["parts"]["y"]))
    positions = {v: _parse_point(p) for v, p in doc["vertices"].items()}
    bends = {}
    for item in doc["edges"]:
        ed = Edge(item["x"], item["y"])
        bends[ed] = [_parse_point(p) for p in item.get("bends", [])]
    return embed(g, positions, bends)


def load_embedding(path) -> EmbeddedGraph:
    return parse_embedding(_read(path))


# -- curves -----------------------------------------------------------------


def curve_doc(c: Polyline) -> dict:
    if not c.closed:
        raise DomainError("only closed curves are serialized")
    return {"format": CURVE_FORMAT, "points": [_point_json(p) for p in c.points]}


def save_curve(c: Polyline, path) -> None:
    _write(path, dumps(curve_doc(c)))


def parse_curve(doc: dict) -> Polyline:
    if doc.get("format") != CURVE_FORMAT:
        raise DomainError(f"not a curve document: {doc.get('format')!r}")
    return Polyline(tuple(_parse_point(p) for p in doc["points"]), closed=True)


def load_curve(path) -> Polyline:
    return parse_curve(_read(path))


# -- certificates -----------------------------------------------------------


def certificate_doc(cert: LinkCertificate) -> dict:
    return {
        "format": CERTIFICATE_FORMAT,
        "graph": {"x": list(cert.graph.part_x), "y": list(cert.graph.part_y)},
        "n": cert.n,
        "components": [list(c.cycle()) for c in cert.components],
        "designated": cert.designated,
        "matrix": [list(row) for row in cert.matrix],
        "witness_tree": [list(e) for e in cert.witness_tree],
        "projection_seed": cert.projection_seed,
        "method": cert.method,
        "trace": [step.to_json() for step in cert.trace],
    }


def save_certificate(cert: LinkCertificate, path) -> None:
    _write(path, dumps(certificate_doc(cert)))


def _parse_ref(g: PartitionedGraph, obj):
    if obj is None:
        return None
    return g.subgraph(obj["x"], obj["y"])


def _parse_square(g: PartitionedGraph, cyc):
    if cyc is None:
        return None
    return make_square(g, (cyc[0], cyc[2]), (cyc[1], cyc[3]))


def _parse_edge(g: PartitionedGraph, text):
    if text is None:
        return None
    a, _, b = text.partition("-")
    return g.edge(a, b)


def _parse_pattern(g: PartitionedGraph, item) -> tuple:
    """Rebuild an evidence entry; linked sets are derivable from witnesses."""
    m = _parse_ref(g, item["subgraph"])
    kind = item["kind"]
    if kind == ZERO:
        return m, LinkingPattern(ZERO, m, frozenset())
    if kind == FOUR:
        e = _parse_edge(g, item["common"])
        linked = frozenset(squares_containing_edge(m, e))
        return m, LinkingPattern(FOUR, m, linked, common_edge=e)
    triple = tuple(_parse_edge(g, t) for t in item["triple"])
    linked = frozenset(
        s for s in squares(m) if sum(1 for e in s.edges if e in triple) == 1
    )
    return m, LinkingPattern(SIX, m, linked, doubled_triple=triple)


def _parse_counts(obj) -> tuple:
    if not obj:
        return ()
    return tuple((kind, obj[kind]) for kind in (ZERO, FOUR, SIX))


def parse_certificate(doc: dict) -> LinkCertificate:
    if doc.get("format") != CERTIFICATE_FORMAT:
        raise DomainError(f"not a certificate document: {doc.get('format')!r}")
    g = PartitionedGraph(tuple(doc["graph"]["x"]), tuple(doc["graph"]["y"]))
    components = tuple(_parse_square(g, c) for c in doc["components"])
    steps = []
    for s in doc["trace"]:
        steps.append(
            TraceStep(
                case=s["case"],
                pair=tuple(_parse_square(g, c) for c in s["pair"]),
                ambient=_parse_ref(g, s.get("ambient")),
                link_support=_parse_ref(g, s.get("link_support")),
                arena=_parse_ref(g, s.get("arena")),
                quad=_parse_ref(g, s.get("quad")),
                cascade=tuple(_parse_ref(g, r) for r in s.get("cascade", [])),
                anchor=_parse_square(g, s.get("anchor")),
                pivot=_parse_square(g, s.get("pivot")),
                common_edge=_parse_edge(g, s.get("common_edge")),
                possibility=s.get("possibility"),
                pattern_counts=_parse_counts(s.get("pattern_counts")),
                evidence=tuple(_parse_pattern(g, it) for it in s.get("evidence", [])),
            )
        )
    return LinkCertificate(
        graph=g,
        components=components,
        designated=doc["designated"],
        matrix=tuple(tuple(row) for row in doc["matrix"]),
        witness_tree=tuple(tuple(e) for e in doc["witness_tree"]),
        trace=tuple(steps),
        projection_seed=doc["projection_seed"],
        method=doc["method"],
    )


def load_certificate(path) -> LinkCertificate:
    return parse_certificate(_read(path))
