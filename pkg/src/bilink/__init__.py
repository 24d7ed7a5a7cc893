"""Exact mod-2 linking structure of spatial complete bipartite graphs.

The package is organized bottom-up:

* ``bipartite``  -- labelled complete bipartite graphs, squares (4-cycles),
  subgraph selection, and the square-opposite pairing used by the extractor.
* ``geometry``   -- exact-rational piecewise-linear embeddings in 3-space,
  validation, and seeded random instance generation.
* ``diagram``    -- regular projections, crossings with over/under data,
  mod-2 linking numbers, and formal crossing changes.
* ``classify``   -- the zero/four/six linking-pattern trichotomy of a closed
  curve against an embedded K_{3,3}, and the pure pattern transition under a
  single crossing change.
* ``extract``    -- certified extraction of non-split n-component links from
  embeddings of K_{2n+1,2n+1}, and certificate verification.
* ``fileio``     -- exact text formats for embeddings, curves, certificates.
* ``cli``        -- the ``bilink`` command line tool.
"""

from .bipartite import (
    DomainError,
    Edge,
    PartitionedGraph,
    Square,
    SubgraphRef,
    adjacent,
    alpha_opposite,
    complement_square,
    disjoint,
    make_square,
    mutually_nonadjacent,
    opposite_pairs,
    squares,
    squares_containing_edge,
    subgraph,
    subrefs,
)
from .geometry import (
    EmbeddedGraph,
    GenerationError,
    Point3,
    Polyline,
    cycle_polyline,
    embed,
    loop_around_edge,
    point,
    random_closed_curve,
    random_embedding,
    validate_embedding,
    validate_scene,
)
from .diagram import (
    Crossing,
    DegenerateProjectionError,
    DegenerateSceneError,
    Diagram,
    ProjectionDirection,
    crossing_change,
    linking_matrix,
    omega,
    pick_generic_direction,
    project,
)
from .classify import (
    FOUR,
    SIX,
    ZERO,
    LinkingPattern,
    PatternViolationError,
    classify,
    classify_linked_set,
    linked_squares,
    predict_after_crossing_change,
)
from .extract import (
    CertificateReport,
    LinkCertificate,
    TheoremViolationError,
    TraceStep,
    edge_nlink,
    extend_link,
    extract_nlink,
    find_2link_k44,
    verify_certificate,
)

__version__ = "0.1.0"
