"""Exact arithmetic in PG(2, q): finite fields, conics, arcs and ovals,
Desargues configurations, and constructive conic reconstruction."""

from .arcs import Arc, is_arc, search_maximal_arcs, tangent_lines
from .conic import (
    Conic,
    NondegeneracyReport,
    combinatorial_tangents,
    is_nondegenerate,
    line_conic_intersect,
    parse_conic,
    tangent_at,
    transform_conic,
    variety_of,
)
from .errors import (
    BoundExceeded,
    GaloisPlaneError,
    GuardedInputError,
    InternalCheckFailed,
)
from .gf import FieldElement, FieldSpec, make_field, parse_field
from .linalg import Mat, det3, inverse3, mat_vec, nullspace, rank
from .pg2 import (
    AxiomReport,
    Collineation,
    Plane,
    ProjLine,
    ProjPoint,
    canonicalize,
    canonicalize_line,
    collinear,
    enumerate_plane,
    frame_transform,
    incident,
    join,
    meet,
    parse_line,
    parse_point,
    plane,
    point_sort_key,
    verify_axioms,
)
from .segre import (
    Certificate,
    DesarguesResult,
    LemmaResult,
    TangentFrame,
    desargues_axis,
    fit_conic_nullspace,
    frame_conic,
    lemma_of_tangents,
    normalize_tangents,
    perspective_center,
    reconstruct_conic,
    sample_perspective_triangles,
    tangent_frame,
)

__version__ = "0.1.0"

__all__ = [
    "Arc", "AxiomReport", "BoundExceeded", "Certificate", "Collineation",
    "Conic", "DesarguesResult", "FieldElement", "FieldSpec",
    "GaloisPlaneError", "GuardedInputError", "InternalCheckFailed",
    "LemmaResult", "Mat", "NondegeneracyReport", "Plane", "ProjLine",
    "ProjPoint", "TangentFrame", "canonicalize", "canonicalize_line",
    "collinear", "combinatorial_tangents", "desargues_axis", "det3",
    "enumerate_plane",
    "fit_conic_nullspace", "frame_conic", "frame_transform", "incident",
    "inverse3", "is_arc", "is_nondegenerate", "join", "lemma_of_tangents",
    "line_conic_intersect", "make_field", "mat_vec", "meet",
    "normalize_tangents", "nullspace", "parse_conic", "parse_field",
    "parse_line", "parse_point", "perspective_center", "plane",
    "point_sort_key", "rank", "reconstruct_conic",
    "sample_perspective_triangles", "search_maximal_arcs", "tangent_at",
    "tangent_frame", "tangent_lines", "transform_conic", "variety_of",
    "verify_axioms",
]
