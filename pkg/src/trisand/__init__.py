"""Face 2-coloured spherical triangulations, plane alternating dimaps,
their sandpile/canonical groups, and latin bitrades."""

from .combmap import (Arc, Dart, EmbeddedDigraph, FaceWalk, load_dimap,
                      save_dimap, trace_faces, underlying_graph_checks,
                      validate, walk_vertices)
from .intalg import (AbelianGroupShape, IntMatrix, determinant,
                     group_from_presentation, laplacian, reduced_laplacian,
                     sandpile_group, smith_normal_form, tree_number)
from .trinity import (Triangulation, canonical_group, derive, load_tri,
                      save_tri, three_colour, triangulate,
                      triangulation_from_faces, trinity_report,
                      validate_triangulation)

__all__ = [
    "Arc", "Dart", "EmbeddedDigraph", "FaceWalk", "load_dimap", "save_dimap",
    "trace_faces", "underlying_graph_checks", "validate", "walk_vertices",
    "AbelianGroupShape", "IntMatrix", "determinant", "group_from_presentation",
    "laplacian", "reduced_laplacian", "sandpile_group", "smith_normal_form",
    "tree_number", "Triangulation", "canonical_group", "derive", "load_tri",
    "save_tri", "three_colour", "triangulate", "triangulation_from_faces",
    "trinity_report", "validate_triangulation",
]

__version__ = "0.1.0"
