"""Colored simple polytopes, quasitoric cohomology rings, covering-theorem
checkers, and the colorful Voronoi-Hex game."""

from .polytopes import (
    CombinatorialPolytope,
    Face,
    GeometricRealization,
    PolytopeError,
    enumerate_faces,
    facet_adjacency,
    validate_simple,
)
from .builders import (
    build,
    cube,
    octahedron,
    polygon,
    prism,
    product,
    simplex,
    square_pyramid,
    strongly_separated_vertices,
    total_truncation,
    truncate_vertex,
    truncate_vertices,
)
from .coloring import (
    Coloring,
    ColoringError,
    chromatic_number,
    find_coloring,
    i_color_class,
    is_proper,
    joswig_colorable,
    opposite_facet_coloring,
)
from .characteristic import (
    CharacteristicError,
    CharacteristicMatrix,
    SignVector,
    canonical_characteristic,
    special_characteristic,
    validate_characteristic,
)
from .ring import (
    CohomologyRing,
    RingElement,
    RingError,
    parse_class_expression,
    simplicial_class,
    vertex_class,
)

__version__ = "0.1.0"
