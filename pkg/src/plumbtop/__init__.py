"""
plumbtop

Plumbing graphs, Seifert invariants and first homology for the boundary of
the Milnor fiber of a germ z^m - g(x, y) with g a non-reduced plane curve.
"""

from plumbtop.assembly import (
    BoundedPiece,
    GluingData,
    boundary_graph_example_family,
    boundary_graph_lens_family,
    expected_graph_even,
    expected_graph_odd,
    glue_through_collar,
    glue_with_bamboo,
    trunk_q,
    trunk_solid_torus,
    trunk_thickened_torus,
    zone_piece,
)
from plumbtop.errors import (
    GermError,
    GluingError,
    GraphError,
    InputError,
    MatrixError,
    PlumbtopError,
    SeifertError,
)
from plumbtop.germ import (
    BranchData,
    FiberInvariants,
    GermData,
    LensVerdict,
    VanishingZoneData,
    covering_euler_char,
    is_lens_boundary,
    k_of_branch,
    load_germ,
    plane_fiber_invariants,
    plane_zone,
    reduced_germ_check,
    singular_branches,
    vanishing_zone,
    vertical_monodromy,
)
from plumbtop.homology import (
    HomologyResult,
    example_family_h1,
    h1_of_plumbed,
    h1_of_seifert,
    hirzebruch_h1,
)
from plumbtop.linalg import (
    SnfResult,
    determinant,
    invariant_factors,
    is_negative_definite,
    nullity,
    smith_normal_form,
)
from plumbtop.plumbing import (
    GraphShape,
    LensParams,
    PlumbingGraph,
    PlumbingVertex,
    bamboo,
    blow_down,
    circuit,
    graph_first_betti,
    intersection_matrix,
    is_isomorphic,
    recognize_generalized_lens,
    shape,
)
from plumbtop.seifert import (
    MonodromyData,
    SeifertData,
    SeifertPair,
    e0,
    mapping_torus_seifert,
    neg_cont_frac,
    normalize_pair,
    quotient_euler_char,
    star_graph,
)

__version__ = "1.0.0"
__all__ = [
    # Errors
    "PlumbtopError",
    "MatrixError",
    "GraphError",
    "SeifertError",
    "GermError",
    "GluingError",
    "InputError",
    # Linear algebra
    "SnfResult",
    "smith_normal_form",
    "invariant_factors",
    "determinant",
    "nullity",
    "is_negative_definite",
    # Plumbing
    "PlumbingVertex",
    "PlumbingGraph",
    "GraphShape",
    "LensParams",
    "bamboo",
    "circuit",
    "intersection_matrix",
    "shape",
    "graph_first_betti",
    "blow_down",
    "recognize_generalized_lens",
    "is_isomorphic",
    # Homology
    "HomologyResult",
    "h1_of_plumbed",
    "h1_of_seifert",
    "hirzebruch_h1",
    "example_family_h1",
    # Seifert
    "SeifertPair",
    "SeifertData",
    "MonodromyData",
    "normalize_pair",
    "e0",
    "quotient_euler_char",
    "mapping_torus_seifert",
    "star_graph",
    "neg_cont_frac",
    # Germs
    "BranchData",
    "GermData",
    "FiberInvariants",
    "VanishingZoneData",
    "LensVerdict",
    "singular_branches",
    "k_of_branch",
    "plane_fiber_invariants",
    "vertical_monodromy",
    "vanishing_zone",
    "plane_zone",
    "reduced_germ_check",
    "is_lens_boundary",
    "covering_euler_char",
    "load_germ",
    # Assembly
    "BoundedPiece",
    "GluingData",
    "trunk_q",
    "trunk_thickened_torus",
    "trunk_solid_torus",
    "zone_piece",
    "glue_with_bamboo",
    "glue_through_collar",
    "boundary_graph_example_family",
    "boundary_graph_lens_family",
    "expected_graph_odd",
    "expected_graph_even",
]
