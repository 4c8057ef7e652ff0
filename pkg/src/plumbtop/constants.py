"""
Frozen conventions shared by the plumbtop modules.

Every choice that the topology leaves to the implementer (section markers,
gluing data of the built-in families, file field names, claim ids) lives here.
"""

from typing import Dict, FrozenSet, Tuple

# Boundary section markers carried by the legs of a bounded piece.
SECTION_PRODUCT: str = "product"  # product sections of a mapping torus
SECTION_MERIDIAN: str = "meridian"  # meridian disc of a solid torus
KNOWN_SECTIONS: FrozenSet[str] = frozenset({SECTION_PRODUCT, SECTION_MERIDIAN})

# Euler number of a bounded mapping torus relative to its product sections.
BOUNDED_EULER_NUMBER: int = 0

# Weight of the single vertex of the solid-torus trunk.
SOLID_TORUS_WEIGHT: int = -1

# Gluing (alpha, beta) of the z^2 - x y^l family: meridian onto fiber + section.
LENS_FAMILY_GLUING: Tuple[int, int] = (1, 1)


def example_family_gluing(l: int) -> Tuple[int, int]:
    """Return the trunk/zone gluing datum (l + 3, 1) of z^2 - (x^2 - y^3) y^l."""
    return (l + 3, 1)


# Intersection multiplicity of y with x^2 - y^3 at the origin.
CUSP_AXIS_INTERSECTION: int = 2
# Milnor number of the cusp x^2 - y^3.
CUSP_MILNOR_NUMBER: int = 2

# Reproduction claim ids, in report order.
CLAIM_IDS: Tuple[str, ...] = ("T6.5", "P7.1", "P7.2", "T7.3", "T8.1", "T8.2")

# Spot values of the closed-form H_1 of z^m - x^k y^l, as (m, k, l) -> (rank, torsion).
HIRZEBRUCH_SPOT_VALUES: Dict[Tuple[int, int, int], Tuple[int, Tuple[int, ...]]] = {
    (2, 1, 5): (0, (10,)),
    (3, 1, 2): (0, (2, 6)),
    (3, 2, 4): (4, (2, 6)),
}

# Ranges swept by the reproduction suite.
EXAMPLE_FAMILY_RANGE: Tuple[int, int] = (2, 12)
LENS_FAMILY_RANGE: Tuple[int, int] = (2, 10)
DEFINITENESS_RANGE: Tuple[int, int] = (2, 8)
# (m, n, k) grid of plane vanishing zones.
ZONE_GRID_M: Tuple[int, int] = (2, 6)
ZONE_GRID_N: Tuple[int, int] = (2, 8)
ZONE_GRID_K: Tuple[int, int] = (0, 8)

# Randomised checks: fixed seed and sample sizes.
REPRO_SEED: int = 20240501
CLOSED_MONODROMY_SAMPLES: int = 100
CALCULUS_SAMPLES: int = 200
SNF_ORACLE_SAMPLES: int = 500

# CLI exit codes.
EXIT_OK: int = 0
EXIT_CLAIM_FAILURE: int = 1
EXIT_INPUT_ERROR: int = 2

OUTPUT_FORMATS: Tuple[str, ...] = ("json", "dot", "text")
