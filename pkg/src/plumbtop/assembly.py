"""
Assembling the plumbing graph of the boundary of the Milnor fiber.

The boundary splits along tori into the vanishing zones and a trunk. Each
piece is a plumbing graph with boundary legs; gluing two legs along the
torus map described by (alpha, beta) inserts a genus-0 bamboo between the
anchor vertices.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from plumbtop.constants import (
    KNOWN_SECTIONS,
    LENS_FAMILY_GLUING,
    SECTION_MERIDIAN,
    SECTION_PRODUCT,
    SOLID_TORUS_WEIGHT,
    example_family_gluing,
)
from plumbtop.errors import GermError, GluingError, InputError
from plumbtop.germ import (
    VanishingZoneData,
    example_family_germ,
    lens_family_germ,
    singular_branches,
    vanishing_zone,
)
from plumbtop.plumbing import (
    PlumbingGraph,
    PlumbingVertex,
    bamboo,
    circuit,
    disjoint_union,
    graph_from_dict,
    graph_to_dict,
)
from plumbtop.seifert import SeifertData, normalize_pair, neg_cont_frac, star_graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundedPiece:
    """A plumbing graph with boundary legs, each carrying a section marker.

    ``leg_sections[i]`` belongs to ``graph.legs[i]``. A collar (the thickened
    torus) has no vertices and two legs.
    """

    graph: PlumbingGraph
    leg_sections: Tuple[str, ...]
    collar: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "leg_sections", tuple(self.leg_sections))
        unknown = set(self.leg_sections) - KNOWN_SECTIONS
        if unknown:
            raise GluingError(f"unknown section markers {sorted(unknown)}")
        if self.collar:
            if self.graph.vertices or len(self.leg_sections) != 2:
                raise GluingError("a collar has no vertices and exactly two legs")
        elif len(self.leg_sections) != len(self.graph.legs):
            raise GluingError(
                f"{len(self.graph.legs)} legs but {len(self.leg_sections)} section markers"
            )

    @property
    def leg_count(self) -> int:
        return len(self.leg_sections)

    def anchor(self, leg: int) -> int:
        """Vertex id carrying leg number ``leg``."""
        if self.collar:
            raise GluingError("collar legs have no anchor vertex")
        if not 0 <= leg < self.leg_count:
            raise GluingError(f"leg {leg} does not exist (piece has {self.leg_count} legs)")
        return self.graph.legs[leg]


@dataclass(frozen=True)
class GluingData:
    """Torus gluing (alpha, beta), gcd(alpha, beta) = 1.

    With beta = b + t * alpha and 0 <= b < alpha, the gluing bamboo is
    -neg_cont_frac(alpha, alpha - b) (empty for alpha = 1) and the anchor of
    the first piece gains t in weight.
    """

    alpha: int
    beta: int

    def __post_init__(self) -> None:
        if self.alpha < 1:
            raise GluingError(f"alpha must be >= 1, got {self.alpha}")
        if gcd(self.alpha, self.beta) != 1:
            raise GluingError(f"gcd({self.alpha}, {self.beta}) must be 1")

    @property
    def beta_reduced(self) -> int:
        return self.beta % self.alpha

    @property
    def shift(self) -> int:
        return (self.beta - self.beta_reduced) // self.alpha

    def chain_weights(self) -> List[int]:
        """Weights of the inserted bamboo, from the first piece towards the second."""
        if self.alpha == 1:
            return []
        return [-x for x in neg_cont_frac(self.alpha, self.alpha - self.beta_reduced)]

    def reversed(self) -> "GluingData":
        """Datum giving the same graph when the two pieces swap roles.

        Defined for 0 <= beta < alpha, where the bamboo is simply read
        backwards.
        """
        if self.shift:
            raise GluingError(f"({self.alpha}, {self.beta}) has an anchor shift and no reverse")
        if self.alpha == 1:
            return self
        inverse = pow(self.alpha - self.beta_reduced, -1, self.alpha)
        return GluingData(self.alpha, self.alpha - inverse)


# --- built-in pieces -------------------------------------------------------


def q_seifert() -> SeifertData:
    """Seifert data of Q: over a disc with two exceptional fibers of order 2."""
    pair = normalize_pair(2, 1)
    return SeifertData(0, 1, (pair, pair), 0)


def trunk_q() -> BoundedPiece:
    """The mapping torus Q of the involution of the annulus, one boundary torus."""
    return BoundedPiece(star_graph(q_seifert()), (SECTION_PRODUCT,))


def trunk_thickened_torus() -> BoundedPiece:
    """The collar T^2 x [0, 1]: no vertices, two legs."""
    return BoundedPiece(PlumbingGraph(), (SECTION_PRODUCT, SECTION_PRODUCT), collar=True)


def trunk_solid_torus() -> BoundedPiece:
    """A solid torus as a single chain terminator with one meridian leg."""
    graph = PlumbingGraph((PlumbingVertex(0, SOLID_TORUS_WEIGHT),), (), (0,))
    return BoundedPiece(graph, (SECTION_MERIDIAN,))


def zone_piece(V: VanishingZoneData) -> BoundedPiece:
    """Star graph of a vanishing zone, one product leg per boundary torus."""
    graph = star_graph(V.seifert)
    return BoundedPiece(graph, (SECTION_PRODUCT,) * V.seifert.boundary_count)


# --- gluing ----------------------------------------------------------------


def _insert_chain(
    graph: PlumbingGraph, a: int, b: int, gluing: GluingData
) -> Tuple[List[PlumbingVertex], List[Tuple[int, int]]]:
    vertices = []
    for v in graph.vertices:
        weight = v.euler_weight + (gluing.shift if v.id == a else 0)
        vertices.append(PlumbingVertex(v.id, weight, v.genus))
    edges = list(graph.edges)
    previous = a
    next_id = graph.next_id()
    for w in gluing.chain_weights():
        vertices.append(PlumbingVertex(next_id, w))
        edges.append((previous, next_id))
        previous = next_id
        next_id += 1
    edges.append((previous, b))
    return vertices, edges


def _without(items: Sequence[Any], index: int) -> List[Any]:
    return [x for i, x in enumerate(items) if i != index]


def glue_with_bamboo(
    A: BoundedPiece, leg_a: int, B: BoundedPiece, leg_b: int, gluing: GluingData
) -> Union[PlumbingGraph, BoundedPiece]:
    """Glue leg ``leg_a`` of A to leg ``leg_b`` of B along a bamboo.

    Returns:
        A closed PlumbingGraph when no legs remain, otherwise a BoundedPiece
        whose legs are A's remaining legs followed by B's.

    Raises:
        GluingError: For a missing leg, or when exactly one side is a collar
            (use glue_through_collar).
    """
    for piece, leg in ((A, leg_a), (B, leg_b)):
        if not 0 <= leg < piece.leg_count:
            raise GluingError(f"leg {leg} does not exist (piece has {piece.leg_count} legs)")
    if A.collar and B.collar:
        return trunk_thickened_torus()
    if A.collar or B.collar:
        raise GluingError("a collar joins two legs of one piece: use glue_through_collar")

    union, offset = disjoint_union(A.graph, B.graph)
    anchor_a = A.anchor(leg_a)
    anchor_b = B.anchor(leg_b) + offset
    legs = _without(A.graph.legs, leg_a) + [x + offset for x in _without(B.graph.legs, leg_b)]
    sections = _without(A.leg_sections, leg_a) + _without(B.leg_sections, leg_b)

    vertices, edges = _insert_chain(union, anchor_a, anchor_b, gluing)
    logger.debug(
        "glue %d -- %d with (%d, %d): chain %s",
        anchor_a,
        anchor_b,
        gluing.alpha,
        gluing.beta,
        gluing.chain_weights(),
    )
    graph = PlumbingGraph(tuple(vertices), tuple(edges), tuple(legs))
    if not legs:
        return graph
    return BoundedPiece(graph, tuple(sections))


def glue_through_collar(
    P: BoundedPiece,
    leg_a: int,
    leg_b: int,
    gluing: GluingData,
    collar: Optional[BoundedPiece] = None,
) -> Union[PlumbingGraph, BoundedPiece]:
    """Close two legs of one piece through a collar, creating a cycle.

    Raises:
        GluingError: If the legs coincide or are missing, if ``collar`` is not
            a collar, or if the result would be a loop.
    """
    if collar is not None and not collar.collar:
        raise GluingError("glue_through_collar needs a collar piece")
    if leg_a == leg_b:
        raise GluingError("glue_through_collar needs two different legs")
    anchor_a, anchor_b = P.anchor(leg_a), P.anchor(leg_b)
    if anchor_a == anchor_b and not gluing.chain_weights():
        raise GluingError(f"gluing ({gluing.alpha}, {gluing.beta}) would create a loop")

    drop = {leg_a, leg_b}
    legs = [x for i, x in enumerate(P.graph.legs) if i not in drop]
    sections = [x for i, x in enumerate(P.leg_sections) if i not in drop]
    vertices, edges = _insert_chain(P.graph, anchor_a, anchor_b, gluing)
    graph = PlumbingGraph(tuple(vertices), tuple(edges), tuple(legs))
    if not legs:
        return graph
    return BoundedPiece(graph, tuple(sections))


def _closed(result: Union[PlumbingGraph, BoundedPiece]) -> PlumbingGraph:
    if not isinstance(result, PlumbingGraph):
        raise GluingError(f"assembly left {result.leg_count} boundary legs open")
    return result


# --- families --------------------------------------------------------------


def boundary_graph_example_family(l: int) -> PlumbingGraph:
    """Plumbing graph of the boundary of the Milnor fiber of z^2 - (x^2 - y^3) y^l.

    The zone of the axis y is glued to the trunk with (l + 3, 1): to Q when it
    has one boundary torus (l odd), and to itself through the collar when it
    has two (l even).
    """
    germ = example_family_germ(l)
    zone = vanishing_zone(germ, singular_branches(germ)[0])
    piece = zone_piece(zone)
    gluing = GluingData(*example_family_gluing(l))
    r = zone.seifert.boundary_count
    if r == 1:
        return _closed(glue_with_bamboo(trunk_q(), 0, piece, 0, gluing))
    if r == 2:
        return _closed(glue_through_collar(piece, 0, 1, gluing, trunk_thickened_torus()))
    raise GluingError(f"vanishing zone with {r} boundary tori")


def boundary_graph_lens_family(l: int) -> PlumbingGraph:
    """Plumbing graph of the boundary of the Milnor fiber of z^2 - x y^l."""
    germ = lens_family_germ(l)
    zone = vanishing_zone(germ, singular_branches(germ)[0])
    gluing = GluingData(*LENS_FAMILY_GLUING)
    return _closed(glue_with_bamboo(zone_piece(zone), 0, trunk_solid_torus(), 0, gluing))


def expected_graph_odd(l: int) -> PlumbingGraph:
    """Closed-form graph for odd l = 2*lb + 1.

    A bamboo of l + 4 vertices of weight -2; two -2 leaves on its first vertex
    and two legs [-2, -(lb + 1)] on its last.
    """
    if l < 3 or l % 2 == 0:
        raise GermError(f"expected_graph_odd needs odd l >= 3, got {l}")
    lb = (l - 1) // 2
    spine = bamboo([-2] * (l + 4))
    last = l + 3
    vertices = list(spine.vertices)
    edges = list(spine.edges)
    nid = spine.next_id()
    for _ in range(2):
        vertices.append(PlumbingVertex(nid, -2))
        edges.append((0, nid))
        nid += 1
    for _ in range(2):
        vertices += [PlumbingVertex(nid, -2), PlumbingVertex(nid + 1, -(lb + 1))]
        edges += [(last, nid), (nid, nid + 1)]
        nid += 2
    return PlumbingGraph(tuple(vertices), tuple(edges))


def expected_graph_even(l: int) -> PlumbingGraph:
    """Closed-form graph for even l = 2*lb.

    A circuit of l + 3 vertices of weight -2 with two leaves of weight -lb on
    vertex 0. For l = 2 the leaves are blown down: no leaves and vertex 0 has
    weight 0.
    """
    if l < 2 or l % 2:
        raise GermError(f"expected_graph_even needs even l >= 2, got {l}")
    lb = l // 2
    if lb == 1:
        return circuit([0] + [-2] * (l + 2))
    ring = circuit([-2] * (l + 3))
    nid = ring.next_id()
    leaves = (PlumbingVertex(nid, -lb), PlumbingVertex(nid + 1, -lb))
    return PlumbingGraph(ring.vertices + leaves, ring.edges + ((0, nid), (0, nid + 1)))


def expected_graph(l: int) -> PlumbingGraph:
    return expected_graph_odd(l) if l % 2 else expected_graph_even(l)


# --- files -----------------------------------------------------------------


def piece_to_dict(P: BoundedPiece) -> Dict[str, Any]:
    """Graph JSON plus ``sections`` and ``collar``."""
    data = graph_to_dict(P.graph)
    data["sections"] = list(P.leg_sections)
    data["collar"] = P.collar
    return data


def piece_from_dict(data: Mapping[str, Any]) -> BoundedPiece:
    """Parse a piece; missing ``sections`` default to product sections."""
    if not isinstance(data, Mapping):
        raise InputError("piece: expected a JSON object")
    collar = data.get("collar", False)
    if not isinstance(collar, bool):
        raise InputError(f"piece.collar: expected a boolean, got {collar!r}")
    graph = graph_from_dict(data) if not collar else PlumbingGraph()
    default = 2 if collar else len(graph.legs)
    sections = data.get("sections", [SECTION_PRODUCT] * default)
    if not isinstance(sections, list) or not all(isinstance(s, str) for s in sections):
        raise InputError("piece.sections: expected a list of strings")
    return BoundedPiece(graph, tuple(sections), collar)
