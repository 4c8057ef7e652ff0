"""
Plumbing graphs and the part of the plumbing calculus used for lens recognition.

A vertex is a circle bundle over a closed orientable surface, labelled by the
genus of the surface and the Euler number of the bundle. An edge is a plumbing
of two such bundles; all edges are positive. A boundary leg marks a boundary
torus cut out of the bundle at its anchor vertex.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from math import gcd
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from plumbtop.errors import GraphError, InputError
from plumbtop.linalg import IntMatrix

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class PlumbingVertex:
    """A circle bundle of Euler number ``euler_weight`` over a genus ``genus`` surface."""

    id: int
    euler_weight: int
    genus: int = 0

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise GraphError(f"vertex {self.id}: genus must be >= 0, got {self.genus}")


@dataclass(frozen=True)
class PlumbingGraph:
    """An immutable plumbing graph.

    Vertices are kept sorted by id, edges as sorted ``(low, high)`` pairs
    (parallel edges allowed, loops forbidden) and legs as a sorted tuple of
    anchor ids, so two graphs built in different orders compare equal.
    """

    vertices: Tuple[PlumbingVertex, ...] = ()
    edges: Tuple[Edge, ...] = ()
    legs: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        vertices = tuple(sorted(self.vertices, key=lambda v: v.id))
        ids = [v.id for v in vertices]
        if len(set(ids)) != len(ids):
            raise GraphError(f"duplicate vertex ids in {ids}")
        known = set(ids)

        edges = []
        for a, b in self.edges:
            if a == b:
                raise GraphError(f"loop at vertex {a}: loops are not allowed")
            if a not in known or b not in known:
                raise GraphError(f"edge ({a}, {b}) refers to a missing vertex")
            edges.append((min(a, b), max(a, b)))

        for anchor in self.legs:
            if anchor not in known:
                raise GraphError(f"boundary leg anchored at missing vertex {anchor}")

        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        object.__setattr__(self, "legs", tuple(sorted(self.legs)))

    @cached_property
    def _by_id(self) -> Dict[int, PlumbingVertex]:
        return {v.id: v for v in self.vertices}

    @property
    def ids(self) -> List[int]:
        """Vertex ids in increasing order."""
        return [v.id for v in self.vertices]

    @property
    def is_closed(self) -> bool:
        """True when the graph has no boundary legs."""
        return not self.legs

    def vertex(self, vid: int) -> PlumbingVertex:
        """Return the vertex with id ``vid``."""
        try:
            return self._by_id[vid]
        except KeyError:
            raise GraphError(f"no vertex with id {vid}") from None

    def weight(self, vid: int) -> int:
        """Euler weight of vertex ``vid``.

        Raises:
            GraphError: If no vertex has that id.
        """
        return self.vertex(vid).euler_weight

    def neighbors(self, vid: int) -> List[int]:
        """Neighbours of ``vid``, repeated once per parallel edge."""
        self.vertex(vid)
        out = []
        for a, b in self.edges:
            if a == vid:
                out.append(b)
            elif b == vid:
                out.append(a)
        return out

    def degree(self, vid: int) -> int:
        """Number of edge ends at ``vid``; legs are not counted."""
        return len(self.neighbors(vid))

    def leg_count(self, vid: int) -> int:
        """Number of boundary legs anchored at ``vid``."""
        return self.legs.count(vid)

    def edge_multiplicity(self, a: int, b: int) -> int:
        """Count the parallel edges joining two vertices.

        Args:
            a: One endpoint.
            b: The other endpoint, in either order.

        Returns:
            0 when the vertices are not adjacent.
        """
        return self.edges.count((min(a, b), max(a, b)))

    def next_id(self) -> int:
        """Smallest id larger than every id in use."""
        return max(self.ids, default=-1) + 1


class GraphShape(Enum):
    """Coarse shape of a connected closed graph."""

    BAMBOO = "bamboo"
    CIRCUIT = "circuit"
    STAR = "star"
    OTHER = "other"


class LensKind(Enum):
    """Which of the generalized lens spaces a graph bounds."""

    LENS = "lens"
    SPHERE3 = "S3"
    S1XS2 = "S1xS2"


@dataclass(frozen=True)
class LensParams:
    """A generalized lens space: L(n, q), the 3-sphere, or S^1 x S^2.

    For L(n, q) the pair is normalised by :func:`recognize_generalized_lens`,
    so q is the canonical representative min(q, q^-1 mod n).
    """

    kind: LensKind
    n: Optional[int] = None
    q: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is LensKind.LENS:
            if self.n is None or self.q is None:
                raise GraphError("lens parameters need both n and q")
            if self.n < 2 or not 1 <= self.q < self.n or gcd(self.n, self.q) != 1:
                raise GraphError(f"invalid lens parameters L({self.n}, {self.q})")
        elif self.n is not None or self.q is not None:
            raise GraphError(f"{self.kind.value} takes no parameters")

    @classmethod
    def lens(cls, n: int, q: int) -> "LensParams":
        return cls(LensKind.LENS, n, q)

    @classmethod
    def sphere(cls) -> "LensParams":
        return cls(LensKind.SPHERE3)

    @classmethod
    def s1xs2(cls) -> "LensParams":
        return cls(LensKind.S1XS2)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "n": self.n, "q": self.q}

    def __str__(self) -> str:
        """``L(n, q)`` with q as stored, ``S^3`` or ``S^1 x S^2``."""
        if self.kind is LensKind.LENS:
            return f"L({self.n}, {self.q})"
        if self.kind is LensKind.SPHERE3:
            return "S^3"
        return "S^1 x S^2"


# --- constructors ----------------------------------------------------------


def bamboo(weights: Sequence[int], start: int = 0) -> PlumbingGraph:
    """Build a genus-0 path with the given weights and ids start, start+1, ...

    Example:
        >>> bamboo([-2, -2]).edges
        ((0, 1),)
    """
    vertices = [PlumbingVertex(start + i, w) for i, w in enumerate(weights)]
    edges = [(start + i, start + i + 1) for i in range(len(weights) - 1)]
    return PlumbingGraph(tuple(vertices), tuple(edges))


def circuit(weights: Sequence[int], start: int = 0) -> PlumbingGraph:
    """Build a genus-0 cycle; two vertices give a double edge."""
    if len(weights) < 2:
        raise GraphError("a circuit needs at least 2 vertices (loops are not allowed)")
    base = bamboo(weights, start)
    closing = (start, start + len(weights) - 1)
    return PlumbingGraph(base.vertices, base.edges + (closing,))


def relabel(G: PlumbingGraph, offset: int) -> PlumbingGraph:
    """Shift every id of G by ``offset``."""
    return PlumbingGraph(
        tuple(PlumbingVertex(v.id + offset, v.euler_weight, v.genus) for v in G.vertices),
        tuple((a + offset, b + offset) for a, b in G.edges),
        tuple(anchor + offset for anchor in G.legs),
    )


def disjoint_union(G: PlumbingGraph, H: PlumbingGraph) -> Tuple[PlumbingGraph, int]:
    """Return G + H with H's ids shifted past G's, and the shift used."""
    offset = G.next_id() - min(H.ids, default=0)
    shifted = relabel(H, offset)
    union = PlumbingGraph(
        G.vertices + shifted.vertices, G.edges + shifted.edges, G.legs + shifted.legs
    )
    return union, offset


def to_networkx(G: PlumbingGraph) -> nx.MultiGraph:
    """Convert to a networkx multigraph with genus/weight/legs node attributes."""
    graph = nx.MultiGraph()
    for v in G.vertices:
        graph.add_node(v.id, genus=v.genus, weight=v.euler_weight, legs=G.leg_count(v.id))
    graph.add_edges_from(G.edges)
    return graph


# --- invariants ------------------------------------------------------------


def intersection_matrix(G: PlumbingGraph) -> IntMatrix:
    """Return the intersection matrix, rows and columns in increasing id order.

    The diagonal holds the Euler weights; the off-diagonal entry (v, w) counts
    the edges between v and w. Boundary legs are ignored.
    """
    index = {vid: i for i, vid in enumerate(G.ids)}
    n = len(index)
    matrix = np.zeros((n, n), dtype=object)
    for v in G.vertices:
        matrix[index[v.id], index[v.id]] = v.euler_weight
    for a, b in G.edges:
        matrix[index[a], index[b]] += 1
        matrix[index[b], index[a]] += 1
    return matrix


def is_connected(G: PlumbingGraph) -> bool:
    """True for a non-empty connected graph."""
    return bool(G.vertices) and nx.is_connected(to_networkx(G))


def graph_first_betti(G: PlumbingGraph) -> int:
    """Cycle rank |E| - |V| + number of components."""
    if not G.vertices:
        return 0
    components = nx.number_connected_components(to_networkx(G))
    return len(G.edges) - len(G.vertices) + components


def shape(G: PlumbingGraph) -> GraphShape:
    """Classify a connected closed graph as bamboo, circuit, star or other."""
    if G.legs:
        raise GraphError("shape is defined for closed graphs only")
    if not is_connected(G):
        raise GraphError("shape is defined for connected, non-empty graphs only")

    degrees = {vid: G.degree(vid) for vid in G.ids}
    is_tree = len(G.edges) == len(G.vertices) - 1
    if is_tree and max(degrees.values()) <= 2 and all(v.genus == 0 for v in G.vertices):
        return GraphShape.BAMBOO
    if len(G.edges) == len(G.vertices) and all(d == 2 for d in degrees.values()):
        return GraphShape.CIRCUIT
    if is_tree:
        centers = [vid for vid, d in degrees.items() if d >= 3]
        if len(centers) == 1 and all(v.genus == 0 for v in G.vertices if v.id != centers[0]):
            return GraphShape.STAR
    return GraphShape.OTHER


def is_isomorphic(G: PlumbingGraph, H: PlumbingGraph) -> bool:
    """Labelled isomorphism: genus, weight, leg count and edge multiplicities match."""
    if len(G.vertices) != len(H.vertices) or len(G.edges) != len(H.edges):
        return False
    node_match = nx.algorithms.isomorphism.categorical_node_match(
        ["genus", "weight", "legs"], [0, 0, 0]
    )
    return nx.is_isomorphic(
        to_networkx(G),
        to_networkx(H),
        node_match=node_match,
        edge_match=lambda e1, e2: len(e1) == len(e2),
    )


# --- calculus --------------------------------------------------------------


def _rebuild(
    vertices: Mapping[int, PlumbingVertex], edges: Iterable[Edge], legs: Iterable[int]
) -> PlumbingGraph:
    return PlumbingGraph(tuple(vertices.values()), tuple(edges), tuple(legs))


def _shift_weight(vertices: Dict[int, PlumbingVertex], vid: int, delta: int) -> None:
    v = vertices[vid]
    vertices[vid] = PlumbingVertex(vid, v.euler_weight + delta, v.genus)


def _connected_without(G: PlumbingGraph, removed: int, a: int, b: int) -> bool:
    graph = to_networkx(G)
    graph.remove_node(removed)
    return bool(nx.has_path(graph, a, b))


def blow_down(G: PlumbingGraph, v: int) -> PlumbingGraph:
    """Blow down a genus-0 vertex of weight +1 or -1 with degree at most 2.

    Each neighbour's weight changes by -e(v). A degree-2 vertex is replaced by
    a positive edge between its two neighbours.

    Raises:
        GraphError: Naming the failing precondition. Besides the basic ones, a
            degree-2 vertex with both edges to one neighbour and a degree-2 +1
            vertex on a cycle are refused.
    """
    vertex = G.vertex(v)
    e = vertex.euler_weight
    if vertex.genus != 0:
        raise GraphError(f"blow_down({v}): genus is {vertex.genus}, need 0")
    if e not in (1, -1):
        raise GraphError(f"blow_down({v}): weight is {e}, need +1 or -1")
    if G.leg_count(v):
        raise GraphError(f"blow_down({v}): vertex carries boundary legs")
    nbrs = G.neighbors(v)
    if len(nbrs) > 2:
        raise GraphError(f"blow_down({v}): degree is {len(nbrs)}, need <= 2")
    if len(nbrs) == 2 and nbrs[0] == nbrs[1]:
        raise GraphError(f"blow_down({v}): both edges go to vertex {nbrs[0]}, would create a loop")
    if len(nbrs) == 2 and e == 1 and _connected_without(G, v, nbrs[0], nbrs[1]):
        raise GraphError(f"blow_down({v}): +1 vertex on a cycle needs a negative edge")

    vertices = dict(G._by_id)
    del vertices[v]
    for u in nbrs:
        _shift_weight(vertices, u, -e)
    edges = [edge for edge in G.edges if v not in edge]
    if len(nbrs) == 2:
        edges.append((nbrs[0], nbrs[1]))
    logger.debug("blow down vertex %d (weight %d, degree %d)", v, e, len(nbrs))
    return _rebuild(vertices, edges, G.legs)


def blow_up_leaf(G: PlumbingGraph, u: int, sign: int = -1) -> PlumbingGraph:
    """Attach a new leaf of weight ``sign`` (+1 or -1) to ``u``; u's weight changes by sign."""
    if sign not in (1, -1):
        raise GraphError(f"blow_up_leaf: sign must be +1 or -1, got {sign}")
    G.vertex(u)
    new = G.next_id()
    vertices = dict(G._by_id)
    _shift_weight(vertices, u, sign)
    vertices[new] = PlumbingVertex(new, sign)
    return _rebuild(vertices, G.edges + ((u, new),), G.legs)


def blow_up_isolated(G: PlumbingGraph, sign: int = -1) -> PlumbingGraph:
    """Add an isolated vertex of weight ``sign`` (connected sum with S^3)."""
    if sign not in (1, -1):
        raise GraphError(f"blow_up_isolated: sign must be +1 or -1, got {sign}")
    new = G.next_id()
    return PlumbingGraph(G.vertices + (PlumbingVertex(new, sign),), G.edges, G.legs)


def blow_up_edge(G: PlumbingGraph, u: int, w: int) -> PlumbingGraph:
    """Subdivide one edge u--w by a new -1 vertex; u and w lose 1 from their weights."""
    if G.edge_multiplicity(u, w) == 0:
        raise GraphError(f"blow_up_edge: no edge between {u} and {w}")
    edges = list(G.edges)
    edges.remove((min(u, w), max(u, w)))
    new = G.next_id()
    vertices = dict(G._by_id)
    _shift_weight(vertices, u, -1)
    _shift_weight(vertices, w, -1)
    vertices[new] = PlumbingVertex(new, -1)
    edges += [(u, new), (new, w)]
    return _rebuild(vertices, edges, G.legs)


def absorb_zero_vertex(G: PlumbingGraph, v: int) -> PlumbingGraph:
    """Remove a genus-0, weight-0, degree-2 vertex and merge its two neighbours.

    The merged vertex keeps the smaller id; weights and genera add up, and
    edges and legs of both neighbours move onto it. The two neighbours must
    lie in different components once v is removed.
    """
    vertex = G.vertex(v)
    nbrs = G.neighbors(v)
    if vertex.genus != 0 or vertex.euler_weight != 0:
        raise GraphError(f"absorb_zero_vertex({v}): need genus 0 and weight 0")
    if G.leg_count(v):
        raise GraphError(f"absorb_zero_vertex({v}): vertex carries boundary legs")
    if len(nbrs) != 2:
        raise GraphError(f"absorb_zero_vertex({v}): degree is {len(nbrs)}, need 2")
    a, b = sorted(nbrs)
    if a == b or _connected_without(G, v, a, b):
        raise GraphError(f"absorb_zero_vertex({v}): vertex lies on a cycle")

    va, vb = G.vertex(a), G.vertex(b)
    vertices = dict(G._by_id)
    del vertices[v]
    del vertices[b]
    vertices[a] = PlumbingVertex(a, va.euler_weight + vb.euler_weight, va.genus + vb.genus)

    edges = []
    for x, y in G.edges:
        if v in (x, y):
            continue
        edges.append((a if x == b else x, a if y == b else y))
    legs = [a if anchor == b else anchor for anchor in G.legs]
    logger.debug("absorb zero vertex %d, merging %d into %d", v, b, a)
    return _rebuild(vertices, edges, legs)


def remove_zero_leaf(G: PlumbingGraph, v: int) -> PlumbingGraph:
    """Remove a genus-0 weight-0 leaf together with its neighbour.

    The neighbour must have genus 0, degree at most 2 and no legs. This is
    the bamboo end move [..., a, b, 0] -> [..., a].
    """
    vertex = G.vertex(v)
    nbrs = G.neighbors(v)
    if vertex.genus != 0 or vertex.euler_weight != 0:
        raise GraphError(f"remove_zero_leaf({v}): need genus 0 and weight 0")
    if G.leg_count(v):
        raise GraphError(f"remove_zero_leaf({v}): vertex carries boundary legs")
    if len(nbrs) != 1:
        raise GraphError(f"remove_zero_leaf({v}): degree is {len(nbrs)}, need 1")
    u = nbrs[0]
    if G.vertex(u).genus != 0 or G.degree(u) > 2 or G.leg_count(u):
        raise GraphError(
            f"remove_zero_leaf({v}): neighbour {u} must be genus 0, degree <= 2, no legs"
        )

    vertices = dict(G._by_id)
    del vertices[v]
    del vertices[u]
    edges = [edge for edge in G.edges if v not in edge and u not in edge]
    logger.debug("remove zero leaf %d with neighbour %d", v, u)
    return _rebuild(vertices, edges, G.legs)


def _try(move: Any, G: PlumbingGraph, v: int) -> Optional[PlumbingGraph]:
    try:
        result: PlumbingGraph = move(G, v)
    except GraphError:
        return None
    return result


def reduce_graph(G: PlumbingGraph) -> PlumbingGraph:
    """Apply blow-downs and zero moves until none applies.

    Every move removes at least one vertex, so the loop terminates. Moves are
    tried in increasing vertex id, blow-downs first.
    """
    current = G
    while True:
        for move in (blow_down, absorb_zero_vertex, remove_zero_leaf):
            reduced = next(
                (r for r in (_try(move, current, vid) for vid in current.ids) if r is not None),
                None,
            )
            if reduced is not None:
                current = reduced
                break
        else:
            return current


def _path_order(G: PlumbingGraph) -> List[int]:
    if len(G.vertices) == 1:
        return G.ids
    start = min(vid for vid in G.ids if G.degree(vid) == 1)
    order = [start]
    previous = None
    while len(order) < len(G.vertices):
        step = [n for n in G.neighbors(order[-1]) if n != previous]
        previous = order[-1]
        order.append(step[0])
    return order


def recognize_generalized_lens(G: PlumbingGraph) -> Optional[LensParams]:
    """Recognise S^3, S^1 x S^2 or L(n, q) from a connected closed graph.

    The graph is reduced first; a remaining genus-0 path with weights
    -e_1, ..., -e_k gives n/q = e_1 - 1/(e_2 - ...), read off the product of
    the matrices [[e, -1], [1, 0]]. L(n, q) and L(n, q^-1 mod n) coincide,
    and the reported q is the canonical representative min(q, q^-1 mod n):
    bamboo [-2, -5] evaluates to 9/5 and is reported as L(9, 2).

    Returns:
        The lens parameters, or None when the reduced graph has positive
        genus, a cycle, or a vertex of degree at least 3.

    Raises:
        GraphError: If the graph has boundary legs or is disconnected.

    Example:
        >>> str(recognize_generalized_lens(bamboo([-2, -2, -2])))
        'L(4, 3)'
    """
    if G.legs:
        raise GraphError("lens recognition needs a closed graph (boundary legs present)")
    if G.vertices and not is_connected(G):
        raise GraphError("lens recognition needs a connected graph")

    reduced = reduce_graph(G)
    if not reduced.vertices:
        return LensParams.sphere()
    if any(v.genus > 0 for v in reduced.vertices):
        return None
    if len(reduced.edges) != len(reduced.vertices) - 1:
        return None
    if any(reduced.degree(vid) >= 3 for vid in reduced.ids):
        return None

    p, r, q, s = 1, 0, 0, 1
    for vid in _path_order(reduced):
        e = -reduced.weight(vid)
        p, r, q, s = p * e + r, -p, q * e + s, -q
    if p < 0:
        p, q = -p, -q
    weights = [reduced.weight(x) for x in reduced.ids]
    logger.debug("reduced path %s evaluates to %d/%d", weights, p, q)

    if p == 0:
        return LensParams.s1xs2()
    if p == 1:
        return LensParams.sphere()
    q %= p
    return LensParams.lens(p, min(q, pow(q, -1, p)))


# --- interchange formats ---------------------------------------------------


def graph_to_dict(G: PlumbingGraph) -> Dict[str, Any]:
    """Serialise to ``{"vertices": [{"id", "genus", "e"}], "edges": [...], "legs": [...]}``."""
    return {
        "vertices": [{"id": v.id, "genus": v.genus, "e": v.euler_weight} for v in G.vertices],
        "edges": [[a, b] for a, b in G.edges],
        "legs": list(G.legs),
    }


def _require_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _require_list(data: Mapping[str, Any], key: str) -> List[Any]:
    value = data.get(key, [])
    if not isinstance(value, list):
        raise InputError(f"graph.{key}: expected a list, got {value!r}")
    return value


def graph_from_dict(data: Mapping[str, Any]) -> PlumbingGraph:
    """Parse the JSON object written by :func:`graph_to_dict`.

    Raises:
        InputError: On missing or mistyped fields.
        GraphError: On a structurally invalid graph.
    """
    if not isinstance(data, Mapping):
        raise InputError("graph: expected a JSON object")
    if "vertices" not in data:
        raise InputError("graph: missing field 'vertices'")

    vertices = []
    for i, item in enumerate(_require_list(data, "vertices")):
        if not isinstance(item, Mapping):
            raise InputError(f"vertices[{i}]: expected an object")
        for name in ("id", "e"):
            if name not in item:
                raise InputError(f"vertices[{i}]: missing field '{name}'")
        vertices.append(
            PlumbingVertex(
                _require_int(item["id"], f"vertices[{i}].id"),
                _require_int(item["e"], f"vertices[{i}].e"),
                _require_int(item.get("genus", 0), f"vertices[{i}].genus"),
            )
        )

    edges = []
    for i, pair in enumerate(_require_list(data, "edges")):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InputError(f"edges[{i}]: expected a pair of vertex ids")
        a = _require_int(pair[0], f"edges[{i}][0]")
        b = _require_int(pair[1], f"edges[{i}][1]")
        edges.append((a, b))

    legs = [_require_int(x, f"legs[{i}]") for i, x in enumerate(_require_list(data, "legs"))]
    return PlumbingGraph(tuple(vertices), tuple(edges), tuple(legs))


def graph_to_dot(G: PlumbingGraph, name: str = "plumbing") -> str:
    """Render as Graphviz DOT; legs become arrows to point nodes."""
    lines = [f"graph {name} {{"]
    for v in G.vertices:
        lines.append(f'    v{v.id} [label="g={v.genus}, e={v.euler_weight}"];')
    for a, b in G.edges:
        lines.append(f"    v{a} -- v{b};")
    for i, anchor in enumerate(G.legs):
        lines.append(f"    leg{i} [shape=point];")
        lines.append(f"    v{anchor} -- leg{i} [dir=forward, arrowhead=normal];")
    lines.append("}")
    return "\n".join(lines) + "\n"
