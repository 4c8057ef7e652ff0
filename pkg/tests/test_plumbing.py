"""Tests for plumbing graphs and the calculus moves."""

import random

import numpy as np
import pytest

from plumbtop.assembly import boundary_graph_example_family, expected_graph_even
from plumbtop.errors import GraphError, InputError
from plumbtop.homology import h1_of_plumbed
from plumbtop.linalg import determinant
from plumbtop.plumbing import (
    GraphShape,
    LensParams,
    PlumbingGraph,
    PlumbingVertex,
    absorb_zero_vertex,
    bamboo,
    blow_down,
    blow_up_edge,
    blow_up_isolated,
    blow_up_leaf,
    circuit,
    disjoint_union,
    graph_first_betti,
    graph_from_dict,
    graph_to_dict,
    graph_to_dot,
    intersection_matrix,
    is_isomorphic,
    recognize_generalized_lens,
    reduce_graph,
    relabel,
    remove_zero_leaf,
    shape,
)


def _star(center, legs):
    """Genus-0 star: centre id 0, legs given as weight lists."""
    vertices = [PlumbingVertex(0, center)]
    edges = []
    nid = 1
    for leg in legs:
        previous = 0
        for w in leg:
            vertices.append(PlumbingVertex(nid, w))
            edges.append((previous, nid))
            previous = nid
            nid += 1
    return PlumbingGraph(tuple(vertices), tuple(edges))


def _perturb(graph, rng, allow_isolated=False):
    """Apply one random blow-up."""
    choices = ["leaf", "edge"] + (["isolated"] if allow_isolated else [])
    move = rng.choice(choices)
    if move == "edge" and graph.edges:
        u, w = rng.choice(graph.edges)
        return blow_up_edge(graph, u, w)
    if move == "isolated":
        return blow_up_isolated(graph, rng.choice([1, -1]))
    return blow_up_leaf(graph, rng.choice(graph.ids), rng.choice([1, -1]))


class TestPlumbingGraph:
    """Test the graph model."""

    def test_normalised_equality(self):
        """Test that insertion order does not matter."""
        a = PlumbingGraph(
            (PlumbingVertex(1, -2), PlumbingVertex(0, -3)), ((1, 0),), (1, 0)
        )
        b = PlumbingGraph(
            (PlumbingVertex(0, -3), PlumbingVertex(1, -2)), ((0, 1),), (0, 1)
        )
        assert a == b

    def test_loop_rejected(self):
        """Test that loops are rejected."""
        with pytest.raises(GraphError, match="loop"):
            PlumbingGraph((PlumbingVertex(0, -2),), ((0, 0),))

    def test_missing_endpoint_rejected(self):
        """Test that edges must join existing vertices."""
        with pytest.raises(GraphError, match="missing vertex"):
            PlumbingGraph((PlumbingVertex(0, -2),), ((0, 1),))

    def test_missing_leg_anchor_rejected(self):
        """Test that legs must be anchored at existing vertices."""
        with pytest.raises(GraphError, match="missing vertex"):
            PlumbingGraph((PlumbingVertex(0, -2),), (), (3,))

    def test_duplicate_ids_rejected(self):
        """Test that vertex ids are unique."""
        with pytest.raises(GraphError, match="duplicate"):
            PlumbingGraph((PlumbingVertex(0, -2), PlumbingVertex(0, -3)))

    def test_negative_genus_rejected(self):
        """Test that genus is non-negative."""
        with pytest.raises(GraphError, match="genus"):
            PlumbingVertex(0, -1, genus=-1)

    def test_parallel_edges(self):
        """Test that parallel edges count towards degree."""
        g = circuit([-2, -2])
        assert g.degree(0) == 2
        assert g.edge_multiplicity(0, 1) == 2

    def test_vertex_helpers(self):
        """Test weight, legs, adjacency and the next free id."""
        g = PlumbingGraph(
            (PlumbingVertex(0, -2), PlumbingVertex(1, -3), PlumbingVertex(4, -1)),
            ((0, 1), (1, 4)),
            (4, 4),
        )
        assert g.weight(1) == -3
        assert g.leg_count(4) == 2
        assert g.leg_count(0) == 0
        assert g.degree(4) == 1
        assert g.edge_multiplicity(4, 1) == 1
        assert g.edge_multiplicity(0, 4) == 0
        assert g.next_id() == 5
        assert not g.is_closed
        with pytest.raises(GraphError, match="no vertex"):
            g.weight(2)

    def test_disjoint_union_shifts_ids(self):
        """Test that the second graph is shifted past the first."""
        union, offset = disjoint_union(bamboo([-2, -2]), bamboo([-3]))
        assert offset == 2
        assert union.weight(2) == -3
        assert len(union.vertices) == 3


class TestIntersectionMatrix:
    """Test the intersection matrix."""

    def test_bamboo(self):
        """Test a two-vertex bamboo."""
        assert intersection_matrix(bamboo([-2, -2])).tolist() == [[-2, 1], [1, -2]]

    def test_circuit(self):
        """Test a three-vertex circuit."""
        assert intersection_matrix(circuit([-2, -2, -2])).tolist() == [
            [-2, 1, 1],
            [1, -2, 1],
            [1, 1, -2],
        ]

    def test_double_edge(self):
        """Test that parallel edges add up."""
        assert intersection_matrix(circuit([-2, -3])).tolist() == [[-2, 2], [2, -3]]

    def test_single_vertex(self):
        """Test a single vertex."""
        assert intersection_matrix(bamboo([-1])).tolist() == [[-1]]

    def test_symmetric_and_sized(self):
        """Test symmetry and size on a family graph."""
        m = intersection_matrix(boundary_graph_example_family(5))
        assert m.shape == (15, 15)
        assert np.array_equal(m, m.T)


class TestShape:
    """Test the shape classification."""

    def test_bamboo(self):
        """Test a genus-0 path."""
        assert shape(bamboo([-2, -3, -2])) is GraphShape.BAMBOO

    def test_circuit(self):
        """Test a 5-cycle."""
        assert shape(circuit([-2] * 5)) is GraphShape.CIRCUIT

    def test_star(self):
        """Test a centre with three legs of length one."""
        assert shape(_star(-2, [[-2], [-2], [-2]])) is GraphShape.STAR

    def test_other(self):
        """Test a tree with two branch points."""
        g = _star(-2, [[-2], [-2], [-2, -2]])
        g = blow_up_leaf(g, 3, -1)
        assert shape(g) is GraphShape.OTHER

    def test_positive_genus_path_is_other(self):
        """Test that a positive-genus path is not a bamboo."""
        g = PlumbingGraph((PlumbingVertex(0, -1, 1), PlumbingVertex(1, -2)), ((0, 1),))
        assert shape(g) is GraphShape.OTHER

    def test_disconnected_rejected(self):
        """Test that disconnected graphs are rejected."""
        union, _ = disjoint_union(bamboo([-2]), bamboo([-2]))
        with pytest.raises(GraphError, match="connected"):
            shape(union)

    def test_legs_rejected(self):
        """Test that bounded graphs are rejected."""
        g = PlumbingGraph((PlumbingVertex(0, -2),), (), (0,))
        with pytest.raises(GraphError, match="closed"):
            shape(g)


class TestFirstBetti:
    """Test the cycle rank."""

    def test_tree(self):
        """Test that trees have cycle rank 0."""
        assert graph_first_betti(_star(-2, [[-2], [-3, -2], [-5]])) == 0

    def test_even_family(self):
        """Test the one circuit of the even family graph."""
        assert graph_first_betti(expected_graph_even(6)) == 1

    def test_two_circuits(self):
        """Test two disjoint circuits."""
        union, _ = disjoint_union(circuit([-2] * 3), circuit([-2] * 4))
        assert graph_first_betti(union) == 2

    def test_empty(self):
        """Test the empty graph."""
        assert graph_first_betti(PlumbingGraph()) == 0


class TestBlowDown:
    """Test blow-downs and their inverses."""

    def test_isolated_vertex(self):
        """Test that a lone -1 vertex blows down to the empty graph."""
        assert blow_down(bamboo([-1]), 0) == PlumbingGraph()

    def test_middle_of_bamboo(self):
        """Test [-2, -1, -2] -> [-1, -1]."""
        assert is_isomorphic(blow_down(bamboo([-2, -1, -2]), 1), bamboo([-1, -1]))

    def test_end_of_bamboo(self):
        """Test [-2, -1] -> [-1]."""
        assert blow_down(bamboo([-2, -1]), 1) == bamboo([-1])

    def test_plus_one_on_tree(self):
        """Test that a +1 vertex lowers its neighbours."""
        assert is_isomorphic(blow_down(bamboo([-2, 1, -3]), 1), bamboo([-3, -4]))

    @pytest.mark.parametrize(
        "graph,vertex,message",
        [
            (bamboo([-2]), 0, "weight"),
            (PlumbingGraph((PlumbingVertex(0, -1, 1),)), 0, "genus"),
            (_star(-1, [[-2], [-2], [-2]]), 0, "degree"),
            (PlumbingGraph((PlumbingVertex(0, -1),), (), (0,)), 0, "legs"),
            (circuit([1, -2, -2]), 0, "cycle"),
            (circuit([-1, -3]), 0, "loop"),
        ],
    )
    def test_preconditions(self, graph, vertex, message):
        """Test that violated preconditions are named."""
        with pytest.raises(GraphError, match=message):
            blow_down(graph, vertex)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_leaf_round_trip(self, sign):
        """Test that blowing down a fresh leaf restores the graph."""
        g = bamboo([-2, -3, -5])
        up = blow_up_leaf(g, 1, sign)
        assert up.weight(1) == -3 + sign
        assert blow_down(up, 3) == g

    def test_edge_round_trip(self):
        """Test that blowing down a subdividing vertex restores the graph."""
        g = circuit([-2, -3, -4])
        up = blow_up_edge(g, 0, 2)
        assert up.weight(0) == -3 and up.weight(2) == -5
        assert blow_down(up, 3) == g

    def test_blow_up_edge_needs_edge(self):
        """Test that a missing edge is reported."""
        with pytest.raises(GraphError, match="no edge"):
            blow_up_edge(bamboo([-2, -2, -2]), 0, 2)


class TestZeroMoves:
    """Test the zero-weight moves."""

    def test_absorb_zero_vertex(self):
        """Test [-3, 0, -4] -> [-7]."""
        assert absorb_zero_vertex(bamboo([-3, 0, -4]), 1) == bamboo([-7])

    def test_absorb_adds_genus_and_moves_legs(self):
        """Test that genera add up and legs follow the merged vertex."""
        g = PlumbingGraph(
            (PlumbingVertex(0, -1, 1), PlumbingVertex(1, 0), PlumbingVertex(2, -2, 2)),
            ((0, 1), (1, 2)),
            (2,),
        )
        merged = absorb_zero_vertex(g, 1)
        assert merged == PlumbingGraph((PlumbingVertex(0, -3, 3),), (), (0,))

    def test_absorb_on_cycle_rejected(self):
        """Test that a zero vertex on a cycle is kept."""
        with pytest.raises(GraphError, match="cycle"):
            absorb_zero_vertex(circuit([0, -2, -2, -2, -2]), 0)

    def test_remove_zero_leaf(self):
        """Test [-3, -2, 0] -> [-3]."""
        assert remove_zero_leaf(bamboo([-3, -2, 0]), 2) == bamboo([-3])

    def test_remove_zero_leaf_preconditions(self):
        """Test that the neighbour must have degree at most 2."""
        g = _star(-2, [[0], [-2], [-2]])
        with pytest.raises(GraphError, match="neighbour"):
            remove_zero_leaf(g, 1)


class TestRecognizeLens:
    """Test generalized lens recognition."""

    @pytest.mark.parametrize(
        "weights,expected",
        [
            ([-2, -2, -2], LensParams.lens(4, 3)),
            ([-5], LensParams.lens(5, 1)),
            ([-3, -2], LensParams.lens(5, 2)),
            ([-2, -3], LensParams.lens(5, 2)),
            ([-1], LensParams.sphere()),
            ([0], LensParams.s1xs2()),
            ([-2, -1, -2], LensParams.s1xs2()),
            ([2, 2], LensParams.lens(3, 1)),
        ],
    )
    def test_bamboos(self, weights, expected):
        """Test recognition of paths."""
        assert recognize_generalized_lens(bamboo(weights)) == expected

    def test_empty_graph_is_sphere(self):
        """Test that the empty graph is S^3."""
        assert recognize_generalized_lens(PlumbingGraph()) == LensParams.sphere()

    def test_genus_vertex_is_not_lens(self):
        """Test that positive genus is not a lens space."""
        g = PlumbingGraph((PlumbingVertex(0, -1, 1),))
        assert recognize_generalized_lens(g) is None

    def test_circuit_is_not_lens(self):
        """Test that a cycle is not recognised."""
        assert recognize_generalized_lens(circuit([-2, -3, -3])) is None

    def test_star_is_not_lens(self):
        """Test that a star with three legs is not recognised."""
        assert recognize_generalized_lens(_star(-2, [[-2], [-2], [-2]])) is None

    def test_reduces_to_lens(self):
        """Test a star whose -1 leaf reduces it to a path."""
        g = _star(-3, [[-2], [-2], [-1]])
        assert recognize_generalized_lens(g) == recognize_generalized_lens(bamboo([-2, -2, -2]))

    def test_legs_rejected(self):
        """Test that boundary legs are rejected."""
        with pytest.raises(GraphError, match="closed"):
            recognize_generalized_lens(PlumbingGraph((PlumbingVertex(0, -2),), (), (0,)))

    def test_disconnected_rejected(self):
        """Test that disconnected graphs are rejected."""
        union, _ = disjoint_union(bamboo([-2]), bamboo([-3]))
        with pytest.raises(GraphError, match="connected"):
            recognize_generalized_lens(union)

    @pytest.mark.parametrize("weights", [[-2, -5], [-5, -2]])
    def test_canonical_q(self, weights):
        """Test that 9/5 and 9/2 both report the representative L(9, 2)."""
        assert str(recognize_generalized_lens(bamboo(weights))) == "L(9, 2)"

    def test_lens_params_validation(self):
        """Test that invalid lens parameters are rejected."""
        with pytest.raises(GraphError):
            LensParams.lens(4, 2)
        assert str(LensParams.lens(7, 2)) == "L(7, 2)"

    def test_determinant_matches_lens_order(self):
        """Test |det| = n on random canonical bamboos."""
        rng = random.Random(5)
        for _ in range(100):
            weights = [rng.randint(-6, -2) for _ in range(rng.randint(1, 10))]
            g = bamboo(weights)
            lens = recognize_generalized_lens(g)
            assert lens is not None and lens.n is not None
            assert abs(determinant(intersection_matrix(g))) == lens.n


class TestCalculusInvariance:
    """Test homology and lens recognition under random blow-ups."""

    def test_bamboo_perturbations(self):
        """Test 150 single blow-ups of canonical bamboos."""
        rng = random.Random(99)
        for _ in range(150):
            g = bamboo([rng.randint(-5, -2) for _ in range(rng.randint(1, 7))])
            up = _perturb(g, rng)
            assert h1_of_plumbed(up) == h1_of_plumbed(g)
            assert recognize_generalized_lens(up) == recognize_generalized_lens(g)

    def test_family_perturbations(self):
        """Test 50 single blow-ups of the example family graphs."""
        rng = random.Random(123)
        for _ in range(50):
            g = boundary_graph_example_family(rng.randint(2, 8))
            up = _perturb(g, rng)
            assert h1_of_plumbed(up) == h1_of_plumbed(g)
            assert recognize_generalized_lens(up) is None

    def test_isolated_blow_ups_keep_homology(self):
        """Test that adding a +-1 component keeps H_1."""
        rng = random.Random(4)
        for _ in range(20):
            g = bamboo([rng.randint(-5, -2) for _ in range(rng.randint(1, 5))])
            assert h1_of_plumbed(blow_up_isolated(g, rng.choice([1, -1]))) == h1_of_plumbed(g)

    def test_reduce_graph_keeps_homology(self):
        """Test that full reduction keeps H_1."""
        rng = random.Random(8)
        for _ in range(30):
            g = bamboo([rng.randint(-3, 1) for _ in range(rng.randint(1, 6))])
            assert h1_of_plumbed(reduce_graph(g)) == h1_of_plumbed(g)


class TestIsomorphism:
    """Test labelled isomorphism."""

    def test_relabelled(self):
        """Test that relabelling keeps the isomorphism class."""
        g = boundary_graph_example_family(4)
        assert is_isomorphic(g, relabel(g, 100))

    def test_weights_matter(self):
        """Test that different weights are told apart."""
        assert not is_isomorphic(bamboo([-2, -3]), bamboo([-2, -2]))

    def test_multiplicities_matter(self):
        """Test that parallel edge counts are compared."""
        vertices = (PlumbingVertex(0, -1), PlumbingVertex(1, -2), PlumbingVertex(2, -3))
        a = PlumbingGraph(vertices, ((0, 1), (0, 1), (1, 2)))
        b = PlumbingGraph(vertices, ((0, 1), (1, 2), (1, 2)))
        assert not is_isomorphic(a, b)

    def test_legs_matter(self):
        """Test that leg counts are compared."""
        a = PlumbingGraph((PlumbingVertex(0, -2),), (), (0,))
        assert not is_isomorphic(a, bamboo([-2]))


class TestInterchange:
    """Test the JSON and DOT formats."""

    def test_round_trip(self):
        """Test that a graph with legs and genus survives JSON."""
        g = PlumbingGraph(
            (PlumbingVertex(0, -1, 2), PlumbingVertex(1, -3)), ((0, 1), (0, 1)), (1,)
        )
        data = graph_to_dict(g)
        assert data["vertices"][0] == {"id": 0, "genus": 2, "e": -1}
        assert graph_from_dict(data) == g

    def test_missing_field(self):
        """Test that missing vertices are reported."""
        with pytest.raises(InputError, match="vertices"):
            graph_from_dict({"edges": []})

    def test_bad_type(self):
        """Test that non-integer ids are reported."""
        with pytest.raises(InputError, match=r"vertices\[0\]\.id"):
            graph_from_dict({"vertices": [{"id": "a", "e": -2}]})

    @pytest.mark.parametrize(
        "data,field", [({"vertices": 3}, "vertices"), ({"vertices": [], "edges": 7}, "edges")]
    )
    def test_not_a_list(self, data, field):
        """Test that list fields holding scalars are reported by name."""
        with pytest.raises(InputError, match=f"graph.{field}: expected a list"):
            graph_from_dict(data)

    def test_structural_error(self):
        """Test that dangling edges are graph errors."""
        with pytest.raises(GraphError):
            graph_from_dict({"vertices": [{"id": 0, "e": -2}], "edges": [[0, 1]]})

    def test_dot(self):
        """Test the DOT rendering."""
        graph = PlumbingGraph((PlumbingVertex(0, -2), PlumbingVertex(1, -3)), ((0, 1),), (1,))
        dot = graph_to_dot(graph)
        assert dot.startswith("graph plumbing {")
        assert 'v0 [label="g=0, e=-2"];' in dot
        assert "v0 -- v1;" in dot
        assert "v1 -- leg0 [dir=forward, arrowhead=normal];" in dot
