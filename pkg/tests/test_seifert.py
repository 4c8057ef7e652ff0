"""Tests for Seifert invariants and mapping tori."""

import random
from fractions import Fraction
from math import gcd

import pytest

from plumbtop.errors import InputError, SeifertError
from plumbtop.homology import h1_of_plumbed, h1_of_seifert
from plumbtop.plumbing import PlumbingGraph, PlumbingVertex, bamboo, is_isomorphic
from plumbtop.seifert import (
    BoundaryOrbit,
    MonodromyData,
    SeifertData,
    SeifertPair,
    change_section,
    e0,
    eval_neg_cont_frac,
    mapping_torus_seifert,
    neg_cont_frac,
    normalize_pair,
    quotient_euler_char,
    seifert_from_dict,
    seifert_presentation,
    seifert_to_dict,
    star_graph,
)


def _pairs(*items):
    return tuple(SeifertPair.from_invariant(a, b) for a, b in items)


def _closed_monodromy(rng):
    """Random valid Z/N action on a closed surface: returns (data, base genus)."""
    while True:
        order = rng.randint(2, 12)
        base_genus = rng.randint(0, 2)
        count = rng.randint(0, 6)
        units = [b for b in range(1, order) if gcd(b, order) == 1]
        betas = [rng.choice(units) for _ in range(max(count - 1, 0))]
        if count:
            last = (-sum(betas)) % order
            if gcd(last, order) != 1:
                continue
            betas.append(last)
        classes = tuple(pow(b, -1, order) for b in betas)
        chi = order * (2 - 2 * base_genus) - count * (order - 1)
        return MonodromyData(chi, 0, order, classes), base_genus


class TestSeifertPair:
    """Test pair normalisation."""

    @pytest.mark.parametrize(
        "alpha,rotation,beta_star,beta",
        [(2, 1, 1, 1), (5, -2, 3, 2), (7, 3, 3, 5), (4, -1, 3, 3)],
    )
    def test_normalize_pair(self, alpha, rotation, beta_star, beta):
        """Test beta_star reduction and beta inversion."""
        pair = normalize_pair(alpha, rotation)
        assert (pair.beta_star, pair.beta) == (beta_star, beta)

    @pytest.mark.parametrize("l", [3, 5, 7, 9, 11])
    def test_odd_family_rotation(self, l):
        """Test the rotation -2/l at the fixed points of the odd family."""
        pair = normalize_pair(l, -2)
        assert pair.beta_star == l - 2
        assert (pair.beta * (l - 2)) % l == 1

    @pytest.mark.parametrize("alpha,rotation", [(4, 2), (3, 0), (6, 9), (1, 1)])
    def test_invalid(self, alpha, rotation):
        """Test that non-coprime data is rejected."""
        with pytest.raises(SeifertError):
            normalize_pair(alpha, rotation)

    def test_from_invariant(self):
        """Test an unnormalised beta."""
        pair = SeifertPair.from_invariant(5, 7)
        assert pair.beta_star == 3
        assert pair.beta_reduced == 2
        assert pair.shift == 1

    def test_inconsistent_pair_rejected(self):
        """Test that beta must invert beta_star."""
        with pytest.raises(SeifertError, match="not 1 mod"):
            SeifertPair(5, 2, 2)

    def test_round_trip_property(self):
        """Test beta * beta_star = 1 mod alpha for all coprime classes."""
        for alpha in range(2, 40):
            for c in range(-alpha, alpha):
                if gcd(c, alpha) == 1:
                    pair = normalize_pair(alpha, c)
                    assert (pair.beta * pair.beta_star) % alpha == 1
                    assert 0 < pair.beta < alpha


class TestEulerNumber:
    """Test the rational Euler number."""

    @pytest.mark.parametrize(
        "e,pairs,expected",
        [
            (1, [(2, 1), (2, 1)], Fraction(0)),
            (0, [], Fraction(0)),
            (1, [(2, 1), (3, 1), (5, 1)], Fraction(-1, 30)),
            (-1, [(2, 1), (3, 1), (5, 1)], Fraction(-61, 30)),
        ],
    )
    def test_values(self, e, pairs, expected):
        """Test e0 on small data."""
        assert e0(SeifertData(0, 0, _pairs(*pairs), e)) == expected

    def test_missing_e(self):
        """Test that e0 needs e."""
        with pytest.raises(SeifertError, match="Euler number"):
            e0(SeifertData(0, 1, _pairs((2, 1))))

    def test_section_change_invariance(self):
        """Test that beta -> beta + alpha with e -> e + 1 keeps e0."""
        rng = random.Random(17)
        for _ in range(50):
            pairs = []
            for _ in range(rng.randint(1, 4)):
                alpha = rng.randint(2, 9)
                beta = rng.choice([b for b in range(-9, 10) if gcd(alpha, b) == 1])
                pairs.append((alpha, beta))
            S = SeifertData(rng.randint(0, 2), 0, _pairs(*pairs), rng.randint(-3, 3))
            assert e0(change_section(S, rng.randrange(len(pairs)))) == e0(S)


class TestQuotientEulerChar:
    """Test Riemann-Hurwitz bookkeeping."""

    @pytest.mark.parametrize("l", [3, 5, 7, 9])
    def test_odd_family_disc(self, l):
        """Test that the odd family quotient is a disc."""
        assert quotient_euler_char(2 - l, l, 2) == 1

    @pytest.mark.parametrize("l", [4, 6, 8, 10])
    def test_even_family_annulus(self, l):
        """Test that the even family quotient is an annulus."""
        assert quotient_euler_char(2 - l, l // 2, 2) == 0

    @pytest.mark.parametrize("chi,fixed", [(-4, 0), (1, 3), (0, 7)])
    def test_identity(self, chi, fixed):
        """Test that order 1 leaves chi unchanged."""
        assert quotient_euler_char(chi, 1, fixed) == chi

    def test_non_integral_rejected(self):
        """Test that a non-divisible numerator is rejected."""
        with pytest.raises(SeifertError, match="Riemann-Hurwitz"):
            quotient_euler_char(1, 2, 0)


class TestMonodromyData:
    """Test monodromy validation."""

    def test_non_coprime_class(self):
        """Test that a rotation class must be a unit."""
        with pytest.raises(SeifertError, match="coprime"):
            MonodromyData(-4, 0, 4, (2, 2, 2, 2))

    def test_identity_with_fixed_points(self):
        """Test that the identity has no isolated fixed points."""
        with pytest.raises(SeifertError, match="identity"):
            MonodromyData(2, 0, 1, (1,))

    def test_orbits_must_cover_boundary(self):
        """Test that orbit sizes add up to the boundary count."""
        with pytest.raises(SeifertError, match="cover"):
            MonodromyData(0, 2, 1, (), (BoundaryOrbit(1),))

    def test_riemann_hurwitz(self):
        """Test that inconsistent data is rejected."""
        with pytest.raises(SeifertError, match="Riemann-Hurwitz"):
            MonodromyData(-1, 1, 3, (1,), (BoundaryOrbit(1),))


class TestMappingTorus:
    """Test the mapping torus dictionary."""

    def test_odd_family_zone(self):
        """Test l = 5: two fixed points of rotation -2/5 over a disc."""
        M = MonodromyData(-3, 1, 5, (3, 3), (BoundaryOrbit(1, Fraction(0)),))
        S = mapping_torus_seifert(M)
        assert (S.base_genus, S.boundary_count, S.e) == (0, 1, 0)
        assert [(p.alpha, p.beta_star) for p in S.pairs] == [(5, 3), (5, 3)]

    def test_even_family_zone(self):
        """Test l = 4: two fixed points of order 2 over an annulus."""
        M = MonodromyData(-2, 2, 2, (1, 1), (BoundaryOrbit(1), BoundaryOrbit(1)))
        S = mapping_torus_seifert(M)
        assert (S.base_genus, S.boundary_count) == (0, 2)
        assert [p.alpha for p in S.pairs] == [2, 2]

    def test_identity(self):
        """Test that identity monodromy gives a product."""
        S = mapping_torus_seifert(MonodromyData(-2, 0, 1))
        assert S == SeifertData(2, 0, (), 0)

    def test_holonomy_violation(self):
        """Test that sum(beta) must vanish mod N on a closed fiber."""
        with pytest.raises(SeifertError, match="holonomy"):
            mapping_torus_seifert(MonodromyData(2, 0, 3, (1, 1)))

    def test_rotation_of_sphere(self):
        """Test the rotation of S^2 by a third of a turn."""
        S = mapping_torus_seifert(MonodromyData(2, 0, 3, (1, 2)))
        assert S.e == 1
        assert e0(S) == 0

    def test_e0_vanishes_on_closed_fibers(self):
        """Test e0 = 0 on 100 random periodic maps of closed surfaces."""
        rng = random.Random(314)
        for _ in range(100):
            M, base_genus = _closed_monodromy(rng)
            S = mapping_torus_seifert(M)
            assert S.base_genus == base_genus
            assert len(S.pairs) == len(M.fixed_points)
            assert e0(S) == 0


class TestNegContFrac:
    """Test negative continued fractions."""

    @pytest.mark.parametrize(
        "n,q,expected", [(4, 3, [2, 2, 2]), (5, 1, [5]), (5, 2, [3, 2]), (7, 3, [3, 2, 2])]
    )
    def test_values(self, n, q, expected):
        """Test known expansions."""
        assert neg_cont_frac(n, q) == expected

    @pytest.mark.parametrize("n,q", [(4, 2), (3, 3), (2, 0), (3, 5)])
    def test_invalid(self, n, q):
        """Test that invalid input is rejected."""
        with pytest.raises(SeifertError):
            neg_cont_frac(n, q)

    def test_exact_for_all_small_fractions(self):
        """Test entries >= 2 and exact evaluation for n <= 200."""
        for n in range(2, 201):
            for q in range(1, n):
                if gcd(n, q) == 1:
                    entries = neg_cont_frac(n, q)
                    assert min(entries) >= 2
                    assert eval_neg_cont_frac(entries) == Fraction(n, q)

    def test_eval_empty(self):
        """Test that an empty expansion is rejected."""
        with pytest.raises(SeifertError):
            eval_neg_cont_frac([])


class TestStarGraph:
    """Test star-shaped graphs of Seifert data."""

    def test_circle_bundle(self):
        """Test a circle bundle over the sphere."""
        assert star_graph(SeifertData(0, 0, (), -2)) == bamboo([-2])

    def test_one_pair(self):
        """Test one (2, 1) pair."""
        assert star_graph(SeifertData(0, 0, _pairs((2, 1)), 1)) == bamboo([0, -2])

    def test_shift_goes_to_centre(self):
        """Test that beta beyond alpha lowers the centre weight."""
        assert star_graph(SeifertData(0, 0, _pairs((2, 3)), 1)).weight(0) == -1

    def test_odd_family_zone(self):
        """Test the zone of l = 5: legs [-2, -3] and one boundary leg."""
        S = SeifertData(0, 1, (normalize_pair(5, -2), normalize_pair(5, -2)), 0)
        expected = PlumbingGraph(
            (
                PlumbingVertex(0, -2),
                PlumbingVertex(1, -2),
                PlumbingVertex(2, -3),
                PlumbingVertex(3, -2),
                PlumbingVertex(4, -3),
            ),
            ((0, 1), (1, 2), (0, 3), (3, 4)),
            (0,),
        )
        assert star_graph(S) == expected

    def test_genus_on_centre(self):
        """Test that the base genus sits on the centre."""
        assert star_graph(SeifertData(3, 0, (), 0)).vertex(0).genus == 3

    def test_missing_e(self):
        """Test that the Euler number is required."""
        with pytest.raises(SeifertError):
            star_graph(SeifertData(0, 0, _pairs((2, 1))))

    def test_matches_seifert_presentation(self):
        """Test H_1 of the star against the Seifert presentation on 20 random data."""
        rng = random.Random(2718)
        for _ in range(20):
            pairs = []
            for _ in range(rng.randint(0, 4)):
                alpha = rng.randint(2, 5)
                beta = rng.choice([b for b in range(-7, 8) if gcd(alpha, b) == 1])
                pairs.append((alpha, beta))
            S = SeifertData(rng.randint(0, 1), 0, _pairs(*pairs), rng.randint(-3, 3))
            assert h1_of_plumbed(star_graph(S)) == h1_of_seifert(S)


class TestPresentation:
    """Test the Seifert presentation matrix."""

    def test_shape(self):
        """Test rows and columns with free generators."""
        m = seifert_presentation(SeifertData(1, 0, _pairs((2, 1), (3, 1)), 0))
        assert m.tolist() == [[0, 0, 2, 0, 1], [0, 0, 0, 3, 1], [0, 0, 1, 1, 0]]

    def test_bounded_rejected(self):
        """Test that bounded data has no closed presentation."""
        with pytest.raises(SeifertError, match="closed"):
            seifert_presentation(SeifertData(0, 1, (), 0))

    def test_poincare_sphere(self):
        """Test that (2,1),(3,1),(5,1) with e = 1 is a homology sphere."""
        assert h1_of_seifert(SeifertData(0, 0, _pairs((2, 1), (3, 1), (5, 1)), 1)).render() == "0"


class TestSerialisation:
    """Test the Seifert JSON form."""

    def test_round_trip(self):
        """Test that data survives JSON."""
        S = SeifertData(1, 2, _pairs((3, 2), (5, 7)), 0)
        data = seifert_to_dict(S)
        assert data == {"g": 1, "r": 2, "pairs": [[3, 2], [5, 7]], "e": 0}
        assert seifert_from_dict(data) == S

    def test_missing_field(self):
        """Test that a missing genus is reported."""
        with pytest.raises(InputError):
            seifert_from_dict({"pairs": []})

    def test_invalid_pair(self):
        """Test that invalid pairs stay Seifert errors."""
        with pytest.raises(SeifertError):
            seifert_from_dict({"g": 0, "pairs": [[4, 2]]})

    def test_star_of_identity_is_product(self):
        """Test that identity monodromy over a torus gives a genus-1 vertex."""
        S = mapping_torus_seifert(MonodromyData(0, 0, 1))
        assert is_isomorphic(star_graph(S), PlumbingGraph((PlumbingVertex(0, 0, 1),)))
