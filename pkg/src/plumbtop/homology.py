"""
First homology of plumbed 3-manifolds and closed forms for the germ families.
"""

import logging
from dataclasses import dataclass
from math import gcd, prod
from typing import Any, Dict, Tuple

from plumbtop.errors import GermError, GraphError, PlumbtopError
from plumbtop.linalg import MatrixLike, as_int_matrix, invariant_factors
from plumbtop.plumbing import PlumbingGraph, graph_first_betti, intersection_matrix
from plumbtop.seifert import SeifertData, seifert_presentation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomologyResult:
    """A finitely generated abelian group Z^free_rank + Z/t_1 + ... + Z/t_k.

    Torsion factors are at least 2 and each divides the next.
    """

    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise PlumbtopError(f"free rank must be >= 0, got {self.free_rank}")
        if any(t < 2 for t in self.torsion):
            raise PlumbtopError(f"torsion factors must be >= 2, got {self.torsion}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise PlumbtopError(f"torsion factors {self.torsion} are not a divisibility chain")

    @property
    def order(self) -> int:
        """Order of the torsion subgroup."""
        return prod(self.torsion)

    @property
    def is_finite(self) -> bool:
        """True when there is no free part, so the group is finite."""
        return self.free_rank == 0

    def render(self) -> str:
        """Format as ``Z^r ⊕ Z/d1 ⊕ ...``; the trivial group is ``0``."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def to_dict(self) -> Dict[str, Any]:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "group": self.render()}

    def __str__(self) -> str:
        return self.render()


def cokernel(matrix: MatrixLike, extra_free: int = 0) -> HomologyResult:
    """Cokernel of an integer matrix, plus ``extra_free`` free generators."""
    m = as_int_matrix(matrix)
    factors = invariant_factors(m)
    free = extra_free + m.shape[0] - sum(1 for x in factors if x != 0)
    return HomologyResult(free, tuple(x for x in factors if x > 1))


def h1_of_plumbed(G: PlumbingGraph) -> HomologyResult:
    """H_1 of the closed manifold plumbed along G.

    The free rank is 2 * sum(genus) + b_1(G) + nullity(A) and the torsion is
    given by the invariant factors of the intersection matrix A.

    Raises:
        GraphError: If G has boundary legs.

    Example:
        >>> h1_of_plumbed(bamboo([-2, -2, -2])).render()
        'Z/4'
    """
    if G.legs:
        raise GraphError("h1_of_plumbed needs a closed graph (boundary legs present)")
    genera = 2 * sum(v.genus for v in G.vertices)
    result = cokernel(intersection_matrix(G), genera + graph_first_betti(G))
    logger.debug("h1 of %d-vertex graph: %s", len(G.vertices), result)
    return result


def h1_of_seifert(S: SeifertData) -> HomologyResult:
    """H_1 of a closed Seifert manifold from its standard presentation."""
    return cokernel(seifert_presentation(S).T)


def hirzebruch_h1(m: int, k: int, l: int) -> HomologyResult:
    """Closed form for H_1 of the boundary of the Milnor fiber of z^m - x^k y^l.

    With d = gcd(k, l), kb = k/d and lb = l/d the free rank is 2(m-1)(d-1);
    the torsion has m-2 factors kb*lb and one factor m*kb*lb.

    Raises:
        GermError: If m < 2, k < 1, l <= k or gcd(m, k, l) != 1.
    """
    if m < 2:
        raise GermError(f"m must be >= 2, got {m}")
    if k < 1:
        raise GermError(f"k must be >= 1, got {k}")
    if l <= k:
        raise GermError(f"l must be > k, got k={k}, l={l}")
    if gcd(m, gcd(k, l)) != 1:
        raise GermError(f"gcd(m, k, l) must be 1, got gcd({m}, {k}, {l}) = {gcd(m, gcd(k, l))}")
    d = gcd(k, l)
    kl = (k // d) * (l // d)
    torsion = [kl] * (m - 2) + [m * kl]
    return HomologyResult(2 * (m - 1) * (d - 1), tuple(t for t in torsion if t > 1))


def example_family_h1(l: int) -> HomologyResult:
    """H_1 of the boundary of the Milnor fiber of z^2 - (x^2 - y^3) y^l.

    Odd l gives Z/4l. Even l gives Z plus a torsion group of order l(l+3)
    whose factors are read off the circuit graph.
    """
    if l < 2:
        raise GermError(f"l must be >= 2, got {l}")
    if l % 2:
        return HomologyResult(0, (4 * l,))
    from plumbtop.assembly import expected_graph_even

    return h1_of_plumbed(expected_graph_even(l))
