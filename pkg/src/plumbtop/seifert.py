"""
Seifert invariants and mapping tori of periodic surface diffeomorphisms.

A closed orientable Seifert manifold is described by the genus of its base,
a list of pairs (alpha, beta) (one per exceptional fiber) and an integer Euler
number e. Only e0 = e - sum(beta / alpha) is independent of the choice of the
betas. Bounded Seifert pieces carry product sections on their boundary tori,
relative to which e is taken to be 0.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from plumbtop.constants import BOUNDED_EULER_NUMBER
from plumbtop.errors import InputError, SeifertError
from plumbtop.linalg import IntMatrix
from plumbtop.plumbing import PlumbingGraph, PlumbingVertex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeifertPair:
    """Exceptional fiber of isotropy ``alpha``.

    ``beta_star`` is the rotation numerator of the slice (angle
    2*pi*beta_star/alpha, 0 < beta_star < alpha) and ``beta`` any inverse of
    it modulo alpha.
    """

    alpha: int
    beta: int
    beta_star: int

    def __post_init__(self) -> None:
        if self.alpha < 2:
            raise SeifertError(f"alpha must be >= 2, got {self.alpha}")
        if not 0 < self.beta_star < self.alpha:
            raise SeifertError(f"beta_star must lie in (0, {self.alpha}), got {self.beta_star}")
        if gcd(self.alpha, self.beta_star) != 1:
            raise SeifertError(f"gcd({self.alpha}, {self.beta_star}) != 1")
        if (self.beta * self.beta_star) % self.alpha != 1:
            raise SeifertError(
                f"beta * beta_star = {self.beta} * {self.beta_star} is not 1 mod {self.alpha}"
            )

    @classmethod
    def from_invariant(cls, alpha: int, beta: int) -> "SeifertPair":
        """Build a pair from an unnormalised Seifert invariant beta."""
        if alpha < 2 or gcd(alpha, beta) != 1:
            raise SeifertError(f"({alpha}, {beta}) is not a valid Seifert pair")
        return cls(alpha, beta, pow(beta % alpha, -1, alpha))

    @property
    def beta_reduced(self) -> int:
        """beta reduced into (0, alpha)."""
        return self.beta % self.alpha

    @property
    def shift(self) -> int:
        """The integer t with beta = beta_reduced + t * alpha."""
        return (self.beta - self.beta_reduced) // self.alpha


@dataclass(frozen=True)
class SeifertData:
    """Seifert invariants of a (possibly bounded) orientable Seifert manifold."""

    base_genus: int
    boundary_count: int
    pairs: Tuple[SeifertPair, ...] = ()
    e: Optional[int] = None

    def __post_init__(self) -> None:
        if self.base_genus < 0:
            raise SeifertError(f"base genus must be >= 0, got {self.base_genus}")
        if self.boundary_count < 0:
            raise SeifertError(f"boundary count must be >= 0, got {self.boundary_count}")
        object.__setattr__(self, "pairs", tuple(self.pairs))

    @property
    def is_closed(self) -> bool:
        return self.boundary_count == 0


@dataclass(frozen=True)
class BoundaryOrbit:
    """An orbit of the monodromy on the boundary circles of the fiber.

    ``return_turn`` is the rotation of h**size on one circle of the orbit, as a
    fraction of a full turn in [0, 1).
    """

    size: int
    return_turn: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.size < 1:
            raise SeifertError(f"orbit size must be >= 1, got {self.size}")
        if not 0 <= self.return_turn < 1:
            raise SeifertError(f"return turn must lie in [0, 1), got {self.return_turn}")


@dataclass(frozen=True)
class MonodromyData:
    """A periodic diffeomorphism of a compact surface, up to what Seifert data sees."""

    fiber_euler_char: int
    fiber_boundary_circles: int
    order: int
    fixed_points: Tuple[int, ...] = ()
    boundary_orbits: Tuple[BoundaryOrbit, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "fixed_points", tuple(self.fixed_points))
        object.__setattr__(self, "boundary_orbits", tuple(self.boundary_orbits))
        if self.order < 1:
            raise SeifertError(f"monodromy order must be >= 1, got {self.order}")
        if self.order == 1 and self.fixed_points:
            raise SeifertError("the identity has no isolated fixed points")
        for c in self.fixed_points:
            if gcd(c % self.order, self.order) != 1:
                raise SeifertError(f"rotation class {c} is not coprime to order {self.order}")
        covered = sum(orbit.size for orbit in self.boundary_orbits)
        if covered != self.fiber_boundary_circles:
            raise SeifertError(
                f"boundary orbits cover {covered} circles, fiber has {self.fiber_boundary_circles}"
            )
        # Riemann-Hurwitz integrality
        quotient_euler_char(self.fiber_euler_char, self.order, len(self.fixed_points))


def normalize_pair(alpha: int, rotation_class: int) -> SeifertPair:
    """Return the Seifert pair of a slice rotating by 2*pi*rotation_class/alpha.

    Args:
        alpha: Isotropy order, at least 2.
        rotation_class: Any integer coprime to alpha.

    Returns:
        Pair with beta_star = rotation_class mod alpha and beta its inverse in
        (0, alpha).

    Example:
        >>> normalize_pair(5, -2)
        SeifertPair(alpha=5, beta=2, beta_star=3)
    """
    if alpha < 2:
        raise SeifertError(f"alpha must be >= 2, got {alpha}")
    beta_star = rotation_class % alpha
    if beta_star == 0 or gcd(alpha, beta_star) != 1:
        raise SeifertError(f"rotation class {rotation_class} is not coprime to {alpha}")
    return SeifertPair(alpha, pow(beta_star, -1, alpha), beta_star)


def e0(S: SeifertData) -> Fraction:
    """Rational Euler number e - sum(beta / alpha)."""
    if S.e is None:
        raise SeifertError("e0 needs the Euler number e")
    return Fraction(S.e) - sum((Fraction(p.beta, p.alpha) for p in S.pairs), Fraction(0))


def change_section(S: SeifertData, index: int) -> SeifertData:
    """Replace beta_i by beta_i + alpha_i and e by e + 1; e0 is unchanged."""
    if S.e is None:
        raise SeifertError("a section change needs the Euler number e")
    pairs = list(S.pairs)
    p = pairs[index]
    pairs[index] = SeifertPair(p.alpha, p.beta + p.alpha, p.beta_star)
    return SeifertData(S.base_genus, S.boundary_count, tuple(pairs), S.e + 1)


def quotient_euler_char(chi_fiber: int, order: int, fixed_count: int) -> int:
    """Euler characteristic of the orbit surface of a Z/order action.

    Args:
        chi_fiber: Euler characteristic of the surface.
        order: Order N of the action, at least 1.
        fixed_count: Number of points with isotropy exactly N.

    Returns:
        (chi_fiber + fixed_count * (N - 1)) / N.

    Raises:
        SeifertError: If the division is not exact.
    """
    if order < 1:
        raise SeifertError(f"order must be >= 1, got {order}")
    numerator = chi_fiber + fixed_count * (order - 1)
    if numerator % order:
        raise SeifertError(
            f"Riemann-Hurwitz fails: {chi_fiber} + {fixed_count}*({order}-1) "
            f"is not divisible by {order}"
        )
    return numerator // order


def mapping_torus_seifert(M: MonodromyData) -> SeifertData:
    """Seifert invariants of the mapping torus of a periodic diffeomorphism.

    Every fixed point gives a pair normalize_pair(N, class). For a closed fiber
    e is chosen so that e0 = 0, which requires sum(beta) = 0 mod N; for a
    bounded fiber e is taken relative to the product sections.

    Raises:
        SeifertError: On inconsistent Riemann-Hurwitz or holonomy data.
    """
    chi_base = quotient_euler_char(M.fiber_euler_char, M.order, len(M.fixed_points))
    r = len(M.boundary_orbits)
    if (2 - r - chi_base) % 2 or 2 - r - chi_base < 0:
        raise SeifertError(f"orbit surface with chi={chi_base} and {r} boundary circles")
    genus = (2 - r - chi_base) // 2
    pairs = tuple(normalize_pair(M.order, c) for c in M.fixed_points) if M.order > 1 else ()

    if r:
        e = BOUNDED_EULER_NUMBER
    else:
        total = sum(p.beta for p in pairs)
        if total % M.order:
            raise SeifertError(f"holonomy fails: sum of betas {total} is not 0 mod {M.order}")
        e = total // M.order
    logger.debug("mapping torus: g=%d r=%d pairs=%d e=%d", genus, r, len(pairs), e)
    return SeifertData(genus, r, pairs, e)


def neg_cont_frac(n: int, q: int) -> List[int]:
    """Expand n/q as a negative continued fraction e1 - 1/(e2 - ...), all ei >= 2.

    Example:
        >>> neg_cont_frac(5, 2)
        [3, 2]
    """
    if not n > q >= 1 or gcd(n, q) != 1:
        raise SeifertError(f"neg_cont_frac needs n > q >= 1 coprime, got ({n}, {q})")
    entries = []
    while q > 0:
        e = -(-n // q)
        entries.append(e)
        n, q = q, e * q - n
    return entries


def eval_neg_cont_frac(entries: Sequence[int]) -> Fraction:
    """Evaluate e1 - 1/(e2 - 1/(... - 1/ek)) exactly."""
    if not entries:
        raise SeifertError("empty continued fraction")
    value = Fraction(entries[-1])
    for e in reversed(entries[:-1]):
        value = e - 1 / value
    return value


def leg_weights(pair: SeifertPair) -> List[int]:
    """Weights of the star leg of an exceptional fiber."""
    b = pair.beta_reduced
    return [-x for x in neg_cont_frac(pair.alpha, pair.alpha - b)]


def star_graph(S: SeifertData) -> PlumbingGraph:
    """Star-shaped plumbing graph of Seifert data.

    The centre (id 0) has the base genus and weight e - sum(t_i) - n, where
    beta_i = beta_reduced_i + t_i * alpha_i over the n pairs. Each pair gives a
    leg -neg_cont_frac(alpha, alpha - beta_reduced). Bounded data gets one
    boundary leg per boundary torus on the centre.
    """
    if S.e is None:
        raise SeifertError("star_graph needs the Euler number e")
    centre = S.e - sum(p.shift for p in S.pairs) - len(S.pairs)
    vertices = [PlumbingVertex(0, centre, S.base_genus)]
    edges = []
    next_id = 1
    for pair in S.pairs:
        previous = 0
        for w in leg_weights(pair):
            vertices.append(PlumbingVertex(next_id, w))
            edges.append((previous, next_id))
            previous = next_id
            next_id += 1
    return PlumbingGraph(tuple(vertices), tuple(edges), (0,) * S.boundary_count)


def seifert_presentation(S: SeifertData) -> IntMatrix:
    """Presentation matrix of H_1 of a closed Seifert manifold.

    Columns: 2g free generators, then q_1..q_n, then the fiber h. Rows: the
    relations alpha_i q_i + beta_i h = 0 and q_1 + ... + q_n + e h = 0.
    """
    if not S.is_closed:
        raise SeifertError("seifert_presentation needs closed Seifert data")
    if S.e is None:
        raise SeifertError("seifert_presentation needs the Euler number e")
    g2, n = 2 * S.base_genus, len(S.pairs)
    matrix = np.zeros((n + 1, g2 + n + 1), dtype=object)
    for i, pair in enumerate(S.pairs):
        matrix[i, g2 + i] = pair.alpha
        matrix[i, g2 + n] = pair.beta
        matrix[n, g2 + i] = 1
    matrix[n, g2 + n] = S.e
    return matrix


def seifert_to_dict(S: SeifertData) -> Dict[str, Any]:
    return {
        "g": S.base_genus,
        "r": S.boundary_count,
        "pairs": [[p.alpha, p.beta] for p in S.pairs],
        "e": S.e,
    }


def seifert_from_dict(data: Mapping[str, Any]) -> SeifertData:
    """Parse ``{"g": int, "r": int, "pairs": [[alpha, beta]], "e": int | null}``."""
    try:
        pairs = tuple(SeifertPair.from_invariant(int(a), int(b)) for a, b in data.get("pairs", []))
        e = data.get("e")
        euler = None if e is None else int(e)
        return SeifertData(int(data["g"]), int(data.get("r", 0)), pairs, euler)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SeifertError):
            raise
        raise InputError(f"seifert data: {exc}") from exc
