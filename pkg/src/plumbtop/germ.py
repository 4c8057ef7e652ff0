"""
Germs f = z^m - g(x, y) with g non-reduced, and their vanishing zones.

A germ is described combinatorially: for each branch g_i of g its
multiplicity n_i in the factorisation and its Milnor number, and the local
intersection multiplicities m0(g_i, g_j) between branches. The branches with
n_i >= 2 form the singular locus of f; each of them has a vanishing zone in
the boundary of the Milnor fiber, the mapping torus of a periodic vertical
monodromy h acting on the Milnor fiber of z^m - y^n_i.
"""

import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from plumbtop.constants import CUSP_AXIS_INTERSECTION, CUSP_MILNOR_NUMBER
from plumbtop.errors import GermError, InputError
from plumbtop.seifert import (
    BoundaryOrbit,
    MonodromyData,
    SeifertData,
    mapping_torus_seifert,
    seifert_to_dict,
)

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BranchData:
    """One irreducible factor g_i of g, with its exponent and Milnor number."""

    multiplicity: int
    milnor_number: int = 0

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise GermError(f"branch multiplicity must be >= 1, got {self.multiplicity}")
        if self.milnor_number < 0:
            raise GermError(f"Milnor number must be >= 0, got {self.milnor_number}")

    @property
    def is_smooth(self) -> bool:
        return self.milnor_number == 0


def reduced_germ_check(branches: Sequence[BranchData]) -> None:
    """Reject a reduced g, whose Milnor fiber boundary has no vanishing zones.

    Args:
        branches: The branches g_i with their exponents n_i.

    Raises:
        GermError: If every n_i equals 1.
    """
    if all(b.multiplicity == 1 for b in branches):
        raise GermError("g is reduced: no branch has multiplicity >= 2")


@dataclass(frozen=True)
class GermData:
    """Combinatorial data of f = z^m - g(x, y).

    ``intersections`` is the full symmetric matrix of m0(g_i, g_j); its
    diagonal is ignored. ``irreducible`` records whether f itself is
    irreducible, which the data alone cannot decide.
    """

    m: int
    branches: Tuple[BranchData, ...]
    intersections: Tuple[Tuple[int, ...], ...] = ()
    irreducible: bool = True
    name: str = ""

    def __post_init__(self) -> None:
        branches = tuple(self.branches)
        object.__setattr__(self, "branches", branches)
        n = len(branches)
        if self.m < 2:
            raise GermError(f"m must be >= 2, got {self.m}")
        if not branches:
            raise GermError("a germ needs at least one branch")
        if not self.intersections and n == 1:
            object.__setattr__(self, "intersections", ((0,),))
        rows = tuple(tuple(row) for row in self.intersections)
        object.__setattr__(self, "intersections", rows)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise GermError(f"intersections must be a {n}x{n} matrix")
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if rows[i][j] != rows[j][i]:
                    raise GermError(f"intersections not symmetric at ({i}, {j})")
                if rows[i][j] < 1:
                    raise GermError(f"intersection m0(g{i}, g{j}) must be >= 1, got {rows[i][j]}")
        reduced_germ_check(branches)


@dataclass(frozen=True)
class FiberInvariants:
    """Topology of a compact orientable surface."""

    euler_char: int
    genus: int
    boundary: int

    @property
    def is_disc(self) -> bool:
        return self.genus == 0 and self.boundary == 1


@dataclass(frozen=True)
class VanishingZoneData:
    """The vanishing zone of one singular branch."""

    branch_index: int
    k: int
    d: int
    fiber: FiberInvariants
    monodromy: MonodromyData
    seifert: SeifertData
    orbits_verified: bool = True


@dataclass(frozen=True)
class LensVerdict:
    """Whether the boundary of the Milnor fiber is a lens space, and why."""

    is_lens: bool
    reason: str
    obstruction: Optional[str] = None

    def __bool__(self) -> bool:
        return self.is_lens

    def to_dict(self) -> Dict[str, Any]:
        return {"is_lens": self.is_lens, "reason": self.reason, "obstruction": self.obstruction}


def singular_branches(G: GermData) -> List[int]:
    """Indices of the branches with multiplicity >= 2."""
    return [i for i, b in enumerate(G.branches) if b.multiplicity >= 2]


def _branch(G: GermData, i: int) -> BranchData:
    if not 0 <= i < len(G.branches):
        raise GermError(f"branch index {i} out of range")
    return G.branches[i]


def k_of_branch(G: GermData, i: int) -> int:
    """Intersection multiplicity of g_i with g'' = prod_{j != i} g_j^n_j."""
    _branch(G, i)
    return sum(
        b.multiplicity * G.intersections[i][j] for j, b in enumerate(G.branches) if j != i
    )


def plane_fiber_invariants(m: int, n: int) -> FiberInvariants:
    """Euler characteristic, genus and boundary count of the Milnor fiber of z^m - y^n.

    Example:
        >>> plane_fiber_invariants(2, 3)
        FiberInvariants(euler_char=-1, genus=1, boundary=1)
    """
    if m < 1 or n < 1:
        raise GermError(f"m and n must be >= 1, got ({m}, {n})")
    chi = 1 - (m - 1) * (n - 1)
    boundary = gcd(m, n)
    twice_genus = 2 - boundary - chi
    if twice_genus % 2:
        raise GermError(f"non-integral genus for z^{m} - y^{n}")
    return FiberInvariants(chi, twice_genus // 2, boundary)


def plane_monodromy(m: int, n: int, k: int) -> MonodromyData:
    """Vertical monodromy of a branch of multiplicity n meeting g'' with multiplicity k.

    With d = gcd(n, k) the monodromy has order N = n/d. When N > 1 it has
    exactly m fixed points, each rotating by 2*pi*(-k/d)/N. On the gcd(m, n)
    boundary circles it acts as translation by -k, so there are
    gcd(gcd(m, n), k) orbits.
    """
    if n < 2:
        raise GermError(f"branch multiplicity must be >= 2 for a vanishing zone, got {n}")
    if k < 0:
        raise GermError(f"k must be >= 0, got {k}")
    fiber = plane_fiber_invariants(m, n)
    d = gcd(n, k)
    order = n // d
    fixed = (((-(k // d)) % order,) * m) if order > 1 else ()

    circles = fiber.boundary
    count = gcd(circles, k)
    size = circles // count
    turn = Fraction(-k * size, n) % 1
    orbits = tuple(BoundaryOrbit(size, turn) for _ in range(count))
    return MonodromyData(fiber.euler_char, circles, order, fixed, orbits)


def vertical_monodromy(G: GermData, i: int) -> MonodromyData:
    """Vertical monodromy of the vanishing zone of branch i."""
    n = _branch(G, i).multiplicity
    if n < 2:
        raise GermError(f"branch {i} has multiplicity {n}: no vanishing zone")
    return plane_monodromy(G.m, n, k_of_branch(G, i))


def plane_zone(m: int, n: int, k: int, branch_index: int = 0) -> VanishingZoneData:
    """Vanishing zone of a branch of multiplicity n meeting g'' with multiplicity k.

    Boundary orbits count as verified for the identity and for m = 2 with
    k in {1, 2}; elsewhere they follow the derived rotation rule.
    """
    monodromy = plane_monodromy(m, n, k)
    return VanishingZoneData(
        branch_index=branch_index,
        k=k,
        d=gcd(n, k),
        fiber=plane_fiber_invariants(m, n),
        monodromy=monodromy,
        seifert=mapping_torus_seifert(monodromy),
        orbits_verified=monodromy.order == 1 or (m == 2 and k in (1, 2)),
    )


def vanishing_zone(G: GermData, i: int) -> VanishingZoneData:
    """Package fiber, monodromy and Seifert invariants of the zone of branch i."""
    n = _branch(G, i).multiplicity
    if n < 2:
        raise GermError(f"branch {i} has multiplicity {n}: no vanishing zone")
    zone = plane_zone(G.m, n, k_of_branch(G, i), i)
    if not zone.orbits_verified:
        logger.warning(
            "boundary orbits of branch %d (m=%d, n=%d, k=%d) are derived, not verified",
            i,
            G.m,
            n,
            zone.k,
        )
    return zone


def zone_is_solid_torus(V: VanishingZoneData) -> bool:
    """A Seifert piece over a disc with at most one exceptional fiber is a solid torus."""
    S = V.seifert
    return S.base_genus == 0 and S.boundary_count == 1 and len(S.pairs) <= 1


def covering_euler_char(chi_base: int, degree: int, branch_values: int) -> int:
    """Euler characteristic of a totally ramified cyclic cover.

    Args:
        chi_base: Euler characteristic of the base surface.
        degree: Degree of the cover, at least 1.
        branch_values: Number of branch values, each with a single preimage.
    """
    if degree < 1 or branch_values < 0:
        raise GermError(f"invalid covering data degree={degree}, branch values={branch_values}")
    return degree * chi_base - (degree - 1) * branch_values


def is_lens_boundary(G: GermData) -> LensVerdict:
    """Decide whether the boundary of the Milnor fiber of f is a lens space.

    It is one exactly when f is irreducible, m = 2, the singular locus has a
    single smooth branch and that branch meets the rest of g with
    multiplicity 1 (f is then equivalent to z^2 - x y^l).
    """
    if not G.irreducible:
        return LensVerdict(False, "f is reducible", "reducible")
    if G.m > 2:
        return LensVerdict(
            False,
            "m > 2: every vanishing zone has m exceptional fibers or a base of positive genus",
            "m-greater-than-2",
        )
    singular = singular_branches(G)
    if len(singular) != 1:
        return LensVerdict(
            False,
            f"singular locus has {len(singular)} branches; a lens space needs it irreducible",
            "reducible-singular-locus",
        )
    i = singular[0]
    branch = G.branches[i]
    if not branch.is_smooth:
        return LensVerdict(
            False,
            f"singular branch has Milnor number {branch.milnor_number}; "
            "the trunk is not a solid torus",
            "singular-branch-not-smooth",
        )
    k = k_of_branch(G, i)
    if k == 0:
        return LensVerdict(
            False,
            "identity monodromy on positive-genus fiber",
            "identity-monodromy",
        )
    if covering_euler_char(1 - branch.milnor_number, 2, k) < 1:
        return LensVerdict(
            False,
            f"k = {k}: the double cover of the trunk is not a disc, "
            "so the trunk is not a solid torus",
            "trunk-not-solid-torus",
        )
    return LensVerdict(True, f"equivalent to z^2 - x y^{branch.multiplicity}")


def example_family_germ(l: int) -> GermData:
    """Germ data of z^2 - (x^2 - y^3) y^l."""
    if l < 2:
        raise GermError(f"l must be >= 2, got {l}")
    return GermData(
        m=2,
        branches=(BranchData(l, 0), BranchData(1, CUSP_MILNOR_NUMBER)),
        intersections=((0, CUSP_AXIS_INTERSECTION), (CUSP_AXIS_INTERSECTION, 0)),
        name=f"z^2 - (x^2 - y^3) y^{l}",
    )


def lens_family_germ(l: int) -> GermData:
    """Germ data of z^2 - x y^l."""
    if l < 2:
        raise GermError(f"l must be >= 2, got {l}")
    return GermData(
        m=2,
        branches=(BranchData(l, 0), BranchData(1, 0)),
        intersections=((0, 1), (1, 0)),
        name=f"z^2 - x y^{l}",
    )


# --- files -----------------------------------------------------------------


def _int_field(data: Mapping[str, Any], key: str, where: str, default: Optional[int] = None) -> int:
    if key not in data:
        if default is None:
            raise InputError(f"{where}: missing field '{key}'")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}.{key}: expected an integer, got {value!r}")
    return value


def germ_from_dict(data: Mapping[str, Any]) -> GermData:
    """Parse ``{"m", "branches": [{"n", "mu"}], "intersections": [[i, j, m0]]}``.

    Every pair of distinct branches must be listed once (or twice with equal
    values). ``irreducible`` and ``name`` are optional.

    Raises:
        InputError: On malformed fields.
        GermError: On data outside the supported germs (e.g. g reduced).
    """
    if not isinstance(data, Mapping):
        raise InputError("germ: expected an object")
    m = _int_field(data, "m", "germ")
    raw_branches = data.get("branches")
    if not isinstance(raw_branches, list) or not raw_branches:
        raise InputError("germ.branches: expected a non-empty list")

    branches = []
    for idx, item in enumerate(raw_branches):
        where = f"branches[{idx}]"
        if not isinstance(item, Mapping):
            raise InputError(f"{where}: expected an object")
        n = _int_field(item, "n", where)
        mu = _int_field(item, "mu", where, default=0)
        if n < 1:
            raise InputError(f"{where}.n: must be >= 1, got {n}")
        if mu < 0:
            raise InputError(f"{where}.mu: must be >= 0, got {mu}")
        branches.append(BranchData(n, mu))

    size = len(branches)
    matrix = [[0] * size for _ in range(size)]
    raw_intersections = data.get("intersections", [])
    if not isinstance(raw_intersections, list):
        raise InputError(f"germ.intersections: expected a list, got {raw_intersections!r}")
    for idx, triple in enumerate(raw_intersections):
        where = f"intersections[{idx}]"
        if not isinstance(triple, list) or len(triple) != 3:
            raise InputError(f"{where}: expected [i, j, m0]")
        if any(isinstance(x, bool) or not isinstance(x, int) for x in triple):
            raise InputError(f"{where}: entries must be integers")
        i, j, m0 = triple
        if not (0 <= i < size and 0 <= j < size) or i == j:
            raise InputError(f"{where}: invalid branch pair ({i}, {j})")
        if m0 < 1:
            raise InputError(f"{where}: intersection multiplicity must be >= 1, got {m0}")
        for a, b in ((i, j), (j, i)):
            if matrix[a][b] not in (0, m0):
                raise InputError(f"{where}: conflicting values for pair ({i}, {j})")
            matrix[a][b] = m0
    for i in range(size):
        for j in range(i + 1, size):
            if matrix[i][j] == 0:
                raise InputError(f"intersections: missing pair ({i}, {j})")

    irreducible = data.get("irreducible", True)
    if not isinstance(irreducible, bool):
        raise InputError(f"germ.irreducible: expected a boolean, got {irreducible!r}")
    name = data.get("name", "")
    return GermData(
        m=m,
        branches=tuple(branches),
        intersections=tuple(tuple(row) for row in matrix),
        irreducible=irreducible,
        name=str(name),
    )


def germ_to_dict(G: GermData) -> Dict[str, Any]:
    size = len(G.branches)
    return {
        "m": G.m,
        "name": G.name,
        "irreducible": G.irreducible,
        "branches": [{"n": b.multiplicity, "mu": b.milnor_number} for b in G.branches],
        "intersections": [
            [i, j, G.intersections[i][j]] for i in range(size) for j in range(i + 1, size)
        ],
    }


def load_germ(path: Union[str, Path]) -> GermData:
    """Read a germ from a JSON file, or TOML when the suffix is ``.toml``."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not valid UTF-8: {exc.reason} at byte {exc.start}") from exc
    try:
        data = tomllib.loads(text) if path.suffix == ".toml" else json.loads(text)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    return germ_from_dict(data)


def signed_turn(rotation_class: int, order: int) -> Fraction:
    """Rotation class as a fraction of a turn in (-1/2, 1/2]."""
    c = rotation_class % order
    return Fraction(c if 2 * c <= order else c - order, order)


def zone_to_dict(V: VanishingZoneData) -> Dict[str, Any]:
    """JSON view of a vanishing zone."""
    M = V.monodromy
    return {
        "branch": V.branch_index,
        "k": V.k,
        "d": V.d,
        "fiber": {
            "euler_char": V.fiber.euler_char,
            "genus": V.fiber.genus,
            "boundary": V.fiber.boundary,
        },
        "monodromy": {
            "order": M.order,
            "fixed_points": list(M.fixed_points),
            "rotation_turns": [str(signed_turn(c, M.order)) for c in M.fixed_points],
            "boundary_orbits": [
                {"size": o.size, "return_turn": str(o.return_turn)} for o in M.boundary_orbits
            ],
        },
        "seifert": seifert_to_dict(V.seifert),
        "solid_torus": zone_is_solid_torus(V),
        "orbits_verified": V.orbits_verified,
    }


def zone_summary(V: VanishingZoneData) -> Sequence[str]:
    """Human-readable lines describing a vanishing zone."""
    M = V.monodromy
    S = V.seifert
    lines = [
        f"branch {V.branch_index}: k = {V.k}, d = {V.d}",
        f"  fiber: chi = {V.fiber.euler_char}, genus = {V.fiber.genus}, "
        f"boundary circles = {V.fiber.boundary}",
        f"  monodromy order {M.order}, {len(M.fixed_points)} fixed points",
    ]
    if M.fixed_points:
        turn = signed_turn(M.fixed_points[0], M.order)
        lines.append(f"  rotation angle at fixed points: {turn} turn")
    lines.append(
        f"  Seifert: g = {S.base_genus}, r = {S.boundary_count}, "
        f"pairs = {[(p.alpha, p.beta) for p in S.pairs]}"
    )
    if not V.orbits_verified:
        lines.append("  boundary orbits: derived, unverified")
    return lines
