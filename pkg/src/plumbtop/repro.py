"""
Reproduction suite: checks the homology and shape results of the germ families.

Expected values are written out from the closed forms here, not recomputed
by the functions under test, so a broken closed form fails its claim. The
property sweeps (zone grid, closed mapping tori, calculus moves, Smith normal
form) expect an empty list of violations.
"""

import logging
import random
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Callable, Dict, Iterator, List, Sequence, Tuple

import numpy as np

from plumbtop.assembly import (
    boundary_graph_example_family,
    boundary_graph_lens_family,
    expected_graph,
)
from plumbtop.constants import (
    CALCULUS_SAMPLES,
    CLAIM_IDS,
    CLOSED_MONODROMY_SAMPLES,
    DEFINITENESS_RANGE,
    EXAMPLE_FAMILY_RANGE,
    HIRZEBRUCH_SPOT_VALUES,
    LENS_FAMILY_RANGE,
    REPRO_SEED,
    SNF_ORACLE_SAMPLES,
    ZONE_GRID_K,
    ZONE_GRID_M,
    ZONE_GRID_N,
)
from plumbtop.errors import PlumbtopError, SeifertError
from plumbtop.germ import (
    BranchData,
    GermData,
    example_family_germ,
    is_lens_boundary,
    lens_family_germ,
    plane_zone,
    singular_branches,
    vanishing_zone,
    zone_is_solid_torus,
)
from plumbtop.homology import h1_of_plumbed, hirzebruch_h1
from plumbtop.linalg import as_int_matrix, determinant, is_negative_definite, smith_normal_form
from plumbtop.plumbing import (
    PlumbingGraph,
    bamboo,
    blow_up_edge,
    blow_up_leaf,
    intersection_matrix,
    is_isomorphic,
    recognize_generalized_lens,
)
from plumbtop.seifert import MonodromyData, e0, mapping_torus_seifert, quotient_euler_char

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClaimResult:
    """Outcome of one claim."""

    claim_id: str
    description: str
    expected: Any
    computed: Any
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.claim_id,
            "description": self.description,
            "expected": self.expected,
            "computed": self.computed,
            "passed": self.passed,
        }


@dataclass
class ReproReport:
    """All claims of one run, in CLAIM_IDS order."""

    claims: List[ClaimResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    @property
    def failures(self) -> List[str]:
        return [c.claim_id for c in self.claims if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "claims": [c.to_dict() for c in self.claims]}

    def render(self) -> str:
        lines = []
        for c in self.claims:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"[{status}] {c.claim_id}: {c.description}")
        lines.append(f"{len(self.claims) - len(self.failures)}/{len(self.claims)} claims passed")
        return "\n".join(lines)


def _span(bounds: Tuple[int, int]) -> range:
    return range(bounds[0], bounds[1] + 1)


def _zone_grid() -> Iterator[Tuple[int, int, int]]:
    for m in _span(ZONE_GRID_M):
        for n in _span(ZONE_GRID_N):
            for k in _span(ZONE_GRID_K):
                yield m, n, k


def _grid_size() -> int:
    return len(_span(ZONE_GRID_M)) * len(_span(ZONE_GRID_N)) * len(_span(ZONE_GRID_K))


def _sweep(problems: Dict[str, List[str]], cases: int) -> Dict[str, Any]:
    violations = [f"{case}: {', '.join(found)}" for case, found in problems.items() if found]
    return {"cases": cases, "violations": violations}


# Germs that each stop the lens criterion at one obstruction.
_OBSTRUCTED_GERMS: Dict[str, Tuple[GermData, str]] = {
    "f reducible": (
        GermData(2, (BranchData(3), BranchData(1)), ((0, 1), (1, 0)), irreducible=False),
        "reducible",
    ),
    "m = 3": (GermData(3, (BranchData(2), BranchData(1)), ((0, 1), (1, 0))), "m-greater-than-2"),
    "two singular branches": (
        GermData(2, (BranchData(2), BranchData(3)), ((0, 1), (1, 0))),
        "reducible-singular-locus",
    ),
    "cusp as singular branch": (
        GermData(2, (BranchData(2, 2), BranchData(1)), ((0, 1), (1, 0))),
        "singular-branch-not-smooth",
    ),
    "k = 0": (GermData(2, (BranchData(3),)), "identity-monodromy"),
}


def _zone_predicates() -> Dict[str, Any]:
    """No zone is a solid torus; for m > 2 there are m pairs or a base of positive genus."""
    problems: Dict[str, List[str]] = {}
    for m, n, k in _zone_grid():
        found = problems.setdefault(f"{m},{n},{k}", [])
        try:
            zone = plane_zone(m, n, k)
        except PlumbtopError as e:
            found.append(f"error: {e}")
            continue
        if zone_is_solid_torus(zone):
            found.append("solid torus")
        S = zone.seifert
        if m > 2 and len(S.pairs) != m and S.base_genus == 0:
            found.append(f"{len(S.pairs)} exceptional pairs over a genus 0 base")
    return _sweep(problems, _grid_size())


def _lens_criterion() -> Tuple[Any, Any]:
    lens_expected = {
        str(l): {"lens": f"L({2 * l}, 1)", "h1": f"Z/{2 * l}", "verdict": True}
        for l in _span(LENS_FAMILY_RANGE)
    }
    lens_computed = {}
    for l in _span(LENS_FAMILY_RANGE):
        graph = boundary_graph_lens_family(l)
        lens = recognize_generalized_lens(graph)
        lens_computed[str(l)] = {
            "lens": str(lens) if lens is not None else None,
            "h1": h1_of_plumbed(graph).render(),
            "verdict": is_lens_boundary(lens_family_germ(l)).is_lens,
        }

    obstructions_expected = {
        name: obstruction for name, (_, obstruction) in _OBSTRUCTED_GERMS.items()
    }
    obstructions_computed = {
        name: is_lens_boundary(germ).obstruction for name, (germ, _) in _OBSTRUCTED_GERMS.items()
    }
    for l in _span(EXAMPLE_FAMILY_RANGE):
        name = f"z^2 - (x^2 - y^3) y^{l}"
        obstructions_expected[name] = "trunk-not-solid-torus"
        obstructions_computed[name] = is_lens_boundary(example_family_germ(l)).obstruction

    expected = {
        "lens_family": lens_expected,
        "obstructions": obstructions_expected,
        "zone_grid": {"cases": _grid_size(), "violations": []},
    }
    computed = {
        "lens_family": lens_computed,
        "obstructions": obstructions_computed,
        "zone_grid": _zone_predicates(),
    }
    return expected, computed


def _zone_structure() -> Dict[str, Any]:
    """Order times d is n, rotations are units, m fixed points when d < n, quotients integral."""
    problems: Dict[str, List[str]] = {}
    for m, n, k in _zone_grid():
        found = problems.setdefault(f"{m},{n},{k}", [])
        try:
            zone = plane_zone(m, n, k)
        except PlumbtopError as e:
            found.append(f"error: {e}")
            continue
        M = zone.monodromy
        if M.order * zone.d != n:
            found.append(f"order {M.order} * d {zone.d} != {n}")
        if any(gcd(c, M.order) != 1 for c in M.fixed_points):
            found.append("rotation class not a unit")
        if zone.d < n and len(M.fixed_points) != m:
            found.append(f"{len(M.fixed_points)} fixed points")
        try:
            quotient_euler_char(zone.fiber.euler_char, M.order, len(M.fixed_points))
        except SeifertError:
            found.append("Riemann-Hurwitz")
    return _sweep(problems, _grid_size())


def _zone_row(l: int) -> Dict[str, Any]:
    germ = example_family_germ(l)
    zone = vanishing_zone(germ, singular_branches(germ)[0])
    return {
        "order": zone.monodromy.order,
        "fixed_points": len(zone.monodromy.fixed_points),
        "rotation": list(zone.monodromy.fixed_points),
        "boundary_components": zone.seifert.boundary_count,
        "base_genus": zone.seifert.base_genus,
    }


def _odd_zones() -> Tuple[Any, Any]:
    ls = [l for l in _span(EXAMPLE_FAMILY_RANGE) if l % 2]
    expected = {
        str(l): {
            "order": l,
            "fixed_points": 2,
            "rotation": [l - 2, l - 2],
            "boundary_components": 1,
            "base_genus": 0,
        }
        for l in ls
    }
    computed = {str(l): _zone_row(l) for l in ls}
    grid_expected = {"cases": _grid_size(), "violations": []}
    return (
        {"zones": expected, "zone_grid": grid_expected},
        {"zones": computed, "zone_grid": _zone_structure()},
    )


def _closed_monodromy(rng: random.Random) -> Tuple[MonodromyData, int]:
    """A random Z/N action on a closed surface, with the genus of its orbit surface."""
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


def _closed_mapping_tori() -> Dict[str, Any]:
    """e0 vanishes on mapping tori of periodic maps of closed surfaces."""
    rng = random.Random(REPRO_SEED)
    problems: Dict[str, List[str]] = {}
    for sample in range(CLOSED_MONODROMY_SAMPLES):
        M, base_genus = _closed_monodromy(rng)
        found = problems.setdefault(f"sample {sample} (order {M.order})", [])
        S = mapping_torus_seifert(M)
        if S.base_genus != base_genus:
            found.append(f"base genus {S.base_genus} != {base_genus}")
        if e0(S) != 0:
            found.append(f"e0 = {e0(S)}")
    return _sweep(problems, CLOSED_MONODROMY_SAMPLES)


def _even_zones() -> Tuple[Any, Any]:
    ls = [l for l in _span(EXAMPLE_FAMILY_RANGE) if l % 2 == 0 and l >= 4]
    expected = {
        str(l): {
            "order": l // 2,
            "fixed_points": 2,
            "rotation": [l // 2 - 1, l // 2 - 1],
            "boundary_components": 2,
            "base_genus": 0,
        }
        for l in ls
    }
    computed = {str(l): _zone_row(l) for l in ls}
    tori_expected = {"cases": CLOSED_MONODROMY_SAMPLES, "violations": []}
    return (
        {"zones": expected, "closed_mapping_tori": tori_expected},
        {"zones": computed, "closed_mapping_tori": _closed_mapping_tori()},
    )


def _not_definite() -> Tuple[Any, Any]:
    ls = list(_span(DEFINITENESS_RANGE))
    expected = {str(l): False for l in ls}
    computed = {
        str(l): is_negative_definite(intersection_matrix(boundary_graph_example_family(l)))
        for l in ls
    }
    return expected, computed


def _hirzebruch_spots() -> Tuple[Any, Any]:
    spots_expected = {}
    spots_computed = {}
    for (m, k, l), (rank, torsion) in HIRZEBRUCH_SPOT_VALUES.items():
        key = f"{m},{k},{l}"
        spots_expected[key] = {"free_rank": rank, "torsion": list(torsion)}
        h = hirzebruch_h1(m, k, l)
        spots_computed[key] = {"free_rank": h.free_rank, "torsion": list(h.torsion)}
    # the closed form for (2, 1, l) must agree with the assembled lens family
    ls = list(_span(LENS_FAMILY_RANGE))
    return (
        {"spot_values": spots_expected, "lens_family": {str(l): f"Z/{2 * l}" for l in ls}},
        {
            "spot_values": spots_computed,
            "lens_family": {str(l): hirzebruch_h1(2, 1, l).render() for l in ls},
        },
    )


def _perturb(graph: PlumbingGraph, rng: random.Random) -> PlumbingGraph:
    """One random blow-up on a leaf or an edge."""
    if graph.edges and rng.random() < 0.5:
        u, w = rng.choice(graph.edges)
        return blow_up_edge(graph, u, w)
    return blow_up_leaf(graph, rng.choice(graph.ids), rng.choice([1, -1]))


def _calculus_invariance() -> Dict[str, Any]:
    """H_1 and lens recognition survive blow-ups of bamboos and of the family graphs."""
    rng = random.Random(REPRO_SEED)
    problems: Dict[str, List[str]] = {}
    for sample in range(CALCULUS_SAMPLES):
        if sample % 4 == 3:
            l = rng.randint(*EXAMPLE_FAMILY_RANGE)
            graph = boundary_graph_example_family(l)
            label = f"sample {sample} (family l = {l})"
        else:
            weights = [rng.randint(-5, -2) for _ in range(rng.randint(1, 7))]
            graph = bamboo(weights)
            label = f"sample {sample} (bamboo {weights})"
        up = _perturb(graph, rng)
        found = problems.setdefault(label, [])
        if h1_of_plumbed(up) != h1_of_plumbed(graph):
            found.append("H_1 changed")
        if recognize_generalized_lens(up) != recognize_generalized_lens(graph):
            found.append("lens recognition changed")
    return _sweep(problems, CALCULUS_SAMPLES)


def _cokernel_order(rows: Sequence[Sequence[int]], modulus: int) -> int:
    """Order of Z^n / M Z^n by enumerating the column span modulo |det M|."""
    n = len(rows)
    columns = [tuple(rows[i][j] % modulus for i in range(n)) for j in range(n)]
    zero = (0,) * n
    seen = {zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        for c in columns:
            y = tuple((a + b) % modulus for a, b in zip(x, c))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return modulus**n // len(seen)


def _snf_oracle() -> Dict[str, Any]:
    """U M V = diag(d) with unimodular U, V, a divisibility chain, and brute-force orders."""
    rng = random.Random(REPRO_SEED)
    problems: Dict[str, List[str]] = {}
    for sample in range(SNF_ORACLE_SAMPLES):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = as_int_matrix([[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)])
        snf = smith_normal_form(m)
        found = problems.setdefault(f"sample {sample}", [])
        if not np.array_equal(snf.u.dot(m).dot(snf.v), snf.diagonal()):
            found.append("U M V is not diag(d)")
        if abs(determinant(snf.u)) != 1 or abs(determinant(snf.v)) != 1:
            found.append("transform not unimodular")
        nonzero = [x for x in snf.d if x]
        if any(x < 0 for x in snf.d) or list(snf.d[: len(nonzero)]) != nonzero:
            found.append(f"bad diagonal {list(snf.d)}")
        if any(b % a for a, b in zip(nonzero, nonzero[1:])):
            found.append(f"no divisibility chain in {nonzero}")
        if rows == cols:
            det = abs(determinant(m))
            if 0 < det <= 60 and det**rows <= 200_000:
                order = int(np.prod(nonzero, dtype=object))
                if order != _cokernel_order(m.tolist(), det):
                    found.append("cokernel order differs from enumeration")
    return _sweep(problems, SNF_ORACLE_SAMPLES)


def _example_family_h1() -> Tuple[Any, Any]:
    expected: Dict[str, Any] = {}
    computed: Dict[str, Any] = {}
    for l in _span(EXAMPLE_FAMILY_RANGE):
        graph = boundary_graph_example_family(l)
        h = h1_of_plumbed(graph)
        if l % 2:
            expected[str(l)] = {"free_rank": 0, "torsion": [4 * l], "shape": True}
            computed[str(l)] = {
                "free_rank": h.free_rank,
                "torsion": list(h.torsion),
                "shape": is_isomorphic(graph, expected_graph(l)),
            }
        else:
            expected[str(l)] = {"free_rank": 1, "order": l * (l + 3), "shape": True}
            computed[str(l)] = {
                "free_rank": h.free_rank,
                "order": h.order,
                "shape": is_isomorphic(graph, expected_graph(l)),
            }
    return (
        {
            "family": expected,
            "calculus": {"cases": CALCULUS_SAMPLES, "violations": []},
            "smith_normal_form": {"cases": SNF_ORACLE_SAMPLES, "violations": []},
        },
        {
            "family": computed,
            "calculus": _calculus_invariance(),
            "smith_normal_form": _snf_oracle(),
        },
    )


_CLAIMS: Dict[str, Tuple[str, Callable[[], Tuple[Any, Any]]]] = {
    "T6.5": (
        "z^2 - x y^l bounds L(2l, 1); every other germ meets an obstruction; "
        "no vanishing zone is a solid torus",
        _lens_criterion,
    ),
    "P7.1": (
        "odd l: monodromy of order l with two fixed points and one boundary torus; "
        "zone structure over the (m, n, k) grid",
        _odd_zones,
    ),
    "P7.2": (
        "even l: monodromy of order l/2 with two fixed points and two boundary tori; "
        "e0 = 0 on closed mapping tori",
        _even_zones,
    ),
    "T7.3": ("the example family is not negative definite", _not_definite),
    "T8.1": (
        "closed-form homology of z^m - x^k y^l at the spot values and on the lens family",
        _hirzebruch_spots,
    ),
    "T8.2": (
        "homology and graph shape of z^2 - (x^2 - y^3) y^l; invariance under blow-ups; "
        "Smith normal form oracle",
        _example_family_h1,
    ),
}


def run_repro() -> ReproReport:
    """Run every claim in CLAIM_IDS order."""
    report = ReproReport()
    for claim_id in CLAIM_IDS:
        description, check = _CLAIMS[claim_id]
        expected, computed = check()
        passed = expected == computed
        if not passed:
            logger.warning("claim %s failed", claim_id)
        report.claims.append(ClaimResult(claim_id, description, expected, computed, passed))
    return report
