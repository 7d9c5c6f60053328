"""
Group Simplex
=============
Points of Δᴳ as finite-support probability measures on the elements of G,
with G acting by left translation of atoms. Weights are exact fractions
throughout, so fixed-point checks are equalities, not tolerances.

- A finite group always has fixed points: g of order m fixes the barycenter
  of the face spanned by its powers.
- ℤ acts freely: no nonzero shift fixes a finitely supported point. The
  window model checks this on grid points supported strictly inside a
  finite window of integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, List, Optional, Sequence, Tuple, Union

from errors import GroupError, InfiniteOrder
from geometry.covers import CoveringMap
from geometry.paths import ConstantPath, Path
from geometry.spaces import Discrete
from groups.finite import FiniteGroup
from logger import get_logger
from measures.core import ProbMeasure, cover_pullback, dirac, normalize, pushforward, uniform

logger = get_logger(__name__)

MAX_DENOMINATOR = 6
MAX_WINDOW = 15

SimplexPoint = ProbMeasure


def act(group: FiniteGroup, g: str, xi: SimplexPoint) -> SimplexPoint:
    """Relabel every atom x as g·x; weights are unchanged."""
    return pushforward(lambda x: group.mul(g, x), xi)


def skeleton_index(xi: SimplexPoint) -> int:
    """The skeleton Δᴳ_n containing ξ, as |supp ξ| − 1."""
    return xi.support_size - 1


def torsion_fixed_point_witness(group: FiniteGroup, g: str) -> SimplexPoint:
    """
    The barycenter of the face spanned by e, g, …, g^{m−1}; fixed by g.
    """
    if g == group.identity:
        raise GroupError("the identity fixes every point; pick g != e")
    return uniform(group.powers(g))


def grid_points(atoms: Sequence[Any], q: int) -> Iterator[SimplexPoint]:
    """Every point of the simplex on `atoms` whose weights are multiples of 1/q."""
    n = len(atoms)
    for cuts in itertools.combinations(range(q + n - 1), n - 1):
        bounds = (-1,) + cuts + (q + n - 1,)
        parts = [bounds[i + 1] - bounds[i] - 1 for i in range(n)]
        yield normalize(
            [(atom, Fraction(k, q)) for atom, k in zip(atoms, parts) if k]
        )


@dataclass(frozen=True)
class ShiftModel:
    """
    ℤ acting on integer atoms by translation, observed through the window
    {0, …, w−1}. Only points supported on the interior {1, …, w−2} are
    searched; shifts s range over 1, …, w.
    """

    window: int

    @property
    def name(self) -> str:
        return f"Z[window={self.window}]"

    @property
    def interior(self) -> List[int]:
        return list(range(1, self.window - 1))

    def shift(self, s: int, xi: SimplexPoint) -> SimplexPoint:
        return pushforward(lambda n: n + s, xi)

    def torsion_fixed_point_witness(self, s: int) -> SimplexPoint:
        if s == 0:
            raise GroupError("the zero shift fixes every point")
        raise InfiniteOrder(f"shift by {s} has infinite order")


@dataclass
class ProbeResult:
    model: str
    points_checked: int = 0
    fixed_points: List[Tuple[Any, SimplexPoint]] = field(default_factory=list)
    witness_used: bool = False

    @property
    def free(self) -> bool:
        return not self.fixed_points


def free_action_probe(
    model: Union[FiniteGroup, ShiftModel], q: int = 5, limit: int = 1
) -> ProbeResult:
    """
    Search rational grid points of Δᴳ (denominator q) for points fixed by a
    nontrivial element, stopping after `limit` hits.

    For a finite group with |G| > 1 a fixed point is always returned: if the
    grid misses every face barycenter, the torsion witness of the first
    nontrivial element is used. For the shift model the search is
    exhaustive and must come back empty.
    """
    if not 1 <= q <= MAX_DENOMINATOR:
        raise GroupError(f"grid denominator must be in 1..{MAX_DENOMINATOR}, got {q}")
    if isinstance(model, ShiftModel):
        return _probe_shifts(model, q)

    result = ProbeResult(model.name)
    nontrivial = list(model.labels[1:])
    for xi in grid_points(model.labels, q):
        result.points_checked += 1
        for g in nontrivial:
            if act(model, g, xi) == xi:
                result.fixed_points.append((g, xi))
                if len(result.fixed_points) >= limit:
                    return result
    if nontrivial and not result.fixed_points:
        g = nontrivial[0]
        result.fixed_points.append((g, torsion_fixed_point_witness(model, g)))
        result.witness_used = True
    return result


def _probe_shifts(model: ShiftModel, q: int) -> ProbeResult:
    if not 3 <= model.window <= MAX_WINDOW:
        raise GroupError(f"window must be in 3..{MAX_WINDOW}, got {model.window}")
    result = ProbeResult(model.name)
    for xi in grid_points(model.interior, q):
        result.points_checked += 1
        for s in range(1, model.window + 1):
            if model.shift(s, xi) == xi:
                result.fixed_points.append((s, xi))
    logger.debug(f"{model.name}: {result.points_checked} grid points, {len(result.fixed_points)} fixed")
    return result


class GroupCover(CoveringMap):
    """The degree-|G| cover G → point, with G acting on itself by left translation."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.total = Discrete(group.labels)
        self.base = Discrete(("*",))
        self.degree = group.order

    def project(self, x: Any) -> Any:
        return "*"

    def fiber(self, x: Any) -> List[Any]:
        return list(self.group.labels)

    def project_path(self, path: Path) -> Path:
        return ConstantPath(self.base, "*")

    def deck_group(self):
        return [(lambda x, g=g: self.group.mul(g, x)) for g in self.group.labels]


@dataclass(frozen=True)
class GroupBound:
    group: str
    point: SimplexPoint
    bound: int


def classifying_space_bound(group: FiniteGroup, base: Optional[Any] = "*") -> GroupBound:
    """
    Transfer δ_* along G → point: the uniform point of Δᴳ, whose support
    |G| certifies the bound |G| − 1.
    """
    point = cover_pullback(GroupCover(group), dirac(base))
    return GroupBound(group.name, point, skeleton_index(point))
