"""
Covering Transfer
=================
Push planners on a total space E down a degree-k cover p: E → X.

- `CoverTransfer`: based planners, t(x) = κ((1/k) Σ_{x̃ ∈ p⁻¹(x)} δ_{p∘s(x̃)}).
- `EquivariantTransfer`: two-point planners that commute with the deck
  group G; t(x₁, x₂) = (1/k) Σ_g p∘s(x̃₁, g·x̃₂), independent of the lifts.
- `GenericTransfer`: any arity; lifts every coordinate independently, so
  the bound grows by kʳ instead of k.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, List, Optional

import numpy as np

from config import EQUIVARIANCE_PROBES, SECTION_TOLERANCE
from errors import ArityMismatch, BasepointMismatch, EquivarianceViolation
from geometry.covers import CoveringMap
from geometry.paths import Path
from geometry.spaces import PATHS
from logger import get_logger
from measures.core import (
    ProbMeasure,
    cover_pullback,
    dirac,
    flatten,
    normalize,
    product_measure,
    pushforward,
)
from measures.equality import MEASURES
from planners.base import AnalogPlanner, Inputs
from transport.metrics import path_measure_distance

logger = get_logger(__name__)


def projected(p: CoveringMap, mu: ProbMeasure[Path]) -> ProbMeasure[Path]:
    return pushforward(p.project_path, mu, PATHS)


def lift(p: CoveringMap, x: Any) -> ProbMeasure[Any]:
    """p*(δ_x): uniform on the fiber over x."""
    return cover_pullback(p, dirac(x, p.base))


class CoverTransfer(AnalogPlanner):
    def __init__(
        self,
        cover: CoveringMap,
        planner: AnalogPlanner,
        basepoint: Optional[Any] = None,
        name: str = "",
    ):
        if planner.arity != 1:
            raise ArityMismatch("cover transfer of based planners needs arity 1")
        x0 = cover.project(planner.basepoint)
        if basepoint is not None and not cover.base.same(basepoint, x0):
            raise BasepointMismatch(
                f"planner is based over {cover.base.encode(x0)}, "
                f"not {cover.base.encode(basepoint)}"
            )
        super().__init__(
            name or f"{planner.name}/{cover.base.name}",
            cover.base,
            arity=1,
            bound=cover.degree * planner.bound,
            basepoint=x0,
        )
        self.cover = cover
        self.inner = planner

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        nested = pushforward(
            lambda e: projected(self.cover, self.inner.plan(e)),
            lift(self.cover, points[0]),
            MEASURES,
        )
        return flatten(nested, PATHS)

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        (y,) = self.inner.critical_inputs(rng)
        return self.cover.project(y)


class EquivariantTransfer(AnalogPlanner):
    """
    Checks on construction that projected plans satisfy
    p∘s(g·ũ, g·ṽ) = p∘s(ũ, ṽ) for every deck transformation g on
    `probes` sampled input pairs; raises EquivarianceViolation otherwise.
    """

    def __init__(
        self,
        cover: CoveringMap,
        planner: AnalogPlanner,
        probes: int = EQUIVARIANCE_PROBES,
        seed: int = 0,
        name: str = "",
    ):
        if planner.arity != 2:
            raise ArityMismatch("equivariant transfer needs a two-point planner")
        if not cover.regular:
            raise EquivarianceViolation(f"{cover!r} has no deck group of order {cover.degree}")
        super().__init__(
            name or f"{planner.name}/{cover.base.name}",
            cover.base,
            arity=2,
            bound=cover.degree * planner.bound,
        )
        self.cover = cover
        self.inner = planner
        self.certificate = self.certify(probes, seed)

    def certify(self, probes: int, seed: int) -> float:
        """Largest W1 gap between projected plans along deck orbits."""
        worst = 0.0
        for probe in range(probes):
            rng = np.random.default_rng(seed + probe)
            if probe % 2:
                u, v = self.inner.critical_inputs(rng)
            else:
                u, v = self.inner.sample_inputs(rng)
            reference = projected(self.cover, self.inner.plan(u, v))
            for g in self.cover.deck_group()[1:]:
                moved = projected(self.cover, self.inner.plan(g(u), g(v)))
                gap = path_measure_distance(reference, moved)
                worst = max(worst, gap)
                if gap > SECTION_TOLERANCE:
                    raise EquivarianceViolation(
                        f"{self.inner.name} is not deck-equivariant: gap {gap:.3e}"
                    )
        logger.debug(f"equivariance certificate for {self.name}: {worst:.3e}")
        return worst

    def plan_with_lifts(self, first: Any, second: Any) -> ProbMeasure[Path]:
        """The transferred plan computed from explicit lifts of both inputs."""
        k = self.cover.degree
        raw: List[Any] = [
            (projected(self.cover, self.inner.plan(first, g(second))), Fraction(1, k))
            for g in self.cover.deck_group()
        ]
        return flatten(normalize(raw, MEASURES), PATHS)

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        x1, x2 = points
        return self.plan_with_lifts(self.cover.fiber(x1)[0], self.cover.fiber(x2)[0])

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        u = self.cover.fiber(x)[0]
        return self.cover.project(self.inner.critical_partner(u, rng))


class GenericTransfer(AnalogPlanner):
    def __init__(self, cover: CoveringMap, planner: AnalogPlanner, name: str = ""):
        r = planner.arity
        super().__init__(
            name or f"{planner.name}/{cover.base.name}",
            cover.base,
            arity=r,
            bound=cover.degree**r * planner.bound,
        )
        self.cover = cover
        self.inner = planner

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        lifts = product_measure([lift(self.cover, x) for x in points])
        nested = pushforward(
            lambda tup: projected(self.cover, self.inner.plan(*tup)), lifts, MEASURES
        )
        return flatten(nested, PATHS)

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        u = self.cover.fiber(x)[0]
        return self.cover.project(self.inner.critical_partner(u, rng))
