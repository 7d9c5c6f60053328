"""
Planner Combinators
===================
New planners from old ones: products on X × Y, sequential r-point planners
from two-point planners, based planners from two-point planners, r-point
planners restricted from (r+1)-point ones, and r-point planners on X read
off a based planner on Xʳ at a diagonal point.
"""

from __future__ import annotations

from typing import Any, List, Sequence

import numpy as np

from errors import ArityMismatch, BasepointMismatch
from geometry.paths import Path, ProductPath, concat, concat_legs, restrict, reverse
from geometry.spaces import PATHS, Product
from measures.core import ProbMeasure, boxtimes, product_measure, pushforward
from planners.base import AnalogPlanner, Inputs


class ProductPlanner(AnalogPlanner):
    """s₁ ⊠ s₂ with atoms paired coordinate-wise; bounds multiply."""

    def __init__(self, first: AnalogPlanner, second: AnalogPlanner, name: str = ""):
        if first.arity != second.arity:
            raise ArityMismatch(
                f"cannot pair arity {first.arity} with arity {second.arity}"
            )
        basepoint = None
        if first.arity == 1:
            basepoint = (first.basepoint, second.basepoint)
        super().__init__(
            name or f"{first.name}*{second.name}",
            Product(first.space, second.space),
            arity=first.arity,
            bound=first.bound * second.bound,
            basepoint=basepoint,
        )
        self.first = first
        self.second = second

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        joint = boxtimes(
            self.first.plan(*(p[0] for p in points)),
            self.second.plan(*(p[1] for p in points)),
        )
        return pushforward(lambda pair: self.space.pair(*pair), joint, PATHS)

    def critical_inputs(self, rng: np.random.Generator) -> Inputs:
        return tuple(
            zip(self.first.critical_inputs(rng), self.second.critical_inputs(rng))
        )


class SequentialPlanner(AnalogPlanner):
    """
    r-point planner from a two-point planner s: one leg s(xᵢ, xᵢ₊₁) per
    consecutive pair, legs joined so that leg i starts at t = i/(r−1).
    """

    def __init__(self, planner: AnalogPlanner, r: int, name: str = ""):
        if planner.arity != 2:
            raise ArityMismatch(f"sequential legs need a two-point planner, got r={planner.arity}")
        if r < 2:
            raise ArityMismatch(f"sequential planners need r >= 2, got {r}")
        super().__init__(
            name or f"{planner.name}^{r}",
            planner.space,
            arity=r,
            bound=planner.bound ** (r - 1),
        )
        self.leg = planner

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        legs = [self.leg.plan(a, b) for a, b in zip(points[:-1], points[1:])]
        joint = product_measure(legs)
        return pushforward(concat_legs, joint, PATHS)

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        return self.leg.critical_partner(x, rng)


class BasedPlanner(AnalogPlanner):
    """The based planner y ↦ s(x₀, y)."""

    def __init__(self, planner: AnalogPlanner, basepoint: Any, name: str = ""):
        if planner.arity != 2:
            raise ArityMismatch(f"based planners need a two-point planner, got r={planner.arity}")
        super().__init__(
            name or f"{planner.name}@x0",
            planner.space,
            arity=1,
            bound=planner.bound,
            basepoint=planner.space.canonical(basepoint),
        )
        self.inner = planner

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        return self.inner.plan(self.basepoint, points[0])

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        return self.inner.critical_partner(x, rng)


class RestrictedPlanner(AnalogPlanner):
    """
    r-point planner from an (r+1)-point planner s: repeat the last point,
    keep each atom on [0, (r−1)/r] and stretch it back over [0, 1], so the
    stop at i/r lands at i/(r−1). The bound carries over unchanged.
    """

    def __init__(self, planner: AnalogPlanner, name: str = ""):
        if planner.arity < 3:
            raise ArityMismatch(f"restriction needs arity >= 3, got r={planner.arity}")
        r = planner.arity - 1
        super().__init__(
            name or f"{planner.name}|{r}",
            planner.space,
            arity=r,
            bound=planner.bound,
        )
        self.inner = planner
        self.cut = (r - 1) / r

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        full = self.inner.plan(*points, points[-1])
        return pushforward(lambda path: restrict(path, 0.0, self.cut), full, PATHS)

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        return self.inner.critical_partner(x, rng)


def coordinates(value: Any, r: int) -> List[Any]:
    """Unnest (x₁, (x₂, (…, xᵣ))) into [x₁, …, xᵣ]; works on points, paths and spaces."""
    out = []
    for _ in range(r - 1):
        if isinstance(value, (ProductPath, Product)):
            out.append(value.first)
            value = value.second
        else:
            out.append(value[0])
            value = value[1]
    out.append(value)
    return out


def nest(values: Sequence[Any]) -> Any:
    return values[0] if len(values) == 1 else (values[0], nest(values[1:]))


class BasedProductPlanner(AnalogPlanner):
    """
    r-point planner on X from a based planner on Xʳ = X × (X × …) whose
    basepoint is a diagonal point (b, …, b). An atom (γ₁, …, γᵣ) running from
    the diagonal to (x₁, …, xᵣ) becomes the chain of legs γ̄ᵢ·γᵢ₊₁, leg i
    starting at t = i/(r−1). Same bound as the based planner.
    """

    def __init__(self, planner: AnalogPlanner, r: int, name: str = ""):
        if planner.arity != 1:
            raise ArityMismatch(f"need a based planner, got r={planner.arity}")
        if r < 2:
            raise ArityMismatch(f"need r >= 2, got {r}")
        base = coordinates(planner.basepoint, r)
        space = coordinates(planner.space, r)
        if any(factor != space[0] for factor in space):
            raise ArityMismatch(f"{planner.space.name} is not a power of one space")
        if any(not space[0].same(b, base[0]) for b in base):
            raise BasepointMismatch(f"basepoint of {planner.name} is not on the diagonal")
        super().__init__(
            name or f"{planner.name}->tc{r}",
            space[0],
            arity=r,
            bound=planner.bound,
        )
        self.based = planner
        self.r = r

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        tuples = self.based.plan(nest(points))
        return pushforward(self._chain, tuples, PATHS)

    def critical_inputs(self, rng: np.random.Generator) -> Inputs:
        return tuple(coordinates(self.based.critical_inputs(rng)[0], self.r))

    def _chain(self, atom: Path) -> Path:
        legs = coordinates(atom, self.r)
        return concat_legs(
            [concat(reverse(a), b) for a, b in zip(legs[:-1], legs[1:])]
        )
