"""
Control Planners
================
Deliberately faulty or trivial planners used to check that each audit
catches the failure it is meant to catch.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np

from geometry.paths import ConstantPath, Path, concat
from geometry.spaces import PATHS, Discrete, completion, sphere_arc
from measures.core import ProbMeasure, dirac, pushforward
from planners.base import AnalogPlanner, Inputs

SHIFT = 1e-3


class DeclaredBound(AnalogPlanner):
    """A planner re-declared with a different support bound."""

    def __init__(self, planner: AnalogPlanner, bound: int, name: str = ""):
        super().__init__(
            name or f"{planner.name}[bound={bound}]",
            planner.space,
            arity=planner.arity,
            bound=bound,
            basepoint=planner.basepoint,
        )
        self.inner = planner

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        return self.inner.plan(*points)

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        return self.inner.critical_partner(x, rng)


class ShiftedEndpoint(AnalogPlanner):
    """Appends a short arc of length `shift` to every path of a sphere planner."""

    def __init__(self, planner: AnalogPlanner, shift: float = SHIFT, name: str = ""):
        super().__init__(
            name or f"{planner.name}+shift",
            planner.space,
            arity=planner.arity,
            bound=planner.bound,
            basepoint=planner.basepoint,
        )
        self.inner = planner
        self.shift = shift

    def displace(self, path: Path) -> Path:
        end = np.asarray(path.end, dtype=float)
        target = math.cos(self.shift) * end + math.sin(self.shift) * completion(end)
        return concat(path, sphere_arc(self.space, end, target))

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        return pushforward(self.displace, self.inner.plan(*points), PATHS)


class PointConstant(AnalogPlanner):
    """The constant planner on a one-point space."""

    def __init__(self, arity: int = 2, name: str = "point_constant"):
        space = Discrete(("*",))
        basepoint = "*" if arity == 1 else None
        super().__init__(name, space, arity=arity, bound=1, basepoint=basepoint)

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        return dirac(ConstantPath(self.space, points[0]), PATHS)
