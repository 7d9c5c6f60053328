"""
Base Planner
============
Abstract base class for analog motion planners.

A planner of arity r maps an r-tuple of points to a probability measure on
paths. For r ≥ 2 every atom γ satisfies γ(i/(r−1)) = xᵢ; for r = 1 the
planner is based at x₀ and every atom runs from x₀ to the input point.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from errors import ArityMismatch
from geometry.paths import Path
from geometry.spaces import PATHS, Space
from logger import get_logger
from measures.core import ProbMeasure, Weight, normalize

logger = get_logger(__name__)

Inputs = Tuple[Any, ...]


def path_measure(raw: Iterable[Tuple[Path, Weight]]) -> ProbMeasure[Path]:
    """Lowest-terms probability measure on paths."""
    return normalize(raw, PATHS)


class AnalogPlanner(ABC):
    def __init__(
        self,
        name: str,
        space: Space,
        arity: int,
        bound: int,
        basepoint: Optional[Any] = None,
    ):
        self.name = name
        self.space = space
        self.arity = arity
        self.bound = bound
        self.basepoint = basepoint

    @abstractmethod
    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        pass

    def plan(self, *points: Any) -> ProbMeasure[Path]:
        """
        Evaluate the planner on an r-tuple of points.
        """
        if len(points) != self.arity:
            message = f"{self.name} takes {self.arity} points, got {len(points)}"
            logger.error(message)
            raise ArityMismatch(message)
        return self._plan(tuple(points))

    @property
    def input_spaces(self) -> List[Space]:
        return [self.space] * self.arity

    def constraints(self, points: Sequence[Any]) -> List[Tuple[float, Any]]:
        """(time, point) pairs every atom must pass through."""
        if self.arity == 1:
            return [(0.0, self.basepoint), (1.0, points[0])]
        steps = self.arity - 1
        return [(i / steps, x) for i, x in enumerate(points)]

    def sample_inputs(self, rng: np.random.Generator) -> Inputs:
        return tuple(space.random_point(rng) for space in self.input_spaces)

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        """A point y where the planner switches behaviour relative to x."""
        return self.space.random_point(rng)

    def critical_inputs(self, rng: np.random.Generator) -> Inputs:
        """Inputs on the locus where the planner's rules hand over."""
        if self.arity == 1:
            return (self.critical_partner(self.basepoint, rng),)
        points = [self.space.random_point(rng)]
        for _ in range(self.arity - 1):
            points.append(self.critical_partner(points[-1], rng))
        return tuple(points)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, {self.space.name}, r={self.arity}, bound={self.bound})"
