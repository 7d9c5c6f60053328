"""
Circle Planner
==============
Counterclockwise and clockwise arcs weighted linearly in the ccw gap.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from geometry.paths import Path
from geometry.spaces import TWO_PI, Circle
from measures.core import ProbMeasure
from planners.base import AnalogPlanner, Inputs, path_measure


class CircleTCPlanner(AnalogPlanner):
    """
    With δ the ccw gap from x to y in [0, 2π): the ccw arc gets weight
    1 − δ/2π and the cw arc gets δ/2π. At δ = 0 the full cw loop has weight
    zero and drops out.
    """

    def __init__(self, name: str = "circle_tc"):
        super().__init__(name, Circle(), arity=2, bound=2)

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        x, y = points
        delta = self.space.ccw_gap(x, y)
        return path_measure(
            [
                (self.space.sweep(x, delta, ccw=True), 1.0 - delta / TWO_PI),
                (self.space.sweep(x, TWO_PI - delta, ccw=False), delta / TWO_PI),
            ]
        )

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        return float(x)
