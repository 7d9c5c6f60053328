"""
Projective Planners
===================
The two-geodesic planner on ℝPᵈ and its single-geodesic control.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from geometry.paths import Path
from geometry.spaces import PATHS, RealProjective, sphere_arc
from measures.core import ProbMeasure, dirac
from planners.base import AnalogPlanner, Inputs, path_measure
from planners.spheres import orthogonal_partner


def rp_weights(theta: float) -> tuple:
    """Weights on the near and far geodesic for θ = |⟨u, v⟩|."""
    return (1.0 + theta) / 2.0, (1.0 - theta) / 2.0


class RPTCPlanner(AnalogPlanner):
    """
    Lift ℓ₁, ℓ₂ to unit vectors u, v with θ = ⟨u, v⟩ ≥ 0 and put weight
    (1 + θ)/2 on the projected arc u → v and (1 − θ)/2 on u → −v. At θ = 0
    the two arcs have equal length and equal weight.
    """

    def __init__(self, d: int, name: str = "rp_tc"):
        super().__init__(name, RealProjective(d), arity=2, bound=2)

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        u, v, theta = self.space.lifts(*points)
        near_weight, far_weight = rp_weights(theta)
        return path_measure(
            [
                (sphere_arc(self.space, u, v), near_weight),
                (sphere_arc(self.space, u, -v), far_weight),
            ]
        )

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        return self.space.canonical(orthogonal_partner(np.asarray(x, dtype=float), rng))


class RPGeodesicControl(RPTCPlanner):
    """Single shortest geodesic with weight 1; discontinuous where θ = 0."""

    def __init__(self, d: int, name: str = "rp_geodesic_control"):
        super().__init__(d, name)
        self.bound = 1

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        path, _ = self.space.geodesics(*points)[0]
        return dirac(path, PATHS)
