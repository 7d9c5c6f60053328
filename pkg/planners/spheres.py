"""
Sphere Planners
===============
Based and two-point planners on Sᵈ built from explicit local rules glued by
a partition of unity.

Odd d: the nowhere-vanishing field v(x) = (−x₂, x₁, −x₄, x₃, …) sends x to −x
by a half turn, giving two rules. Even d has no such field, so a third rule
is needed: rotations about the axes e = e₁ and w₀ = e₂ (complex structures
on their orthogonal complements) each vanish only at ±axis, and the two
vanishing sets are far apart.
"""

from __future__ import annotations

import math
from typing import Any, Callable, List, Sequence, Tuple

import numpy as np

from config import POINT_TOLERANCE
from geometry.paths import Path, arc, concat
from geometry.spaces import Sphere, completion, sphere_arc, unit
from measures.core import ProbMeasure
from planners.base import AnalogPlanner, Inputs
from planners.partition import Rule, clamp, pou_section

Field = Callable[[np.ndarray], np.ndarray]


def basis_vector(dim: int, index: int) -> np.ndarray:
    e = np.zeros(dim)
    e[index] = 1.0
    return e


def odd_field(x: np.ndarray) -> np.ndarray:
    """Tangent field on odd spheres, pairing coordinates (0,1), (2,3), …"""
    v = np.empty_like(x)
    v[0::2] = -x[1::2]
    v[1::2] = x[0::2]
    return v


def axis_field(axis: int) -> Field:
    """
    Rotation about basis axis `axis` on an even sphere: the complex structure
    on the remaining (even number of) coordinates, paired in order.
    """

    def field(x: np.ndarray) -> np.ndarray:
        others = [i for i in range(x.shape[0]) if i != axis]
        v = np.zeros_like(x)
        for p, q in zip(others[0::2], others[1::2]):
            v[p] = -x[q]
            v[q] = x[p]
        return v

    return field


def antipodal(x: np.ndarray, y: np.ndarray) -> bool:
    return float(np.linalg.norm(x + y)) <= POINT_TOLERANCE


def half_turn(space: Sphere, x: np.ndarray, field: Field) -> Path:
    """Half great circle x → −x leaving in the direction of field(x)."""
    return arc(space, x, unit(field(x)), math.pi)


def via_antipode(space: Sphere, x: np.ndarray, y: np.ndarray, field: Field) -> Path:
    return concat(half_turn(space, x, field), sphere_arc(space, -x, y))


class SphereAcatPlanner(AnalogPlanner):
    """
    Based planner on Sᵈ at x₀ = e₁: the shortest arc x₀ → y with weight
    (1 + ⟨x₀, y⟩)/2, and the fixed half circle x₀ → −x₀ through w₀ = e₂
    followed by the shortest arc −x₀ → y with weight (1 − ⟨x₀, y⟩)/2.
    """

    def __init__(self, d: int, name: str = "sphere_acat"):
        space = Sphere(d)
        super().__init__(name, space, arity=1, bound=2, basepoint=basis_vector(d + 1, 0))
        self.waypoint = basis_vector(d + 1, 1)
        self.loop = arc(space, self.basepoint, self.waypoint, math.pi)
        x0 = self.basepoint
        self.rules = [
            Rule(
                "shortest",
                lambda y: not antipodal(x0, y[0]),
                lambda y: sphere_arc(space, x0, y[0]),
                lambda y: (1.0 + float(np.dot(x0, y[0]))) / 2.0,
            ),
            Rule(
                "via_antipode",
                lambda y: not antipodal(-x0, y[0]),
                lambda y: concat(self.loop, sphere_arc(space, -x0, y[0])),
                lambda y: (1.0 - float(np.dot(x0, y[0]))) / 2.0,
            ),
        ]

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        y = np.asarray(points[0], dtype=float)
        return pou_section(self.rules, (y,))

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        return -np.asarray(x, dtype=float)


def odd_rules(space: Sphere) -> List[Rule]:
    return [
        Rule(
            "shortest",
            lambda xy: not antipodal(*xy),
            lambda xy: sphere_arc(space, *xy),
            lambda xy: (1.0 + float(np.dot(*xy))) / 2.0,
        ),
        Rule(
            "half_turn",
            lambda xy: not antipodal(-xy[0], xy[1]),
            lambda xy: via_antipode(space, xy[0], xy[1], odd_field),
            lambda xy: (1.0 - float(np.dot(*xy))) / 2.0,
        ),
    ]


def even_bumps(x: np.ndarray, y: np.ndarray) -> Tuple[float, float, float]:
    """
    Bumps for the three even-sphere rules, with s = ⟨x, y⟩ and a = |x₁|:
    φA = clamp((s + ½)/¼), ψ = clamp((−¼ − s)/¼),
    φB = ψ·clamp((¾ − a)/¼), φC = ψ·clamp((a − ½)/¼).
    """
    s = float(np.dot(x, y))
    a = abs(float(x[0]))
    psi = clamp((-0.25 - s) / 0.25)
    return (
        clamp((s + 0.5) / 0.25),
        psi * clamp((0.75 - a) / 0.25),
        psi * clamp((a - 0.5) / 0.25),
    )


def even_rules(space: Sphere) -> List[Rule]:
    about_e = axis_field(0)
    about_w0 = axis_field(1)
    return [
        Rule(
            "shortest",
            lambda xy: float(np.dot(*xy)) > -0.5,
            lambda xy: sphere_arc(space, *xy),
            lambda xy: even_bumps(*xy)[0],
        ),
        Rule(
            "turn_about_e",
            lambda xy: float(np.dot(*xy)) < -0.25 and abs(float(xy[0][0])) < 0.75,
            lambda xy: via_antipode(space, xy[0], xy[1], about_e),
            lambda xy: even_bumps(*xy)[1],
        ),
        Rule(
            "turn_about_w0",
            lambda xy: float(np.dot(*xy)) < -0.25 and abs(float(xy[0][0])) > 0.5,
            lambda xy: via_antipode(space, xy[0], xy[1], about_w0),
            lambda xy: even_bumps(*xy)[2],
        ),
    ]


class SphereTCPlanner(AnalogPlanner):
    """Two-point planner on Sᵈ: 2 rules for odd d, 3 rules for even d."""

    def __init__(self, d: int, name: str = "sphere_tc"):
        space = Sphere(d)
        self.rules: Sequence[Rule] = odd_rules(space) if d % 2 else even_rules(space)
        super().__init__(name, space, arity=2, bound=len(self.rules))

    def _plan(self, points: Inputs) -> ProbMeasure[Path]:
        x, y = (np.asarray(p, dtype=float) for p in points)
        return pou_section(self.rules, (x, y))

    def critical_partner(self, x: Any, rng: np.random.Generator) -> Any:
        return -np.asarray(x, dtype=float)


def orthogonal_partner(x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """A random unit vector orthogonal to x."""
    v = rng.standard_normal(x.shape[0])
    v = v - np.dot(v, x) * x
    norm = float(np.linalg.norm(v))
    return v / norm if norm > 1e-6 else completion(x)
