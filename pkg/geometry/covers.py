"""
Covering Maps
=============
Finite covers p: E → X with fiber enumeration, path projection and, for
regular covers, the deck group action.
"""

from __future__ import annotations

import itertools
import math
from abc import ABC, abstractmethod
from typing import Any, Callable, List

import numpy as np

from errors import FiberSizeMismatch
from geometry.paths import ArcSegment, GeoPath, Path, ProductPath
from geometry.spaces import TWO_PI, Circle, Product, RealProjective, Space, Sphere
from logger import get_logger

logger = get_logger(__name__)

DeckElement = Callable[[Any], Any]


class CoveringMap(ABC):
    """A degree-k covering map p: total → base."""

    total: Space
    base: Space
    degree: int

    @abstractmethod
    def project(self, x: Any) -> Any: ...

    @abstractmethod
    def fiber(self, x: Any) -> List[Any]:
        """The k lifts of x in a deterministic order."""

    @abstractmethod
    def project_path(self, path: Path) -> Path: ...

    def deck_group(self) -> List[DeckElement]:
        """Deck transformations, identity first; empty if not regular."""
        return []

    @property
    def regular(self) -> bool:
        return len(self.deck_group()) == self.degree

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.total.name} -> {self.base.name}, k={self.degree})"


class AntipodalCover(CoveringMap):
    """Sᵈ → ℝPᵈ, u ↦ [u]; deck group {id, −id}."""

    def __init__(self, d: int):
        self.d = d
        self.total = Sphere(d)
        self.base = RealProjective(d)
        self.degree = 2

    def project(self, x: Any) -> Any:
        return self.base.canonical(x)

    def fiber(self, x: Any) -> List[Any]:
        u = self.base.canonical(x)
        return [u, -u]

    def project_path(self, path: Path) -> Path:
        assert isinstance(path, GeoPath)
        return path.with_space(self.base)

    def deck_group(self) -> List[DeckElement]:
        return [lambda u: u, lambda u: -np.asarray(u)]


class CircleCover(CoveringMap):
    """S¹ → S¹, z ↦ zᵏ; deck group of rotations by 2πj/k."""

    def __init__(self, k: int):
        self.total = Circle()
        self.base = Circle()
        self.degree = k

    def project(self, x: Any) -> Any:
        return (self.degree * float(x)) % TWO_PI

    def fiber(self, x: Any) -> List[Any]:
        base_angle = float(x) % TWO_PI
        return [(base_angle + TWO_PI * j) / self.degree for j in range(self.degree)]

    def project_path(self, path: Path) -> Path:
        assert isinstance(path, GeoPath)
        segments = []
        for segment in path.segments:
            angle = math.atan2(segment.start[1], segment.start[0])
            start, tangent = segment.start, segment.tangent
            orientation = start[0] * tangent[1] - start[1] * tangent[0]
            u = np.array([math.cos(self.degree * angle), math.sin(self.degree * angle)])
            tangent = np.array([-u[1], u[0]]) * (1.0 if orientation >= 0 else -1.0)
            if segment.angle == 0:
                tangent = np.zeros(2)
            segments.append(
                ArcSegment(u, tangent, self.degree * segment.angle, segment.t0, segment.t1)
            )
        return GeoPath(self.base, tuple(segments))

    def deck_group(self) -> List[DeckElement]:
        return [
            (lambda x, j=j: (float(x) + TWO_PI * j / self.degree) % TWO_PI)
            for j in range(self.degree)
        ]


class IdentityCover(CoveringMap):
    """The degree-1 cover X → X."""

    def __init__(self, space: Space):
        self.total = space
        self.base = space
        self.degree = 1

    def project(self, x: Any) -> Any:
        return x

    def fiber(self, x: Any) -> List[Any]:
        return [x]

    def project_path(self, path: Path) -> Path:
        return path

    def deck_group(self) -> List[DeckElement]:
        return [lambda x: x]


class ProductCover(CoveringMap):
    """p₁ × p₂: E₁ × E₂ → X₁ × X₂ of degree k₁k₂."""

    def __init__(self, first: CoveringMap, second: CoveringMap):
        self.first = first
        self.second = second
        self.total = Product(first.total, second.total)
        self.base = Product(first.base, second.base)
        self.degree = first.degree * second.degree

    def project(self, x: Any) -> Any:
        return (self.first.project(x[0]), self.second.project(x[1]))

    def fiber(self, x: Any) -> List[Any]:
        return list(itertools.product(self.first.fiber(x[0]), self.second.fiber(x[1])))

    def project_path(self, path: Path) -> Path:
        assert isinstance(path, ProductPath)
        return ProductPath(
            self.base,
            self.first.project_path(path.first),
            self.second.project_path(path.second),
        )

    def deck_group(self) -> List[DeckElement]:
        return [
            (lambda x, g=g, h=h: (g(x[0]), h(x[1])))
            for g in self.first.deck_group()
            for h in self.second.deck_group()
        ]


def fiber(p: CoveringMap, x: Any) -> List[Any]:
    """
    The fiber p⁻¹(x): exactly k distinct points, each projecting to x.
    """
    lifts = p.fiber(x)
    distinct = [
        lift
        for index, lift in enumerate(lifts)
        if not any(p.total.same(lift, other) for other in lifts[:index])
    ]
    if len(lifts) != p.degree or len(distinct) != p.degree:
        message = (
            f"fiber over {p.base.encode(x)} has {len(distinct)} distinct points, "
            f"expected {p.degree}"
        )
        logger.error(f"{p!r}: {message}")
        raise FiberSizeMismatch(message)
    return lifts


def project_path(p: CoveringMap, path: Path) -> Path:
    return p.project_path(path)


def deck_orbit(p: CoveringMap, x: Any) -> List[Any]:
    return [g(x) for g in p.deck_group()]

