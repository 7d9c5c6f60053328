"""
Geodesic Spaces
===============
The catalog of concrete spaces: spheres Sᵈ, real projective spaces ℝPᵈ,
the circle, finite discrete sets and binary products (tori are iterated
products of circles).

Every space doubles as the `AtomEquality` for measures on its points
(`same`, `sort_key`, `encode`) and as the ground metric for transport.

Point encodings:
- Sphere: unit vector in ℝ^{d+1} (numpy array).
- RealProjective: unit vector whose first coordinate beyond tolerance is
  positive.
- Circle: angle in [0, 2π).
- Discrete: the label itself.
- Product: nested pair (x, y).
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, List, Sequence, Tuple

import numpy as np

from config import POINT_TOLERANCE
from errors import NoGeodesic
from geometry.paths import (
    ConstantPath,
    GeoPath,
    Path,
    ProductPath,
    arc,
    constant_arc,
    same_path,
)
from measures.equality import exact_encode, exact_key

TWO_PI = 2.0 * math.pi


def unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def chord_to_angle(chord: Any) -> Any:
    return 2.0 * np.arcsin(np.clip(np.asarray(chord) / 2.0, 0.0, 1.0))


class Space(ABC):
    """A metric space with canonical point encodings and geodesic candidates."""

    tolerance: float = POINT_TOLERANCE

    @property
    @abstractmethod
    def name(self) -> str: ...

    @abstractmethod
    def distance(self, x: Any, y: Any) -> float: ...

    @abstractmethod
    def sort_key(self, x: Any) -> Any: ...

    @abstractmethod
    def encode(self, x: Any) -> Any: ...

    @abstractmethod
    def coordinates(self, x: Any) -> List[float]:
        """Flat float coordinates, used for CSV traces and fingerprints."""

    @abstractmethod
    def random_point(self, rng: np.random.Generator) -> Any: ...

    @abstractmethod
    def step(self, x: Any, distance: float, rng: np.random.Generator) -> Any:
        """A point at exactly `distance` from x in a random direction."""

    @abstractmethod
    def trace_distance(self, a: Any, b: Any) -> np.ndarray:
        """Pointwise distances between two path traces."""

    @abstractmethod
    def constant_path(self, x: Any) -> Path: ...

    def same(self, x: Any, y: Any) -> bool:
        return self.distance(x, y) <= self.tolerance

    def canonical(self, x: Any) -> Any:
        return x

    def nearby_point(self, x: Any, h: float, rng: np.random.Generator) -> Any:
        """A point at distance in [h/2, h] from x."""
        return self.step(x, float(rng.uniform(h / 2.0, h)), rng)

    def geodesics(self, x: Any, y: Any) -> List[Tuple[Path, float]]:
        raise NoGeodesic(f"{self.name} has no geodesic structure")

    def __repr__(self) -> str:
        return self.name


class _VectorSpace(Space):
    """Shared code for spaces whose points are unit vectors in ℝ^{dim}."""

    dim: int

    def encode(self, x: Any) -> Any:
        return [float(c) for c in x]

    def coordinates(self, x: Any) -> List[float]:
        return [float(c) for c in x]

    def sort_key(self, x: Any) -> Any:
        return tuple(round(float(c), 9) + 0.0 for c in self.canonical(x))

    def from_ambient(self, v: np.ndarray) -> Any:
        return v

    def tangent_direction(self, x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        while True:
            v = rng.standard_normal(self.dim)
            v = v - np.dot(v, x) * x
            norm = np.linalg.norm(v)
            if norm > 1e-6:
                return v / norm

    def step(self, x: Any, distance: float, rng: np.random.Generator) -> Any:
        direction = self.tangent_direction(x, rng)
        return self.canonical(math.cos(distance) * x + math.sin(distance) * direction)

    def constant_path(self, x: Any) -> Path:
        return constant_arc(self, np.asarray(x, dtype=float))


def completion(x: np.ndarray, tolerance: float = POINT_TOLERANCE) -> np.ndarray:
    """Unit vector ⊥ x from the first basis vector not parallel to x."""
    for index in range(x.shape[0]):
        if abs(x[index]) < 1.0 - tolerance:
            e = np.zeros_like(x)
            e[index] = 1.0
            return unit(e - x[index] * x)
    raise NoGeodesic("no orthonormal completion")  # pragma: no cover


def sphere_arc(
    space: Any, u: np.ndarray, v: np.ndarray, through: np.ndarray = None
) -> GeoPath:
    """
    Shortest great arc u → v. For antipodal u, v the half circle leaves u in
    direction `through` (default: the deterministic completion).
    """
    cos_angle = float(np.clip(np.dot(u, v), -1.0, 1.0))
    angle = float(chord_to_angle(np.linalg.norm(u - v)))
    if angle <= POINT_TOLERANCE:
        return constant_arc(space, u)
    if np.linalg.norm(u + v) <= POINT_TOLERANCE:
        tangent = through if through is not None else completion(u)
        return arc(space, u, tangent, math.pi)
    return arc(space, u, unit(v - cos_angle * u), angle)


@dataclass(frozen=True)
class Sphere(_VectorSpace):
    d: int

    @property
    def name(self) -> str:
        return f"S^{self.d}"

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.d + 1

    def distance(self, x: Any, y: Any) -> float:
        return float(chord_to_angle(np.linalg.norm(np.asarray(x) - np.asarray(y))))

    def same(self, x: Any, y: Any) -> bool:
        return float(np.linalg.norm(np.asarray(x) - np.asarray(y))) <= self.tolerance

    def canonical(self, x: Any) -> Any:
        return unit(np.asarray(x, dtype=float))

    def random_point(self, rng: np.random.Generator) -> Any:
        return unit(rng.standard_normal(self.dim))

    def trace_distance(self, a: Any, b: Any) -> np.ndarray:
        return chord_to_angle(np.linalg.norm(a - b, axis=-1))

    def geodesics(self, x: Any, y: Any) -> List[Tuple[Path, float]]:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self.same(x, y):
            return [(self.constant_path(x), 0.0)]
        if np.linalg.norm(x + y) <= self.tolerance:
            w = completion(x)
            return [
                (sphere_arc(self, x, y, w), math.pi),
                (sphere_arc(self, x, y, -w), math.pi),
            ]
        path = sphere_arc(self, x, y)
        return [(path, path.length)]


@dataclass(frozen=True)
class RealProjective(_VectorSpace):
    """ℝPᵈ with the metric d([u],[v]) = arccos|⟨u,v⟩| induced from Sᵈ."""

    d: int
    ambient_signs = (1.0, -1.0)

    @property
    def name(self) -> str:
        return f"RP^{self.d}"

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.d + 1

    def canonical(self, x: Any) -> Any:
        v = unit(np.asarray(x, dtype=float))
        for c in v:
            if abs(c) > self.tolerance:
                return v if c > 0 else -v
        return v  # pragma: no cover

    def from_ambient(self, v: np.ndarray) -> Any:
        return self.canonical(v)

    def _chord(self, x: Any, y: Any) -> float:
        x = np.asarray(x)
        y = np.asarray(y)
        return float(min(np.linalg.norm(x - y), np.linalg.norm(x + y)))

    def distance(self, x: Any, y: Any) -> float:
        return float(chord_to_angle(self._chord(x, y)))

    def same(self, x: Any, y: Any) -> bool:
        return self._chord(x, y) <= self.tolerance

    def random_point(self, rng: np.random.Generator) -> Any:
        return self.canonical(rng.standard_normal(self.dim))

    def trace_distance(self, a: Any, b: Any) -> np.ndarray:
        chord = np.minimum(np.linalg.norm(a - b, axis=-1), np.linalg.norm(a + b, axis=-1))
        return chord_to_angle(chord)

    def lifts(self, x: Any, y: Any) -> Tuple[np.ndarray, np.ndarray, float]:
        """Unit lifts u, v with ⟨u, v⟩ ≥ 0, and θ = ⟨u, v⟩."""
        u = np.asarray(x, dtype=float)
        v = np.asarray(y, dtype=float)
        theta = float(np.dot(u, v))
        if theta < 0:
            v = -v
            theta = -theta
        return u, v, min(theta, 1.0)

    def geodesics(self, x: Any, y: Any) -> List[Tuple[Path, float]]:
        """The two projected arcs u → v and u → −v, shortest first."""
        u, v, _ = self.lifts(x, y)
        near = sphere_arc(self, u, v)
        far = sphere_arc(self, u, -v)
        candidates = [(near, near.length), (far, far.length)]
        return sorted(candidates, key=lambda pair: pair[1])


@dataclass(frozen=True)
class Circle(Space):
    """S¹ with angle coordinates; paths are arcs of the unit circle in ℝ²."""

    @property
    def name(self) -> str:
        return "S^1"

    def vector(self, angle: float) -> np.ndarray:
        return np.array([math.cos(angle), math.sin(angle)])

    def canonical(self, x: Any) -> Any:
        return float(x) % TWO_PI

    def from_ambient(self, v: np.ndarray) -> Any:
        return math.atan2(float(v[1]), float(v[0])) % TWO_PI

    def distance(self, x: Any, y: Any) -> float:
        gap = abs(float(x) - float(y)) % TWO_PI
        return min(gap, TWO_PI - gap)

    def sort_key(self, x: Any) -> Any:
        return round(self.canonical(x), 9)

    def encode(self, x: Any) -> Any:
        return float(x)

    def coordinates(self, x: Any) -> List[float]:
        return [float(x)]

    def random_point(self, rng: np.random.Generator) -> Any:
        return float(rng.uniform(0.0, TWO_PI))

    def step(self, x: Any, distance: float, rng: np.random.Generator) -> Any:
        sign = 1.0 if rng.random() < 0.5 else -1.0
        return self.canonical(float(x) + sign * distance)

    def trace_distance(self, a: Any, b: Any) -> np.ndarray:
        return chord_to_angle(np.linalg.norm(a - b, axis=-1))

    def constant_path(self, x: Any) -> Path:
        return constant_arc(self, self.vector(float(x)))

    def sweep(self, x: Any, angle: float, ccw: bool = True) -> GeoPath:
        """Arc from x sweeping `angle` counterclockwise (or clockwise)."""
        u = self.vector(float(x))
        tangent = np.array([-u[1], u[0]])
        if not ccw:
            tangent = -tangent
        if angle <= 0:
            return constant_arc(self, u)
        return arc(self, u, tangent, angle)

    def ccw_gap(self, x: Any, y: Any) -> float:
        gap = (float(y) - float(x)) % TWO_PI
        return 0.0 if self.distance(gap, 0.0) <= self.tolerance else gap

    def geodesics(self, x: Any, y: Any) -> List[Tuple[Path, float]]:
        delta = self.ccw_gap(x, y)
        ccw = self.sweep(x, delta, ccw=True)
        cw = self.sweep(x, TWO_PI - delta, ccw=False)
        candidates = [(ccw, delta), (cw, TWO_PI - delta)]
        return sorted(candidates, key=lambda pair: pair[1])


@dataclass(frozen=True)
class Discrete(Space):
    """A finite set with the discrete metric."""

    labels: Tuple[Any, ...] = field(default=("*",))

    @property
    def name(self) -> str:
        return f"Discrete({len(self.labels)})"

    def distance(self, x: Any, y: Any) -> float:
        return 0.0 if x == y else 1.0

    def same(self, x: Any, y: Any) -> bool:
        return x == y

    def sort_key(self, x: Any) -> Any:
        return exact_key(x)

    def encode(self, x: Any) -> Any:
        return exact_encode(x)

    def coordinates(self, x: Any) -> List[float]:
        return [float(self.labels.index(x))]

    def random_point(self, rng: np.random.Generator) -> Any:
        return self.labels[int(rng.integers(len(self.labels)))]

    def step(self, x: Any, distance: float, rng: np.random.Generator) -> Any:
        return x

    def trace_distance(self, a: Any, b: Any) -> np.ndarray:
        return np.array([0.0 if p == q else 1.0 for p, q in zip(a, b)])

    def constant_path(self, x: Any) -> Path:
        return ConstantPath(self, x)


@dataclass(frozen=True)
class Product(Space):
    """X × Y with the Euclidean product metric √(d_X² + d_Y²)."""

    first: Space
    second: Space

    @property
    def name(self) -> str:
        return f"{self.first.name} x {self.second.name}"

    def distance(self, x: Any, y: Any) -> float:
        return math.hypot(
            self.first.distance(x[0], y[0]), self.second.distance(x[1], y[1])
        )

    def same(self, x: Any, y: Any) -> bool:
        return self.first.same(x[0], y[0]) and self.second.same(x[1], y[1])

    def canonical(self, x: Any) -> Any:
        return (self.first.canonical(x[0]), self.second.canonical(x[1]))

    def sort_key(self, x: Any) -> Any:
        return (self.first.sort_key(x[0]), self.second.sort_key(x[1]))

    def encode(self, x: Any) -> Any:
        return [self.first.encode(x[0]), self.second.encode(x[1])]

    def coordinates(self, x: Any) -> List[float]:
        return self.first.coordinates(x[0]) + self.second.coordinates(x[1])

    def random_point(self, rng: np.random.Generator) -> Any:
        return (self.first.random_point(rng), self.second.random_point(rng))

    def step(self, x: Any, distance: float, rng: np.random.Generator) -> Any:
        phi = float(rng.uniform(0.0, math.pi / 2.0))
        return (
            self.first.step(x[0], distance * math.cos(phi), rng),
            self.second.step(x[1], distance * math.sin(phi), rng),
        )

    def trace_distance(self, a: Any, b: Any) -> np.ndarray:
        return np.hypot(
            self.first.trace_distance(a[0], b[0]),
            self.second.trace_distance(a[1], b[1]),
        )

    def pair(self, first: Path, second: Path) -> ProductPath:
        return ProductPath(self, first, second)

    def constant_path(self, x: Any) -> Path:
        return self.pair(self.first.constant_path(x[0]), self.second.constant_path(x[1]))

    def geodesics(self, x: Any, y: Any) -> List[Tuple[Path, float]]:
        candidates = [
            (self.pair(a, b), math.hypot(la, lb))
            for a, la in self.first.geodesics(x[0], y[0])
            for b, lb in self.second.geodesics(x[1], y[1])
        ]
        return sorted(candidates, key=lambda pair: pair[1])


def torus(n: int) -> Space:
    """Tⁿ as nested products of circles: (θ₁, (θ₂, (…)))."""
    if n == 1:
        return Circle()
    return Product(Circle(), torus(n - 1))


def geodesics(space: Space, x: Any, y: Any) -> List[Tuple[Path, float]]:
    return space.geodesics(x, y)


class PathEquality:
    """Atom equality for measures over paths: matching segment data within tolerance."""

    def __init__(self, tolerance: float = POINT_TOLERANCE):
        self.tolerance = tolerance

    def same(self, a: Path, b: Path) -> bool:
        if a.space != b.space:
            return False
        return same_path(a, b, self.tolerance)

    def sort_key(self, a: Path) -> Any:
        return a.sort_key()

    def encode(self, a: Path) -> Any:
        return a.to_record()


PATHS = PathEquality()


def max_coordinate_distance(
    spaces: Sequence[Space], xs: Sequence[Any], ys: Sequence[Any]
) -> float:
    """Distance between input tuples: the max over coordinates."""
    return max(space.distance(x, y) for space, x, y in zip(spaces, xs, ys))
