"""
Geodesic Paths
==============
Exactly evaluable paths on [0, 1]:

- `GeoPath`: contiguous great-arc segments in an ambient Euclidean space,
  s ↦ cos(sα)·u + sin(sα)·w on each parameter span. The owning space decides
  how ambient vectors read as points (sphere, projective space, circle).
- `ProductPath`: a pair of paths evaluated coordinate-wise.
- `ConstantPath`: the constant path in a space with no geodesic structure.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from config import PATH_GRID_SIZE, POINT_TOLERANCE
from errors import EndpointMismatch, OutOfDomain

FINGERPRINT_GRID = 5


def _check_domain(t: float) -> None:
    if not (0.0 <= t <= 1.0):
        raise OutOfDomain(f"path parameter {t} outside [0, 1]")


@dataclass(frozen=True)
class ArcSegment:
    """One great-arc piece, parametrized over the span [t0, t1]."""

    start: np.ndarray
    tangent: np.ndarray
    angle: float
    t0: float = 0.0
    t1: float = 1.0

    def at_local(self, s: Any) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        phase = np.multiply.outer(s, self.angle)
        return np.multiply.outer(np.cos(phase), self.start) + np.multiply.outer(
            np.sin(phase), self.tangent
        )

    @property
    def end(self) -> np.ndarray:
        return math.cos(self.angle) * self.start + math.sin(self.angle) * self.tangent

    def respan(self, t0: float, t1: float) -> "ArcSegment":
        return ArcSegment(self.start, self.tangent, self.angle, t0, t1)

    def mapped(self, matrix: np.ndarray) -> "ArcSegment":
        """Image under a linear isometry."""
        return ArcSegment(
            matrix @ self.start, matrix @ self.tangent, self.angle, self.t0, self.t1
        )

    def direction_at(self, s: float) -> np.ndarray:
        phase = s * self.angle
        return -math.sin(phase) * self.start + math.cos(phase) * self.tangent

    def piece(self, s0: float, s1: float, t0: float, t1: float) -> "ArcSegment":
        """The sub-arc over local parameters [s0, s1], placed on the span [t0, t1]."""
        start = self.at_local(s0)
        return ArcSegment(start, self.direction_at(s0), (s1 - s0) * self.angle, t0, t1)

    def reversed(self) -> "ArcSegment":
        return ArcSegment(
            self.end, -self.direction_at(1.0), self.angle, 1.0 - self.t1, 1.0 - self.t0
        )


class Path(ABC):
    space: Any

    @abstractmethod
    def at(self, t: float) -> Any:
        """Evaluate at t ∈ [0, 1]."""

    @property
    @abstractmethod
    def length(self) -> float: ...

    @abstractmethod
    def trace(self, n: int = PATH_GRID_SIZE) -> Any:
        """Samples on the uniform n-point grid, in the space's trace format."""

    @property
    def start(self) -> Any:
        return self.at(0.0)

    @property
    def end(self) -> Any:
        return self.at(1.0)

    def fingerprint(self) -> Tuple[float, ...]:
        coords: List[float] = []
        for t in np.linspace(0.0, 1.0, FINGERPRINT_GRID):
            coords.extend(round(c, 9) for c in self.space.coordinates(self.at(t)))
        return tuple(coords)

    def sort_key(self) -> Any:
        return self.fingerprint()

    def to_record(self) -> Dict[str, Any]:
        return {
            "start": self.space.encode(self.start),
            "end": self.space.encode(self.end),
            "length": self.length,
        }


@dataclass(frozen=True, eq=False)
class GeoPath(Path):
    space: Any
    segments: Tuple[ArcSegment, ...]
    _cache: Dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    def ambient_at(self, t: float) -> np.ndarray:
        _check_domain(t)
        for segment in self.segments:
            if t <= segment.t1 or segment is self.segments[-1]:
                span = segment.t1 - segment.t0
                s = (t - segment.t0) / span if span > 0 else 1.0
                return segment.at_local(min(max(s, 0.0), 1.0))
        raise OutOfDomain(f"no segment covers t={t}")  # pragma: no cover

    def at(self, t: float) -> Any:
        return self.space.from_ambient(self.ambient_at(t))

    @property
    def length(self) -> float:
        return float(sum(segment.angle for segment in self.segments))

    def trace(self, n: int = PATH_GRID_SIZE) -> np.ndarray:
        if n not in self._cache:
            grid = np.linspace(0.0, 1.0, n)
            bounds = np.array([segment.t1 for segment in self.segments[:-1]])
            owner = np.searchsorted(bounds, grid, side="left")
            out = np.empty((n, self.segments[0].start.shape[0]))
            for index, segment in enumerate(self.segments):
                mask = owner == index
                if not mask.any():
                    continue
                span = segment.t1 - segment.t0
                local = (grid[mask] - segment.t0) / span if span > 0 else 1.0
                out[mask] = segment.at_local(np.clip(local, 0.0, 1.0))
            self._cache[n] = out
        return self._cache[n]

    def respan(self, a: float, b: float) -> List[ArcSegment]:
        width = b - a
        return [
            segment.respan(a + segment.t0 * width, a + segment.t1 * width)
            for segment in self.segments
        ]

    def with_space(self, space: Any) -> "GeoPath":
        return GeoPath(space, self.segments)

    def mapped(self, matrix: np.ndarray, space: Any = None) -> "GeoPath":
        segments = tuple(segment.mapped(matrix) for segment in self.segments)
        return GeoPath(space if space is not None else self.space, segments)


@dataclass(frozen=True, eq=False)
class ProductPath(Path):
    space: Any
    first: Path
    second: Path

    def at(self, t: float) -> Tuple[Any, Any]:
        return (self.first.at(t), self.second.at(t))

    @property
    def length(self) -> float:
        return math.hypot(self.first.length, self.second.length)

    def trace(self, n: int = PATH_GRID_SIZE) -> Tuple[Any, Any]:
        return (self.first.trace(n), self.second.trace(n))


@dataclass(frozen=True, eq=False)
class ConstantPath(Path):
    space: Any
    point: Any

    def at(self, t: float) -> Any:
        _check_domain(t)
        return self.point

    @property
    def length(self) -> float:
        return 0.0

    def trace(self, n: int = PATH_GRID_SIZE) -> np.ndarray:
        out = np.empty(n, dtype=object)
        for index in range(n):
            out[index] = self.point
        return out


def eval_path(path: Path, t: float) -> Any:
    return path.at(t)


def arc(space: Any, start: np.ndarray, tangent: np.ndarray, angle: float) -> GeoPath:
    return GeoPath(space, (ArcSegment(start, tangent, float(angle)),))


def constant_arc(space: Any, start: np.ndarray) -> GeoPath:
    return arc(space, start, np.zeros_like(start), 0.0)


def sup_distance(a: Path, b: Path, n: int = PATH_GRID_SIZE) -> float:
    """Uniform distance between two paths on the n-point grid."""
    return float(np.max(a.space.trace_distance(a.trace(n), b.trace(n))))


def _join(paths: Sequence[Path], spans: Sequence[float]) -> Path:
    cuts = np.concatenate([[0.0], np.cumsum(spans)])
    cuts[-1] = 1.0
    head = paths[0]
    if isinstance(head, GeoPath):
        segments: List[ArcSegment] = []
        for path, a, b in zip(paths, cuts[:-1], cuts[1:]):
            segments.extend(path.respan(float(a), float(b)))
        last = segments[-1]
        segments[-1] = last.respan(last.t0, 1.0)
        return GeoPath(head.space, tuple(segments))
    if isinstance(head, ProductPath):
        first = _join([p.first for p in paths], spans)
        second = _join([p.second for p in paths], spans)
        return ProductPath(head.space, first, second)
    return head


def _check_junctions(paths: Sequence[Path]) -> None:
    for left, right in zip(paths[:-1], paths[1:]):
        gap = left.space.distance(left.end, right.start)
        if gap > POINT_TOLERANCE:
            raise EndpointMismatch(f"legs do not meet: gap {gap:.3e}")


def concat(first: Path, second: Path) -> Path:
    """
    Concatenate two paths with parameter spans proportional to arclength.

    Zero-length legs are dropped; two constant paths give the first one.
    """
    _check_junctions([first, second])
    legs = [path for path in (first, second) if path.length > 0]
    if not legs:
        return first
    if len(legs) == 1:
        return legs[0]
    total = first.length + second.length
    return _join(legs, [first.length / total, second.length / total])


def concat_legs(paths: Sequence[Path]) -> Path:
    """Concatenate with equal spans so leg i starts exactly at t = i/len(paths)."""
    _check_junctions(paths)
    if len(paths) == 1:
        return paths[0]
    m = len(paths)
    return _join(paths, [1.0 / m] * m)


def reverse(path: Path) -> Path:
    """t ↦ γ(1 − t)."""
    if isinstance(path, GeoPath):
        segments = tuple(segment.reversed() for segment in reversed(path.segments))
        return GeoPath(path.space, segments)
    if isinstance(path, ProductPath):
        return ProductPath(path.space, reverse(path.first), reverse(path.second))
    return path


def restrict(path: Path, a: float, b: float) -> Path:
    """s ↦ γ(a + s(b − a)) for 0 ≤ a < b ≤ 1."""
    _check_domain(a)
    _check_domain(b)
    if not a < b:
        raise OutOfDomain(f"empty restriction [{a}, {b}]")
    if isinstance(path, ProductPath):
        return ProductPath(path.space, restrict(path.first, a, b), restrict(path.second, a, b))
    if not isinstance(path, GeoPath):
        return path
    width = b - a
    segments: List[ArcSegment] = []
    for segment in path.segments:
        lo, hi = max(a, segment.t0), min(b, segment.t1)
        span = segment.t1 - segment.t0
        if hi <= lo or span <= 0:
            continue
        segments.append(
            segment.piece(
                (lo - segment.t0) / span,
                (hi - segment.t0) / span,
                (lo - a) / width,
                (hi - a) / width,
            )
        )
    if not segments:
        return constant_arc(path.space, path.ambient_at(a))
    segments[0] = segments[0].respan(0.0, segments[0].t1)
    segments[-1] = segments[-1].respan(segments[-1].t0, 1.0)
    return GeoPath(path.space, tuple(segments))


def _visible(path: GeoPath, tolerance: float) -> List[ArcSegment]:
    return [segment for segment in path.segments if segment.t1 - segment.t0 > tolerance]


def _segments_match(a: ArcSegment, b: ArcSegment, sign: float, tolerance: float) -> bool:
    if abs(a.t0 - b.t0) > tolerance or abs(a.t1 - b.t1) > tolerance:
        return False
    if abs(a.angle - b.angle) > tolerance:
        return False
    if np.linalg.norm(a.start - sign * b.start) > tolerance:
        return False
    # the direction of a stationary piece carries no information
    return a.angle <= tolerance or np.linalg.norm(a.tangent - sign * b.tangent) <= tolerance


def same_path(a: Path, b: Path, tolerance: float = POINT_TOLERANCE) -> bool:
    """
    Equal segment data: spans, angles, start points and directions, up to
    one common sign of the ambient lift where the space allows it
    (`ambient_signs`). Products compare factorwise.
    """
    if isinstance(a, ProductPath) and isinstance(b, ProductPath):
        return same_path(a.first, b.first, tolerance) and same_path(a.second, b.second, tolerance)
    if isinstance(a, GeoPath) and isinstance(b, GeoPath):
        left, right = _visible(a, tolerance), _visible(b, tolerance)
        if len(left) != len(right):
            return False
        signs = getattr(a.space, "ambient_signs", (1.0,))
        return any(
            all(_segments_match(x, y, sign, tolerance) for x, y in zip(left, right))
            for sign in signs
        )
    if isinstance(a, ConstantPath) and isinstance(b, ConstantPath):
        return a.space.same(a.point, b.point)
    return False
