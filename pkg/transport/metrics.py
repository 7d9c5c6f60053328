"""
Transport Metrics
=================
Exact distances between finite-support measures over a ground metric:
Wasserstein-1 through the transportation simplex and Lévy–Prokhorov through
max-flow feasibility of partial couplings.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Sequence

import networkx as nx
import numpy as np

from config import MAX_TRANSPORT_SUPPORT, PATH_GRID_SIZE
from errors import SupportTooLarge
from geometry.paths import Path, sup_distance
from logger import get_logger
from measures.core import FiniteMeasure
from transport.simplex import solve_transport

logger = get_logger(__name__)

# Pairs within this slack of ε count as "at distance ≤ ε".
DISTANCE_SLACK = 1e-12


@dataclass(frozen=True)
class GroundMetric:
    """A symmetric nonnegative distance on atoms."""

    distance: Callable[[Any, Any], float]
    name: str = "ground"

    @classmethod
    def of(cls, space: Any) -> "GroundMetric":
        return cls(space.distance, space.name)

    @classmethod
    def paths(cls, grid: int = PATH_GRID_SIZE) -> "GroundMetric":
        """Uniform distance between paths on a `grid`-point evaluation grid."""
        return cls(lambda a, b: sup_distance(a, b, grid), f"sup[{grid}]")

    def matrix(self, xs: Sequence[Any], ys: Sequence[Any]) -> np.ndarray:
        out = np.zeros((len(xs), len(ys)))
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                out[i, j] = self.distance(x, y)
        return out


REAL_LINE = GroundMetric(lambda x, y: abs(float(x) - float(y)), "R")


@dataclass(frozen=True)
class TransportPlan:
    """An optimal coupling of supp(μ) × supp(ν) and its cost."""

    sources: List[Any]
    targets: List[Any]
    coupling: np.ndarray
    cost: float

    def marginal_error(self, mu: FiniteMeasure, nu: FiniteMeasure) -> float:
        rows = np.abs(self.coupling.sum(axis=1) - np.array(mu.weights, dtype=float))
        cols = np.abs(self.coupling.sum(axis=0) - np.array(nu.weights, dtype=float))
        return float(max(rows.max(initial=0.0), cols.max(initial=0.0)))

    def to_record(self) -> Dict[str, Any]:
        return {
            "cost": self.cost,
            "coupling": [[float(q) for q in row] for row in self.coupling],
        }


def check_support(mu: FiniteMeasure, nu: FiniteMeasure, limit: int = MAX_TRANSPORT_SUPPORT) -> None:
    if len(mu) > limit or len(nu) > limit:
        raise SupportTooLarge(
            f"supports {len(mu)}x{len(nu)} exceed the {limit}-atom limit"
        )


def transport_plan(mu: FiniteMeasure, nu: FiniteMeasure, g: GroundMetric) -> TransportPlan:
    """Optimal plan between two measures of equal mass."""
    check_support(mu, nu)
    cost = g.matrix(mu.support, nu.support)
    supply = [float(w) for w in mu.weights]
    demand = [float(w) for w in nu.weights]
    coupling, value = solve_transport(supply, demand, cost)
    return TransportPlan(mu.support, nu.support, coupling, value)


def wasserstein1(mu: FiniteMeasure, nu: FiniteMeasure, g: GroundMetric) -> float:
    return transport_plan(mu, nu, g).cost


def _matched_mass(
    supply: Sequence[float], demand: Sequence[float], cost: np.ndarray, eps: float
) -> float:
    """F(ε): the largest mass a coupling can put on pairs at distance ≤ ε."""
    graph = nx.DiGraph()
    for i, weight in enumerate(supply):
        graph.add_edge("source", ("mu", i), capacity=weight)
    for j, weight in enumerate(demand):
        graph.add_edge(("nu", j), "sink", capacity=weight)
    rows, cols = np.nonzero(cost <= eps + DISTANCE_SLACK)
    for i, j in zip(rows.tolist(), cols.tolist()):
        graph.add_edge(("mu", i), ("nu", j))
    if not rows.size:
        return 0.0
    return float(nx.maximum_flow_value(graph, "source", "sink"))


def levy_prokhorov(mu: FiniteMeasure, nu: FiniteMeasure, g: GroundMetric) -> float:
    """
    Smallest ε such that a coupling puts mass ≤ ε on pairs farther than ε.

    1 − F(ε) is a nonincreasing step function that only drops at pairwise
    distances, so the optimum is either a candidate distance or the deficit
    just below the first candidate where the deficit falls under ε.
    """
    check_support(mu, nu)
    cost = g.matrix(mu.support, nu.support)
    supply = [float(w) for w in mu.weights]
    demand = [float(w) for w in nu.weights]
    candidates = sorted({0.0, *cost.ravel().tolist()})

    deficits: Dict[int, float] = {}

    def deficit(k: int) -> float:
        if k not in deficits:
            deficits[k] = max(0.0, 1.0 - _matched_mass(supply, demand, cost, candidates[k]))
        return deficits[k]

    index = bisect.bisect_left(
        range(len(candidates)), True, key=lambda k: deficit(k) <= candidates[k]
    )
    index = min(index, len(candidates) - 1)
    value = candidates[index]
    if index > 0:
        value = min(value, deficit(index - 1))
    logger.debug(f"levy-prokhorov crossing at candidate {index}/{len(candidates)}")
    return min(value, 1.0)


def path_measure_distance(
    mu: FiniteMeasure[Path],
    nu: FiniteMeasure[Path],
    metric: str = "w1",
    grid: int = PATH_GRID_SIZE,
) -> float:
    """W1 (or LP) between measures on paths under the grid sup-distance."""
    g = GroundMetric.paths(grid)
    if metric == "lp":
        return levy_prokhorov(mu, nu, g)
    return wasserstein1(mu, nu, g)
