"""
Transportation Simplex
======================
Exact min-cost transport between two finite distributions.

Northwest-corner start, u/v potentials on the basis tree, Bland's rule for
both the entering cell (first negative reduced cost in row-major order) and
the leaving cell (lexicographically smallest among ties), so the pivot
sequence and the returned plan are deterministic.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, List, Sequence, Tuple

import numpy as np

from errors import SolverError
from logger import get_logger

logger = get_logger(__name__)

Cell = Tuple[int, int]


def northwest_corner(supply: Sequence[float], demand: Sequence[float]) -> Dict[Cell, float]:
    """Initial basic feasible solution with exactly m + n - 1 basic cells."""
    m, n = len(supply), len(demand)
    rows, cols = list(supply), list(demand)
    flow: Dict[Cell, float] = {}
    i = j = 0
    while True:
        q = max(min(rows[i], cols[j]), 0.0)
        flow[(i, j)] = q
        rows[i] -= q
        cols[j] -= q
        if i == m - 1 and j == n - 1:
            break
        if i == m - 1:
            j += 1
        elif j == n - 1:
            i += 1
        elif rows[i] < cols[j]:
            i += 1
        else:
            j += 1
    return flow


def _tree(basis: Sequence[Cell], m: int, n: int) -> Dict[Tuple[str, int], List[Tuple[str, int]]]:
    adjacency: Dict[Tuple[str, int], List[Tuple[str, int]]] = {
        **{("r", i): [] for i in range(m)},
        **{("c", j): [] for j in range(n)},
    }
    for i, j in sorted(basis):
        adjacency[("r", i)].append(("c", j))
        adjacency[("c", j)].append(("r", i))
    return adjacency


def potentials(basis: Sequence[Cell], cost: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Solve u_i + v_j = c_ij over the basis tree, with u_0 = 0."""
    m, n = cost.shape
    adjacency = _tree(basis, m, n)
    u = np.full(m, np.nan)
    v = np.full(n, np.nan)
    u[0] = 0.0
    queue = deque([("r", 0)])
    while queue:
        kind, index = queue.popleft()
        for other_kind, other in adjacency[(kind, index)]:
            if other_kind == "c" and np.isnan(v[other]):
                v[other] = cost[index, other] - u[index]
                queue.append(("c", other))
            elif other_kind == "r" and np.isnan(u[other]):
                u[other] = cost[other, index] - v[index]
                queue.append(("r", other))
    if np.isnan(u).any() or np.isnan(v).any():
        raise SolverError("basis is not a spanning tree")
    return u, v


def _tree_path(basis: Sequence[Cell], m: int, n: int, row: int, col: int) -> List[Cell]:
    """Basis cells on the tree path from row node `row` to column node `col`."""
    adjacency = _tree(basis, m, n)
    start, goal = ("r", row), ("c", col)
    parent: Dict[Tuple[str, int], Tuple[str, int]] = {start: start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            break
        for other in adjacency[node]:
            if other not in parent:
                parent[other] = node
                queue.append(other)
    if goal not in parent:
        raise SolverError("entering cell does not close a cycle")
    cells: List[Cell] = []
    node = goal
    while node != start:
        previous = parent[node]
        cell = (node[1], previous[1]) if node[0] == "r" else (previous[1], node[1])
        cells.append(cell)
        node = previous
    cells.reverse()
    return cells


def solve_transport(
    supply: Sequence[float], demand: Sequence[float], cost: np.ndarray
) -> Tuple[np.ndarray, float]:
    """
    Optimal coupling and cost for the balanced problem (supply, demand, cost).
    """
    cost = np.asarray(cost, dtype=float)
    m, n = cost.shape
    flow = northwest_corner(supply, demand)
    basis = sorted(flow)
    scale = max(1.0, float(np.max(np.abs(cost)))) if cost.size else 1.0
    eps = 1e-12 * scale
    max_iterations = 50 * (m + n) * max(m, n) + 100

    for iteration in range(max_iterations):
        u, v = potentials(basis, cost)
        reduced = cost - u[:, None] - v[None, :]
        basic = set(basis)
        entering = next(
            (
                (i, j)
                for i in range(m)
                for j in range(n)
                if (i, j) not in basic and reduced[i, j] < -eps
            ),
            None,
        )
        if entering is None:
            logger.debug(f"transport simplex optimal after {iteration} pivots")
            break

        path = _tree_path(basis, m, n, *entering)
        minus, plus = path[0::2], path[1::2]
        theta = min(flow[cell] for cell in minus)
        leaving = min(cell for cell in minus if flow[cell] <= theta + 1e-15)
        for cell in minus:
            flow[cell] -= theta
        for cell in plus:
            flow[cell] += theta
        flow[entering] = theta
        del flow[leaving]
        basis = sorted(flow)
    else:
        raise SolverError(f"no optimum after {max_iterations} pivots")

    plan = np.zeros((m, n))
    for (i, j), q in flow.items():
        plan[i, j] = max(q, 0.0)
    return plan, float(np.sum(plan * cost))
