"""
Brute-Force W1 Oracle
=====================
Minimum cost over every spanning-tree basic feasible solution of a small
transport polytope. Slow on purpose; used to cross-check the simplex.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from config import MAX_ORACLE_SUPPORT
from measures.core import FiniteMeasure
from transport.metrics import GroundMetric, check_support

FEASIBILITY_SLACK = 1e-12

Cell = Tuple[int, int]


def _basis_graph(cells: Sequence[Cell], m: int, n: int) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(("r", i) for i in range(m))
    graph.add_nodes_from(("c", j) for j in range(n))
    graph.add_edges_from((("r", i), ("c", j)) for i, j in cells)
    return graph


def tree_flows(
    cells: Sequence[Cell], supply: Sequence[float], demand: Sequence[float]
) -> Optional[Dict[Cell, float]]:
    """Flows forced on a basis tree by peeling leaves; None if infeasible."""
    m, n = len(supply), len(demand)
    graph = _basis_graph(cells, m, n)
    remaining = {("r", i): float(supply[i]) for i in range(m)}
    remaining.update({("c", j): float(demand[j]) for j in range(n)})
    flows: Dict[Cell, float] = {}
    while graph.number_of_edges():
        leaf = min(node for node, degree in graph.degree() if degree == 1)
        (other,) = graph.neighbors(leaf)
        q = remaining[leaf]
        cell = (leaf[1], other[1]) if leaf[0] == "r" else (other[1], leaf[1])
        flows[cell] = q
        remaining[leaf] = 0.0
        remaining[other] -= q
        graph.remove_edge(leaf, other)
    if any(q < -FEASIBILITY_SLACK for q in flows.values()):
        return None
    return flows


def w1_oracle(mu: FiniteMeasure, nu: FiniteMeasure, g: GroundMetric) -> float:
    check_support(mu, nu, MAX_ORACLE_SUPPORT)
    cost = g.matrix(mu.support, nu.support)
    supply = [float(w) for w in mu.weights]
    demand = [float(w) for w in nu.weights]
    m, n = cost.shape
    cells: List[Cell] = list(itertools.product(range(m), range(n)))

    best = np.inf
    for basis in itertools.combinations(cells, m + n - 1):
        if not nx.is_tree(_basis_graph(basis, m, n)):
            continue
        flows = tree_flows(basis, supply, demand)
        if flows is None:
            continue
        best = min(best, sum(q * cost[cell] for cell, q in flows.items()))
    return float(best)
