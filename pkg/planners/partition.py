"""
Partition-of-Unity Sections
===========================
Glue local sections sᵢ over an open cover into one measure-valued section
s(y) = Σ φᵢ(y) δ_sᵢ(y) using bump functions subordinate to the cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, List, Sequence, Tuple

from config import MASS_TOLERANCE, ZERO_WEIGHT
from errors import PartitionNotUnity, RuleOutsideDomain
from geometry.spaces import PATHS
from measures.core import ProbMeasure, normalize
from measures.equality import AtomEquality


@dataclass(frozen=True)
class Rule:
    """A local section with its domain test and bump function."""

    name: str
    contains: Callable[[Any], bool]
    section: Callable[[Any], Any]
    bump: Callable[[Any], float]


def clamp(value: float) -> float:
    return min(1.0, max(0.0, value))


def bump_values(rules: Sequence[Rule], y: Any) -> List[float]:
    values = [float(rule.bump(y)) for rule in rules]
    total = math.fsum(values)
    if abs(total - 1.0) > MASS_TOLERANCE:
        raise PartitionNotUnity(f"bumps sum to {total!r} at {y!r}")
    return values


def pou_section(
    rules: Sequence[Rule], y: Any, equality: AtomEquality = PATHS
) -> ProbMeasure:
    """
    The measure Σ φᵢ(y) δ_sᵢ(y), in lowest terms.

    Bumps below ZERO_WEIGHT count as zero, so their sections are neither
    evaluated nor checked for domain membership.
    """
    raw: List[Tuple[Any, float]] = []
    for rule, phi in zip(rules, bump_values(rules, y)):
        if phi < ZERO_WEIGHT:
            continue
        if not rule.contains(y):
            raise RuleOutsideDomain(f"rule {rule.name} has bump {phi} outside its domain")
        raw.append((rule.section(y), phi))
    return normalize(raw, equality)
