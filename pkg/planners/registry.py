"""
Planner Registry
================
Shipped planners by name, each with a default dimension and audit bundle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from errors import UnknownPlanner
from geometry.covers import AntipodalCover
from planners.base import AnalogPlanner
from planners.circle import CircleTCPlanner
from planners.combinators import (
    BasedPlanner,
    BasedProductPlanner,
    ProductPlanner,
    RestrictedPlanner,
    SequentialPlanner,
)
from planners.controls import DeclaredBound, PointConstant, ShiftedEndpoint
from planners.projective import RPGeodesicControl, RPTCPlanner
from planners.spheres import SphereAcatPlanner, SphereTCPlanner, basis_vector
from planners.transfer import CoverTransfer, EquivariantTransfer, GenericTransfer

DEFAULT_BUNDLE = ("support", "section", "continuity")


@dataclass(frozen=True)
class PlannerEntry:
    factory: Callable[[int], AnalogPlanner]
    description: str
    default_d: Optional[int] = 2
    bundle: Tuple[str, ...] = DEFAULT_BUNDLE
    control: bool = False
    expected_failures: Tuple[str, ...] = field(default_factory=tuple)


def rp_acat(d: int) -> AnalogPlanner:
    return BasedPlanner(RPTCPlanner(d), basis_vector(d + 1, 0), name="rp_acat")


def power_planner(planner: Callable[[], AnalogPlanner], r: int) -> AnalogPlanner:
    """s ⊠ s ⊠ … ⊠ s on Xʳ, nested to the right like the product space."""
    if r == 1:
        return planner()
    return ProductPlanner(planner(), power_planner(planner, r - 1))


def torus_tc(n: int) -> AnalogPlanner:
    if n == 1:
        return CircleTCPlanner()
    return ProductPlanner(CircleTCPlanner(), torus_tc(n - 1), name="torus_tc")


PLANNERS: Dict[str, PlannerEntry] = {
    "rp_tc": PlannerEntry(lambda d: RPTCPlanner(d), "two geodesics on RP^d weighted (1±θ)/2"),
    "rp_acat": PlannerEntry(rp_acat, "rp_tc with the first point fixed at [e1]"),
    "rp_tc3": PlannerEntry(
        lambda d: SequentialPlanner(RPTCPlanner(d), 3, name="rp_tc3"),
        "three-point planner on RP^d from rp_tc legs",
    ),
    "rp_tc_restricted": PlannerEntry(
        lambda d: RestrictedPlanner(
            SequentialPlanner(RPTCPlanner(d), 3), name="rp_tc_restricted"
        ),
        "rp_tc3 with the last point repeated, cut back to two points",
    ),
    "sphere_acat": PlannerEntry(
        lambda d: SphereAcatPlanner(d), "based planner on S^d at e1"
    ),
    "sphere_tc": PlannerEntry(
        lambda d: SphereTCPlanner(d), "two-point planner on S^d (2 rules odd d, 3 even d)"
    ),
    "circle_tc": PlannerEntry(
        lambda d: CircleTCPlanner(), "ccw/cw arcs on S^1", default_d=None
    ),
    "circle_tc3": PlannerEntry(
        lambda d: SequentialPlanner(CircleTCPlanner(), 3, name="circle_tc3"),
        "three-point planner on S^1",
        default_d=None,
    ),
    "torus_tc": PlannerEntry(torus_tc, "product of circle planners on T^n (d = n)"),
    "sphere_tc_via_acat": PlannerEntry(
        lambda d: BasedProductPlanner(
            power_planner(lambda: SphereAcatPlanner(d), 2), 2, name="sphere_tc_via_acat"
        ),
        "two-point planner on S^d read off sphere_acat x sphere_acat",
    ),
    "rp_tc3_via_acat": PlannerEntry(
        lambda d: BasedProductPlanner(
            power_planner(lambda: rp_acat(d), 3), 3, name="rp_tc3_via_acat"
        ),
        "three-point planner on RP^d read off rp_acat on (RP^d)^3",
    ),
    "rp_acat_transfer": PlannerEntry(
        lambda d: CoverTransfer(AntipodalCover(d), SphereAcatPlanner(d), name="rp_acat_transfer"),
        "sphere_acat pushed down S^d -> RP^d",
    ),
    "rp_tc2_equivariant": PlannerEntry(
        lambda d: EquivariantTransfer(
            AntipodalCover(d), SphereTCPlanner(d), name="rp_tc2_equivariant"
        ),
        "sphere_tc averaged over the deck group of S^d -> RP^d",
    ),
    "rp_tc2_generic": PlannerEntry(
        lambda d: GenericTransfer(AntipodalCover(d), SphereTCPlanner(d), name="rp_tc2_generic"),
        "sphere_tc with coordinate-wise lifts through S^d -> RP^d",
    ),
    "rp_geodesic_control": PlannerEntry(
        lambda d: RPGeodesicControl(d),
        "single shortest geodesic on RP^d (discontinuous)",
        control=True,
        expected_failures=("continuity",),
    ),
    "rp_tc_misdeclared": PlannerEntry(
        lambda d: DeclaredBound(RPTCPlanner(d), 1, name="rp_tc_misdeclared"),
        "rp_tc declared with support bound 1",
        bundle=("support",),
        control=True,
        expected_failures=("support",),
    ),
    "sphere_acat_shifted": PlannerEntry(
        lambda d: ShiftedEndpoint(SphereAcatPlanner(d), name="sphere_acat_shifted"),
        "sphere_acat with every path end moved by 1e-3",
        bundle=("section",),
        control=True,
        expected_failures=("section",),
    ),
    "point_constant": PlannerEntry(
        lambda d: PointConstant(), "constant planner on a one-point space", default_d=None
    ),
}


def planner_names() -> List[str]:
    return sorted(PLANNERS)


def build_planner(name: str, d: Optional[int] = None) -> AnalogPlanner:
    """Instantiate a registered planner, using its default dimension if d is None."""
    if name not in PLANNERS:
        raise UnknownPlanner(f"unknown planner '{name}'; known: {', '.join(planner_names())}")
    entry = PLANNERS[name]
    dimension = d if d is not None else entry.default_d
    return entry.factory(dimension if dimension is not None else 1)
