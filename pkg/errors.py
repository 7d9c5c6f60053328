"""
Exceptions
==========
Error hierarchy shared by every package.
"""

from typing import Optional


class AnalogMPError(Exception):
    """Base class for all library errors."""


# Measures


class MeasureError(AnalogMPError):
    pass


class NotNormalized(MeasureError):
    pass


class NegativeWeight(MeasureError):
    pass


# Geometry


class GeometryError(AnalogMPError):
    pass


class NoGeodesic(GeometryError):
    pass


class OutOfDomain(GeometryError):
    pass


class EndpointMismatch(GeometryError):
    pass


class FiberSizeMismatch(GeometryError):
    pass


# Transport


class TransportError(AnalogMPError):
    pass


class SupportTooLarge(TransportError):
    pass


class SolverError(TransportError):
    pass


# Planners


class PlannerError(AnalogMPError):
    pass


class PartitionNotUnity(PlannerError):
    pass


class RuleOutsideDomain(PlannerError):
    pass


class BasepointMismatch(PlannerError):
    pass


class EquivarianceViolation(PlannerError):
    pass


class ArityMismatch(PlannerError):
    pass


class UnknownPlanner(PlannerError):
    pass


# Groups


class GroupError(AnalogMPError):
    pass


class InfiniteOrder(GroupError):
    pass


class GroupTableError(GroupError):
    pass


# Configuration


class ConfigError(AnalogMPError):
    """Raised for malformed audit configs; carries the offending line."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
