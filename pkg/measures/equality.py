"""
Atom Equality
=============
How measures decide that two atoms are the same point, how they order atoms
canonically, and how atoms are serialized.

Spaces in `geometry` implement the same three methods, so any space can be
passed wherever an `AtomEquality` is expected.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Protocol, runtime_checkable


@runtime_checkable
class AtomEquality(Protocol):
    def same(self, a: Any, b: Any) -> bool: ...

    def sort_key(self, a: Any) -> Any: ...

    def encode(self, a: Any) -> Any: ...


def exact_key(atom: Any) -> Any:
    """Total order over the discrete atoms used in this project."""
    if isinstance(atom, (bool, int, float, Fraction)):
        return (0, atom)
    if isinstance(atom, str):
        return (1, atom)
    if isinstance(atom, tuple):
        return (2, tuple(exact_key(x) for x in atom))
    sort_key = getattr(atom, "sort_key", None)
    if callable(sort_key):
        return (3, sort_key())
    return (4, repr(atom))


def exact_encode(atom: Any) -> Any:
    if isinstance(atom, Fraction):
        return str(atom)
    if isinstance(atom, (bool, int, float, str)) or atom is None:
        return atom
    if isinstance(atom, tuple):
        return [exact_encode(x) for x in atom]
    to_record = getattr(atom, "to_record", None)
    if callable(to_record):
        return to_record()
    return repr(atom)


class ExactEquality:
    """Equality for discrete atoms (labels, integers, tuples of those)."""

    def same(self, a: Any, b: Any) -> bool:
        return a == b

    def sort_key(self, a: Any) -> Any:
        return exact_key(a)

    def encode(self, a: Any) -> Any:
        return exact_encode(a)

    def __repr__(self) -> str:
        return "ExactEquality()"


EXACT = ExactEquality()


class ProductEquality:
    """Coordinate-wise equality on pairs (x, y)."""

    def __init__(self, first: AtomEquality, second: AtomEquality):
        self.first = first
        self.second = second

    def same(self, a: Any, b: Any) -> bool:
        return self.first.same(a[0], b[0]) and self.second.same(a[1], b[1])

    def sort_key(self, a: Any) -> Any:
        return (self.first.sort_key(a[0]), self.second.sort_key(a[1]))

    def encode(self, a: Any) -> Any:
        return [self.first.encode(a[0]), self.second.encode(a[1])]


class TupleEquality:
    """Coordinate-wise equality on r-tuples."""

    def __init__(self, parts: tuple):
        self.parts = tuple(parts)

    def same(self, a: Any, b: Any) -> bool:
        return len(a) == len(b) == len(self.parts) and all(
            eq.same(x, y) for eq, x, y in zip(self.parts, a, b)
        )

    def sort_key(self, a: Any) -> Any:
        return tuple(eq.sort_key(x) for eq, x in zip(self.parts, a))

    def encode(self, a: Any) -> Any:
        return [eq.encode(x) for eq, x in zip(self.parts, a)]


class MeasureEquality:
    """Equality for measures used as atoms of a measure on measures."""

    def __init__(self, tolerance: float = 1e-9):
        self.tolerance = tolerance

    def same(self, a: Any, b: Any) -> bool:
        return a.close_to(b, self.tolerance)

    def sort_key(self, a: Any) -> Any:
        return a.sort_key()

    def encode(self, a: Any) -> Any:
        return a.to_record()


MEASURES = MeasureEquality()
