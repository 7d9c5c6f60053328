"""
Finite-Support Measures
=======================
Measures as data: lowest-terms normal form, support, pushforward, the monad
structure (dirac / flatten), the external product with its marginal
retraction, transfer along finite covers and addition of measures.

A measure is a tuple of (atom, weight) pairs in lowest terms:
- every weight is positive (weights below ZERO_WEIGHT are dropped),
- atoms are pairwise distinct under the measure's `AtomEquality`,
- atoms are in canonical order (stable sort by `sort_key`, merge by left fold).

Weights are floats or `fractions.Fraction`; exact inputs stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import (
    Any,
    Callable,
    Dict,
    Generic,
    Iterable,
    Iterator,
    List,
    Optional,
    Protocol,
    Sequence,
    Tuple,
    TypeVar,
    Union,
)

from config import ALGEBRA_TOLERANCE, MASS_TOLERANCE, ZERO_WEIGHT
from errors import FiberSizeMismatch, NegativeWeight, NotNormalized
from measures.equality import (
    EXACT,
    MEASURES,
    AtomEquality,
    ProductEquality,
    TupleEquality,
)

A = TypeVar("A")
B = TypeVar("B")
Weight = Union[int, float, Fraction]

NEGATIVE_WEIGHT = 1e-12


def is_exact(weights: Iterable[Weight]) -> bool:
    return all(isinstance(w, (int, Fraction)) for w in weights)


def total_weight(weights: Sequence[Weight]) -> Weight:
    if is_exact(weights):
        return sum(weights, Fraction(0))
    return math.fsum(float(w) for w in weights)


def divide(weight: Weight, k: int) -> Weight:
    if isinstance(weight, (int, Fraction)):
        return Fraction(weight) / k
    return weight / k


def _lowest_terms(
    raw: Iterable[Tuple[Any, Weight]], equality: AtomEquality
) -> Tuple[Tuple[Any, Weight], ...]:
    pairs = list(raw)
    for atom, weight in pairs:
        if weight < -NEGATIVE_WEIGHT:
            raise NegativeWeight(f"weight {weight} on atom {equality.encode(atom)}")
    if not is_exact(w for _, w in pairs):
        pairs = [(atom, float(w)) for atom, w in pairs]

    pairs.sort(key=lambda pair: equality.sort_key(pair[0]))
    merged: List[List[Any]] = []
    for atom, weight in pairs:
        for slot in merged:
            if equality.same(slot[0], atom):
                slot[1] = slot[1] + weight
                break
        else:
            merged.append([atom, weight])
    return tuple((atom, weight) for atom, weight in merged if weight >= ZERO_WEIGHT)


@dataclass(frozen=True, eq=False)
class FiniteMeasure(Generic[A]):
    """
    A measure of finite support (total mass unconstrained).

    Build instances with `finite_measure`, `normalize`, `dirac` or the
    operations below; the constructor trusts its input to be in lowest terms.
    """

    atoms: Tuple[Tuple[A, Weight], ...]
    equality: AtomEquality = EXACT

    def __iter__(self) -> Iterator[Tuple[A, Weight]]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def support(self) -> List[A]:
        return [atom for atom, _ in self.atoms]

    @property
    def weights(self) -> List[Weight]:
        return [weight for _, weight in self.atoms]

    @property
    def support_size(self) -> int:
        return len(self.atoms)

    @property
    def mass(self) -> Weight:
        return total_weight(self.weights)

    @property
    def exact(self) -> bool:
        return is_exact(self.weights)

    def weight_of(self, x: A) -> Weight:
        """The value μ(x)."""
        for atom, weight in self.atoms:
            if self.equality.same(atom, x):
                return weight
        return 0

    def mass_of(self, predicate: Callable[[A], bool]) -> Weight:
        """The value μ(S) for S = {x : predicate(x)}."""
        return total_weight([w for atom, w in self.atoms if predicate(atom)])

    def weight_gap(self, other: "FiniteMeasure[A]") -> float:
        """Largest weight difference, or inf when the supports differ."""
        if len(self) != len(other):
            return math.inf
        gap = 0.0
        for atom, weight in self.atoms:
            for other_atom, other_weight in other.atoms:
                if self.equality.same(atom, other_atom):
                    gap = max(gap, float(abs(weight - other_weight)))
                    break
            else:
                return math.inf
        return gap

    def close_to(self, other: "FiniteMeasure[A]", tolerance: float) -> bool:
        if self.exact and other.exact and tolerance == 0:
            return self.weight_gap(other) == 0
        return self.weight_gap(other) <= tolerance

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteMeasure):
            return NotImplemented
        tolerance = 0 if (self.exact and other.exact) else ALGEBRA_TOLERANCE
        return self.close_to(other, tolerance)

    def sort_key(self) -> Any:
        return tuple(
            (self.equality.sort_key(atom), round(float(weight), 12))
            for atom, weight in self.atoms
        )

    def to_record(self) -> Dict[str, Any]:
        return {
            "atoms": [
                {"atom": self.equality.encode(atom), "weight": float(weight)}
                for atom, weight in self.atoms
            ]
        }

    def __repr__(self) -> str:
        body = ", ".join(
            f"{self.equality.encode(atom)!r}: {weight}" for atom, weight in self.atoms
        )
        return f"{type(self).__name__}({{{body}}})"


class ProbMeasure(FiniteMeasure[A]):
    """A finite-support probability measure: total mass 1."""


class CoveringLike(Protocol):
    """What `cover_pullback` needs from a covering map."""

    degree: int
    total: Any

    def fiber(self, x: Any) -> List[Any]: ...


def _rebuild(template: FiniteMeasure, atoms, equality: AtomEquality) -> FiniteMeasure:
    cls = ProbMeasure if isinstance(template, ProbMeasure) else FiniteMeasure
    return cls(atoms, equality)


def finite_measure(
    raw: Iterable[Tuple[A, Weight]], equality: AtomEquality = EXACT
) -> FiniteMeasure[A]:
    """Lowest-terms measure with no mass constraint."""
    return FiniteMeasure(_lowest_terms(raw, equality), equality)


def zero_measure(equality: AtomEquality = EXACT) -> FiniteMeasure:
    return FiniteMeasure((), equality)


def normalize(
    raw: Iterable[Tuple[A, Weight]], equality: AtomEquality = EXACT
) -> ProbMeasure[A]:
    """
    Put raw weighted atoms in lowest terms as a probability measure.

    Raises NegativeWeight for any weight below -1e-12 and NotNormalized when
    the total differs from 1 by more than 1e-9. Float weights are rescaled so
    they sum to 1; exact weights must already sum to 1.
    """
    pairs = list(raw)
    for atom, weight in pairs:
        if weight < -NEGATIVE_WEIGHT:
            raise NegativeWeight(f"weight {weight} on atom {equality.encode(atom)}")
    total = total_weight([w for _, w in pairs])
    if abs(total - 1) > MASS_TOLERANCE:
        raise NotNormalized(f"total weight {float(total)!r} is not 1")

    atoms = _lowest_terms(pairs, equality)
    if not is_exact(w for _, w in atoms):
        kept = math.fsum(w for _, w in atoms)
        atoms = tuple((atom, w / kept) for atom, w in atoms)
    return ProbMeasure(atoms, equality)


def dirac(x: A, equality: AtomEquality = EXACT) -> ProbMeasure[A]:
    return ProbMeasure(((x, 1),), equality)


def uniform(atoms: Sequence[A], equality: AtomEquality = EXACT) -> ProbMeasure[A]:
    k = len(atoms)
    return normalize([(atom, Fraction(1, k)) for atom in atoms], equality)


def pushforward(
    f: Callable[[A], B], mu: FiniteMeasure[A], equality: AtomEquality = EXACT
) -> FiniteMeasure[B]:
    """f_*(Σ tᵢ δ_xᵢ) = Σ tᵢ δ_f(xᵢ), returned in lowest terms."""
    atoms = _lowest_terms(((f(atom), w) for atom, w in mu.atoms), equality)
    return _rebuild(mu, atoms, equality)


def flatten(
    nested: FiniteMeasure[FiniteMeasure[A]], equality: Optional[AtomEquality] = None
) -> ProbMeasure[A]:
    """
    Monad multiplication: Σⱼ sⱼ δ_μⱼ ↦ Σⱼ Σᵢ sⱼ tᵢⱼ δ_xᵢⱼ.
    """
    if equality is None:
        equality = nested.atoms[0][0].equality if nested.atoms else EXACT
    raw = [
        (atom, outer * inner)
        for measure, outer in nested.atoms
        for atom, inner in measure.atoms
    ]
    return ProbMeasure(_lowest_terms(raw, equality), equality)


def bind(
    mu: FiniteMeasure[A],
    kernel: Callable[[A], FiniteMeasure[B]],
    equality: Optional[AtomEquality] = None,
) -> ProbMeasure[B]:
    """flatten ∘ pushforward(kernel)."""
    return flatten(pushforward(kernel, mu, MEASURES), equality)


def boxtimes(mu: FiniteMeasure[A], nu: FiniteMeasure[B]) -> ProbMeasure[Tuple[A, B]]:
    """External product Σᵢ Σⱼ tᵢ sⱼ δ_(xᵢ, yⱼ)."""
    equality = ProductEquality(mu.equality, nu.equality)
    raw = [((x, y), t * s) for x, t in mu.atoms for y, s in nu.atoms]
    return ProbMeasure(_lowest_terms(raw, equality), equality)


def product_measure(measures: Sequence[FiniteMeasure]) -> ProbMeasure[tuple]:
    """Iterated external product over r factors, atoms are r-tuples."""
    equality = TupleEquality(tuple(m.equality for m in measures))
    raw: List[Tuple[tuple, Weight]] = [((), 1)]
    for measure in measures:
        raw = [(prefix + (x,), w * t) for prefix, w in raw for x, t in measure.atoms]
    return ProbMeasure(_lowest_terms(raw, equality), equality)


def marginals(
    joint: FiniteMeasure[Tuple[A, B]],
) -> Tuple[ProbMeasure[A], ProbMeasure[B]]:
    """Pushforwards along the two projections; retracts `boxtimes`."""
    equality = joint.equality
    first_eq = equality.first if isinstance(equality, ProductEquality) else EXACT
    second_eq = equality.second if isinstance(equality, ProductEquality) else EXACT
    first = pushforward(lambda pair: pair[0], joint, first_eq)
    second = pushforward(lambda pair: pair[1], joint, second_eq)
    return first, second  # type: ignore[return-value]


def cover_pullback(p: CoveringLike, mu: FiniteMeasure[A]) -> ProbMeasure[Any]:
    """
    Transfer along a degree-k cover: μ ↦ (1/k) Σ_x Σ_{x̃ ∈ p⁻¹(x)} μ(x) δ_x̃.
    """
    raw = []
    for x, weight in mu.atoms:
        lifts = p.fiber(x)
        if len(lifts) != p.degree:
            raise FiberSizeMismatch(
                f"fiber has {len(lifts)} points, cover degree is {p.degree}"
            )
        raw.extend((lift, divide(weight, p.degree)) for lift in lifts)
    return ProbMeasure(_lowest_terms(raw, p.total), p.total)


def add(mu: FiniteMeasure[A], nu: FiniteMeasure[A]) -> FiniteMeasure[A]:
    """Atom-wise sum of two measures; masses add."""
    return finite_measure(list(mu.atoms) + list(nu.atoms), mu.equality)


@dataclass(frozen=True)
class RelativeConstraint(Generic[A, B]):
    """Membership test for measures whose support maps to a single point."""

    map: Callable[[A], B]
    target: AtomEquality = EXACT


def check_relative(mu: FiniteMeasure[A], constraint: RelativeConstraint[A, B]) -> bool:
    images = [constraint.map(atom) for atom in mu.support]
    if not images:
        return False
    return all(constraint.target.same(images[0], image) for image in images[1:])
