"""Exact coordinate vector lattices.

The component spaces throughout the package are the coordinate lattices
Q^n with the pointwise order.  Scalars are exact rationals
(:class:`fractions.Fraction`), so every lattice identity is tested with
equality and never with a tolerance.  In a finite-dimensional coordinate
lattice every band is a coordinate band, i.e. it is determined by a set
of coordinates; :class:`Band` records exactly that.

Internally coordinates are 0-based.  All external formats (system files,
JSON, error messages) use 1-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import DimensionMismatch

Scalar = Fraction

RationalLike = Fraction | int | str


def scalar(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or string literal like ``3/2`` to an exact
    rational."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def scalar_to_str(value: Fraction) -> str:
    """Canonical ``num/den`` form with the denominator always present."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class FinVector:
    """Element of the coordinate lattice of its dimension."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if not all(isinstance(c, Fraction) for c in self.coords):
            object.__setattr__(self, "coords", tuple(scalar(c) for c in self.coords))

    @classmethod
    def of(cls, *values: RationalLike) -> "FinVector":
        return cls(tuple(scalar(v) for v in values))

    @classmethod
    def zero(cls, dim: int) -> "FinVector":
        return cls((Fraction(0),) * dim)

    @classmethod
    def basis(cls, dim: int, i: int) -> "FinVector":
        """Unit vector at 0-based coordinate ``i``."""
        return cls(tuple(Fraction(1 if j == i else 0) for j in range(dim)))

    @classmethod
    def ones(cls, dim: int) -> "FinVector":
        return cls((Fraction(1),) * dim)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def _check_dim(self, other: "FinVector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    # vector space structure

    def add(self, other: "FinVector") -> "FinVector":
        self._check_dim(other)
        return FinVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def sub(self, other: "FinVector") -> "FinVector":
        self._check_dim(other)
        return FinVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, factor: RationalLike) -> "FinVector":
        f = scalar(factor)
        return FinVector(tuple(f * a for a in self.coords))

    def __add__(self, other: "FinVector") -> "FinVector":
        return self.add(other)

    def __sub__(self, other: "FinVector") -> "FinVector":
        return self.sub(other)

    def __neg__(self) -> "FinVector":
        return self.scale(-1)

    # lattice structure

    def join(self, other: "FinVector") -> "FinVector":
        self._check_dim(other)
        return FinVector(tuple(max(a, b) for a, b in zip(self.coords, other.coords)))

    def meet(self, other: "FinVector") -> "FinVector":
        self._check_dim(other)
        return FinVector(tuple(min(a, b) for a, b in zip(self.coords, other.coords)))

    def abs(self) -> "FinVector":
        return FinVector(tuple(a if a >= 0 else -a for a in self.coords))

    def pos_part(self) -> "FinVector":
        return FinVector(tuple(a if a > 0 else Fraction(0) for a in self.coords))

    def neg_part(self) -> "FinVector":
        return (-self).pos_part()

    def leq(self, other: "FinVector") -> bool:
        self._check_dim(other)
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def is_positive(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def dot(self, other: "FinVector") -> Fraction:
        self._check_dim(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def support(self) -> frozenset[int]:
        """0-based coordinates where the vector is nonzero."""
        return frozenset(i for i, a in enumerate(self.coords) if a != 0)

    # serialization: JSON array of "num/den" strings

    def to_json(self) -> list[str]:
        return [scalar_to_str(a) for a in self.coords]

    @classmethod
    def from_json(cls, items: Iterable[str]) -> "FinVector":
        return cls(tuple(Fraction(s) for s in items))

    def __repr__(self) -> str:
        return "FinVector(" + ", ".join(str(a) for a in self.coords) + ")"


def join(u: FinVector, v: FinVector) -> FinVector:
    return u.join(v)


def meet(u: FinVector, v: FinVector) -> FinVector:
    return u.meet(v)


def vec_abs(u: FinVector) -> FinVector:
    return u.abs()


def pos_part(u: FinVector) -> FinVector:
    return u.pos_part()


def leq(u: FinVector, v: FinVector) -> bool:
    return u.leq(v)


def disjoint(u: FinVector, v: FinVector) -> bool:
    """True iff |u| and |v| meet in 0."""
    return u.abs().meet(v.abs()).is_zero()


@dataclass(frozen=True)
class Band:
    """Coordinate band of Q^dim: the sublattice supported on ``support``."""

    dim: int
    support: frozenset[int]

    def __post_init__(self):
        if not isinstance(self.support, frozenset):
            object.__setattr__(self, "support", frozenset(self.support))
        if not all(0 <= i < self.dim for i in self.support):
            raise DimensionMismatch(f"band support out of range for dimension {self.dim}")

    @classmethod
    def full(cls, dim: int) -> "Band":
        return cls(dim, frozenset(range(dim)))

    @classmethod
    def empty(cls, dim: int) -> "Band":
        return cls(dim, frozenset())

    def _check_dim(self, other: "Band") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"band dimensions {self.dim} and {other.dim} differ")

    def complement(self) -> "Band":
        """The disjoint complement: the band on the remaining coordinates."""
        return Band(self.dim, frozenset(range(self.dim)) - self.support)

    def join(self, other: "Band") -> "Band":
        self._check_dim(other)
        return Band(self.dim, self.support | other.support)

    def meet(self, other: "Band") -> "Band":
        self._check_dim(other)
        return Band(self.dim, self.support & other.support)

    def contains_band(self, other: "Band") -> bool:
        self._check_dim(other)
        return other.support <= self.support

    def contains_vector(self, u: FinVector) -> bool:
        if self.dim != u.dim:
            raise DimensionMismatch(f"band dimension {self.dim}, vector dimension {u.dim}")
        return u.support() <= self.support

    def to_json(self) -> list[int]:
        """Sorted 1-based coordinate list."""
        return sorted(i + 1 for i in self.support)

    @classmethod
    def from_json(cls, dim: int, items: Iterable[int]) -> "Band":
        return cls(dim, frozenset(i - 1 for i in items))


def band_projection(band: Band, u: FinVector) -> FinVector:
    """Keep the coordinates in the band, zero the rest."""
    if band.dim != u.dim:
        raise DimensionMismatch(f"band dimension {band.dim}, vector dimension {u.dim}")
    return FinVector(
        tuple(a if i in band.support else Fraction(0) for i, a in enumerate(u.coords))
    )


def disjoint_complement(vectors: Iterable[FinVector], dim: int | None = None) -> Band:
    """The band of everything disjoint from the given set.

    ``dim`` fixes the ambient dimension; it is required for an empty set
    (whose disjoint complement is the full band) and must agree with the
    vectors otherwise.
    """
    vectors = list(vectors)
    if not vectors:
        if dim is None:
            raise ValueError("an empty set needs an explicit ambient dimension")
        return Band.full(dim)
    if dim is None:
        dim = vectors[0].dim
    union: frozenset[int] = frozenset()
    for v in vectors:
        if v.dim != dim:
            raise DimensionMismatch(f"dimensions {dim} and {v.dim} differ")
        union |= v.support()
    return Band(dim, frozenset(range(dim)) - union)


def principal_ideal_contains(u: FinVector, v: FinVector) -> bool:
    """True iff |v| <= lam*|u| for some lam >= 0; in a coordinate lattice
    this is support containment."""
    u._check_dim(v)
    return v.support() <= u.support()
