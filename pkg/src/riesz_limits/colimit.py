"""Direct-limit elements as germs.

An element of the direct limit of a chain is the class of a pair
(level, vector) under promotion along the connecting maps.  With
injective steps two germs are equal exactly when their promotions to the
common level coincide, positivity can be read off any representative,
and each germ has a unique minimal-level canonical form.  The library
refuses to build quotients of non-injective chains: germ equality there
needs an unbounded search, so equality, canonical forms and positivity
all demand a chain whose steps are provably injective (explicit prefix
checked step by step, closed extension rule checked structurally).

Elements are immutable; ``==`` is germ equality and raises on mixed
systems rather than silently coercing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import FinVector, scalar
from .errors import DimensionMismatch, InjectivityRequired, SystemMismatch
from .hom import preimage
from .system import DirectSystem, SystemMorphism, connecting


@dataclass(frozen=True, eq=False)
class ColimElement:
    """Germ of (level, vector) in the direct limit of ``system``."""

    system: DirectSystem
    level: int
    vector: FinVector

    def __post_init__(self):
        expected = self.system.dim(self.level)
        if self.vector.dim != expected:
            raise DimensionMismatch(
                f"level {self.level} has dimension {expected}, vector has {self.vector.dim}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColimElement):
            return NotImplemented
        return equal(self, other)

    __hash__ = None  # germ equality is not hash-compatible with identity

    def to_json(self) -> dict:
        return {"level": self.level, "coords": self.vector.to_json()}


def embed(s: DirectSystem, n: int, u: FinVector) -> ColimElement:
    """The germ of u at level n."""
    return ColimElement(s, n, u)


def _require_same_system(a: ColimElement, b: ColimElement) -> None:
    if a.system is not b.system:
        raise SystemMismatch("elements belong to different systems")


def _require_injective(s: DirectSystem) -> None:
    if not s.certify_all_injective():
        raise InjectivityRequired("the chain has (or may have) a non-injective step")


def promote(a: ColimElement, m: int) -> ColimElement:
    """The representative of the same germ at level m >= a.level."""
    if m == a.level:
        return a
    return ColimElement(a.system, m, connecting(a.system, a.level, m).apply(a.vector))


def equal(a: ColimElement, b: ColimElement) -> bool:
    """Germ equality: promotions to the common level coincide."""
    _require_same_system(a, b)
    _require_injective(a.system)
    m = max(a.level, b.level)
    return promote(a, m).vector == promote(b, m).vector


def canonical_form(a: ColimElement) -> ColimElement:
    """The representative at the least level whose image contains the
    germ, with its unique preimage there."""
    _require_injective(a.system)
    if not a.system.certify_all_interval_preserving():
        raise InjectivityRequired("canonical forms need interval preserving steps")
    for n in range(1, a.level):
        u = preimage(connecting(a.system, n, a.level), a.vector)
        if u is not None:
            return ColimElement(a.system, n, u)
    return a


def _pointwise(a: ColimElement, b: ColimElement, op: Callable[[FinVector, FinVector], FinVector]) -> ColimElement:
    _require_same_system(a, b)
    m = max(a.level, b.level)
    return ColimElement(a.system, m, op(promote(a, m).vector, promote(b, m).vector))


def colim_join(a: ColimElement, b: ColimElement) -> ColimElement:
    return _pointwise(a, b, FinVector.join)


def colim_meet(a: ColimElement, b: ColimElement) -> ColimElement:
    return _pointwise(a, b, FinVector.meet)


def colim_add(a: ColimElement, b: ColimElement) -> ColimElement:
    return _pointwise(a, b, FinVector.add)


def colim_scale(factor, a: ColimElement) -> ColimElement:
    return ColimElement(a.system, a.level, a.vector.scale(scalar(factor)))


def colim_abs(a: ColimElement) -> ColimElement:
    return colim_join(a, colim_scale(-1, a))


def colim_zero(s: DirectSystem, level: int = 1) -> ColimElement:
    return ColimElement(s, level, FinVector.zero(s.dim(level)))


def is_positive(a: ColimElement) -> bool:
    """Positivity of the germ; injective lattice homomorphisms reflect
    positivity, so any representative decides it."""
    _require_injective(a.system)
    return a.vector.is_positive()


def is_zero(a: ColimElement) -> bool:
    _require_injective(a.system)
    return a.vector.is_zero()


def map_germ(t: SystemMorphism, a: ColimElement) -> ColimElement:
    """The induced map between direct limits applied to a germ."""
    if a.system is not t.source:
        raise SystemMismatch("germ does not belong to the morphism's source system")
    if t.source.kind != "direct":
        raise SystemMismatch("germs live over direct systems")
    return ColimElement(t.target, a.level, t.at(a.level).apply(a.vector))
