"""Lattice homomorphisms between coordinate lattices.

Between Q^n and Q^m the lattice homomorphisms are exactly the
nonnegative matrices with at most one nonzero entry per row.  Such a map
is stored in canonical weighted-index form: a nonnegative weight per
output row together with a partial map sending each positively weighted
row to the input coordinate it reads,

    h(u)[x] = weight[x] * u[idx[x]]   where weight[x] > 0, else 0.

General positive operators that are not lattice homomorphisms are kept
as :class:`PositiveMatrix`; :func:`canonicalize` is the only door from
matrices into canonical form.  Interval preservation of a general
positive matrix is decidable only through the exact feasibility oracle
(an interval preserving positive map need not be a lattice
homomorphism); for canonical homs it collapses to a closed-form
predicate on the index map.

A note on order continuity: every positive operator between
finite-dimensional coordinate lattices is automatically order
continuous, so "lattice homomorphism" and "normal lattice homomorphism"
coincide at component level, as do "interval preserving" and "normal
interval preserving".  The distinction resurfaces only for limit
objects, which is where the depth-qualified machinery of the other
modules takes over.  For the same reason, adjoints preserving order
continuity is vacuous here and is not a runtime predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .core import Band, FinVector, scalar
from .errors import DimensionMismatch, NotLatticeHom, PreconditionViolated
from .feasibility import feasible_box_section


@dataclass(frozen=True)
class CanonicalHom:
    """Lattice homomorphism Q^dom_dim -> Q^cod_dim in weighted-index form.

    ``weight`` has one entry per output row, all >= 0.  ``idx`` has one
    entry per output row: the 0-based input coordinate read by that row,
    or None exactly where the weight is zero.
    """

    dom_dim: int
    cod_dim: int
    weight: tuple[Fraction, ...]
    idx: tuple[Optional[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(scalar(w) for w in self.weight))
        if len(self.weight) != self.cod_dim or len(self.idx) != self.cod_dim:
            raise DimensionMismatch("weight and index length must equal the codomain dimension")
        for x, (w, j) in enumerate(zip(self.weight, self.idx)):
            if w < 0:
                raise PreconditionViolated(f"negative weight in row {x + 1}")
            if (w > 0) != (j is not None):
                raise PreconditionViolated(
                    f"row {x + 1}: index must be defined exactly on the rows with positive weight"
                )
            if j is not None and not 0 <= j < self.dom_dim:
                raise DimensionMismatch(f"row {x + 1} reads column {j + 1} outside the domain")

    @classmethod
    def from_pairs(cls, dom_dim: int, cod_dim: int, rows: dict[int, tuple[int, Fraction]]) -> "CanonicalHom":
        """Build from a sparse ``{row: (column, weight)}`` map, 0-based."""
        weight = [Fraction(0)] * cod_dim
        idx: list[Optional[int]] = [None] * cod_dim
        for x, (j, w) in rows.items():
            w = scalar(w)
            if w != 0:
                weight[x] = w
                idx[x] = j
        return cls(dom_dim, cod_dim, tuple(weight), tuple(idx))

    @classmethod
    def identity(cls, dim: int) -> "CanonicalHom":
        return cls(dim, dim, (Fraction(1),) * dim, tuple(range(dim)))

    @classmethod
    def inclusion(cls, dom_dim: int, cod_dim: int) -> "CanonicalHom":
        """Coordinate inclusion into the first ``dom_dim`` coordinates."""
        if cod_dim < dom_dim:
            raise DimensionMismatch("inclusion needs a codomain at least as large as the domain")
        weight = tuple(Fraction(1) if x < dom_dim else Fraction(0) for x in range(cod_dim))
        idx = tuple(x if x < dom_dim else None for x in range(cod_dim))
        return cls(dom_dim, cod_dim, weight, idx)

    @classmethod
    def restriction(cls, dom_dim: int, cod_dim: int) -> "CanonicalHom":
        """Projection onto the first ``cod_dim`` coordinates."""
        if cod_dim > dom_dim:
            raise DimensionMismatch("restriction needs a domain at least as large as the codomain")
        return cls(dom_dim, cod_dim, (Fraction(1),) * cod_dim, tuple(range(cod_dim)))

    @classmethod
    def zero(cls, dom_dim: int, cod_dim: int) -> "CanonicalHom":
        return cls(dom_dim, cod_dim, (Fraction(0),) * cod_dim, (None,) * cod_dim)

    def coz(self) -> frozenset[int]:
        """Rows with positive weight."""
        return frozenset(x for x, w in enumerate(self.weight) if w > 0)

    def apply(self, u: FinVector) -> FinVector:
        if u.dim != self.dom_dim:
            raise DimensionMismatch(f"expected dimension {self.dom_dim}, got {u.dim}")
        return FinVector(
            tuple(
                w * u[j] if j is not None else Fraction(0)
                for w, j in zip(self.weight, self.idx)
            )
        )

    def matrix(self) -> "PositiveMatrix":
        rows = []
        for w, j in zip(self.weight, self.idx):
            row = [Fraction(0)] * self.dom_dim
            if j is not None:
                row[j] = w
            rows.append(tuple(row))
        return PositiveMatrix(tuple(rows))


@dataclass(frozen=True)
class PositiveMatrix:
    """m x n matrix with nonnegative rational entries."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(scalar(v) for v in row) for row in self.rows))
        widths = {len(row) for row in self.rows}
        if len(widths) > 1:
            raise DimensionMismatch("ragged matrix")
        for i, row in enumerate(self.rows):
            for v in row:
                if v < 0:
                    raise PreconditionViolated(f"negative entry in row {i + 1}")

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def apply(self, u: FinVector) -> FinVector:
        if u.dim != self.n:
            raise DimensionMismatch(f"expected dimension {self.n}, got {u.dim}")
        return FinVector(linalg.mat_vec(self.rows, u.coords))

    def transpose(self) -> "PositiveMatrix":
        return PositiveMatrix(tuple(zip(*self.rows)) if self.rows else ())


def apply(h: CanonicalHom, u: FinVector) -> FinVector:
    return h.apply(u)


def compose(g: CanonicalHom, f: CanonicalHom) -> CanonicalHom:
    """g after f, in closed form on the weighted-index data."""
    if f.cod_dim != g.dom_dim:
        raise DimensionMismatch(
            f"cannot compose: inner codomain {f.cod_dim}, outer domain {g.dom_dim}"
        )
    weight: list[Fraction] = []
    idx: list[Optional[int]] = []
    for w, j in zip(g.weight, g.idx):
        if j is None or f.weight[j] == 0:
            weight.append(Fraction(0))
            idx.append(None)
        else:
            weight.append(w * f.weight[j])
            idx.append(f.idx[j])
    return CanonicalHom(f.dom_dim, g.cod_dim, tuple(weight), tuple(idx))


def canonicalize(a: PositiveMatrix) -> CanonicalHom:
    """Weighted-index form of a positive matrix.

    Succeeds exactly when every row has at most one nonzero entry, i.e.
    when the matrix is a lattice homomorphism; otherwise raises
    :class:`NotLatticeHom` naming an offending row (1-based).
    """
    weight: list[Fraction] = []
    idx: list[Optional[int]] = []
    for x, row in enumerate(a.rows):
        nonzero = [j for j, v in enumerate(row) if v != 0]
        if len(nonzero) > 1:
            raise NotLatticeHom(row=x + 1)
        if nonzero:
            weight.append(row[nonzero[0]])
            idx.append(nonzero[0])
        else:
            weight.append(Fraction(0))
            idx.append(None)
    return CanonicalHom(a.n, a.m, tuple(weight), tuple(idx))


def is_lattice_hom_matrix(a: PositiveMatrix) -> bool:
    try:
        canonicalize(a)
    except NotLatticeHom:
        return False
    return True


def is_injective(h: CanonicalHom) -> bool:
    """The index map covers every input coordinate."""
    return {j for j in h.idx if j is not None} == set(range(h.dom_dim))


def is_surjective(h: CanonicalHom) -> bool:
    """Every row has positive weight and no two rows read the same
    coordinate."""
    if any(w == 0 for w in h.weight):
        return False
    read = [j for j in h.idx if j is not None]
    return len(read) == len(set(read))


def is_interval_preserving(h: CanonicalHom) -> bool:
    """The index map is injective on the positively weighted rows."""
    read = [j for j in h.idx if j is not None]
    return len(read) == len(set(read))


def adjoint(h: CanonicalHom) -> PositiveMatrix:
    """Order adjoint as a matrix: the transpose of the matrix of h.

    The pairing identity <adjoint(h) phi, u> = <phi, h(u)> holds for all
    phi in the codomain dual and u in the domain.
    """
    return h.matrix().transpose()


def image_band(h: CanonicalHom) -> Optional[Band]:
    """The image as a coordinate band, when it is one.

    When the index map is injective on the positively weighted rows the
    image is exactly the band on those rows; otherwise the image is not
    a band and None is returned.
    """
    if not is_interval_preserving(h):
        return None
    return Band(h.cod_dim, h.coz())


def preimage(h: CanonicalHom, v: FinVector) -> Optional[FinVector]:
    """Some u with h(u) = v, or None.  Unique when h is injective."""
    if v.dim != h.cod_dim:
        raise DimensionMismatch(f"expected dimension {h.cod_dim}, got {v.dim}")
    u = [Fraction(0)] * h.dom_dim
    seen: dict[int, Fraction] = {}
    for x, (w, j) in enumerate(zip(h.weight, h.idx)):
        if j is None:
            if v[x] != 0:
                return None
            continue
        value = v[x] / w
        if j in seen:
            if seen[j] != value:
                return None
        else:
            seen[j] = value
            u[j] = value
    return FinVector(tuple(u))


def interval_preserving_oracle(
    a: PositiveMatrix, u: FinVector, v: FinVector, method: str = "auto"
) -> bool:
    """Exact decision of whether v in [0, a(u)] has a preimage in [0, u].

    Decides feasibility of {0 <= x <= u, a x = v} by Fourier-Motzkin
    elimination (dimensions <= 8) or exact phase-1 simplex.  A positive
    matrix is interval preserving iff this returns True for every
    admissible pair, which the closed-form predicate certifies only for
    canonical homs.
    """
    if u.dim != a.n or v.dim != a.m:
        raise DimensionMismatch("operand dimensions do not match the matrix")
    if not u.is_positive():
        raise PreconditionViolated("u must be positive")
    image = a.apply(u)
    if not v.is_positive() or not v.leq(image):
        raise PreconditionViolated("v must lie in [0, a(u)]")
    return feasible_box_section(a.rows, u.coords, v.coords, method=method)


def interval_preservation_counterexample(h: CanonicalHom) -> tuple[FinVector, FinVector]:
    """Deterministic witness that a non-interval-preserving hom fails the
    oracle: two rows share a column; u is the unit vector there, v keeps
    only the first row of h(u)."""
    seen: dict[int, int] = {}
    for x, (w, j) in enumerate(zip(h.weight, h.idx)):
        if j is None:
            continue
        if j in seen:
            u = FinVector.basis(h.dom_dim, j)
            v = FinVector(
                tuple(
                    h.weight[seen[j]] if y == seen[j] else Fraction(0)
                    for y in range(h.cod_dim)
                )
            )
            return u, v
        seen[j] = x
    raise PreconditionViolated("hom is interval preserving; no counterexample exists")


def hom_from_matrix_rows(rows: Sequence[Sequence[Fraction]]) -> CanonicalHom:
    """Convenience: canonicalize a dense row description."""
    return canonicalize(PositiveMatrix(tuple(tuple(scalar(v) for v in row) for row in rows)))
