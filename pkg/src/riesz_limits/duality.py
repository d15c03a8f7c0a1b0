"""Duality between direct and inverse limits, made executable.

Functionals on a direct limit are represented as threads over the dual
inverse system: the component at level n is the dual vector of the
functional pulled back along the level-n embedding, and evaluation at a
germ is the dot product at the germ's level.  Functionals on a
sequential inverse limit with surjective steps are represented dually,
as germs over the dual direct system.  These representations are
exhaustive for the chains handled here, and the round-trip and
separation checks below certify exactly that on finite prefixes.

Because every functional on a finite-dimensional coordinate lattice is
order continuous, the order dual and the order continuous dual coincide
at component level; suites that would differ only in that distinction
are a single suite here, run once and flagged as collapsed in reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import Callable, Sequence

from .colimit import ColimElement, embed, equal as germ_equal, promote
from .core import FinVector, scalar
from .errors import (
    AllZeroUpToDepth,
    DepthInsufficient,
    DimensionMismatch,
    PreconditionViolated,
    SurjectivityRequired,
    SystemMismatch,
)
from .hom import CanonicalHom
from .limit import Thread, thread_from_rule, verify_thread
from .system import DirectSystem, InverseSystem, dual_of_direct, dual_of_inverse


@dataclass(eq=False)
class ColimFunctional:
    """Order-bounded functional on a direct limit, stored as a thread of
    dual vectors over the dual inverse system."""

    primal: DirectSystem
    thread: Thread

    def __post_init__(self):
        if self.thread.system is not dual_of_direct(self.primal):
            raise SystemMismatch("the thread must live over the dual of the primal system")

    @property
    def verified_depth(self) -> int:
        return self.thread.verified_depth

    def verify(self, depth: int) -> None:
        verify_thread(self.thread, depth)

    def to_json(self, depth=None) -> dict:
        data = self.thread.to_json(depth)
        data["kind"] = "colim_functional"
        return data


@dataclass(eq=False)
class LimFunctional:
    """Order-bounded functional on an inverse limit with surjective
    steps, stored as a germ of dual vectors over the dual direct
    system."""

    primal: InverseSystem
    germ: ColimElement

    def __post_init__(self):
        if self.germ.system is not dual_of_inverse(self.primal):
            raise SystemMismatch("the germ must live over the dual of the primal system")

    @property
    def level(self) -> int:
        return self.germ.level

    @property
    def vector(self) -> FinVector:
        return self.germ.vector

    def to_json(self) -> dict:
        data = self.germ.to_json()
        data["kind"] = "lim_functional"
        return data


def colim_functional_from_thread(s: DirectSystem, thread: Thread) -> ColimFunctional:
    return ColimFunctional(s, thread)


def lim_functional(s: InverseSystem, level: int, vector: FinVector) -> LimFunctional:
    return LimFunctional(s, ColimElement(dual_of_inverse(s), level, vector))


def eval_colim_functional(phi: ColimFunctional, a: ColimElement) -> Fraction:
    """phi(a) computed at a's own representative.

    Representative independence is exactly the compatibility of the dual
    thread, so phi must be verified at least to a's level."""
    if a.system is not phi.primal:
        raise SystemMismatch("element and functional belong to different systems")
    if phi.verified_depth < a.level:
        raise DepthInsufficient(
            f"functional verified to depth {phi.verified_depth}, element lives at level {a.level}"
        )
    return phi.thread.component(a.level).dot(a.vector)


def functional_to_dual_thread(
    s: DirectSystem, f: Callable[[ColimElement], Fraction], depth: int
) -> ColimFunctional:
    """Represent an evaluator on germs as a dual thread.

    The component at level n collects f on the basis germs of level n.
    For a linear order-bounded f the family is automatically compatible;
    the construction verifies this to ``depth`` and raises
    :class:`CompatibilityError` when f breaks the contract."""

    def component(n: int) -> FinVector:
        d = s.dim(n)
        return FinVector(tuple(scalar(f(embed(s, n, FinVector.basis(d, j)))) for j in range(d)))

    thread = thread_from_rule(dual_of_direct(s), component, name="from-evaluator")
    verify_thread(thread, depth)
    return ColimFunctional(s, thread)


def eval_lim_functional(psi: LimFunctional, t: Thread) -> Fraction:
    """psi(t), evaluated through the level at which psi is represented."""
    if t.system is not psi.primal:
        raise SystemMismatch("thread and functional belong to different systems")
    if t.verified_depth < psi.level:
        raise DepthInsufficient(
            f"thread verified to depth {t.verified_depth}, functional lives at level {psi.level}"
        )
    return psi.vector.dot(t.component(psi.level))


def lim_functional_equal(psi: LimFunctional, psi2: LimFunctional) -> bool:
    """Equality as functionals: germ equality in the dual direct system.

    Sound because the primal steps are surjective, which makes the dual
    steps injective."""
    if psi.primal is not psi2.primal:
        raise SystemMismatch("functionals belong to different systems")
    if not psi.primal.certify_all_surjective():
        raise SurjectivityRequired("dual germs compare soundly only over surjective chains")
    return germ_equal(psi.germ, psi2.germ)


def separating_dual_germ(t: Thread, depth: int) -> LimFunctional:
    """A functional that does not vanish on the given thread, found
    constructively from its first nonzero component within ``depth``."""
    if t.verified_depth < depth:
        raise DepthInsufficient(f"thread verified to depth {t.verified_depth}, need {depth}")
    for n in range(1, depth + 1):
        c = t.component(n)
        for i, v in enumerate(c):
            if v != 0:
                return lim_functional(t.system, n, FinVector.basis(c.dim, i))
    raise AllZeroUpToDepth(f"thread is zero on all components up to depth {depth}")


def _is_standard_inclusion(h: CanonicalHom) -> bool:
    return h == CanonicalHom.inclusion(h.dom_dim, h.cod_dim)


def separating_dual_thread(a: ColimElement) -> ColimFunctional:
    """A dual thread that does not vanish on the given nonzero germ.

    Built by extending a level functional by zero across the complement
    of the image band, which is available when the chain embeds each
    level as a projection band; implemented for chains whose steps are
    standard coordinate inclusions."""
    s = a.system
    for k in range(1, max(a.level, s.prefix_levels)):
        if not _is_standard_inclusion(s.step(k)):
            raise PreconditionViolated("zero-extension witnesses need an inclusion-type chain")
    if a.vector.is_zero():
        raise PreconditionViolated("the germ is zero; nothing separates it")
    i = min(a.vector.support())

    def component(n: int) -> FinVector:
        d = s.dim(n)
        return FinVector.basis(d, i) if i < d else FinVector.zero(d)

    thread = thread_from_rule(dual_of_direct(s), component, name=f"coordinate({i + 1})")
    verify_thread(thread, a.level)
    return ColimFunctional(s, thread)


def join_eval_by_splitting(
    phi_n: FinVector, psi_n: FinVector, u: FinVector
) -> Fraction:
    """(phi v psi)(u) for u >= 0 by brute-force search over splittings.

    The supremum of phi(v) + psi(u - v) over 0 <= v <= u is attained at a
    vertex of the box [0, u] because the objective is affine in each
    coordinate of v, so enumerating the 2^dim vertices decides it
    exactly.  Independent of the pointwise-max implementation of joins."""
    if not u.is_positive():
        raise PreconditionViolated("u must be positive")
    best = None
    for choice in iter_product((False, True), repeat=u.dim):
        v = FinVector(tuple(u[i] if pick else Fraction(0) for i, pick in enumerate(choice)))
        value = phi_n.dot(v) + psi_n.dot(u.sub(v))
        if best is None or value > best:
            best = value
    return best


@dataclass(frozen=True)
class BlockDualityReport:
    """Outcome of the truncated sum/product duality check."""

    block_count: int
    dims: tuple[int, ...]
    split_after_assemble_is_identity: bool
    assemble_after_split_is_identity: bool
    pairing_consistent: bool
    lattice_operations_agree: bool
    order_continuous_collapse: bool = True

    def passed(self) -> bool:
        return (
            self.split_after_assemble_is_identity
            and self.assemble_after_split_is_identity
            and self.pairing_consistent
            and self.lattice_operations_agree
        )

    def to_json(self) -> dict:
        return {
            "block_count": self.block_count,
            "dims": list(self.dims),
            "split_after_assemble_is_identity": self.split_after_assemble_is_identity,
            "assemble_after_split_is_identity": self.assemble_after_split_is_identity,
            "pairing_consistent": self.pairing_consistent,
            "lattice_operations_agree": self.lattice_operations_agree,
            "order_continuous_collapse": self.order_continuous_collapse,
        }


def split_blocks(u: FinVector, dims: Sequence[int]) -> list[FinVector]:
    """Restriction of a functional on the product to each block: the
    blockwise slices."""
    if u.dim != sum(dims):
        raise DimensionMismatch(f"expected total dimension {sum(dims)}, got {u.dim}")
    out = []
    offset = 0
    for d in dims:
        out.append(FinVector(u.coords[offset : offset + d]))
        offset += d
    return out


def assemble_blocks(blocks: Sequence[FinVector], dims: Sequence[int]) -> FinVector:
    """Sum of the blockwise functionals pushed into the product dual: the
    concatenation."""
    if [b.dim for b in blocks] != list(dims):
        raise DimensionMismatch("block dimensions do not match")
    coords: tuple[Fraction, ...] = ()
    for b in blocks:
        coords = coords + b.coords
    return FinVector(coords)


def truncated_sum_product_duality(
    dims: Sequence[int], samples: Sequence[FinVector] = ()
) -> BlockDualityReport:
    """Check, on a finite family of blocks, that splitting and assembling
    dual vectors are mutually inverse lattice isomorphisms between the
    dual of the product and the sum of the duals, and that the pairing
    factors blockwise."""
    dims = tuple(int(d) for d in dims)
    total = sum(dims)
    vectors = list(samples) or [FinVector.basis(total, i) for i in range(total)]

    split_assemble = all(
        assemble_blocks(split_blocks(u, dims), dims) == u for u in vectors
    )
    assemble_split = all(
        split_blocks(assemble_blocks(split_blocks(u, dims), dims), dims) == split_blocks(u, dims)
        for u in vectors
    )
    pairing = all(
        phi.dot(u)
        == sum(
            (p.dot(b) for p, b in zip(split_blocks(phi, dims), split_blocks(u, dims))),
            Fraction(0),
        )
        for phi in vectors
        for u in vectors
    )
    lattice = all(
        split_blocks(phi.join(psi), dims)
        == [p.join(q) for p, q in zip(split_blocks(phi, dims), split_blocks(psi, dims))]
        and split_blocks(phi.meet(psi), dims)
        == [p.meet(q) for p, q in zip(split_blocks(phi, dims), split_blocks(psi, dims))]
        for phi in vectors
        for psi in vectors
    )
    return BlockDualityReport(
        block_count=len(dims),
        dims=dims,
        split_after_assemble_is_identity=assemble_split,
        assemble_after_split_is_identity=split_assemble,
        pairing_consistent=pairing,
        lattice_operations_agree=lattice,
    )


def majorises_upto(t: Thread, families: Sequence[Callable[[int], FinVector]], depth: int) -> bool:
    """Depth-bounded diagnostic: does the thread dominate each family
    componentwise on levels 1..depth?  The unbounded-depth statement is
    out of reach for lazily defined threads and is not claimed."""
    for k in range(1, depth + 1):
        c = t.component(k)
        for fam in families:
            if not fam(k).leq(c):
                return False
    return True
