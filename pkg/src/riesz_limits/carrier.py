"""Carriers, disjointification, band-family limits, and perfectness.

A functional on Q^n is a dual vector acting by dot product.  Its null
ideal is the coordinate band where it vanishes and its carrier is the
complementary band.  Directed families of bands give rise to inverse
systems of band projections; the map sending a vector to its family of
band projections is the bridge between a space and the inverse limit of
a band family.  Three desk-scale models are provided:

* ``finite``: all coordinate bands of Q^N;
* ``romega``: finite-support bands acting on arbitrary sequences (the
  full sequence space), realized along the cofinal chain of initial
  segments, i.e. the restriction chain;
* ``c00``: the same bands acting only on finitely supported sequences,
  realized as germs of the inclusion chain.

The two sequence models bracket the interesting phenomenon: on the full
sequence space the band-projection map is onto the compatible families,
while on the finitely supported ones it misses, for every support bound,
any family with unbounded support.

Perfectness of a direct chain is certified structurally: the chain must
have injective steps whose images are bands, and certified spot checks
confirm that evaluation against dual threads realizes every sampled
element of the double dual back to its original germ.  The certificate
never claims to decide perfectness of anything else: on these components
a strictly positive functional always exists, so the model cannot
exhibit a space that maps isomorphically onto its band-family limit yet
fails to be perfect; that situation is documented, not mechanized.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence, Union

from .colimit import ColimElement, embed, equal as germ_equal, promote
from .core import Band, FinVector, band_projection
from .duality import (
    ColimFunctional,
    LimFunctional,
    eval_colim_functional,
    eval_lim_functional,
    lim_functional,
    lim_functional_equal,
)
from .errors import (
    AllZeroUpToDepth,
    CertificateRefused,
    DepthInsufficient,
    DimensionMismatch,
    ModelMismatch,
    PreconditionViolated,
)
from .limit import Thread, section_thread, thread_from_rule, verify_thread
from .sampling import random_vector, trial_rng
from .system import (
    Classification,
    DirectSystem,
    InverseSystem,
    classify,
    dual_of_direct,
    dual_of_inverse,
    inclusion_chain,
    restriction_chain,
)

Functional = FinVector


def null_ideal(phi: FinVector) -> Band:
    """The band on the coordinates where |phi| vanishes."""
    return Band(phi.dim, frozenset(range(phi.dim)) - phi.support())


def carrier(phi: FinVector) -> Band:
    """The band on the support of |phi|; the complement of the null
    ideal."""
    return Band(phi.dim, phi.support())


def annihilator(a: Band) -> Band:
    """Functionals vanishing on the band: the complementary coordinate
    band in the dual."""
    return a.complement()


def disjointify(phi: FinVector, psi: FinVector) -> tuple[FinVector, FinVector]:
    """Split two positive functionals into disjoint minorants with the
    same supremum.

    Coordinatewise: where phi wins (ties included) keep (phi_i, 0), else
    (0, psi_i).  The tie rule makes the output deterministic; any
    assignment of ties satisfies the contract."""
    if not phi.is_positive() or not psi.is_positive():
        raise PreconditionViolated("disjointify needs positive functionals")
    phi._check_dim(psi)
    phi1 = FinVector(tuple(p if p >= q else Fraction(0) for p, q in zip(phi, psi)))
    psi1 = FinVector(tuple(q if q > p else Fraction(0) for p, q in zip(phi, psi)))
    return phi1, psi1


def strictly_positive(phi: FinVector) -> bool:
    """All coordinates positive; equivalently the carrier is the full
    band."""
    if not phi.is_positive():
        raise PreconditionViolated("strict positivity is asked of positive functionals")
    return all(v > 0 for v in phi)


def separating_part(phi: FinVector, u: FinVector) -> FinVector:
    """For strictly positive phi and u != 0: the restriction of phi to
    the band generated by the positive (or negative) part of u.  The
    result eta satisfies 0 <= eta <= phi and eta(u) != 0."""
    if not strictly_positive(phi):
        raise PreconditionViolated("phi must be strictly positive")
    if u.is_zero():
        raise PreconditionViolated("u must be nonzero")
    part = u.pos_part() if not u.pos_part().is_zero() else u.neg_part()
    return band_projection(carrier(part), phi)


# ---------------------------------------------------------------------------
# band families and the three models
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BandFamily:
    """Directed, downward-closed family of coordinate bands.

    ``finite`` enumerates all bands of Q^dim; ``sequential`` stands for
    the ideal of all finite-support bands of the sequence space, whose
    initial segments form a cofinal chain.  Enumerations are directed
    (every pair is eventually dominated) but deliberately not chains in
    the finite model."""

    kind: str  # "finite" | "sequential"
    dim: Optional[int] = None

    def bands(self, bound: Optional[int] = None) -> list[Band]:
        if self.kind == "finite":
            out = []
            for size in range(self.dim + 1):
                for combo in combinations(range(self.dim), size):
                    out.append(Band(self.dim, frozenset(combo)))
            return out
        if bound is None:
            raise PreconditionViolated("the sequential family is infinite; pass a bound")
        out = []
        for k in range(1, bound + 1):
            for size in range(k + 1):
                for combo in combinations(range(k), size):
                    if combo and max(combo) == k - 1:
                        out.append(Band(k, frozenset(combo)))
        return out

    def contains(self, support: frozenset[int]) -> bool:
        if self.kind == "finite":
            return all(0 <= i < self.dim for i in support)
        return True  # every finite support belongs

    def is_ideal(self, bound: int = 3) -> bool:
        """Downward closure and directedness, checked exhaustively on the
        finite model (or an initial part of the sequential one)."""
        supports = [frozenset(b.support) for b in self.bands(bound)]
        down = all(
            self.contains(frozenset(sub))
            for s in supports
            for r in range(len(s) + 1)
            for sub in combinations(s, r)
        )
        directed = all(self.contains(a | b) for a in supports for b in supports)
        return down and directed


@dataclass(eq=False)
class PmModel:
    """One of the three band-family models, with its element space."""

    kind: str  # "finite" | "romega" | "c00"
    dim: Optional[int] = None
    levels: int = 4

    def __post_init__(self):
        if self.kind == "finite":
            if not self.dim:
                raise PreconditionViolated("the finite model needs a dimension")
            self.family = BandFamily("finite", self.dim)
            self.band_chain = None
            self.element_chain = None
        elif self.kind in ("romega", "c00"):
            self.family = BandFamily("sequential")
            self.band_chain = restriction_chain(self.levels)
            self.element_chain = inclusion_chain(self.levels) if self.kind == "c00" else None
        else:
            raise PreconditionViolated(f"unknown model {self.kind!r}")


def finite_model(dim: int) -> PmModel:
    return PmModel("finite", dim=dim)


def romega_model(levels: int = 4) -> PmModel:
    return PmModel("romega", levels=levels)


def c00_model(levels: int = 4) -> PmModel:
    return PmModel("c00", levels=levels)


SequenceRule = Callable[[int], Fraction]
PmElement = Union[FinVector, ColimElement, SequenceRule]
PmFamily = Union[dict, Thread]


def pm_map(model: PmModel, u: PmElement) -> PmFamily:
    """The family of band projections of u over the model's band family.

    Finite model: a mapping band -> projection.  Sequence models: the
    thread of initial-segment projections along the cofinal chain (use
    :func:`pm_at_band` for a general finite-support band)."""
    if model.kind == "finite":
        if not isinstance(u, FinVector) or u.dim != model.dim:
            raise ModelMismatch("the finite model takes vectors of its own dimension")
        return {band: band_projection(band, u) for band in model.family.bands()}
    if model.kind == "romega":
        if isinstance(u, (FinVector, ColimElement)) or not callable(u):
            raise ModelMismatch("the full sequence model takes a rule k -> scalar (1-based)")
        rule = u
        return thread_from_rule(
            model.band_chain,
            lambda n: FinVector(tuple(Fraction(rule(j)) for j in range(1, n + 1))),
            name="prefix-projections",
        )
    # c00
    if not isinstance(u, ColimElement) or u.system is not model.element_chain:
        raise ModelMismatch("the finite-support model takes germs of its inclusion chain")

    def component(n: int) -> FinVector:
        v = u.vector.coords
        padded = v + (Fraction(0),) * max(0, n - len(v))
        return FinVector(padded[:n])

    return thread_from_rule(model.band_chain, component, name="prefix-projections")


def pm_at_band(model: PmModel, family: PmFamily, band: Band) -> FinVector:
    """Projection of the family onto one band of the family.

    In the sequence models a finite-support band is read through any
    chain level that contains it."""
    if model.kind == "finite":
        return family[band]
    level = max(band.support, default=-1) + 1
    level = max(level, 1)
    component = family.component(level)
    return band_projection(Band(level, band.support), component)


@dataclass(frozen=True)
class NotInImage:
    """Constructive refusal: the family's component at ``level`` has a
    nonzero ``coordinate`` (1-based) beyond the allowed support."""

    level: int
    coordinate: int


def pm_preimage(model: PmModel, family: PmFamily, support_bound: Optional[int] = None):
    """Reconstruct an element from its family of band projections.

    Full sequence model: always succeeds; returns the rule j -> stable
    value of coordinate j.  Finite-support model: returns a germ with
    support inside the first ``support_bound`` coordinates when the
    verified components allow one, else :class:`NotInImage` with the
    witnessing component.  Finite model: returns the full-band component.
    """
    if model.kind == "finite":
        return family[Band.full(model.dim)]
    if model.kind == "romega":
        thread = family
        return lambda j: thread.component(j)[j - 1]
    # c00
    thread = family
    if support_bound is None:
        raise PreconditionViolated("the finite-support model needs a support bound")
    depth = thread.verified_depth
    if depth <= support_bound:
        raise DepthInsufficient(
            f"family verified to depth {depth}; need more than the support bound {support_bound}"
        )
    for k in range(support_bound + 1, depth + 1):
        c = thread.component(k)
        for i in range(support_bound, k):
            if c[i] != 0:
                return NotInImage(level=k, coordinate=i + 1)
    return embed(model.element_chain, depth, thread.component(depth))


def pm_order_dense_witness(model: PmModel, family: PmFamily, depth: int) -> PmElement:
    """From a positive nonzero family, the model element built on the
    first nonzero component; its band projections squeeze below the
    family."""
    if model.kind == "finite":
        for band in model.family.bands():
            v = family[band]
            if not v.is_positive():
                raise PreconditionViolated("the family must be positive")
            if not v.is_zero():
                return v
        raise AllZeroUpToDepth("every component of the family is zero")
    thread = family
    if thread.verified_depth < depth:
        raise DepthInsufficient(f"family verified to depth {thread.verified_depth}, need {depth}")
    witness_level = None
    for n in range(1, depth + 1):
        c = thread.component(n)
        if not c.is_positive():
            raise PreconditionViolated("the family must be positive")
        if witness_level is None and not c.is_zero():
            witness_level = n
    if witness_level is None:
        raise AllZeroUpToDepth(f"family is zero on all components up to depth {depth}")
    seed = thread.component(witness_level)
    if model.kind == "c00":
        return embed(model.element_chain, witness_level, seed)
    return lambda j: seed[j - 1] if j <= seed.dim else Fraction(0)


def pm_is_lattice_hom_sample(model: PmModel, u: PmElement, v: PmElement, depth: int = 4) -> bool:
    """Spot check that the band-projection map respects join and meet."""
    fu, fv = pm_map(model, u), pm_map(model, v)
    if model.kind == "finite":
        joined = pm_map(model, u.join(v))
        met = pm_map(model, u.meet(v))
        return all(
            joined[b] == fu[b].join(fv[b]) and met[b] == fu[b].meet(fv[b]) for b in fu
        )
    if model.kind == "romega":
        joined = pm_map(model, lambda j: max(Fraction(u(j)), Fraction(v(j))))
        met = pm_map(model, lambda j: min(Fraction(u(j)), Fraction(v(j))))
    else:
        from .colimit import colim_join, colim_meet

        joined = pm_map(model, colim_join(u, v))
        met = pm_map(model, colim_meet(u, v))
    return all(
        joined.component(n) == fu.component(n).join(fv.component(n))
        and met.component(n) == fu.component(n).meet(fv.component(n))
        for n in range(1, depth + 1)
    )


# ---------------------------------------------------------------------------
# finite carrier-limit isomorphism
# ---------------------------------------------------------------------------


def finite_carrier_limit_iso(dim: int, extra_vectors: Sequence[FinVector] = ()) -> dict:
    """Exhaustive check, for small N, that the band-projection map onto
    the family of all carriers is a lattice isomorphism onto the
    compatible-family space.

    Every coordinate band is the carrier of its indicator functional, so
    the family is the full Boolean algebra; compatible families are
    forced by the full band and the map reconstructs every one of them.
    Returns the enumeration table and the verdict of each check."""
    if dim < 1 or dim > 3:
        raise PreconditionViolated("the exhaustive check is meant for N in {1, 2, 3}")
    model = finite_model(dim)
    bands = model.family.bands()

    table = [
        {"band": band.to_json(), "carrier_of": FinVector(
            tuple(Fraction(1) if i in band.support else Fraction(0) for i in range(dim))
        ).to_json()}
        for band in bands
    ]
    carriers_match = all(
        carrier(FinVector(tuple(Fraction(1) if i in b.support else Fraction(0) for i in range(dim)))) == b
        for b in bands
    )
    ideal = model.family.is_ideal()

    spanning = [FinVector.basis(dim, i) for i in range(dim)] + [FinVector.ones(dim)]
    vectors = spanning + list(extra_vectors)

    compat = all(
        band_projection(a, band_projection(b, u)) == band_projection(a, u)
        for u in vectors
        for a in bands
        for b in bands
        if b.contains_band(a)
    )
    injective = all(
        (pm_map(model, u)[Band.full(dim)] == u) for u in vectors
    )
    lattice_hom = all(
        pm_is_lattice_hom_sample(model, u, v) for u in vectors for v in vectors
    )
    surjective = all(
        pm_map(model, pm_preimage(model, pm_map(model, u))) == pm_map(model, u) for u in vectors
    )
    return {
        "dim": dim,
        "table": table,
        "every_band_is_a_carrier": carriers_match,
        "family_is_ideal": ideal,
        "projection_compatibility": compat,
        "map_is_injective": injective,
        "map_is_lattice_hom": lattice_hom,
        "map_is_onto_compatible_families": surjective,
        "isomorphism": carriers_match and ideal and compat and injective and lattice_hom and surjective,
    }


# ---------------------------------------------------------------------------
# perfectness certificates
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class PerfectCertificate:
    """Structural evidence that a direct chain has a perfect limit.

    Issued only when every step is injective with a band image, plus
    sampled spot checks of the embedding into the double dual: the
    pairing is realized by a dual germ and the round trip returns the
    original germ."""

    system: DirectSystem
    depth: int
    samples: int
    flags: Classification
    spot_checks: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "samples": self.samples,
            "flags": self.flags.to_json(),
            "spot_checks": list(self.spot_checks),
        }


def perfect_certificate(
    s: DirectSystem, depth: int, samples: int, seed: int = 0
) -> PerfectCertificate:
    """Certify the perfectness hypotheses of a direct chain to a depth.

    Raises :class:`CertificateRefused` naming the failing structural
    flag.  The spot checks evaluate sampled germs against sampled dual
    threads and confirm the double-dual representation recovers the
    germ."""
    flags = classify(s, depth)
    if not flags.all_injective:
        raise CertificateRefused("all_injective")
    if not flags.images_are_bands:
        raise CertificateRefused("images_are_bands")

    dual = dual_of_direct(s)
    double = dual_of_inverse(dual)
    for k in range(1, depth):
        if double.step(k).matrix() != s.step(k).matrix():
            raise CertificateRefused("double_dual_matrices")

    checks = []
    for trial in range(samples):
        rng = trial_rng(seed, "perfect", trial)
        level = rng.randint(1, max(1, depth - 1))
        u = ColimElement(s, level, random_vector(rng, s.dim(level)))
        phi_seed = random_vector(rng, dual.dim(depth))
        phi_thread = section_thread(dual, depth, phi_seed)
        verify_thread(phi_thread, depth)
        phi = ColimFunctional(s, phi_thread)

        psi = LimFunctional(dual, ColimElement(double, level, u.vector))
        direct_value = eval_colim_functional(phi, u)
        dual_value = eval_lim_functional(psi, phi_thread)

        m = rng.randint(level, depth)
        promoted = promote(ColimElement(double, level, u.vector), m)
        psi_promoted = LimFunctional(dual, promoted)
        round_trip = lim_functional_equal(psi, psi_promoted) and germ_equal(
            ColimElement(double, level, u.vector), promoted
        )
        agree = direct_value == dual_value == eval_lim_functional(psi_promoted, phi_thread)
        checks.append(
            {
                "trial": trial,
                "germ_level": level,
                "promoted_level": m,
                "pairing_agrees": bool(agree),
                "round_trip_recovers_germ": bool(round_trip),
            }
        )
        if not (agree and round_trip):
            raise CertificateRefused("double_dual_round_trip")

    return PerfectCertificate(
        system=s, depth=depth, samples=samples, flags=flags, spot_checks=tuple(checks)
    )
