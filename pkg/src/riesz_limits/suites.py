"""Named verification suites.

Each suite bundles the executable form of one family of claims about
the library's constructions and runs it under a seeded generator.  The
CLI exposes them; the acceptance tests drive the same functions, so a
green CLI run and a green test run certify the same properties.

Every trial draws its own sub-generator from (seed, suite, trial), so
results do not depend on execution order.  All comparisons are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import carrier as carrier_mod
from . import colimit as colim_mod
from . import duality as dual_mod
from . import limit as limit_mod
from .core import Band, FinVector, band_projection
from .errors import NotLatticeHom, SquareFails
from .hom import (
    CanonicalHom,
    PositiveMatrix,
    adjoint,
    canonicalize,
    compose,
    image_band,
    interval_preserving_oracle,
    interval_preservation_counterexample,
    is_injective,
    is_interval_preserving,
    is_surjective,
    preimage,
)
from . import linalg
from .sampling import (
    inverse_of_iso,
    random_canonical_hom,
    random_direct_chain,
    random_fraction,
    random_in_box,
    random_injective_ip_hom,
    random_inverse_chain,
    random_iso_hom,
    random_surjective_hom,
    random_vector,
    trial_rng,
)
from .system import (
    SystemMorphism,
    check_morphism,
    classify,
    connecting,
    connecting_inv,
    dual_of_direct,
    dual_of_inverse,
    inclusion_chain,
    restriction_chain,
)


@dataclass
class RunConfig:
    """Options shared by every suite run."""

    depth: int = 8
    trials: Optional[int] = None
    seed: int = 42

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be at least 1")
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be at least 1")


@dataclass
class PropertyResult:
    name: str
    claim: str
    status: str = "pass"
    counterexample: Optional[dict] = None

    def fail(self, **info) -> "PropertyResult":
        self.status = "fail"
        if self.counterexample is None:
            self.counterexample = info
        return self

    def to_json(self) -> dict:
        data = {"name": self.name, "status": self.status, "claim": self.claim}
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        return data


def _result(name: str, claim: str) -> PropertyResult:
    return PropertyResult(name=name, claim=claim)


# ---------------------------------------------------------------------------
# adjoints
# ---------------------------------------------------------------------------


def suite_adjoints(cfg: RunConfig) -> list[PropertyResult]:
    """Adjoint calculus of canonical homs: positivity, the two transfer
    directions between interval preservation and the lattice
    homomorphism property, involution, and the image of the adjoint of a
    surjection."""
    trials = cfg.trials or 500
    positive = _result("adjoint_positive", "adjoints of positive maps are positive")
    ip_to_hom = _result(
        "interval_preserving_gives_lattice_hom_adjoint",
        "the adjoint of an interval preserving hom is again a lattice homomorphism",
    )
    hom_to_ip = _result(
        "lattice_hom_gives_interval_preserving_adjoint",
        "the adjoint of a lattice homomorphism passes the interval-preservation oracle",
    )
    involution = _result("adjoint_involution", "taking the adjoint twice returns the matrix")
    surj_image = _result(
        "adjoint_image_is_kernel_annihilator",
        "for surjective homs, the range of the adjoint is exactly the annihilator of the kernel",
    )

    for trial in range(trials):
        rng = trial_rng(cfg.seed, "adjoints", trial)
        dom = rng.randint(1, 6)
        cod = rng.randint(1, 6)
        h = random_canonical_hom(rng, dom, cod)
        a = adjoint(h)

        if not all(v >= 0 for row in a.rows for v in row):
            positive.fail(trial=trial, hom=_hom_json(h))
        if is_interval_preserving(h):
            try:
                canonicalize(a)
            except NotLatticeHom as exc:
                ip_to_hom.fail(trial=trial, hom=_hom_json(h), row=exc.row)
        if a.transpose().rows != h.matrix().rows:
            involution.fail(trial=trial, hom=_hom_json(h))

        for probe in range(20):
            prng = trial_rng(cfg.seed, f"adjoints-probe-{trial}", probe)
            phi = random_vector(prng, cod, nonneg=True)
            psi = random_in_box(prng, a.apply(phi))
            if not interval_preserving_oracle(a, phi, psi):
                hom_to_ip.fail(trial=trial, hom=_hom_json(h), phi=phi.to_json(), psi=psi.to_json())
                break

        big, small = max(dom, cod), min(dom, cod)
        hs = random_surjective_hom(rng, big, small)
        kernel = linalg.kernel_basis(hs.matrix().rows)
        for _ in range(3):
            psi = random_vector(rng, big)
            vanishes = all(FinVector(k).dot(psi) == 0 for k in kernel)
            # the range of the adjoint is the row space of the matrix of hs
            in_image = linalg.in_row_space(hs.matrix().rows, psi.coords)
            if vanishes != in_image:
                surj_image.fail(trial=trial, hom=_hom_json(hs), psi=psi.to_json())
                break

    return [positive, ip_to_hom, hom_to_ip, involution, surj_image]


def _hom_json(h: CanonicalHom) -> dict:
    return {
        "dom_dim": h.dom_dim,
        "cod_dim": h.cod_dim,
        "weight": [str(w) for w in h.weight],
        "idx": [None if j is None else j + 1 for j in h.idx],
    }


# ---------------------------------------------------------------------------
# interval oracle
# ---------------------------------------------------------------------------


def suite_interval_oracle(cfg: RunConfig) -> list[PropertyResult]:
    """Agreement between the closed-form interval-preservation predicate
    and the exact feasibility oracle, plus the image/preimage structure
    of injective interval preserving homs."""
    trials = cfg.trials or 200
    agree_true = _result(
        "predicate_true_oracle_feasible",
        "when the predicate holds, every point of [0, h(u)] has a preimage in [0, u]",
    )
    agree_false = _result(
        "predicate_false_witness_infeasible",
        "when the predicate fails, the two-rows-one-column witness defeats the oracle",
    )
    methods_agree = _result(
        "elimination_and_simplex_agree",
        "Fourier-Motzkin elimination and exact simplex decide the same instances",
    )
    image_is_band = _result(
        "injective_ip_image_is_band",
        "injective interval preserving homs are isomorphisms onto a coordinate band",
    )
    preimage_inverts = _result(
        "preimage_inverts_apply",
        "the exact preimage solve inverts application on the image",
    )

    for trial in range(trials):
        rng = trial_rng(cfg.seed, "interval-oracle", trial)
        dom = rng.randint(1, 6)
        cod = rng.randint(1, 6)
        h = random_canonical_hom(rng, dom, cod)
        mat = h.matrix()

        if is_interval_preserving(h):
            for probe in range(10):
                prng = trial_rng(cfg.seed, f"oracle-probe-{trial}", probe)
                u = random_vector(prng, dom, nonneg=True)
                v = random_in_box(prng, h.apply(u))
                if not interval_preserving_oracle(mat, u, v):
                    agree_true.fail(trial=trial, hom=_hom_json(h), u=u.to_json(), v=v.to_json())
                    break
        else:
            u, v = interval_preservation_counterexample(h)
            if interval_preserving_oracle(mat, u, v):
                agree_false.fail(trial=trial, hom=_hom_json(h), u=u.to_json(), v=v.to_json())

        u = random_vector(rng, dom, nonneg=True)
        v = random_in_box(rng, h.apply(u))
        fm = interval_preserving_oracle(mat, u, v, method="fourier-motzkin")
        sx = interval_preserving_oracle(mat, u, v, method="simplex")
        if fm != sx:
            methods_agree.fail(trial=trial, hom=_hom_json(h), u=u.to_json(), v=v.to_json())

        small, big = min(dom, cod), max(dom, cod)
        hi = random_injective_ip_hom(rng, small, big)
        band = image_band(hi)
        if band is None or band.support != hi.coz():
            image_is_band.fail(trial=trial, hom=_hom_json(hi))
        w = random_vector(rng, small)
        forward = hi.apply(w)
        back = preimage(hi, forward)
        solved = linalg.solve(hi.matrix().rows, forward.coords)
        if back != w or solved != w.coords:
            preimage_inverts.fail(trial=trial, hom=_hom_json(hi), w=w.to_json())

    return [agree_true, agree_false, methods_agree, image_is_band, preimage_inverts]


# ---------------------------------------------------------------------------
# colimit duality
# ---------------------------------------------------------------------------


def _sampled_direct_chains(cfg: RunConfig, trials: int):
    yield 0, inclusion_chain(cfg.depth)
    for trial in range(1, trials):
        rng = trial_rng(cfg.seed, "colim-chain", trial)
        yield trial, random_direct_chain(rng, cfg.depth)


def suite_colimit_duality(cfg: RunConfig) -> list[PropertyResult]:
    """Functionals on a direct limit are exactly the compatible threads
    of dual vectors: evaluation is representative independent, nonzero
    threads separate, the evaluator round trip is the identity, and the
    thread join realizes the supremum formula over box splittings."""
    trials = cfg.trials or 50
    depth = cfg.depth
    well_defined = _result(
        "evaluation_representative_independent",
        "evaluating a dual thread at any representative of a germ gives the same value",
    )
    separates = _result(
        "nonzero_thread_separates",
        "a dual thread nonzero at a verified level is nonzero on some basis germ",
    )
    round_trip = _result(
        "evaluator_round_trip",
        "collecting the evaluations of a dual thread on basis germs rebuilds the thread",
    )
    join_formula = _result(
        "join_matches_splitting_supremum",
        "the pointwise join of dual threads evaluates as the supremum over box splittings",
    )
    zero_separation = _result(
        "nonzero_germ_separated",
        "on inclusion chains every nonzero germ is separated by a zero-extension dual thread",
    )

    for trial, s in _sampled_direct_chains(cfg, trials):
        rng = trial_rng(cfg.seed, "colim-duality", trial)
        dual = dual_of_direct(s)
        phi_thread = limit_mod.section_thread(dual, depth, random_vector(rng, dual.dim(depth)))
        limit_mod.verify_thread(phi_thread, depth)
        phi = dual_mod.ColimFunctional(s, phi_thread)

        level = rng.randint(1, depth - 1)
        u = colim_mod.ColimElement(s, level, random_vector(rng, s.dim(level)))
        m = rng.randint(level, depth)
        promoted = colim_mod.promote(u, m)
        if dual_mod.eval_colim_functional(phi, u) != dual_mod.eval_colim_functional(phi, promoted):
            well_defined.fail(trial=trial, level=level, promoted=m)

        for n in range(1, depth + 1):
            c = phi_thread.component(n)
            nz = [i for i, v in enumerate(c) if v != 0]
            if nz:
                basis_germ = colim_mod.embed(s, n, FinVector.basis(s.dim(n), nz[0]))
                if dual_mod.eval_colim_functional(phi, basis_germ) == 0:
                    separates.fail(trial=trial, level=n, coordinate=nz[0] + 1)
                break

        rebuilt = dual_mod.functional_to_dual_thread(
            s, lambda a: dual_mod.eval_colim_functional(phi, a), depth
        )
        if not limit_mod.thread_equal_upto(phi_thread, rebuilt.thread, depth):
            round_trip.fail(trial=trial)

        small_levels = [n for n in range(1, depth + 1) if s.dim(n) <= 3]
        if small_levels:
            n = small_levels[-1]
            psi_thread = limit_mod.section_thread(dual, depth, random_vector(rng, dual.dim(depth)))
            limit_mod.verify_thread(psi_thread, depth)
            joined = dual_mod.ColimFunctional(s, limit_mod.thread_join(phi_thread, psi_thread))
            u_pos = random_vector(rng, s.dim(n), nonneg=True)
            germ = colim_mod.embed(s, n, u_pos)
            expected = dual_mod.join_eval_by_splitting(
                phi_thread.component(n), psi_thread.component(n), u_pos
            )
            if dual_mod.eval_colim_functional(joined, germ) != expected:
                join_formula.fail(trial=trial, level=n, u=u_pos.to_json())

    chain = inclusion_chain(cfg.depth)
    for trial in range(trials):
        rng = trial_rng(cfg.seed, "colim-separation", trial)
        level = rng.randint(1, depth - 1)
        vec = random_vector(rng, chain.dim(level))
        if vec.is_zero():
            continue
        germ = colim_mod.embed(chain, level, vec)
        sep = dual_mod.separating_dual_thread(germ)
        if dual_mod.eval_colim_functional(sep, germ) == 0:
            zero_separation.fail(trial=trial, level=level, vector=vec.to_json())

    return [well_defined, separates, round_trip, join_formula, zero_separation]


# ---------------------------------------------------------------------------
# limit duality
# ---------------------------------------------------------------------------


def suite_limit_duality(cfg: RunConfig) -> list[PropertyResult]:
    """Functionals on an inverse limit with surjective steps are exactly
    the germs of dual vectors: sections realize every prescribed
    component, evaluation respects germ equality, distinct germs are
    separated by section threads, and nonzero threads admit separating
    functionals."""
    trials = cfg.trials or 50
    depth = cfg.depth
    section_projects = _result(
        "section_thread_projects_to_seed",
        "the section through a prescribed component projects back onto it",
    )
    section_positive = _result(
        "section_of_positive_seed_is_positive",
        "sections of positive seeds are positive at every level",
    )
    eval_well_defined = _result(
        "dual_germ_evaluation_well_defined",
        "germ-equal dual functionals evaluate identically on verified threads",
    )
    germs_separated = _result(
        "distinct_dual_germs_separated",
        "germ-distinct functionals differ on some section thread",
    )
    thread_separated = _result(
        "nonzero_thread_admits_separating_germ",
        "every nonzero verified thread is separated by a constructed dual germ",
    )
    sup_closure = _result(
        "finite_sup_of_threads_verifies",
        "the pointwise supremum of finitely many verified threads verifies to the same depth",
    )

    for trial in range(trials):
        rng = trial_rng(cfg.seed, "limit-duality", trial)
        s = restriction_chain(depth) if trial == 0 else random_inverse_chain(rng, depth)
        n0 = rng.randint(1, depth)
        seed_vec = random_vector(rng, s.dim(n0))
        t = limit_mod.section_thread(s, n0, seed_vec)
        limit_mod.verify_thread(t, depth)
        if limit_mod.projection(t, n0) != seed_vec:
            section_projects.fail(trial=trial, level=n0)

        pos_seed = seed_vec.abs()
        tp = limit_mod.section_thread(s, n0, pos_seed)
        limit_mod.verify_thread(tp, depth)
        if not all(limit_mod.projection(tp, k).is_positive() for k in range(1, depth + 1)):
            section_positive.fail(trial=trial, level=n0)

        level = rng.randint(1, depth - 1)
        psi_vec = random_vector(rng, s.dim(level))
        psi = dual_mod.lim_functional(s, level, psi_vec)
        dd = dual_of_inverse(s)
        m = rng.randint(level, depth)
        promoted_vec = connecting(dd, level, m).apply(psi_vec)
        psi2 = dual_mod.lim_functional(s, m, promoted_vec)
        if not dual_mod.lim_functional_equal(psi, psi2):
            eval_well_defined.fail(trial=trial, level=level, promoted=m)
        for probe in range(5):
            prng = trial_rng(cfg.seed, f"limit-probe-{trial}", probe)
            k0 = prng.randint(1, depth)
            probe_t = limit_mod.section_thread(s, k0, random_vector(prng, s.dim(k0)))
            limit_mod.verify_thread(probe_t, depth)
            if dual_mod.eval_lim_functional(psi, probe_t) != dual_mod.eval_lim_functional(psi2, probe_t):
                eval_well_defined.fail(trial=trial, probe=probe)
                break

        other_vec = random_vector(rng, s.dim(level))
        other = dual_mod.lim_functional(s, level, other_vec)
        if not dual_mod.lim_functional_equal(psi, other):
            delta = connecting(dd, level, m).apply(psi_vec.sub(other_vec))
            coords = [i for i, v in enumerate(delta) if v != 0]
            if not coords:
                germs_separated.fail(trial=trial, reason="distinct germs with equal promotions")
            else:
                witness = limit_mod.section_thread(s, m, FinVector.basis(s.dim(m), coords[0]))
                limit_mod.verify_thread(witness, depth)
                if dual_mod.eval_lim_functional(psi, witness) == dual_mod.eval_lim_functional(
                    other, witness
                ):
                    germs_separated.fail(trial=trial, level=m, coordinate=coords[0] + 1)

        if any(not t.component(k).is_zero() for k in range(1, depth + 1)):
            sep = dual_mod.separating_dual_germ(t, depth)
            if dual_mod.eval_lim_functional(sep, t) == 0:
                thread_separated.fail(trial=trial)

        sup = limit_mod.pointwise_sup([t, tp])
        try:
            limit_mod.verify_thread(sup, depth)
        except Exception:
            sup_closure.fail(trial=trial)

    return [
        section_projects,
        section_positive,
        eval_well_defined,
        germs_separated,
        thread_separated,
        sup_closure,
    ]


# ---------------------------------------------------------------------------
# band-family scenarios
# ---------------------------------------------------------------------------


def suite_pm_scenarios(cfg: RunConfig) -> list[PropertyResult]:
    """The band-projection map on the two sequence models: onto the
    compatible families for arbitrary sequences, properly short of them
    for finitely supported ones."""
    trials = cfg.trials or 25
    depth = cfg.depth
    romega_onto = _result(
        "full_sequence_model_reconstructs",
        "every verified compatible family is the band-projection family of a sequence",
    )
    c00_gap = _result(
        "finite_support_model_misses_ones",
        "the all-ones family has no finitely supported preimage at any support bound",
    )
    round_trip = _result(
        "band_projection_round_trip",
        "the band-projection family of an element reconstructs that element",
    )
    hom_check = _result(
        "band_projection_map_is_lattice_hom",
        "the band-projection map respects join and meet",
    )
    dense_witness = _result(
        "image_is_order_dense",
        "below every positive nonzero family sits the projection family of a model element",
    )
    mask_compat = _result(
        "band_projections_compatible",
        "projecting onto a smaller band factors through any larger one",
    )

    romega = carrier_mod.romega_model()
    c00 = carrier_mod.c00_model()

    ones_family = limit_mod.thread_from_rule(
        c00.band_chain, lambda n: FinVector.ones(n), name="ones"
    )
    limit_mod.verify_thread(ones_family, depth + 2)
    for bound in range(1, depth + 1):
        verdict = carrier_mod.pm_preimage(c00, ones_family, bound)
        if not isinstance(verdict, carrier_mod.NotInImage):
            c00_gap.fail(bound=bound)

    ones_romega = limit_mod.thread_from_rule(
        romega.band_chain, lambda n: FinVector.ones(n), name="ones"
    )
    limit_mod.verify_thread(ones_romega, depth)
    rebuilt = carrier_mod.pm_preimage(romega, ones_romega)
    if any(rebuilt(j) != 1 for j in range(1, depth + 1)):
        romega_onto.fail(reason="all-ones family not rebuilt")

    for trial in range(trials):
        rng = trial_rng(cfg.seed, "pm-scenarios", trial)
        values = tuple(random_fraction(rng) for _ in range(depth + 2))

        def seq(j: int, _values=values) -> Fraction:
            return _values[j - 1] if j <= len(_values) else Fraction(0)

        fam = carrier_mod.pm_map(romega, seq)
        limit_mod.verify_thread(fam, depth)
        back = carrier_mod.pm_preimage(romega, fam)
        if any(back(j) != seq(j) for j in range(1, depth + 1)):
            romega_onto.fail(trial=trial)

        level = rng.randint(1, depth)
        germ = colim_mod.embed(c00.element_chain, level, random_vector(rng, level))
        gfam = carrier_mod.pm_map(c00, germ)
        limit_mod.verify_thread(gfam, depth + 2)
        verdict = carrier_mod.pm_preimage(c00, gfam, support_bound=level)
        if isinstance(verdict, carrier_mod.NotInImage) or not colim_mod.equal(verdict, germ):
            round_trip.fail(trial=trial, level=level)

        values2 = tuple(random_fraction(rng) for _ in range(depth + 2))

        def seq2(j: int, _values=values2) -> Fraction:
            return _values[j - 1] if j <= len(_values) else Fraction(0)

        if not carrier_mod.pm_is_lattice_hom_sample(romega, seq, seq2, depth=min(depth, 4)):
            hom_check.fail(trial=trial, model="romega")
        germ2 = colim_mod.embed(c00.element_chain, level, random_vector(rng, level))
        if not carrier_mod.pm_is_lattice_hom_sample(c00, germ, germ2, depth=min(depth, 4)):
            hom_check.fail(trial=trial, model="c00")

        pos_level = rng.randint(1, depth)
        pos_vec = random_vector(rng, pos_level, nonneg=True)
        if pos_vec.is_zero():
            pos_vec = FinVector.basis(pos_level, rng.randrange(pos_level)).add(pos_vec)
        pos_fam = carrier_mod.pm_map(c00, colim_mod.embed(c00.element_chain, pos_level, pos_vec))
        limit_mod.verify_thread(pos_fam, depth)
        witness = carrier_mod.pm_order_dense_witness(c00, pos_fam, depth)
        wit_fam = carrier_mod.pm_map(c00, witness)
        limit_mod.verify_thread(wit_fam, depth)
        if any(
            not wit_fam.component(k).leq(pos_fam.component(k)) for k in range(1, depth + 1)
        ) or all(wit_fam.component(k).is_zero() for k in range(1, depth + 1)):
            dense_witness.fail(trial=trial)

        big = rng.randint(2, depth)
        small_support = frozenset(i for i in range(big) if rng.random() < 0.5)
        band_small = Band(big, small_support)
        band_big = Band(big, frozenset(range(big)))
        via_small = carrier_mod.pm_at_band(c00, gfam, band_small)
        via_big = band_projection(
            Band(band_big.dim, band_small.support), carrier_mod.pm_at_band(c00, gfam, band_big)
        )
        padded = FinVector(via_small.coords + (Fraction(0),) * (big - via_small.dim))
        if padded != via_big:
            mask_compat.fail(trial=trial, band=band_small.to_json())

    return [romega_onto, c00_gap, round_trip, hom_check, dense_witness, mask_compat]


# ---------------------------------------------------------------------------
# disjointification and carriers
# ---------------------------------------------------------------------------


def suite_disjointify(cfg: RunConfig) -> list[PropertyResult]:
    """Disjointification of positive functionals plus the carrier/null
    partition and the strictly-positive separation witness."""
    trials = cfg.trials or 500
    postconditions = _result(
        "disjointification_postconditions",
        "the split parts are disjoint minorants with the original supremum",
    )
    disjoint_kept = _result(
        "disjoint_pairs_unchanged",
        "already disjoint pairs are returned unchanged",
    )
    partition = _result(
        "carrier_and_null_ideal_partition",
        "the carrier and the null ideal partition the coordinates",
    )
    strict_on_carrier = _result(
        "positive_functional_strict_on_carrier",
        "a positive functional is strictly positive on its carrier",
    )
    separator = _result(
        "strictly_positive_separates",
        "restricting a strictly positive functional to the band of the positive part separates",
    )

    for trial in range(trials):
        rng = trial_rng(cfg.seed, "disjointify", trial)
        dim = rng.randint(1, 8)
        phi = random_vector(rng, dim, nonneg=True)
        psi = random_vector(rng, dim, nonneg=True)
        phi1, psi1 = carrier_mod.disjointify(phi, psi)
        if not (
            phi1.meet(psi1).is_zero()
            and phi1.leq(phi)
            and psi1.leq(psi)
            and phi1.join(psi1) == phi.join(psi)
        ):
            postconditions.fail(trial=trial, phi=phi.to_json(), psi=psi.to_json())

        mask = [rng.random() < 0.5 for _ in range(dim)]
        a = FinVector(tuple(v if m else Fraction(0) for v, m in zip(phi, mask)))
        b = FinVector(tuple(Fraction(0) if m else v for v, m in zip(psi, mask)))
        a1, b1 = carrier_mod.disjointify(a, b)
        if (a1, b1) != (a, b):
            disjoint_kept.fail(trial=trial, a=a.to_json(), b=b.to_json())

        if carrier_mod.carrier(phi) != carrier_mod.null_ideal(phi).complement():
            partition.fail(trial=trial, phi=phi.to_json())
        if not all(phi[i] > 0 for i in carrier_mod.carrier(phi).support):
            strict_on_carrier.fail(trial=trial, phi=phi.to_json())

        strict = FinVector(tuple(v + Fraction(1, 17) for v in phi))
        u = random_vector(rng, dim)
        if not u.is_zero():
            eta = carrier_mod.separating_part(strict, u)
            if not (eta.is_positive() and eta.leq(strict) and eta.dot(u) != 0):
                separator.fail(trial=trial, phi=strict.to_json(), u=u.to_json())

    return [postconditions, disjoint_kept, partition, strict_on_carrier, separator]


# ---------------------------------------------------------------------------
# truncated sum/product duality
# ---------------------------------------------------------------------------


def suite_sum_product_duality(cfg: RunConfig) -> list[PropertyResult]:
    """Blockwise duality on finite truncations: splitting and assembling
    dual vectors invert each other and preserve the lattice structure."""
    trials = cfg.trials or 100
    identities = _result(
        "split_assemble_identities",
        "splitting after assembling and assembling after splitting are both the identity",
    )
    for trial in range(trials):
        rng = trial_rng(cfg.seed, "sum-product", trial)
        k = rng.randint(1, 5)
        dims = [rng.randint(1, 4) for _ in range(k)]
        total = sum(dims)
        samples = [random_vector(rng, total) for _ in range(4)]
        report = dual_mod.truncated_sum_product_duality(dims, samples)
        if not report.passed():
            identities.fail(trial=trial, dims=dims, report=report.to_json())
    return [identities]


# ---------------------------------------------------------------------------
# finite carrier-limit isomorphism
# ---------------------------------------------------------------------------


def suite_finite_carrier_iso(cfg: RunConfig) -> list[PropertyResult]:
    """Exhaustive small-dimension check that the band-projection map onto
    the family of all carriers is a lattice isomorphism onto the
    compatible families."""
    out = []
    for dim in (1, 2, 3):
        rng = trial_rng(cfg.seed, "carrier-iso", dim)
        extra = [random_vector(rng, dim) for _ in range(5)]
        report = carrier_mod.finite_carrier_limit_iso(dim, extra)
        res = _result(
            f"carrier_limit_iso_dim_{dim}",
            "the projection family map is a lattice isomorphism onto the compatible families",
        )
        if not report["isomorphism"]:
            res.fail(dim=dim, report={k: v for k, v in report.items() if k != "table"})
        out.append(res)
    return out


# ---------------------------------------------------------------------------
# functoriality
# ---------------------------------------------------------------------------


def suite_functoriality(cfg: RunConfig) -> list[PropertyResult]:
    """Connecting-map functoriality, duality contravariance, classify
    monotonicity, and induced maps of levelwise isomorphisms on germs and
    threads."""
    trials = cfg.trials or 100
    depth = min(cfg.depth, 6)
    compose_law = _result(
        "connecting_maps_compose",
        "the connecting hom over a long interval is the composite over its parts",
    )
    contravariant = _result(
        "duality_reverses_composition",
        "the adjoint of a composite connecting map is the reversed composite of adjoints",
    )
    monotone = _result(
        "classification_monotone_in_depth",
        "classification flags only ever switch from true to false as depth grows",
    )
    squares = _result(
        "levelwise_isos_commute",
        "conjugated chains commute with the levelwise isomorphisms at every level",
    )
    induced_germ = _result(
        "induced_map_on_germs",
        "the induced map on germs commutes with embeddings and is invertible",
    )
    induced_thread = _result(
        "induced_map_on_threads",
        "the induced map on threads commutes with projections and is invertible",
    )
    perturbed = _result(
        "perturbed_square_detected",
        "perturbing one weight breaks the commuting squares detectably",
    )

    for trial in range(trials):
        rng = trial_rng(cfg.seed, "functoriality", trial)
        s = inclusion_chain(depth + 2) if trial % 5 == 0 else random_direct_chain(rng, depth + 2)
        n = rng.randint(1, depth)
        m = rng.randint(n, depth + 1)
        k = rng.randint(m, depth + 2)
        if connecting(s, n, k) != compose(connecting(s, m, k), connecting(s, n, m)):
            compose_law.fail(trial=trial, n=n, m=m, k=k)

        dual = dual_of_direct(s)
        lhs = canonicalize(adjoint(connecting(s, n, m)))
        rhs = connecting_inv(dual, m, n)
        if lhs != rhs:
            contravariant.fail(trial=trial, n=n, m=m)

        dims = [rng.randint(1, 4)]
        for _ in range(depth + 1):
            dims.append(rng.randint(1, 4))
        mixed_steps = [random_canonical_hom(rng, dims[i], dims[i + 1]) for i in range(depth + 1)]
        mixed = type(s)(dims, mixed_steps)
        flags = [classify(mixed, d) for d in range(1, depth + 3)]
        for earlier, later in zip(flags, flags[1:]):
            for name in ("all_injective", "all_surjective", "all_interval_preserving", "images_are_bands"):
                if getattr(later, name) and not getattr(earlier, name):
                    monotone.fail(trial=trial, flag=name)

        isos = {lvl: random_iso_hom(rng, s.dim(lvl)) for lvl in range(1, depth + 3)}
        conjugated = type(s)(
            [s.dim(lvl) for lvl in range(1, depth + 3)],
            [
                compose(compose(isos[lvl + 1], s.step(lvl)), inverse_of_iso(isos[lvl]))
                for lvl in range(1, depth + 2)
            ],
        )
        morphism = SystemMorphism(s, conjugated, lambda lvl: isos[lvl])
        try:
            check_morphism(morphism, depth + 2)
        except SquareFails as exc:
            squares.fail(trial=trial, level=exc.level)

        level = rng.randint(1, depth + 1)
        vec = random_vector(rng, s.dim(level))
        germ = colim_mod.ColimElement(s, level, vec)
        pushed = colim_mod.map_germ(morphism, germ)
        if pushed.vector != isos[level].apply(vec):
            induced_germ.fail(trial=trial, reason="embedding square")
        promoted = colim_mod.promote(germ, level + 1)
        if not colim_mod.equal(colim_mod.map_germ(morphism, promoted), pushed):
            induced_germ.fail(trial=trial, reason="representative independence")
        inverse_morphism = SystemMorphism(
            conjugated, s, lambda lvl: inverse_of_iso(isos[lvl])
        )
        if not colim_mod.equal(colim_mod.map_germ(inverse_morphism, pushed), germ):
            induced_germ.fail(trial=trial, reason="inverse recovery")

        si = random_inverse_chain(rng, depth + 2)
        isos_i = {lvl: random_iso_hom(rng, si.dim(lvl)) for lvl in range(1, depth + 3)}
        conjugated_i = type(si)(
            [si.dim(lvl) for lvl in range(1, depth + 3)],
            [
                compose(compose(isos_i[lvl], si.step(lvl)), inverse_of_iso(isos_i[lvl + 1]))
                for lvl in range(1, depth + 2)
            ],
        )
        morphism_i = SystemMorphism(si, conjugated_i, lambda lvl: isos_i[lvl])
        check_morphism(morphism_i, depth + 2)
        n0 = rng.randint(1, depth + 1)
        t = limit_mod.section_thread(si, n0, random_vector(rng, si.dim(n0)))
        limit_mod.verify_thread(t, depth + 2)
        mapped = limit_mod.map_thread(morphism_i, t)
        limit_mod.verify_thread(mapped, depth + 2)
        if any(
            mapped.component(lvl) != isos_i[lvl].apply(t.component(lvl))
            for lvl in range(1, depth + 3)
        ):
            induced_thread.fail(trial=trial, reason="projection square")
        unmapped = limit_mod.map_thread(
            SystemMorphism(conjugated_i, si, lambda lvl: inverse_of_iso(isos_i[lvl])), mapped
        )
        if not limit_mod.thread_equal_upto(unmapped, t, depth + 2):
            induced_thread.fail(trial=trial, reason="inverse recovery")

        bad_level = rng.randint(1, depth + 1)
        bad = SystemMorphism(
            s,
            conjugated,
            lambda lvl: isos[lvl]
            if lvl != bad_level
            else CanonicalHom(
                isos[lvl].dom_dim,
                isos[lvl].cod_dim,
                tuple(w * 2 for w in isos[lvl].weight),
                isos[lvl].idx,
            ),
        )
        try:
            check_morphism(bad, depth + 2)
            perturbed.fail(trial=trial, level=bad_level)
        except SquareFails:
            pass

    return [
        compose_law,
        contravariant,
        monotone,
        squares,
        induced_germ,
        induced_thread,
        perturbed,
    ]


# ---------------------------------------------------------------------------
# registry and reports
# ---------------------------------------------------------------------------

SUITES: dict[str, Callable[[RunConfig], list[PropertyResult]]] = {
    "adjoints": suite_adjoints,
    "interval-oracle": suite_interval_oracle,
    "colimit-duality": suite_colimit_duality,
    "limit-duality": suite_limit_duality,
    "pm-scenarios": suite_pm_scenarios,
    "disjointify": suite_disjointify,
    "sum-product-duality": suite_sum_product_duality,
    "finite-carrier-iso": suite_finite_carrier_iso,
    "functoriality": suite_functoriality,
}

DEFAULT_TRIALS: dict[str, int] = {
    "adjoints": 500,
    "interval-oracle": 200,
    "colimit-duality": 50,
    "limit-duality": 50,
    "pm-scenarios": 25,
    "disjointify": 500,
    "sum-product-duality": 100,
    "finite-carrier-iso": 3,
    "functoriality": 100,
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    """Run one named suite and wrap the outcomes in the report object.

    The order dual and the order continuous dual coincide on these
    components, so each duality suite certifies both readings at once;
    the report records that collapse."""
    from .errors import UnknownSuite

    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    results = SUITES[name](cfg)
    return {
        "command": "verify",
        "suite": name,
        "seed": cfg.seed,
        "depth": cfg.depth,
        "trials": cfg.trials or DEFAULT_TRIALS[name],
        "order_continuous_collapse": True,
        "results": [r.to_json() for r in results],
    }
