"""Seeded random generators for vectors, homs, and chains.

Everything takes an explicit :class:`random.Random`; suites derive one
sub-generator per trial from a string seed so that serial and parallel
runs agree.  Weights keep numerators and denominators at most 16, which
keeps the Fourier-Motzkin oracle fast.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import FinVector
from .hom import CanonicalHom
from .system import DirectSystem, ExtensionRule, InverseSystem

MAX_NUMERATOR = 16
MAX_DENOMINATOR = 16


def trial_rng(seed: int, label: str, trial: int) -> random.Random:
    """Independent generator for one trial; stable across runs and
    execution orders."""
    return random.Random(f"{seed}:{label}:{trial}")


def random_fraction(rng: random.Random, nonneg: bool = False) -> Fraction:
    num = rng.randint(0 if nonneg else -MAX_NUMERATOR, MAX_NUMERATOR)
    den = rng.randint(1, MAX_DENOMINATOR)
    return Fraction(num, den)


def random_positive_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, MAX_NUMERATOR), rng.randint(1, MAX_DENOMINATOR))


def random_vector(rng: random.Random, dim: int, nonneg: bool = False) -> FinVector:
    return FinVector(tuple(random_fraction(rng, nonneg) for _ in range(dim)))


def random_in_box(rng: random.Random, upper: FinVector) -> FinVector:
    """Uniform-ish rational point of [0, upper]."""
    return FinVector(
        tuple(u * Fraction(rng.randint(0, MAX_DENOMINATOR), MAX_DENOMINATOR) for u in upper)
    )


def random_canonical_hom(rng: random.Random, dom: int, cod: int) -> CanonicalHom:
    """Arbitrary lattice homomorphism; roughly a quarter of the rows are
    zero."""
    weight = []
    idx = []
    for _ in range(cod):
        if rng.random() < 0.25:
            weight.append(Fraction(0))
            idx.append(None)
        else:
            weight.append(random_positive_fraction(rng))
            idx.append(rng.randrange(dom))
    return CanonicalHom(dom, cod, tuple(weight), tuple(idx))


def random_injective_ip_hom(rng: random.Random, dom: int, cod: int) -> CanonicalHom:
    """Injective and interval preserving: a weighted embedding of the
    domain coordinates onto ``dom`` distinct rows."""
    if dom > cod:
        raise ValueError("need dom <= cod")
    rows = rng.sample(range(cod), dom)
    columns = list(range(dom))
    rng.shuffle(columns)
    weight = [Fraction(0)] * cod
    idx: list[int | None] = [None] * cod
    for r, c in zip(rows, columns):
        weight[r] = random_positive_fraction(rng)
        idx[r] = c
    return CanonicalHom(dom, cod, tuple(weight), tuple(idx))


def random_surjective_hom(rng: random.Random, dom: int, cod: int) -> CanonicalHom:
    """Surjective: positive weights everywhere, distinct columns read."""
    if dom < cod:
        raise ValueError("need dom >= cod")
    columns = rng.sample(range(dom), cod)
    weight = tuple(random_positive_fraction(rng) for _ in range(cod))
    return CanonicalHom(dom, cod, weight, tuple(columns))


def random_iso_hom(rng: random.Random, dim: int) -> CanonicalHom:
    """Lattice isomorphism: a weighted permutation."""
    perm = list(range(dim))
    rng.shuffle(perm)
    weight = tuple(random_positive_fraction(rng) for _ in range(dim))
    return CanonicalHom(dim, dim, weight, tuple(perm))


def inverse_of_iso(h: CanonicalHom) -> CanonicalHom:
    """Inverse of a weighted permutation."""
    weight = [Fraction(0)] * h.dom_dim
    idx: list[int | None] = [None] * h.dom_dim
    for x, (w, j) in enumerate(zip(h.weight, h.idx)):
        weight[j] = 1 / w
        idx[j] = x
    return CanonicalHom(h.cod_dim, h.dom_dim, tuple(weight), tuple(idx))


def random_direct_chain(
    rng: random.Random, levels: int, start_max: int = 3, growth_max: int = 2
) -> DirectSystem:
    """Finite direct chain with injective interval preserving steps."""
    dims = [rng.randint(1, start_max)]
    for _ in range(levels - 1):
        dims.append(dims[-1] + rng.randint(0, growth_max))
    steps = [random_injective_ip_hom(rng, dims[k], dims[k + 1]) for k in range(levels - 1)]
    return DirectSystem(dims, steps, ExtensionRule.NONE, name="random-direct")


def random_inverse_chain(
    rng: random.Random, levels: int, start_max: int = 3, growth_max: int = 2
) -> InverseSystem:
    """Finite inverse chain with surjective steps."""
    dims = [rng.randint(1, start_max)]
    for _ in range(levels - 1):
        dims.append(dims[-1] + rng.randint(0, growth_max))
    steps = [random_surjective_hom(rng, dims[k + 1], dims[k]) for k in range(levels - 1)]
    return InverseSystem(dims, steps, ExtensionRule.NONE, name="random-inverse")


def random_germ(rng: random.Random, s: DirectSystem, max_level: int):
    from .colimit import ColimElement

    level = rng.randint(1, max_level)
    return ColimElement(s, level, random_vector(rng, s.dim(level)))
