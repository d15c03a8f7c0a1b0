"""Sequential systems of coordinate lattices over the natural numbers.

A direct system is a chain Q^{d1} -> Q^{d2} -> ... of lattice
homomorphisms; an inverse system points the other way.  Systems are
generator-backed with memoization: a finite explicit prefix plus either
a closed extension rule (``inclusion``, ``restriction``, ``repeat_last``,
``none``) or, for programmatic construction, arbitrary callables.  The
closed rules keep lazily infinite chains decidable: the predicates of
every step beyond the prefix are those of the rule.

Levels are 1-based.  Step k connects levels k and k+1: forward for
direct systems, backward for inverse systems.

Memoization is an idempotent fill (the generators are pure), so
concurrent readers may race harmlessly; once materialized, all values
are immutable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import hom as hom_mod
from .errors import (
    DimensionMismatch,
    ExtensionExhausted,
    ParseError,
    PreconditionViolated,
    SquareFails,
    SystemMismatch,
)
from .hom import CanonicalHom, adjoint, canonicalize, compose


class ExtensionRule(enum.Enum):
    NONE = "none"
    INCLUSION = "inclusion"
    RESTRICTION = "restriction"
    REPEAT_LAST = "repeat_last"


@dataclass(frozen=True)
class Classification:
    """Per-step predicate conjunction over an initial segment of a system."""

    all_injective: bool
    all_surjective: bool
    all_interval_preserving: bool
    images_are_bands: bool

    def to_json(self) -> dict:
        return {
            "all_injective": self.all_injective,
            "all_surjective": self.all_surjective,
            "all_interval_preserving": self.all_interval_preserving,
            "images_are_bands": self.images_are_bands,
        }


class _BaseSystem:
    """Shared memoized-generator machinery for both orientations."""

    kind = "base"

    def __init__(
        self,
        dims: Sequence[int],
        steps: Sequence[CanonicalHom],
        extend: ExtensionRule = ExtensionRule.NONE,
        *,
        dim_fn: Optional[Callable[[int], int]] = None,
        step_fn: Optional[Callable[[int], CanonicalHom]] = None,
        name: str = "",
    ):
        self._dims: dict[int, int] = {k + 1: int(d) for k, d in enumerate(dims)}
        self._steps: dict[int, CanonicalHom] = {k + 1: s for k, s in enumerate(steps)}
        self.prefix_levels = len(self._dims)
        if self.prefix_levels == 0 and dim_fn is None:
            raise PreconditionViolated("a system needs at least one explicit level or a generator")
        if len(self._steps) not in (0, max(self.prefix_levels - 1, 0)):
            raise PreconditionViolated("prefix must carry exactly one step between consecutive levels")
        self.rule = extend
        self._dim_fn = dim_fn
        self._step_fn = step_fn
        self.name = name
        self._dual = None
        for k in range(1, self.prefix_levels):
            self._check_step(k, self._steps[k])
        self._validate_rule()

    # orientation hooks

    def _step_dims(self, k: int) -> tuple[int, int]:
        raise NotImplementedError

    def _rule_step(self, k: int) -> CanonicalHom:
        raise NotImplementedError

    def _rule_allowed(self, rule: ExtensionRule) -> bool:
        raise NotImplementedError

    def _check_step(self, k: int, step: CanonicalHom) -> None:
        dom, cod = self._step_dims(k)
        if (step.dom_dim, step.cod_dim) != (dom, cod):
            raise DimensionMismatch(
                f"step {k} must map dimension {dom} to {cod}, got {step.dom_dim} to {step.cod_dim}"
            )

    def _validate_rule(self) -> None:
        if not self._rule_allowed(self.rule):
            raise PreconditionViolated(
                f"extension rule {self.rule.value!r} is not valid for a {self.kind} system"
            )
        if self.rule is ExtensionRule.REPEAT_LAST:
            if self.prefix_levels < 2:
                raise PreconditionViolated("repeat_last needs at least one explicit step")
            if self.dim(self.prefix_levels) != self.dim(self.prefix_levels - 1):
                raise PreconditionViolated("repeat_last needs a square final step")

    def dim(self, level: int) -> int:
        if level < 1:
            raise PreconditionViolated(f"levels start at 1, got {level}")
        got = self._dims.get(level)
        if got is not None:
            return got
        value = self._extended_dim(level)
        self._dims[level] = value
        return value

    def _extended_dim(self, level: int) -> int:
        if self._dim_fn is not None:
            value = int(self._dim_fn(level))
            if value < 1:
                raise PreconditionViolated(f"dimension at level {level} must be positive")
            return value
        base = self.dim(self.prefix_levels)
        if self.rule in (ExtensionRule.INCLUSION, ExtensionRule.RESTRICTION):
            return base + (level - self.prefix_levels)
        if self.rule is ExtensionRule.REPEAT_LAST:
            return base
        raise ExtensionExhausted(level)

    def step(self, k: int) -> CanonicalHom:
        """Connecting hom between levels k and k+1 (direction depends on
        the orientation)."""
        if k < 1:
            raise PreconditionViolated(f"steps start at 1, got {k}")
        got = self._steps.get(k)
        if got is not None:
            return got
        if k < self.prefix_levels:
            raise ExtensionExhausted(k + 1)  # prefix declared without this step
        if self._step_fn is not None:
            value = self._step_fn(k)
        elif self.rule is ExtensionRule.NONE:
            raise ExtensionExhausted(k + 1)
        else:
            value = self._rule_step(k)
        self._check_step(k, value)
        self._steps[k] = value
        return value

    def materialized_levels(self) -> int:
        return max(self._dims)

    # structural certification of the whole chain, including the closed tail

    def _tail_step_certified(self, predicate: Callable[[CanonicalHom], bool]) -> bool:
        if self._step_fn is not None:
            return False  # arbitrary generators cannot be certified structurally
        if self.rule is ExtensionRule.NONE:
            return True
        if self.rule is ExtensionRule.REPEAT_LAST:
            return predicate(self.step(self.prefix_levels - 1))
        if self.rule is ExtensionRule.INCLUSION:
            return predicate(CanonicalHom.inclusion(1, 2))
        if self.rule is ExtensionRule.RESTRICTION:
            return predicate(CanonicalHom.restriction(2, 1))
        return False

    def _prefix_certified(self, predicate: Callable[[CanonicalHom], bool]) -> bool:
        return all(predicate(self.step(k)) for k in range(1, self.prefix_levels))

    def certify_all_injective(self) -> bool:
        """True when every step of the chain, materialized or not, is
        provably injective."""
        return self._prefix_certified(hom_mod.is_injective) and self._tail_step_certified(
            hom_mod.is_injective
        )

    def certify_all_surjective(self) -> bool:
        return self._prefix_certified(hom_mod.is_surjective) and self._tail_step_certified(
            hom_mod.is_surjective
        )

    def certify_all_interval_preserving(self) -> bool:
        return self._prefix_certified(hom_mod.is_interval_preserving) and self._tail_step_certified(
            hom_mod.is_interval_preserving
        )


class DirectSystem(_BaseSystem):
    """Forward chain: step k maps level k into level k+1."""

    kind = "direct"

    def _step_dims(self, k: int) -> tuple[int, int]:
        return self.dim(k), self.dim(k + 1)

    def _rule_step(self, k: int) -> CanonicalHom:
        if self.rule is ExtensionRule.INCLUSION:
            return CanonicalHom.inclusion(self.dim(k), self.dim(k + 1))
        if self.rule is ExtensionRule.REPEAT_LAST:
            return self.step(self.prefix_levels - 1)
        raise ExtensionExhausted(k + 1)

    def _rule_allowed(self, rule: ExtensionRule) -> bool:
        return rule in (ExtensionRule.NONE, ExtensionRule.INCLUSION, ExtensionRule.REPEAT_LAST)


class InverseSystem(_BaseSystem):
    """Backward chain: step k maps level k+1 onto level k."""

    kind = "inverse"

    def _step_dims(self, k: int) -> tuple[int, int]:
        return self.dim(k + 1), self.dim(k)

    def _rule_step(self, k: int) -> CanonicalHom:
        if self.rule is ExtensionRule.RESTRICTION:
            return CanonicalHom.restriction(self.dim(k + 1), self.dim(k))
        if self.rule is ExtensionRule.REPEAT_LAST:
            return self.step(self.prefix_levels - 1)
        raise ExtensionExhausted(k + 1)

    def _rule_allowed(self, rule: ExtensionRule) -> bool:
        return rule in (ExtensionRule.NONE, ExtensionRule.RESTRICTION, ExtensionRule.REPEAT_LAST)


def inclusion_chain(levels: int = 4, extend: ExtensionRule = ExtensionRule.INCLUSION) -> DirectSystem:
    """The chain Q^1 -> Q^2 -> ... by coordinate inclusion."""
    dims = list(range(1, levels + 1))
    steps = [CanonicalHom.inclusion(k, k + 1) for k in range(1, levels)]
    return DirectSystem(dims, steps, extend, name="inclusion-chain")


def restriction_chain(levels: int = 4, extend: ExtensionRule = ExtensionRule.RESTRICTION) -> InverseSystem:
    """The chain ... -> Q^2 -> Q^1 by dropping the last coordinate."""
    dims = list(range(1, levels + 1))
    steps = [CanonicalHom.restriction(k + 1, k) for k in range(1, levels)]
    return InverseSystem(dims, steps, extend, name="restriction-chain")


def connecting(s: DirectSystem, n: int, m: int) -> CanonicalHom:
    """Composite of the steps from level n up to level m (identity when
    n = m)."""
    if not isinstance(s, DirectSystem):
        raise SystemMismatch("connecting expects a direct system")
    if n > m:
        raise PreconditionViolated(f"need n <= m, got {n} > {m}")
    result = CanonicalHom.identity(s.dim(n))
    for k in range(n, m):
        result = compose(s.step(k), result)
    return result


def connecting_inv(s: InverseSystem, m: int, n: int) -> CanonicalHom:
    """Composite of the steps from level m down to level n (identity when
    m = n)."""
    if not isinstance(s, InverseSystem):
        raise SystemMismatch("connecting_inv expects an inverse system")
    if m < n:
        raise PreconditionViolated(f"need m >= n, got {m} < {n}")
    result = CanonicalHom.identity(s.dim(m))
    for k in range(m - 1, n - 1, -1):
        result = compose(s.step(k), result)
    return result


def classify(s: _BaseSystem, depth: int) -> Classification:
    """Conjunction of the per-step predicates over the steps among levels
    1..depth.  Monotone: flags can only switch from True to False as the
    depth grows."""
    if depth < 1:
        raise PreconditionViolated("depth must be at least 1")
    steps = [s.step(k) for k in range(1, depth)]
    return Classification(
        all_injective=all(hom_mod.is_injective(h) for h in steps),
        all_surjective=all(hom_mod.is_surjective(h) for h in steps),
        all_interval_preserving=all(hom_mod.is_interval_preserving(h) for h in steps),
        images_are_bands=all(hom_mod.image_band(h) is not None for h in steps),
    )


_DUAL_RULE = {
    ExtensionRule.NONE: ExtensionRule.NONE,
    ExtensionRule.INCLUSION: ExtensionRule.RESTRICTION,
    ExtensionRule.RESTRICTION: ExtensionRule.INCLUSION,
    ExtensionRule.REPEAT_LAST: ExtensionRule.REPEAT_LAST,
}


def dual_of_direct(s: DirectSystem) -> InverseSystem:
    """The inverse system of adjoints of the steps.

    Each adjoint must itself be a lattice homomorphism, which holds
    exactly when the step is interval preserving; otherwise
    :class:`NotLatticeHom` is raised at materialization.  The result is
    cached on the system so that all callers share one dual object.
    """
    if s._dual is None:
        prefix_dims = [s.dim(k) for k in range(1, s.prefix_levels + 1)]
        prefix_steps = [canonicalize(adjoint(s.step(k))) for k in range(1, s.prefix_levels)]
        if s._step_fn is not None or s._dim_fn is not None:
            dual = InverseSystem(
                prefix_dims,
                prefix_steps,
                ExtensionRule.NONE,
                dim_fn=s.dim,
                step_fn=lambda k: canonicalize(adjoint(s.step(k))),
                name=f"dual({s.name})" if s.name else "dual",
            )
        else:
            dual = InverseSystem(
                prefix_dims,
                prefix_steps,
                _DUAL_RULE[s.rule],
                name=f"dual({s.name})" if s.name else "dual",
            )
        s._dual = dual
    return s._dual


def dual_of_inverse(s: InverseSystem) -> DirectSystem:
    """The direct system of adjoints of the steps; cached like
    :func:`dual_of_direct`.  When every step is surjective the dual steps
    are injective, which is what the duality pipeline needs."""
    if s._dual is None:
        prefix_dims = [s.dim(k) for k in range(1, s.prefix_levels + 1)]
        prefix_steps = [canonicalize(adjoint(s.step(k))) for k in range(1, s.prefix_levels)]
        if s._step_fn is not None or s._dim_fn is not None:
            dual = DirectSystem(
                prefix_dims,
                prefix_steps,
                ExtensionRule.NONE,
                dim_fn=s.dim,
                step_fn=lambda k: canonicalize(adjoint(s.step(k))),
                name=f"dual({s.name})" if s.name else "dual",
            )
        else:
            dual = DirectSystem(
                prefix_dims,
                prefix_steps,
                _DUAL_RULE[s.rule],
                name=f"dual({s.name})" if s.name else "dual",
            )
        s._dual = dual
    return s._dual


@dataclass
class SystemMorphism:
    """Levelwise family of homs between same-index components of two
    systems of the same orientation."""

    source: _BaseSystem
    target: _BaseSystem
    levelwise: Callable[[int], CanonicalHom]

    def __post_init__(self):
        if self.source.kind != self.target.kind:
            raise SystemMismatch("source and target must have the same orientation")
        self._memo: dict[int, CanonicalHom] = {}

    def at(self, level: int) -> CanonicalHom:
        got = self._memo.get(level)
        if got is None:
            got = self.levelwise(level)
            expected = (self.source.dim(level), self.target.dim(level))
            if (got.dom_dim, got.cod_dim) != expected:
                raise DimensionMismatch(
                    f"morphism at level {level} must map dimension {expected[0]} to {expected[1]}"
                )
            self._memo[level] = got
        return got


def check_morphism(t: SystemMorphism, depth: int) -> None:
    """Verify the commuting squares among levels 1..depth exactly; raises
    :class:`SquareFails` at the first violation."""
    if depth < 1:
        raise PreconditionViolated("depth must be at least 1")
    for k in range(1, depth):
        if t.source.kind == "direct":
            lhs = compose(t.at(k + 1), t.source.step(k))
            rhs = compose(t.target.step(k), t.at(k))
        else:
            lhs = compose(t.at(k), t.source.step(k))
            rhs = compose(t.target.step(k), t.at(k + 1))
        if lhs != rhs:
            raise SquareFails(level=k)


# ---------------------------------------------------------------------------
# system files
# ---------------------------------------------------------------------------


def _weight_literal(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def _parse_weight(token: str, line: int) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line, f"bad rational literal {token!r}") from None
    return value


def parse_system(text: str) -> DirectSystem | InverseSystem:
    """Parse the line-oriented system file format.

    See :func:`emit_system` for the canonical layout.  ``#`` starts a
    comment anywhere on a line; blank lines are ignored.
    """
    lines: list[tuple[int, str]] = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((i, stripped))
    pos = 0

    def peek() -> tuple[int, str] | None:
        return lines[pos] if pos < len(lines) else None

    def take() -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 1
            raise ParseError(last, "unexpected end of file")
        item = lines[pos]
        pos += 1
        return item

    line, head = take()
    parts = head.split()
    if len(parts) != 2 or parts[0] != "system" or parts[1] not in ("direct", "inverse"):
        raise ParseError(line, "expected 'system direct' or 'system inverse'")
    is_direct = parts[1] == "direct"

    line, head = take()
    parts = head.split()
    if len(parts) != 2 or parts[0] != "levels":
        raise ParseError(line, "expected 'levels N'")
    try:
        levels = int(parts[1])
    except ValueError:
        raise ParseError(line, f"bad level count {parts[1]!r}") from None
    if levels < 1:
        raise ParseError(line, "level count must be at least 1")

    dims: list[int] = []
    for k in range(1, levels + 1):
        line, head = take()
        parts = head.split()
        if len(parts) != 3 or parts[0] != "dim":
            raise ParseError(line, f"expected 'dim {k} <n>'")
        if parts[1] != str(k):
            raise ParseError(line, f"expected dimension of level {k}, got level {parts[1]}")
        try:
            d = int(parts[2])
        except ValueError:
            raise ParseError(line, f"bad dimension {parts[2]!r}") from None
        if d < 1:
            raise ParseError(line, "dimensions must be positive")
        dims.append(d)

    steps: list[CanonicalHom] = []
    for k in range(1, levels):
        line, head = take()
        parts = head.split()
        if len(parts) != 3 or parts[0] != "map" or parts[1] != str(k) or parts[2] != str(k + 1):
            raise ParseError(line, f"expected 'map {k} {k + 1}'")
        dom = dims[k - 1] if is_direct else dims[k]
        cod = dims[k] if is_direct else dims[k - 1]
        weight = [Fraction(0)] * cod
        idx: list[Optional[int]] = [None] * cod
        seen: set[int] = set()
        for _ in range(cod):
            line, head = take()
            row_part, _, rest = head.partition(":")
            try:
                x = int(row_part.strip())
            except ValueError:
                raise ParseError(line, f"expected a row entry 'x: ...', got {head!r}") from None
            if not 1 <= x <= cod:
                raise ParseError(line, f"row {x} out of range 1..{cod}")
            if x in seen:
                raise ParseError(line, f"duplicate row {x}")
            seen.add(x)
            tokens = rest.split()
            if tokens == ["-"]:
                continue
            if len(tokens) != 2:
                raise ParseError(line, "expected 'x: j w' or 'x: -'")
            try:
                j = int(tokens[0])
            except ValueError:
                raise ParseError(line, f"bad column {tokens[0]!r}") from None
            if not 1 <= j <= dom:
                raise ParseError(line, f"column {j} out of range 1..{dom}")
            w = _parse_weight(tokens[1], line)
            if w < 0:
                raise ParseError(line, "weights must be nonnegative")
            if w == 0:
                raise ParseError(line, "zero-weight rows must be written 'x: -'")
            weight[x - 1] = w
            idx[x - 1] = j - 1
        steps.append(CanonicalHom(dom, cod, tuple(weight), tuple(idx)))

    rule = ExtensionRule.NONE
    nxt = peek()
    if nxt is not None:
        line, head = take()
        parts = head.split()
        if len(parts) != 2 or parts[0] != "extend":
            raise ParseError(line, "expected 'extend <rule>'")
        try:
            rule = ExtensionRule(parts[1])
        except ValueError:
            raise ParseError(line, f"unknown extension rule {parts[1]!r}") from None
        if peek() is not None:
            raise ParseError(peek()[0], "trailing content after 'extend'")

    cls = DirectSystem if is_direct else InverseSystem
    try:
        return cls(dims, steps, rule)
    except (PreconditionViolated, DimensionMismatch) as exc:
        raise ParseError(lines[-1][0] if lines else 1, str(exc)) from None


def emit_system(s: _BaseSystem, depth: int) -> str:
    """Canonical text form of the first ``depth`` levels.

    ``parse_system(emit_system(s, depth))`` agrees with ``s`` on those
    levels, and the round trip is byte-identical on files already in this
    layout."""
    if depth < 1:
        raise PreconditionViolated("depth must be at least 1")
    out: list[str] = [f"system {s.kind}", f"levels {depth}"]
    for k in range(1, depth + 1):
        out.append(f"dim {k} {s.dim(k)}")
    for k in range(1, depth):
        out.append(f"map {k} {k + 1}")
        step = s.step(k)
        for x in range(step.cod_dim):
            if step.idx[x] is None:
                out.append(f"  {x + 1}: -")
            else:
                out.append(f"  {x + 1}: {step.idx[x] + 1} {_weight_literal(step.weight[x])}")
    rule = s.rule if s._step_fn is None and s._dim_fn is None else ExtensionRule.NONE
    if depth < s.prefix_levels:
        # the emitted prefix is shorter than the declared one; a closed
        # rule would regenerate different maps, so pin the truncation
        rule = ExtensionRule.NONE if rule is ExtensionRule.REPEAT_LAST else rule
    out.append(f"extend {rule.value}")
    return "\n".join(out) + "\n"
