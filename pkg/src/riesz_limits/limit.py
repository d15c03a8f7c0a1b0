"""Inverse-limit elements as lazily evaluated threads.

A thread assigns to every level a component vector; it belongs to the
inverse limit when each step maps the level-(k+1) component onto the
level-k component.  Threads are genuinely infinite objects, so the
library never claims more than it has checked: every thread carries a
``verified_depth`` up to which the defining identity has been confirmed,
and all claims about threads are certified on finite prefixes.

Components are memoized on first evaluation (an idempotent fill, safe
under concurrent readers); ``verified_depth`` only ever grows.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from .core import FinVector, scalar
from .errors import (
    CompatibilityError,
    DimensionMismatch,
    PreconditionViolated,
    SurjectivityRequired,
    SystemMismatch,
)
from .hom import CanonicalHom
from .system import InverseSystem, SystemMorphism, connecting_inv


class Thread:
    """Compatible-family candidate over an inverse system."""

    def __init__(self, system: InverseSystem, rule: Callable[[int], FinVector], name: str = ""):
        self.system = system
        self.rule = rule
        self.name = name
        self.verified_depth = 0
        self._memo: dict[int, FinVector] = {}

    def component(self, n: int) -> FinVector:
        got = self._memo.get(n)
        if got is None:
            got = self.rule(n)
            expected = self.system.dim(n)
            if got.dim != expected:
                raise DimensionMismatch(
                    f"component at level {n} must have dimension {expected}, got {got.dim}"
                )
            self._memo[n] = got
        return got

    def verify(self, depth: int) -> None:
        verify_thread(self, depth)

    def to_json(self, depth: Optional[int] = None) -> dict:
        depth = self.verified_depth if depth is None else depth
        data = {
            "depth": depth,
            "components": [self.component(k).to_json() for k in range(1, depth + 1)],
        }
        if self.name:
            data["rule"] = self.name
        return data


def thread_from_rule(s: InverseSystem, rule: Callable[[int], FinVector], name: str = "") -> Thread:
    """Wrap a level -> vector generator as an unverified thread."""
    return Thread(s, rule, name=name)


def constant_thread(s: InverseSystem, value) -> Thread:
    """The thread whose every coordinate is ``value`` (e.g. the all-ones
    thread of a restriction chain)."""
    c = scalar(value)
    return Thread(s, lambda n: FinVector((c,) * s.dim(n)), name=f"constant({c})")


def zero_thread(s: InverseSystem) -> Thread:
    return Thread(s, lambda n: FinVector.zero(s.dim(n)), name="zero")


def verify_thread(t: Thread, depth: int) -> None:
    """Check the defining identity step(k)(component(k+1)) = component(k)
    for k = 1..depth-1 and record the depth reached."""
    if depth < 1:
        raise PreconditionViolated("depth must be at least 1")
    for k in range(1, depth):
        if t.system.step(k).apply(t.component(k + 1)) != t.component(k):
            raise CompatibilityError(level=k)
    t.verified_depth = max(t.verified_depth, depth)


def projection(t: Thread, n: int) -> FinVector:
    return t.component(n)


def _section_of_step(step: CanonicalHom, v: FinVector) -> FinVector:
    """The positive right inverse of a surjective canonical hom: the read
    coordinate gets component/weight, everything else 0."""
    u = [scalar(0)] * step.dom_dim
    for x, (w, j) in enumerate(zip(step.weight, step.idx)):
        u[j] = v[x] / w
    return FinVector(tuple(u))


def section_thread(s: InverseSystem, n0: int, u: FinVector) -> Thread:
    """A thread through the prescribed component u at level n0.

    Below n0 the components are the images of u under the connecting
    maps; above n0 each component is obtained from the previous one by
    the zero-extension right inverse of the step.  Requires every step of
    the chain to be provably surjective."""
    if not s.certify_all_surjective():
        raise SurjectivityRequired("the chain has (or may have) a non-surjective step")
    if u.dim != s.dim(n0):
        raise DimensionMismatch(f"seed must have dimension {s.dim(n0)}, got {u.dim}")

    upward: dict[int, FinVector] = {n0: u}

    def rule(n: int) -> FinVector:
        if n <= n0:
            return connecting_inv(s, n0, n).apply(u)
        top = max(upward)
        while top < n:
            upward[top + 1] = _section_of_step(s.step(top), upward[top])
            top += 1
        return upward[n]

    return Thread(s, rule, name=f"section(level={n0})")


def _require_same_system(t: Thread, t2: Thread) -> None:
    if t.system is not t2.system:
        raise SystemMismatch("threads belong to different systems")


def _pointwise(t: Thread, t2: Thread, op: Callable[[FinVector, FinVector], FinVector], name: str) -> Thread:
    _require_same_system(t, t2)
    out = Thread(t.system, lambda n: op(t.component(n), t2.component(n)), name=name)
    # steps are lattice homomorphisms, so compatibility survives the
    # pointwise combination to the same depth
    out.verified_depth = min(t.verified_depth, t2.verified_depth)
    return out


def thread_join(t: Thread, t2: Thread) -> Thread:
    return _pointwise(t, t2, FinVector.join, "join")


def thread_meet(t: Thread, t2: Thread) -> Thread:
    return _pointwise(t, t2, FinVector.meet, "meet")


def thread_add(t: Thread, t2: Thread) -> Thread:
    return _pointwise(t, t2, FinVector.add, "add")


def thread_scale(factor, t: Thread) -> Thread:
    f = scalar(factor)
    out = Thread(t.system, lambda n: t.component(n).scale(f), name="scale")
    out.verified_depth = t.verified_depth
    return out


def thread_abs(t: Thread) -> Thread:
    return thread_join(t, thread_scale(-1, t))


def thread_equal_upto(t: Thread, t2: Thread, depth: int) -> bool:
    """Componentwise equality on levels 1..depth.  Full equality of
    lazily defined threads is undecidable; every claim is depth-bounded."""
    _require_same_system(t, t2)
    return all(t.component(k) == t2.component(k) for k in range(1, depth + 1))


def pointwise_sup(threads: Sequence[Thread]) -> Thread:
    """Componentwise supremum of finitely many threads."""
    if not threads:
        raise PreconditionViolated("need at least one thread")
    out = threads[0]
    for t in threads[1:]:
        out = thread_join(out, t)
    return out


def map_thread(t_mor: SystemMorphism, t: Thread) -> Thread:
    """The induced map between inverse limits applied componentwise."""
    if t.system is not t_mor.source:
        raise SystemMismatch("thread does not belong to the morphism's source system")
    if t_mor.source.kind != "inverse":
        raise SystemMismatch("threads live over inverse systems")
    return Thread(t_mor.target, lambda n: t_mor.at(n).apply(t.component(n)), name="mapped")
