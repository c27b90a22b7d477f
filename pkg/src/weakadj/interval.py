"""Intervals, their composition and tensor, and homotopy of global elements."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .base import Base, BaseKind, VMap, VObj, base_of, compose, get_base, inverse
from .errors import LawViolation, PreconditionError


@dataclass(frozen=True)
class Interval:
    """A factorisation ``I + I --(d c)--> J --e--> I`` of the codiagonal."""

    J: VObj
    d: VMap
    c: VMap
    e: VMap

    @property
    def base(self) -> Base:
        return base_of(self.J)

    @property
    def d_elem(self) -> str:
        return self.base.point_of(self.d)

    @property
    def c_elem(self) -> str:
        return self.base.point_of(self.c)

    def swapped(self) -> "Interval":
        return Interval(self.J, self.c, self.d, self.e)


@dataclass(frozen=True)
class GlobalHomotopyWitness:
    """``h: J → X`` with ``h∘d = x`` and ``h∘c = y``."""

    interval: Interval
    h: VMap

    @property
    def source_point(self) -> str:
        return self.h.fn[self.interval.d_elem]

    @property
    def target_point(self) -> str:
        return self.h.fn[self.interval.c_elem]

    def verify(self, x: VMap, y: VMap) -> bool:
        iv = self.interval
        return (self.h.source == iv.J and compose(self.h, iv.d) == x
                and compose(self.h, iv.c) == y and not iv.base.validate_map(self.h))

    def verify_points(self, X, a: str, b: str) -> bool:
        base = self.interval.base
        return self.verify(base.point_map(X, a), base.point_map(X, b))

    def reversed(self) -> "GlobalHomotopyWitness":
        return GlobalHomotopyWitness(self.interval.swapped(), self.h)

    def then(self, other: "GlobalHomotopyWitness") -> "GlobalHomotopyWitness":
        """Composite witness ``x ∼ z`` from ``x ∼ y`` (self) and ``y ∼ z``."""
        iv = compose_intervals(self.interval, other.interval)
        base = self.interval.base
        P = iv.J
        h = base.pushout_induced(P, self.h, other.h)
        return GlobalHomotopyWitness(iv, h)

    def push(self, f: VMap) -> "GlobalHomotopyWitness":
        """Transport along ``f``: ``f∘x ∼ f∘y``."""
        return GlobalHomotopyWitness(self.interval, compose(f, self.h))

    def is_trivial(self) -> bool:
        """Whether ``h`` factors through ``e``."""
        iv = self.interval
        base = iv.base
        x = base.point_map(self.h.target, self.source_point)
        return compose(x, iv.e) == self.h


def interval_violations(iv: Interval) -> List[str]:
    base = iv.base
    unit = base.unit
    out = []
    for name, m in (("d", iv.d), ("c", iv.c), ("e", iv.e)):
        out.extend(f"{name}: {v}" for v in base.validate_map(m))
    if out:
        return out
    if iv.d.source != unit or iv.c.source != unit or iv.d.target != iv.J \
            or iv.c.target != iv.J or iv.e.source != iv.J or iv.e.target != unit:
        return ["maps are not typed I → J → I"]
    one = base.identity(unit)
    if compose(iv.e, iv.d) != one or compose(iv.e, iv.c) != one:
        out.append("e∘d or e∘c is not the identity of I")
    cop, _ = base.coproduct([unit, unit])
    dc = base.copair(cop, [iv.d, iv.c])
    if not base.classify(dc).cofibration:
        out.append("(d c): I+I → J is not a cofibration")
    we = base.classify(iv.e).weak_equivalence
    if not we:
        out.append("e is not a weak equivalence")
    tc = base.classify(iv.d).trivial_cofibration and base.classify(iv.c).trivial_cofibration
    if tc != we:
        out.append("d, c trivial cofibrations does not match e weak equivalence")
    return out


def validate_interval(iv: Interval) -> Interval:
    v = interval_violations(iv)
    if v:
        raise LawViolation("invalid interval", v)
    return iv


def standard_interval(base) -> Interval:
    base = get_base(base)
    if base.sliced:
        return base.standard_interval()
    unit = base.unit
    g = base.unit_gen
    if base.kind in (BaseKind.SET_TRIVIAL, BaseKind.POINTED):
        one = base.identity(unit)
        return Interval(unit, one, one, one)
    if base.kind is BaseKind.SET_SPLIT:
        J, (i0, i1) = base.coproduct([unit, unit])
        e = base.copair(J, [base.identity(unit), base.identity(unit)])
        return Interval(J, i0, i1, e)
    from .base import chaotic_category
    J = chaotic_category(["0", "1"])
    d = VMap(unit, J, {g: "0"})
    c = VMap(unit, J, {g: "1"})
    e = VMap(J, unit, {m: g for m in J.elements})
    return Interval(J, d, c, e)


def compose_intervals(j1: Interval, j2: Interval) -> Interval:
    """Glue ``j1``'s end to ``j2``'s start."""
    base = j1.base
    if j2.base is not base:
        raise PreconditionError("intervals over different bases")
    P, i1, i2 = base.pushout(j1.c, j2.d)
    e = base.pushout_induced(P, j1.e, j2.e)
    return Interval(P, compose(i1, j1.d), compose(i2, j2.c), e)


def tensor_intervals(j1: Interval, j2: Interval) -> Interval:
    base = j1.base
    if j2.base is not base:
        raise PreconditionError("intervals over different bases")
    lam = base.left_unitor(base.unit)
    lam_inv = inverse(lam)
    J = base.tensor(j1.J, j2.J)
    d = compose(base.tensor_map(j1.d, j2.d), lam_inv)
    c = compose(base.tensor_map(j1.c, j2.c), lam_inv)
    e = compose(lam, base.tensor_map(j1.e, j2.e))
    return Interval(J, d, c, e)


def homotopy_search(X, a: str, b: str, iv: Optional[Interval] = None
                    ) -> Optional[GlobalHomotopyWitness]:
    """First ``h: J → X`` with ``h d = a`` and ``h c = b`` (points of ``X``)."""
    base = base_of(X)
    iv = iv or standard_interval(base)
    if iv.d_elem == iv.c_elem:
        if a != b:
            return None
        cand = {iv.d_elem: [a]}
    else:
        cand = {iv.d_elem: [a], iv.c_elem: [b]}
    found = base.maps(iv.J, X, cand, limit=1)
    return GlobalHomotopyWitness(iv, found[0]) if found else None


def homotopic_global(x: VMap, y: VMap) -> Optional[GlobalHomotopyWitness]:
    """Decide ``x ∼ y`` for global elements ``x, y: I → X``."""
    if x.target != y.target or x.source != y.source:
        raise PreconditionError("global elements with different source/target")
    base = base_of(x.target)
    if x.source != base.unit:
        raise PreconditionError("not a global element")
    return homotopy_search(x.target, base.point_of(x), base.point_of(y))


def trivial_witness(X, a: str) -> GlobalHomotopyWitness:
    """The constant homotopy ``a∘e``."""
    base = base_of(X)
    iv = standard_interval(base)
    return GlobalHomotopyWitness(iv, compose(base.point_map(X, a), iv.e))
