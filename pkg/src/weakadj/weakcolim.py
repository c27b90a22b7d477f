"""Nerves and E-weak colimits.

A presheaf on ``D`` is a :class:`~weakadj.weights.Weight` on ``D^op``.  For
a diagram ``S: D → A`` a cocone ``η: W → A(S−, C)`` is an E-weak colimit
when every induced map ``A(C, X) → [D^op, V](W, A(S−, X))`` is shrinkable.
The same comparison is the one of an E-weak reflection of ``W`` along the
nerve ``X ↦ A(S−, X)``, and both readings are computed independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence

from .base import VMap, VObj, identity, tuple_label
from .errors import PreconditionError
from .shrink import ReflectionReport, ShrinkWitness, check_eweak_reflection, in_E
from .vcat import LazyHoms, VCategory, VFunctor, opposite
from .weights import Weight, family, nat_element, nat_object, representable

Presheaf = Weight


def op_shape(D: VCategory) -> VCategory:
    """``D^op``, built once per ``D`` so that presheaves share their shape."""
    op = D.meta.get("opposite")
    if op is None:
        op = opposite(D)
        op.meta["opposite"] = D
        D.meta["opposite"] = op
    return op


def presheaf(D: VCategory, at, act, name: str = "") -> Presheaf:
    """Presheaf on ``D``; ``act(d, d2, k, w)`` with ``k ∈ D(d2, d)`` acts
    ``W d → W d2``."""
    return Weight(op_shape(D), at, act, name=name)


def representable_presheaf(D: VCategory, d: str) -> Presheaf:
    """``D(−, d)``."""
    return representable(op_shape(D), d)


def cohom_presheaf(A: VCategory, S: VFunctor, C: str) -> Presheaf:
    """``A(S−, C)`` for ``S: D → A``."""
    D = S.source
    at = {d: A.hom(S(d), C) for d in D.objects}

    def act(d, d2, k, m):
        return A.compose(S(d2), S(d), C, m, S.on(d2, d, k))

    return presheaf(D, at, act, name=f"A(S-,{C})")


def presheaf_category(ws: Dict[str, Presheaf], name: str = "PSh",
                      restrict: Optional[Callable] = None) -> VCategory:
    """Sub-V-category of ``[D^op, V]`` on the named presheaves.

    Full by default.  ``restrict(a, b)`` may return, per ``d``, the maps
    ``W_a d → W_b d`` whose full sub-object replaces the internal hom; the
    caller is responsible for closure under composition.
    """
    if not ws:
        raise PreconditionError("no presheaves given")
    shape = next(iter(ws.values())).shape
    if any(w.shape is not shape for w in ws.values()):
        raise PreconditionError("presheaves on different shapes")
    base = shape.base
    def make(a, b):
        sub = restrict(a, b) if restrict is not None else None
        if sub is None:
            return nat_object(ws[a], ws[b])
        H = {d: base.partial_internal_hom(ws[a].at[d], ws[b].at[d], sub[d])
             for d in shape.objects}
        return nat_object(ws[a], ws[b], homs=H)

    homs = LazyHoms(ws, make)

    def composer(a, b, c, g, f):
        fg, ff = family(homs[(b, c)], g), family(homs[(a, b)], f)
        comps = {}
        for d in shape.objects:
            h_bc = homs[(b, c)].meta["factors"][shape.objects.index(d)]
            h_ab = homs[(a, b)].meta["factors"][shape.objects.index(d)]
            comps[d] = base.compose_elems(h_bc, h_ab, fg[d], ff[d])
        return nat_element(homs[(a, c)], comps)

    ident = LazyHoms(ws, lambda a: nat_element(
        homs[(a, a)], {d: base.hom_identity(ws[a].at[d]) for d in shape.objects}), unary=True)
    P = VCategory(base, ws, homs, composer, ident, name=name)
    P.meta["presheaves"] = dict(ws)
    return P


def nerve_label(X: str) -> str:
    return f"N({X})"


def nerve(S: VFunctor, extra: Optional[Dict[str, Presheaf]] = None,
          reduced: bool = False) -> VFunctor:
    """``N_S: A → [D^op, V]``, ``X ↦ A(S−, X)``, landing in the presheaf
    category on the nerves (and on the ``extra`` presheaves).

    With ``reduced=True`` the target keeps only what a reflection of an
    extra presheaf ``W`` along ``N_S`` reads: the full homs ``P(W, N X)``,
    homs ``P(N X, N Y)`` full on the image of ``A(X, Y)``, the identity of
    ``W`` and nothing from a nerve back to ``W``.  These homs are closed
    under composition, so this is a sub-V-category through which ``N_S``
    factors, with the same comparison maps.
    """
    A, D = S.target, S.source
    base = A.base
    ws = {nerve_label(X): cohom_presheaf(A, S, X) for X in A.objects}
    for k, w in (extra or {}).items():
        if k in ws:
            raise PreconditionError(f"presheaf name {k!r} clashes with a nerve")
        ws[k] = w
    nerves = {nerve_label(X): X for X in A.objects}

    def restrict(a, b):
        if not reduced or (a not in nerves and b in nerves):
            return None
        if a in nerves and b not in nerves:
            return {d: [] for d in D.objects}
        if a not in nerves:
            return {d: [identity(ws[a].at[d])] if a == b else [] for d in D.objects}
        X, Y = nerves[a], nerves[b]
        out = {}
        for d in D.objects:
            Sd = S(d)
            out[d] = [VMap(A.hom(Sd, X), A.hom(Sd, Y),
                           {m: A.compose(Sd, X, Y, g, m) for m in A.hom(Sd, X).elements})
                      for g in A.points(X, Y)]
        return out

    P = presheaf_category(ws, name=f"PSh({D.name})", restrict=restrict)

    def action(X, Y):
        z = A.hom(X, Y)
        N = P.hom(nerve_label(X), nerve_label(Y))
        tab = {}
        for g in z.elements:
            comps = {}
            for d in D.objects:
                Sd = S(d)
                comps[d] = base.curry_elem(
                    z, A.hom(Sd, X), A.hom(Sd, Y), g,
                    lambda zz, m, Sd=Sd: A.compose(Sd, X, Y, zz, m))
            tab[g] = nat_element(N, comps)
        return tab

    act = LazyHoms(A.objects, action)
    return VFunctor(A, P, {X: nerve_label(X) for X in A.objects}, act, name=f"N_{S.name}")


# ---------------------------------------------------------------------------
# E-weak colimits


@dataclass
class WeakColimitResult:
    apex: str
    cocone: str
    cocone_object: VObj
    comparisons: Dict[str, VMap] = field(default_factory=dict)
    verdicts: Dict[str, Optional[ShrinkWitness]] = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(v is not None for v in self.verdicts.values())

    @property
    def legs(self) -> Dict[str, str]:
        return family(self.cocone_object, self.cocone)


def cocone_object(W: Presheaf, S: VFunctor, C: str):
    """``[D^op, V](W, A(S−, C))``."""
    return nat_object(W, cohom_presheaf(S.target, S, C))


def colimit_comparison(W: Presheaf, S: VFunctor, C: str, eta: str, X: str,
                       NC=None, NX=None) -> VMap:
    """``A(C, X) → [D^op, V](W, A(S−, X))``, ``m ↦ m∘η``."""
    A, D = S.target, S.source
    base = A.base
    NC = NC if NC is not None else cocone_object(W, S, C)
    NX = NX if NX is not None else cocone_object(W, S, X)
    legs = family(NC, eta)
    src = A.hom(C, X)
    fn = {}
    for m in src.elements:
        comps = []
        for d in D.objects:
            Sd = S(d)
            H = base.internal_hom(W.at[d], A.hom(Sd, C))
            comps.append(base.curry_elem(
                src, W.at[d], A.hom(Sd, X), m,
                lambda z, w, Sd=Sd, H=H, d=d: A.compose(Sd, C, X, z, base.ev(H, legs[d], w))))
        lab = tuple_label(comps, base.pointed)
        if lab not in NX.index:
            raise PreconditionError("induced family is not natural")
        fn[m] = lab
    return VMap(src, NX, fn)


def is_eweak_colimit(W: Presheaf, S: VFunctor, C: str, eta: str,
                     strategy: str = "auto") -> WeakColimitResult:
    """Run ``in_E`` on the comparison at every object of ``A``."""
    if W.shape is not op_shape(S.source):
        raise PreconditionError("weight is not a presheaf on the diagram's shape")
    A = S.target
    base = A.base
    NC = cocone_object(W, S, C)
    if eta not in NC.index or eta not in base.points(NC):
        raise PreconditionError(f"{eta!r} is not a V-natural cocone W → A(S-,{C})")
    res = WeakColimitResult(C, eta, NC)
    for X in A.objects:
        NX = NC if X == C else cocone_object(W, S, X)
        m = colimit_comparison(W, S, C, eta, X, NC, NX)
        res.comparisons[X] = m
        res.verdicts[X] = in_E(base, m, strategy=strategy)
    return res


def reflection_reading(W: Presheaf, S: VFunctor, C: str, eta: str,
                       name: str = "W") -> ReflectionReport:
    """The same question as an E-weak reflection of ``W`` along ``N_S``."""
    U = nerve(S, extra={name: W}, reduced=True)
    return check_eweak_reflection(U, name, eta, C)


def duality_agrees(W: Presheaf, S: VFunctor, C: str, eta: str) -> bool:
    direct = is_eweak_colimit(W, S, C, eta)
    refl = reflection_reading(W, S, C, eta)
    return all((direct.verdicts[X] is None) == (refl.verdicts[X] is None)
               for X in S.target.objects)


def find_eweak_colimit(W: Presheaf, S: VFunctor, apexes: Optional[Sequence[str]] = None
                       ) -> Optional[WeakColimitResult]:
    """First apex and cocone (in label order) that is an E-weak colimit."""
    A = S.target
    for C in (apexes if apexes is not None else A.objects):
        NC = cocone_object(W, S, C)
        for eta in A.base.points(NC):
            r = is_eweak_colimit(W, S, C, eta)
            if r.overall:
                return r
    return None
