"""Enriched comma and slice categories."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .base import BASEPOINT, VMap, compose, tuple_label
from .errors import InternalInconsistency, LawViolation, PreconditionError
from .interval import GlobalHomotopyWitness
from .shrink import ShrinkWitness
from .vcat import (TERMINAL, BipolarCertificate, VCategory, VFunctor, identity_functor,
                   point_functor, validate_vcategory)


@dataclass
class CommaCategory:
    carrier: VCategory
    P: VFunctor
    Q: VFunctor
    theta: Dict[str, str]
    G: VFunctor
    U: VFunctor
    triples: Dict[str, Tuple[str, str, str]]
    legs: Dict[Tuple[str, str], Tuple[VMap, VMap]] = field(default_factory=dict)

    def object_of(self, c: str, alpha: str, b: str) -> str:
        return comma_label(c, alpha, b)

    def hom_legs(self, x: str, y: str) -> Tuple[VMap, VMap]:
        """The two maps whose pullback is ``hom(x, y)``."""
        return self.legs[(x, y)]


def comma_label(c: str, alpha: str, b: str) -> str:
    return f"({c},{alpha},{b})"


def comma(G: VFunctor, U: VFunctor, validate: bool = True, name: str = "") -> CommaCategory:
    """The comma V-category ``G/U`` of ``G: C → A`` and ``U: B → A``."""
    A = G.target
    if U.target is not A:
        raise PreconditionError("G and U must have a common codomain")
    C, B = G.source, U.source
    base = A.base
    triples: Dict[str, Tuple[str, str, str]] = {}
    for c in C.objects:
        for b in B.objects:
            for alpha in A.points(G(c), U(b)):
                lab = comma_label(c, alpha, b)
                if lab in triples:
                    raise LawViolation(f"object label collision {lab!r}")
                triples[lab] = (c, alpha, b)
    homs, legs, decode = {}, {}, {}
    for x, (c, al, b) in triples.items():
        for y, (c2, al2, b2) in triples.items():
            Gc, Gc2, Ub, Ub2 = G(c), G(c2), U(b), U(b2)
            target = A.hom(Gc, Ub2)
            gact = G.hom_action[(c, c2)]
            uact = U.hom_action[(b, b2)]
            m1 = VMap(C.hom(c, c2), target,
                      {u: A.compose(Gc, Gc2, Ub2, al2, gact[u]) for u in C.hom(c, c2).elements})
            m2 = VMap(B.hom(b, b2), target,
                      {v: A.compose(Gc, Ub, Ub2, uact[v], al) for v in B.hom(b, b2).elements})
            P_, p1, p2 = base.pullback(m1, m2)
            homs[(x, y)] = P_
            legs[(x, y)] = (m1, m2)
            decode[(x, y)] = (p1, p2)

    def composer(x, y, z, g, f):
        (c, _, b), (c2, _, b2), (c3, _, b3) = triples[x], triples[y], triples[z]
        g1, g2 = decode[(y, z)][0].fn[g], decode[(y, z)][1].fn[g]
        f1, f2 = decode[(x, y)][0].fn[f], decode[(x, y)][1].fn[f]
        return base.tuple_elem(homs[(x, z)], [C.compose(c, c2, c3, g1, f1),
                                               B.compose(b, b2, b3, g2, f2)])

    ident = {x: base.tuple_elem(homs[(x, x)], [C.ident[triples[x][0]], B.ident[triples[x][2]]])
             for x in triples}
    carrier = VCategory(base, triples.keys(), homs, composer, ident,
                        name=name or f"{G.name or 'G'}/{U.name or 'U'}")
    if validate:
        validate_vcategory(carrier)
    P = VFunctor(carrier, C, {x: t[0] for x, t in triples.items()},
                 {k: dict(v[0].fn) for k, v in decode.items()}, name="P")
    Q = VFunctor(carrier, B, {x: t[2] for x, t in triples.items()},
                 {k: dict(v[1].fn) for k, v in decode.items()}, name="Q")
    theta = {x: t[1] for x, t in triples.items()}
    return CommaCategory(carrier, P, Q, theta, G, U, triples, legs)


def object_comma(A: str, U: VFunctor, validate: bool = True) -> CommaCategory:
    """``A/U``: objects ``(∗, α: A → U b, b)``."""
    G = point_functor(U.target, A)
    return comma(G, U, validate, name=f"{A}/{U.name or 'U'}")


def slice(C: VCategory, A: str, validate: bool = True) -> CommaCategory:
    """``C/A``: objects ``(b, β: b → A, ∗)``."""
    return comma(identity_functor(C), point_functor(C, A), validate, name=f"{C.name}/{A}")


def slice_object(sl: CommaCategory, b: str, beta: str) -> str:
    return comma_label(b, beta, "*")


# ---------------------------------------------------------------------------
# shrinkable ⟺ bi-terminal in the slice


def shrink_to_biterminal(C: VCategory, sl: CommaCategory, w: ShrinkWitness) -> BipolarCertificate:
    """Certificate that ``(A, f)`` is bi-terminal in ``C/B`` built from a shrink witness.

    For ``(X, x)`` the arrow is ``s∘x`` and any ``g`` is linked to it by
    the homotopy ``h∘g`` lifted to the slice hom.
    """
    base = C.base
    A, B, f, s = w.A, w.B, w.f, w.section
    top = slice_object(sl, A, f)
    iv = w.interval
    arrows, wits = {}, {}
    for obj, (X, x, _) in sl.triples.items():
        hom = sl.carrier.hom(obj, top)
        star = sl.carrier.base.unit_gen

        def lift(u):
            return base.tuple_elem(hom, [u, star])

        arrows[obj] = lift(C.compose(X, B, A, s, x))
        for g in sl.carrier.points(obj, top):
            gC = sl.P.on(obj, top, g)
            fn = {}
            for j in iv.J.elements:
                u = C.compose(X, A, A, w.h.fn[j], gC)
                t = iv.e.fn[j]
                fn[j] = base.tuple_elem(hom, [u, t]) if u != BASEPOINT else BASEPOINT
            h = VMap(iv.J, hom, fn)
            wit = GlobalHomotopyWitness(iv, h).reversed()
            wits[(obj, g)] = wit
    return BipolarCertificate(top, TERMINAL, arrows, wits)


def biterminal_to_shrink(C: VCategory, sl: CommaCategory, cert: BipolarCertificate,
                         A: str, B: str, f: str) -> ShrinkWitness:
    """Shrink witness for ``f: A → B`` from a bi-terminality certificate of ``(A, f)``."""
    top = slice_object(sl, A, f)
    if cert.object != top or cert.direction != TERMINAL:
        raise PreconditionError("certificate is not for (A, f) as terminal")
    bottom = slice_object(sl, B, C.ident[B])
    s_el = cert.arrows[bottom]
    s = sl.P.on(bottom, top, s_el)
    sc = sl.carrier
    one = sc.ident[top]
    sf = sc.compose(top, bottom, top, s_el,
                    _slice_point(C, sl, top, bottom, f))
    w1 = cert.witnesses[(top, one)]   # chosen ∼ 1
    w2 = cert.witnesses[(top, sf)]    # chosen ∼ s f
    path = w1.reversed().then(w2)     # 1 ∼ s f
    h = compose(sl.P.hom_map(top, top), path.h)
    return ShrinkWitness(A, B, f, s, path.interval, h)


def _slice_point(C, sl, top, bottom, f):
    base = C.base
    return base.tuple_elem(sl.carrier.hom(top, bottom), [f, base.unit_gen])


# ---------------------------------------------------------------------------
# homotopies under and over an object (unit terminal)


def _require_terminal_unit(base):
    if not base.unit_is_terminal:
        raise PreconditionError("homotopy factorisation needs a terminal unit; use the sliced base")


def under_to_base(oc: CommaCategory, x: str, y: str, w: GlobalHomotopyWitness
                  ) -> GlobalHomotopyWitness:
    """A homotopy in ``A/U`` between ``x → y`` gives one in ``B`` whose image under
    ``U`` precomposed with the structure map of ``x`` is trivial."""
    _require_terminal_unit(oc.carrier.base)
    return w.push(oc.Q.hom_map(x, y))


def base_to_under(oc: CommaCategory, x: str, y: str, w: GlobalHomotopyWitness
                  ) -> Optional[GlobalHomotopyWitness]:
    """Lift ``h: J → B(b, b')`` to ``A/U`` when ``A(α, Ub')∘U∘h`` is trivial; else ``None``."""
    base = oc.carrier.base
    _require_terminal_unit(base)
    hom = oc.carrier.hom(x, y)
    star = base.unit_gen
    fn = {}
    for j, v in w.h.fn.items():
        lab = tuple_label((star, v), base.pointed)
        if lab not in hom.index:
            return None
        fn[j] = lab
    return GlobalHomotopyWitness(w.interval, VMap(w.interval.J, hom, fn))


def over_to_base(sl: CommaCategory, x: str, y: str, w: GlobalHomotopyWitness
                 ) -> GlobalHomotopyWitness:
    """A homotopy in ``C/A`` projected to ``C``; its composite with the target's
    structure map is trivial."""
    _require_terminal_unit(sl.carrier.base)
    return w.push(sl.P.hom_map(x, y))


def base_to_over(sl: CommaCategory, x: str, y: str, w: GlobalHomotopyWitness
                 ) -> Optional[GlobalHomotopyWitness]:
    base = sl.carrier.base
    _require_terminal_unit(base)
    hom = sl.carrier.hom(x, y)
    star = base.unit_gen
    fn = {}
    for j, u in w.h.fn.items():
        lab = tuple_label((u, star), base.pointed)
        if lab not in hom.index:
            return None
        fn[j] = lab
    return GlobalHomotopyWitness(w.interval, VMap(w.interval.J, hom, fn))


def trivial_after(w: GlobalHomotopyWitness, m: VMap) -> bool:
    """Whether ``m∘h`` factors through ``e``."""
    return w.push(m).is_trivial()


# ---------------------------------------------------------------------------
# limits in a comma category from limits downstairs


@dataclass
class CommaLimit:
    object: str
    phi: str
    limit: object
    preserved_by_P: bool
    preserved_by_Q: bool
    upstairs: List[object] = field(default_factory=list)

    def verify(self) -> bool:
        return self.limit.verify() and self.preserved_by_P and self.preserved_by_Q


def _composed(F: VFunctor, T: VFunctor, name: str = "") -> VFunctor:
    from .vcat import compose_functors
    out = compose_functors(F, T)
    out.name = name
    return out


def comma_limit(cm: CommaCategory, W, T: VFunctor, rS=None, rR=None) -> CommaLimit:
    """``({W,S}, φ, {W,R})`` for ``T: D → G/U`` with ``S = PT`` and ``R = QT``.

    ``φ`` is the map corresponding under the preserved limit ``U{W,R}`` to the
    cone ``θ_T ∘ G(λ)``.  The result is re-checked as a limit in the comma.
    """
    from .weights import check_limit_cone, preserves_limit, weighted_limit
    G, U = cm.G, cm.U
    A, C, B = G.target, G.source, U.source
    base = A.base
    D = W.shape
    S = _composed(cm.P, T, "PT")
    R = _composed(cm.Q, T, "QT")
    rS = rS or weighted_limit(W, S)
    rR = rR or weighted_limit(W, R)
    if rS is None or rR is None:
        raise PreconditionError("the limits downstairs do not exist in the fragment")
    rU = preserves_limit(U, rR)
    if rU is None:
        raise PreconditionError("U does not preserve the limit {W,R}")
    LS, LR = rS.apex, rR.apex
    GL = G(LS)
    comparison = rU.comparisons[GL]
    N = comparison.target
    comps = []
    for d in D.objects:
        cd, al, bd = cm.triples[T(d)]
        Hs = base.internal_hom(W.at[d], C.hom(LS, cd))
        Sd = S(d)
        gact = G.hom_action[(LS, Sd)]
        comps.append(base.curry_elem(
            Hs, W.at[d], A.hom(GL, U(bd)), rS.cone.legs[d],
            lambda z, w, Hs=Hs, al=al, gact=gact, Sd=Sd, bd=bd:
                A.compose(GL, G(Sd), U(bd), al, gact[base.ev(Hs, z, w)])))
    cone_el = tuple_label(comps, base.pointed)
    if cone_el not in N.index:
        raise InternalInconsistency("transported cone is not natural")
    inv = {v: u for u, v in comparison.fn.items()}
    # both nat objects are computed from the same data, so labels agree
    phi = inv[cone_el]
    obj = comma_label(LS, phi, LR)
    if obj not in cm.triples:
        raise InternalInconsistency("limit object missing from the comma")
    legs = []
    for d in D.objects:
        Hs = base.internal_hom(W.at[d], C.hom(LS, S(d)))
        Hr = base.internal_hom(W.at[d], B.hom(LR, R(d)))
        hom = cm.carrier.hom(obj, T(d))
        legs.append(base.curry_elem(
            Hs, W.at[d], hom, rS.cone.legs[d],
            lambda z, w, Hs=Hs, Hr=Hr, d=d, hom=hom: _pair(
                base, hom, base.ev(Hs, z, w), base.ev(Hr, rR.cone.legs[d], w))))
    pt = tuple_label(legs, base.pointed)
    r = check_limit_cone(W, T, obj, pt)
    if r is None:
        raise InternalInconsistency("transferred cone is not a limit in the comma")
    return CommaLimit(obj, phi, r, preserves_limit(cm.P, r) is not None,
                      preserves_limit(cm.Q, r) is not None, [rS, rR, rU])


def _pair(base, hom, u, v):
    return base.tuple_elem(hom, [u, v])
