"""Bi-initial objects from weakly initial families, and E-weak reflections.

The constructions follow the existence proofs step by step: the limit of
the inclusion of the family by an enough-weight gives the candidate, its
projections and homotopy triangles give existence, and uniqueness is
produced from an isoinserter and the homotopy ``v∘p_C ≅ 1``.  Every result
is re-checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .base import BaseKind, VMap, compose, identity
from .comma import CommaCategory, comma_label, object_comma
from .errors import BudgetExceeded, InternalInconsistency, PreconditionError
from .interval import GlobalHomotopyWitness, Interval, homotopy_search, trivial_witness
from .shrink import ReflectionReport, ShrinkWitness, check_eweak_reflection, comparison_map, in_E
from .vcat import (INITIAL, BipolarCertificate, VCategory, VFunctor, full_sub, inclusion,
                   is_bipolar, vhomotopic)
from .weights import (EnoughWeight, LimitResult, WeightMap, canonical_enough_weight, family,
                      hom_weight, induced_comparison, isoinserter, nat_object,
                      nat_postcompose, name_transformation, power, preserves_limit,
                      pseudo_limit, transformation)


class MissingLimit(PreconditionError):
    """A limit demanded by the construction does not exist in the fragment."""


@dataclass
class BiinitialResult:
    L: str
    family: Tuple[str, ...]
    projections: Dict[str, str]
    triangles: Dict[Tuple[str, str, str], GlobalHomotopyWitness]
    certificate: BipolarCertificate
    independent: Optional[BipolarCertificate]
    enough: Optional[EnoughWeight] = None
    limit: object = None
    instances: List[Tuple] = field(default_factory=list)

    def verify(self, c: VCategory) -> bool:
        return self.certificate.verify(c) and self.independent is not None \
            and self.independent.verify(c)


def weakly_initial_failure(c: VCategory, fam: Sequence[str]) -> Optional[str]:
    for x in c.objects:
        if not any(c.points(f, x) for f in fam):
            return x
    return None


def small_weakly_initial_family(c: VCategory) -> List[str]:
    """A weakly initial family chosen greedily by how many objects each
    member reaches (a single object when one suffices)."""
    reach = {f: {x for x in c.objects if c.points(f, x)} for f in c.objects}
    left, fam = set(c.objects), []
    while left:
        best = max(c.objects, key=lambda f: (len(reach[f] & left), -c.objects.index(f)))
        if not reach[best] & left:
            break
        fam.append(best)
        left -= reach[best]
    return fam


def _projections_weighted(B, fam, ew, r):
    """``p_C = ev(leg_C, q_C)`` and the triangle homotopies in ``Q(D)``."""
    base = B.base
    Q = ew.Q
    L = r.apex
    proj, tri = {}, {}
    legs = {}
    for C in fam:
        H = base.internal_hom(Q.at[C], B.hom(L, C))
        legs[C] = base.unname(H, r.cone.legs[C])
        proj[C] = legs[C].fn[ew.sections[C]]
    for C in fam:
        for D in fam:
            for f in B.points(C, D):
                src = Q.act(C, D, f, ew.sections[C])
                w = homotopy_search(Q.at[D], src, ew.sections[D])
                if w is None:
                    raise InternalInconsistency(
                        f"no homotopy in Q({D}) between {src!r} and the chosen section")
                tri[(C, D, f)] = w.push(legs[D])
    return proj, tri, legs


def _projections_pseudo(B, fam, r):
    base = B.base
    proj = dict(r.legs)
    from .interval import standard_interval
    iv = standard_interval(base)
    tri = {}
    for C in fam:
        for D in fam:
            for f in B.points(C, D):
                hom = B.hom(r.apex, D)
                a = B.compose(r.apex, C, D, f, proj[C])
                if (C, D, f) in r.coherence:
                    psi = r.coherence[(C, D, f)]
                else:
                    psi = a
                inv = hom.inverse_of(psi)
                h = VMap(iv.J, hom, {"0": a, "1": proj[D], "0>1": psi, "1>0": inv})
                tri[(C, D, f)] = GlobalHomotopyWitness(iv, h)
    return proj, tri


def _weighted_projection_homotopy(B, ew, r, C, v, legs) -> GlobalHomotopyWitness:
    """``1_L ≅ v∘p_C`` for ``v: C → L`` via ``s_C∘k ≅ 1_Q`` in ``[G,V](Q,Q)``."""
    Q = ew.Q
    G = Q.shape
    L = r.apex
    comps = {}
    for D in G.objects:
        fn = {}
        for q in Q.at[D].elements:
            k = B.compose(C, L, D, legs[D].fn[q], v)
            fn[q] = Q.act(C, D, k, ew.sections[C])
        comps[D] = VMap(Q.at[D], Q.at[D], fn)
    theta = WeightMap(Q, Q, comps)
    if theta.violations():
        raise InternalInconsistency("s_C∘k is not natural")
    N = nat_object(Q, Q)
    one = name_transformation(N, WeightMap(Q, Q, {D: identity(Q.at[D]) for D in G.objects}))
    th = name_transformation(N, theta)
    w = homotopy_search(N, one, th)
    if w is None:
        raise InternalInconsistency("s_C∘k is not homotopic to the identity of Q")
    NL = r.nat_objects[L]
    eta = transformation(NL, r.cone.point)
    post = nat_postcompose(N, eta, NL)
    phi = compose(VMap(NL, B.hom(L, L), dict(r.inverses[L])), post)
    out = w.push(phi)
    p_C = legs[C].fn[ew.sections[C]]
    if out.target_point != B.compose(L, C, L, v, p_C) or out.source_point != B.ident[L]:
        raise InternalInconsistency("limit functoriality does not give v∘p_C")
    return out


def _sliced_pointed_guard(base):
    if not base.unit_is_terminal:
        raise PreconditionError("bi-initial objects need a terminal unit; use the sliced base")


def find_biinitial(B: VCategory, fam: Sequence[str], iv: Optional[Interval] = None
                   ) -> BiinitialResult:
    """Bi-initial ``L = {Q, J}`` for the inclusion ``J`` of a weakly initial family."""
    base = B.base
    _sliced_pointed_guard(base)
    fam = tuple(sorted(set(fam)))
    bad = weakly_initial_failure(B, fam)
    if bad is not None:
        raise PreconditionError(f"family is not weakly initial: nothing maps to {bad!r}")
    G = full_sub(B, fam, name="G")
    Jf = inclusion(G, B)
    instances = []
    pseudo = base.model_kind is BaseKind.CAT
    if pseudo:
        r = pseudo_limit(Jf)
        if r is None:
            raise MissingLimit("the pseudo-limit of the family does not exist in the fragment")
        L = r.apex
        proj, tri = _projections_pseudo(B, fam, r)
        legs = None
        ew = None
        instances.append(("pseudo-limit", fam, L))
    else:
        ew = canonical_enough_weight(base, G)
        if not ew.verify():
            raise InternalInconsistency("canonical enough weight failed its own checks")
        r = _limit(ew.Q, Jf)
        if r is None:
            raise MissingLimit("the enough-weight limit of the family does not exist")
        L = r.apex
        proj, tri, legs = _projections_weighted(B, fam, ew, r)
        instances.append(("enough-weight limit", fam, L))
    arrows, wits = {}, {}
    for X in B.objects:
        C = next(c for c in fam if B.points(c, X))
        f0 = B.points(C, X)[0]
        f = B.compose(L, C, X, f0, proj[C])
        arrows[X] = f
        for g in B.points(L, X):
            if g == f:
                wits[(X, g)] = trivial_witness(B.hom(L, X), f)
                continue
            ins = isoinserter(B, L, X, f, g, iv)
            if ins is None:
                raise MissingLimit(f"isoinserter of {f!r}, {g!r}: {L} → {X} does not exist")
            instances.append(("isoinserter", (L, X, f, g), ins.apex))
            K, k = ins.apex, ins.k
            C2 = next(c for c in fam if B.points(c, K))
            u = B.points(C2, K)[0]
            v = B.compose(C2, K, L, k, u)
            vp = B.compose(L, C2, L, v, proj[C2])
            if pseudo:
                lem = vhomotopic(B, L, L, B.ident[L], vp)
                if lem is None:
                    raise InternalInconsistency("v∘p_C is not homotopic to the identity")
            else:
                lem = _weighted_projection_homotopy(B, ew, r, C2, v, legs)
            up = B.compose(L, C2, K, u, proj[C2])
            a = lem.push(B.post(L, L, X, f))
            b = ins.witness.push(B.pre(L, K, X, up))
            c = lem.reversed().push(B.post(L, L, X, g))
            w = a.then(b).then(c)
            if not w.verify_points(B.hom(L, X), f, g):
                raise InternalInconsistency("composite uniqueness homotopy does not check")
            wits[(X, g)] = w
    cert = BipolarCertificate(L, INITIAL, arrows, wits)
    if not cert.verify(B):
        raise InternalInconsistency("constructed bi-initiality certificate fails")
    indep = is_bipolar(B, L, INITIAL)
    if indep is None:
        raise InternalInconsistency("independent check rejects the constructed bi-initial object")
    return BiinitialResult(L, fam, proj, tri, cert, indep, ew, r, instances)


def _limit(Q, Jf) -> Optional[LimitResult]:
    from .weights import weighted_limit
    return weighted_limit(Q, Jf)


# ---------------------------------------------------------------------------
# E-weak reflections


@dataclass
class WeakReflection:
    A: str
    A_prime: str
    eta: str
    report: ReflectionReport
    biinitial: BiinitialResult
    comma: CommaCategory
    powers_preserved: Dict[str, bool] = field(default_factory=dict)

    @property
    def instances(self):
        return self.biinitial.instances


def comma_for(A: str, U: VFunctor) -> Tuple[CommaCategory, VCategory]:
    """``A/U`` and the V-category the construction runs in (sliced when ``I ≠ 1``)."""
    base = U.source.base
    if base.unit_is_terminal:
        oc = object_comma(A, U)
        return oc, oc.carrier
    from .slicebase import augmented_object_comma
    return augmented_object_comma(A, U)


def _family_labels(oc: CommaCategory, solution_set) -> List[str]:
    out = []
    for s in solution_set:
        if isinstance(s, tuple):
            b, alpha = s
            s = comma_label("*", alpha, b)
        if s not in oc.triples:
            raise PreconditionError(f"{s!r} is not an object of the comma category")
        out.append(s)
    return out


def powers_preserved(U: VFunctor, A_prime: str) -> Dict[str, Optional[bool]]:
    """Whether ``B(A',B) ⋔ B`` exists and ``U`` preserves it, per ``B``
    (``None`` when the check does not fit in the budget)."""
    B = U.source
    out: Dict[str, Optional[bool]] = {}
    for b in B.objects:
        try:
            p = power(B, B.hom(A_prime, b), b)
            out[b] = p is not None and preserves_limit(U, p.limit) is not None
        except BudgetExceeded:
            out[b] = None
    return out


def eweak_reflection(U: VFunctor, A: str, solution_set: Optional[Sequence] = None
                     ) -> WeakReflection:
    """``η: A → U A'`` from the bi-initial object of ``A/U``, then re-verified."""
    oc, carrier = comma_for(A, U)
    if solution_set is not None:
        fam = _family_labels(oc, solution_set)
    else:
        fam = small_weakly_initial_family(carrier)
    if not fam:
        raise PreconditionError("empty solution set")
    bi = find_biinitial(carrier, fam)
    _, eta, A2 = oc.triples[bi.L]
    report = check_eweak_reflection(U, A, eta, A2)
    pw: Dict[str, Optional[bool]] = {}
    if not report.overall and U.source.base.unit_is_terminal:
        # success is guaranteed once U preserves the powers involved
        pw = powers_preserved(U, A2)
        if all(v is True for v in pw.values()):
            raise InternalInconsistency(
                f"bi-initial {bi.L} is not an E-weak reflection although powers are preserved")
    return WeakReflection(A, A2, eta, report, bi, oc, pw)


def singleton_is_solution_set(U: VFunctor, refl: WeakReflection) -> bool:
    oc = refl.comma
    lab = comma_label("*", refl.eta, refl.A_prime)
    return weakly_initial_failure(oc.carrier, [lab]) is None


# ---------------------------------------------------------------------------
# the comparison map as a bi-terminal object, by power transposition


def _transpose_problem(U, refl, B, Z, alpha: VMap):
    """``f: Z → B(A',B)`` with ``(UA'→UB)∘η∘f = alpha``, and the data used."""
    Bcat = U.source
    base = Bcat.base
    A = refl.A
    P = power(Bcat, Z, B)
    if P is None:
        raise MissingLimit(f"power of {B!r} by a hom-object is missing")
    UP = preserves_limit(U, P.limit)
    if UP is None:
        raise PreconditionError(f"U does not preserve the power of {B!r}")
    N = UP.comparisons[A].target
    name_a = base.name(alpha)
    target = base.tuple_elem(N, [name_a])
    inv = {v: u for u, v in UP.comparisons[A].fn.items()}
    a_sharp = inv[target]
    obj = comma_label("*", a_sharp, P.apex)
    return P, obj


def verify_biterm_value(U: VFunctor, refl: WeakReflection, B: str) -> ShrinkWitness:
    """Shrink witness for the comparison ``B(A',B) → A(A,UB)`` built by transposing
    through powers and reading off the bi-initial certificate."""
    Bcat = U.source
    base = Bcat.base
    if not base.unit_is_terminal:
        raise PreconditionError("power transposition is implemented for a terminal unit")
    oc = refl.comma
    cert = refl.biinitial.certificate
    c = comparison_map(U, refl.A, refl.A_prime, refl.eta, B)
    X, Y = c.source, c.target
    L = refl.biinitial.L

    def solve(Z, alpha):
        P, obj = _transpose_problem(U, refl, B, Z, alpha)
        return P, obj

    # section: the problem with alpha = 1_Y
    P1, obj1 = solve(Y, identity(Y))
    fs = oc.Q.on(L, obj1, cert.arrows[obj1])
    s = base.unname(P1.evidence(refl.A_prime).target, P1.evidence(refl.A_prime).fn[fs])
    if compose(c, s) != identity(Y):
        raise InternalInconsistency("transposed section is not a section")
    # homotopy 1_X ≅ s∘c over Y: both are solutions of the problem alpha = c
    P2, obj2 = solve(X, c)
    ev2 = P2.evidence(refl.A_prime)
    inv2 = {v: u for u, v in ev2.fn.items()}
    sc = compose(s, c)
    g1 = base.tuple_elem(oc.carrier.hom(L, obj2), ["*", inv2[base.name(identity(X))]])
    g2 = base.tuple_elem(oc.carrier.hom(L, obj2), ["*", inv2[base.name(sc)]])
    w = cert.witnesses[(obj2, g1)].reversed().then(cert.witnesses[(obj2, g2)])
    w = w.push(oc.Q.hom_map(L, obj2)).push(ev2)
    from .shrink import _fragment
    frag = _fragment(base, c)
    h = VMap(w.interval.J, frag.hom("X", "X"), dict(w.h.fn))
    wit = ShrinkWitness("X", "Y", base.name(c), base.name(s), w.interval, h)
    v = wit.violations(frag)
    if v:
        raise InternalInconsistency(f"transposed shrink witness fails: {v}")
    if in_E(base, c) is None:
        raise InternalInconsistency("search disagrees with the transposed witness")
    return wit


# ---------------------------------------------------------------------------
# homotopy limits


def preserves_homotopy_qlimits(U: VFunctor, Q, S: VFunctor, L: str, cone: str,
                               adjoint: Dict[str, ReflectionReport]) -> Dict[str, bool]:
    """Per object ``A``: is ``A(A, UL) → [D,V](Q, A(A, US−))`` a weak equivalence."""
    from .weights import cofibrancy_certificate
    if any(a not in adjoint or not adjoint[a].overall for a in U.target.objects):
        raise PreconditionError("a verified E-weak left adjoint is required on every object")
    if cofibrancy_certificate(Q) is None:
        raise PreconditionError("weight has no cofibrancy certificate")
    Bcat, Acat = U.source, U.target
    base = Bcat.base
    from .vcat import compose_functors
    US = compose_functors(U, S)
    NL = nat_object(Q, hom_weight(Bcat, L, S))
    if cone not in NL.index:
        raise PreconditionError("cone is not a point of the cone object")
    legs = {}
    for d, phi in family(NL, cone).items():
        H = base.internal_hom(Q.at[d], Bcat.hom(L, S(d)))
        act = U.hom_action[(L, S(d))]
        legs[d] = base.curry_elem(H, Q.at[d], Acat.hom(U(L), U(S(d))), phi,
                                  lambda z, w, H=H, act=act: act[base.ev(H, z, w)])
    out = {}
    for a in Acat.objects:
        N = nat_object(Q, hom_weight(Acat, a, US))
        m = induced_comparison(Acat, Q, US, U(L), legs, a, N)
        out[a] = m is not None and base.classify(m).weak_equivalence
    return out


def is_homotopy_limit(Q, S: VFunctor, L: str, cone: str) -> Dict[str, bool]:
    """Per object ``B``: is ``B(B,L) → [D,V](Q, B(B,S−))`` a weak equivalence."""
    Bcat = S.target
    base = Bcat.base
    NL = nat_object(Q, hom_weight(Bcat, L, S))
    legs = family(NL, cone)
    out = {}
    for b in Bcat.objects:
        N = nat_object(Q, hom_weight(Bcat, b, S))
        m = induced_comparison(Bcat, Q, S, L, legs, b, N)
        out[b] = m is not None and base.classify(m).weak_equivalence
    return out
