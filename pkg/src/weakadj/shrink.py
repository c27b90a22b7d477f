"""Shrinkable morphisms, the class E, and E-weak reflections."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .base import VMap, base_of, compose, get_base, identity
from .errors import InternalInconsistency, PreconditionError
from .interval import Interval, compose_intervals, standard_interval
from .vcat import VCategory, VFunctor, self_enriched, vcategory_violations


@dataclass
class ShrinkWitness:
    """Section ``s`` of ``f: A → B`` and an ``f``-trivial homotopy ``h: 1_A ≅ s∘f``."""

    A: str
    B: str
    f: str
    section: str
    interval: Interval
    h: VMap
    fragment: Optional[VCategory] = field(default=None, compare=False, repr=False)

    def violations(self, c: VCategory):
        base = c.base
        A, B, f, s = self.A, self.B, self.f, self.section
        iv = self.interval
        out = []
        if f not in c.points(A, B) or s not in c.points(B, A):
            return ["f or s is not a morphism"]
        if c.compose(B, A, B, f, s) != c.ident[B]:
            out.append("f∘s is not the identity")
        if self.h.source != iv.J or self.h.target != c.hom(A, A) or base.validate_map(self.h):
            return out + ["h is not a map J → C(A,A)"]
        if self.h.fn[iv.d_elem] != c.ident[A]:
            out.append("h∘d is not the identity of A")
        if self.h.fn[iv.c_elem] != c.compose(A, B, A, s, f):
            out.append("h∘c is not s∘f")
        post = c.post(A, A, B, f)
        if compose(post, self.h) != compose(base.point_map(c.hom(A, B), f), iv.e):
            out.append("C(A,f)∘h is not f∘e")
        return out

    def verify(self, c: VCategory) -> bool:
        return not self.violations(c)


def shrinkable_witness(c: VCategory, A: str, B: str, f: str,
                       interval: Optional[Interval] = None) -> Optional[ShrinkWitness]:
    """Least section then least ``f``-trivial homotopy over the canonical interval."""
    base = c.base
    if f not in c.points(A, B):
        raise PreconditionError(f"{f!r} is not a morphism {A} → {B}")
    iv = interval or standard_interval(base)
    hAA = c.hom(A, A)
    post = {u: c.compose(A, A, B, f, u) for u in hAA.elements}
    fe = {j: (f if v == base.unit_gen else v) for j, v in iv.e.fn.items()}
    # for the pointed unit the basepoint of I maps to the basepoint
    for s in c.points(B, A):
        if c.compose(B, A, B, f, s) != c.ident[B]:
            continue
        sf = c.compose(A, B, A, s, f)
        cand = {}
        for j in iv.J.elements:
            allowed = [u for u in hAA.elements if post[u] == fe[j]]
            if j == iv.d_elem:
                allowed = [u for u in allowed if u == c.ident[A]]
            if j == iv.c_elem:
                allowed = [u for u in allowed if u == sf]
            cand[j] = allowed
        found = base.maps(iv.J, hAA, cand, limit=1)
        if found:
            return ShrinkWitness(A, B, f, s, iv, found[0])
    return None


def compose_shrink_witnesses(c: VCategory, w1: ShrinkWitness, w2: ShrinkWitness) -> ShrinkWitness:
    """Witness for ``g∘f`` from witnesses for ``f: A → B`` and ``g: B → C``."""
    A, B, C = w1.A, w1.B, w2.B
    if w2.A != B:
        raise PreconditionError("witnesses are not composable")
    s1, s2, f, g = w1.section, w2.section, w1.f, w2.f
    gf = c.compose(A, B, C, g, f)
    s = c.compose(C, B, A, s1, s2)
    # whisker h2: J2 → C(B,B) to s1∘h2∘f: J2 → C(A,A)
    wh = {j: c.compose(A, B, A, s1, c.compose(A, B, B, u, f)) for j, u in w2.h.fn.items()}
    h2 = VMap(w2.interval.J, c.hom(A, A), wh)
    base = c.base
    iv = compose_intervals(w1.interval, w2.interval)
    h = base.pushout_induced(iv.J, w1.h, h2)
    return ShrinkWitness(A, C, gf, s, iv, h)


def transport_shrink_witness(F: VFunctor, w: ShrinkWitness) -> ShrinkWitness:
    FA, FB = F(w.A), F(w.B)
    return ShrinkWitness(FA, FB, F.on(w.A, w.B, w.f), F.on(w.B, w.A, w.section), w.interval,
                         compose(F.hom_map(w.A, w.A), w.h))


def _fragment(base, f: VMap) -> VCategory:
    return self_enriched(base, {"X": f.source, "Y": f.target}, name="V-fragment")


def generated_fragment(base, f: VMap, s: VMap) -> VCategory:
    """Sub-V-category of V on ``X, Y`` generated by ``f: X → Y`` and a section
    ``s``.  Its homs are the full sub-objects of the internal homs on
    ``{1, s∘f}``, ``{f}``, ``{s}`` and ``{1}``, which are closed under
    composition because ``f∘s = 1``."""
    X, Y = f.source, f.target
    objs = {"X": X, "Y": Y}
    gens = {("X", "X"): [identity(X), compose(s, f)], ("X", "Y"): [f],
            ("Y", "X"): [s], ("Y", "Y"): [identity(Y)]}
    homs = {k: base.partial_internal_hom(objs[k[0]], objs[k[1]], v) for k, v in gens.items()}

    def composer(a, b, c, g, h):
        return base.compose_elems(homs[(b, c)], homs[(a, b)], g, h)

    ident = {a: base.hom_identity(objs[a]) for a in objs}
    frag = VCategory(base, objs, homs, composer, ident, name="V-fragment(f,s)")
    frag.meta["carriers"] = objs
    frag.meta["section"] = s
    return frag


def _sections(base, f: VMap):
    X, Y = f.source, f.target
    fib = {y: [x for x in X.elements if f.fn[x] == y] for y in Y.elements}
    return base.maps(Y, X, fib)


# fragments whose endomorphism object would exceed this are not built in full
FULL_FRAGMENT_LIMIT = 4096


def _full_size(f: VMap) -> int:
    n = max(len(f.source.elements), len(f.target.elements))
    return n ** n


def in_E(base, f: VMap, check_closed_form: bool = True, strategy: str = "auto"
         ) -> Optional[ShrinkWitness]:
    """Shrinkability of ``f`` inside V, cross-checked against the closed form.

    ``strategy="full"`` searches the full sub-V-category of V on the source
    and target; ``"generated"`` searches sections first and then homotopies
    in :func:`generated_fragment`.  ``"auto"`` picks the full search when
    it is small.
    """
    base = get_base(base) if base is not None else base_of(f.source)
    if strategy == "auto":
        small = base.sliced or _full_size(f) <= FULL_FRAGMENT_LIMIT
        strategy = "full" if small else "generated"
    w = None
    if strategy == "full":
        frag = _fragment(base, f)
        w = shrinkable_witness(frag, "X", "Y", base.name(f))
    else:
        for s in _sections(base, f):
            frag = generated_fragment(base, f, s)
            w = shrinkable_witness(frag, "X", "Y", base.name(f))
            if w is not None:
                w.fragment = frag
                break
    if check_closed_form:
        closed = base.in_e_closed_form(f)
        if closed != (w is not None):
            raise InternalInconsistency(
                f"shrinkability search ({w is not None}) disagrees with closed form ({closed})")
    return w


def verify_in_E(base, f: VMap, w: ShrinkWitness) -> bool:
    base = get_base(base) if base is not None else base_of(f.source)
    if w.f != base.name(f):
        return False
    if w.fragment is None:
        return w.verify(_fragment(base, f))
    frag = generated_fragment(base, f, base.unname(w.fragment.hom("Y", "X"), w.section))
    return not vcategory_violations(frag) and w.verify(frag)


def comparison_map(U: VFunctor, A: str, A_prime: str, eta: str, B: str) -> VMap:
    """``B(A',B) → A(UA',UB) → A(A,UB)``: apply ``U`` then precompose with ``eta``."""
    Acat = U.target
    UA2, UB = U(A_prime), U(B)
    if eta not in Acat.points(A, UA2):
        raise PreconditionError("eta is not a morphism A → U A'")
    src = U.source.hom(A_prime, B)
    act = U.hom_action[(A_prime, B)]
    fn = {t: Acat.compose(A, UA2, UB, act[t], eta) for t in src.elements}
    return VMap(src, Acat.hom(A, UB), fn)


@dataclass
class ReflectionReport:
    A: str
    A_prime: str
    eta: str
    verdicts: Dict[str, Optional[ShrinkWitness]] = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(v is not None for v in self.verdicts.values())

    @property
    def first_failure(self) -> Optional[str]:
        for b, v in self.verdicts.items():
            if v is None:
                return b
        return None


def check_eweak_reflection(U: VFunctor, A: str, eta: str, A_prime: str) -> ReflectionReport:
    base = U.source.base
    rep = ReflectionReport(A, A_prime, eta)
    for B in U.source.objects:
        rep.verdicts[B] = in_E(base, comparison_map(U, A, A_prime, eta, B))
    return rep


def check_eweak_left_adjoint(U: VFunctor, assignment: Dict[str, Tuple[str, str]]
                             ) -> Dict[str, ReflectionReport]:
    missing = [a for a in U.target.objects if a not in assignment]
    if missing:
        raise PreconditionError(f"incomplete assignment: missing {missing}")
    return {a: check_eweak_reflection(U, a, assignment[a][1], assignment[a][0])
            for a in U.target.objects}
