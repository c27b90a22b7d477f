"""The slice V/I of a base over its unit, and V-categories augmented over I.

An object of V/I is a :class:`SObj`: an object of the parent base with an
augmentation ``X → I`` stored elementwise.  :class:`SlicedBase` subclasses
:class:`~weakadj.base.Base`, so every other module runs over it unchanged.
The unit ``(I, 1)`` is terminal even when ``I`` is not terminal in V.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .base import (BASEPOINT, Base, BaseKind, VMap, VObj, get_base, identity, inj_label,
                   tuple_label, validate_vmap, validate_vobj)
from .errors import InternalInconsistency, LawViolation, PreconditionError
from .vcat import VCategory, VFunctor, unit_vcategory


class SObj(VObj):
    """An object of a base together with an augmentation to the unit."""

    __slots__ = ("aug", "base")

    def __init__(self, plain: VObj, aug: Dict[str, str], base: "SlicedBase", meta=None):
        super().__init__(plain.kind, plain.elements, plain.dom, plain.cod, plain.comp,
                         dict(plain.meta) if meta is None else meta)
        self.aug = dict(aug)
        self.base = base

    @property
    def key(self):
        if self._key is None:
            self._key = ("sliced", VObj.key.fget(self),
                         tuple(self.aug.get(e) for e in self.elements))
        return self._key

    @property
    def plain(self) -> VObj:
        return VObj(self.kind, self.elements, self.dom, self.cod, self.comp, self.meta)

    def __repr__(self):
        return "S" + super().__repr__()


def plain_of(x: VObj) -> VObj:
    return x.plain if isinstance(x, SObj) else x


class SlicedBase(Base):
    """V/I with tensor ``(X⊗Y, x⊗y)`` and internal hom cut out of ``[Y,Z] × I``."""

    sliced = True

    def __init__(self, parent: Base):
        super().__init__(parent.kind)
        self.parent = parent
        self._sunit = None

    def __repr__(self):
        return f"SlicedBase({self.parent.label})"

    @property
    def label(self) -> str:
        return f"{self.parent.label}/I"

    @property
    def model_kind(self) -> BaseKind:
        return self.parent.kind

    # unit and wrapping -------------------------------------------------
    def mult(self, i: str, j: str) -> str:
        """Multiplication ``I ⊗ I → I`` on elements."""
        return self.parent.left_unitor(self.parent.unit).fn[self.parent.tensor_elem(i, j)]

    def wrap(self, x: VObj, aug: Dict[str, str], meta=None) -> SObj:
        return SObj(plain_of(x), aug, self, meta)

    def over(self, x: VObj, aug: VMap) -> SObj:
        """``(x, aug)`` for a map ``aug: x → I`` of the parent."""
        if aug.target != self.parent.unit:
            raise PreconditionError("augmentation must land in the unit")
        return self.wrap(x, aug.fn)

    @property
    def unit(self) -> SObj:
        if self._sunit is None:
            I = self.parent.unit
            self._sunit = self.wrap(I, {e: e for e in I.elements})
        return self._sunit

    @property
    def unit_is_terminal(self) -> bool:
        return True

    def to_unit_elem(self, x: VObj, e: str) -> str:
        return x.aug[e]

    def augmentation_of(self, x, e):
        return x.aug[e]

    def aug_map(self, x: SObj) -> VMap:
        return VMap(x, self.unit, dict(x.aug))

    def check_kind(self, *xs):
        for x in xs:
            if not isinstance(x, SObj) or x.base is not self:
                raise PreconditionError(f"expected an object of {self.name}, got {x!r}")

    def make_set(self, elements, aug=None) -> SObj:
        x = self.parent.make_set(elements)
        if aug is None:
            if len(self.parent.unit.elements) != 1:
                raise PreconditionError("an augmentation is needed")
            aug = {e: self.unit_gen for e in x.elements}
        return self.wrap(x, aug)

    def carrier(self, x):
        return plain_of(x)

    # maps ----------------------------------------------------------------
    def maps(self, x: VObj, y: VObj, candidates=None, limit=None) -> List[VMap]:
        self.check_kind(x, y)
        cand = {}
        for e in x.elements:
            base_c = y.elements if candidates is None or e not in candidates else candidates[e]
            cand[e] = [v for v in base_c if y.aug[v] == x.aug[e]]
        return self.parent.maps(x, y, cand, limit)

    def validate(self, x: VObj) -> List[str]:
        out = validate_vobj(x)
        if out:
            return out
        if not isinstance(x, SObj):
            return ["not an augmented object"]
        return ["augmentation: " + v for v in validate_vmap(self.aug_map(x))]

    def validate_map(self, f: VMap) -> List[str]:
        out = validate_vmap(f)
        if out:
            return out
        for e, v in f.fn.items():
            if f.target.aug[v] != f.source.aug[e]:
                return [f"{e!r} ↦ {v!r} does not commute with the augmentations"]
        return []

    # tensor --------------------------------------------------------------
    def tensor(self, x: VObj, y: VObj) -> SObj:
        self.check_kind(x, y)
        key = ("stensor", x, y)
        hit = self._hom_cache.get(key)
        if hit is not None:
            return hit
        t = self.parent.tensor(plain_of(x), plain_of(y))
        aug = {}
        for e in t.elements:
            p = t.meta["pairs"].get(e)
            aug[e] = BASEPOINT if p is None else self.mult(x.aug[p[0]], y.aug[p[1]])
        meta = dict(t.meta)
        meta["factors"] = (x, y)
        out = self.wrap(t, aug, meta)
        self._cache(key, out)
        return out

    # points --------------------------------------------------------------
    def points(self, x: VObj) -> List[str]:
        return [e for e in x.objects if x.aug[e] == self.unit_gen]

    def is_object_elem(self, x: VObj, e: str) -> bool:
        return x.is_identity(e)

    # internal hom --------------------------------------------------------
    def _internal_hom(self, y: VObj, z: VObj) -> SObj:
        P = self.parent
        h0 = P.internal_hom(plain_of(y), plain_of(z))
        I = P.unit
        tuples = []
        for phi in h0.elements:
            for i in I.elements:
                if all(z.aug[P.ev(h0, phi, a)] == self.mult(i, y.aug[a]) for a in y.elements):
                    tuples.append((phi, i))
        obj, _ = P.sub_product([h0, I], tuples)
        aug = {e: obj.meta["tuple"][e][1] for e in obj.elements}
        meta = dict(obj.meta)
        meta["hom"] = (y, z)
        meta["plain_hom"] = h0
        return self.wrap(obj, aug, meta)

    def _parts(self, h: VObj, e: str) -> Tuple[str, str]:
        if self.pointed and e == BASEPOINT:
            return BASEPOINT, BASEPOINT
        return h.meta["tuple"][e]

    def _elem(self, phi: str, i: str) -> str:
        return tuple_label((phi, i), self.pointed)

    def decode(self, h: VObj, phi: str):
        return self.parent.decode(h.meta["plain_hom"], self._parts(h, phi)[0])

    def ev(self, h: VObj, phi: str, a: str) -> str:
        return self.parent.ev(h.meta["plain_hom"], self._parts(h, phi)[0], a)

    def curry_elem(self, z: VObj, x: VObj, y: VObj, zel: str, fn) -> str:
        if self.pointed and zel == BASEPOINT:
            return BASEPOINT
        phi = self.parent.curry_elem(z, x, y, zel, fn)
        return self._elem(phi, z.aug[zel])

    def name(self, f: VMap) -> str:
        return self._elem(self.parent.name(f), self.unit_gen)

    def unname(self, h: VObj, phi: str) -> VMap:
        x, y = h.meta["hom"]
        m = self.parent.unname(h.meta["plain_hom"], self._parts(h, phi)[0])
        return VMap(x, y, m.fn)

    def hom_identity(self, x: VObj) -> str:
        return self.name(identity(x))

    def compose_elems(self, hyz: VObj, hxy: VObj, beta: str, alpha: str) -> str:
        if self.pointed and (beta == BASEPOINT or alpha == BASEPOINT):
            return BASEPOINT
        b, i = self._parts(hyz, beta)
        a, j = self._parts(hxy, alpha)
        phi = self.parent.compose_elems(hyz.meta["plain_hom"], hxy.meta["plain_hom"], b, a)
        return self._elem(phi, self.mult(i, j))

    # limits --------------------------------------------------------------
    def terminal(self) -> SObj:
        return self.unit

    def initial(self) -> SObj:
        x = self.parent.initial()
        return self.wrap(x, {e: BASEPOINT for e in x.elements})

    def to_terminal(self, x: VObj) -> VMap:
        return self.aug_map(x)

    def tuple_ok(self, factors: Sequence[VObj], t: Tuple[str, ...]) -> bool:
        return len({f.aug[a] for f, a in zip(factors, t)}) <= 1

    def sub_product(self, factors: Sequence[VObj], tuples):
        """Fibred product over I: only tuples with a common augmentation."""
        for f in factors:
            self.check_kind(f)
        if not factors:
            u = self.unit
            meta = {"tuple": {e: () for e in u.elements}, "factors": (), "empty_product": True}
            return self.wrap(u, u.aug, meta), []
        tuples = [tuple(t) for t in tuples]
        bad = [t for t in tuples if not self.tuple_ok(factors, t)]
        if bad:
            raise LawViolation("tuple with differing augmentations in a fibred product")
        obj, _ = self.parent.sub_product([plain_of(f) for f in factors], tuples)
        aug = {}
        for e in obj.elements:
            t = obj.meta["tuple"][e]
            aug[e] = factors[0].aug[t[0]]
        meta = dict(obj.meta)
        meta["factors"] = tuple(factors)
        out = self.wrap(obj, aug, meta)
        projs = [VMap(out, f, {l: out.meta["tuple"][l][i] for l in out.elements})
                 for i, f in enumerate(factors)]
        return out, projs

    def product(self, factors: Sequence[VObj]):
        tuples = [t for t in itertools.product(*[f.elements for f in factors])
                  if self.tuple_ok(factors, t)]
        self._check_size(len(tuples))
        return self.sub_product(factors, tuples)

    def tuple_elem(self, p: VObj, items: Sequence[str]) -> str:
        if p.meta.get("empty_product"):
            return self.unit_gen
        return super().tuple_elem(p, items)

    def subobject(self, x: VObj, keep):
        obj, _ = self.parent.subobject(plain_of(x), keep)
        meta = dict(obj.meta)
        meta["parent"] = x
        out = self.wrap(obj, {e: x.aug[e] for e in obj.elements}, meta)
        return out, VMap(out, x, {e: e for e in out.elements})

    def coproduct(self, summands: Sequence[VObj]):
        for s in summands:
            self.check_kind(s)
        obj, _ = self.parent.coproduct([plain_of(s) for s in summands])
        aug = {}
        for e in obj.elements:
            if self.pointed and e == BASEPOINT:
                aug[e] = BASEPOINT
            else:
                i, a = obj.meta["summands"][e]
                aug[e] = summands[i].aug[a]
        meta = dict(obj.meta)
        meta["factors"] = tuple(summands)
        out = self.wrap(obj, aug, meta)
        injs = [VMap(s, out, {a: (BASEPOINT if self.pointed and a == BASEPOINT
                                  else inj_label(i, a)) for a in s.elements})
                for i, s in enumerate(summands)]
        return out, injs

    def pushout(self, f: VMap, g: VMap):
        P0, i1, i2 = self.parent.pushout(f, g)
        aug = {}
        X, Y = f.target, g.target
        for a in X.elements:
            aug[i1.fn[a]] = X.aug[a]
        for b in Y.elements:
            aug[i2.fn[b]] = Y.aug[b]
        for e in P0.elements:
            if e not in aug:
                if len(self.parent.unit.elements) != 1:
                    raise InternalInconsistency("pushout element without augmentation")
                aug[e] = self.unit_gen
        P = self.wrap(P0, aug)
        return P, VMap(X, P, i1.fn), VMap(Y, P, i2.fn)

    # model structure -----------------------------------------------------
    def classify(self, f: VMap):
        return self.parent.classify(f)

    def in_e_closed_form(self, f: VMap) -> bool:
        return self.parent.in_e_closed_form(f)

    def is_cofibrant(self, x: VObj) -> bool:
        return self.parent.classify(self.from_initial(x)).cofibration

    def solve_lifting(self, i, p, u, v):
        return self.parent.solve_lifting(i, p, u, v)

    def standard_interval(self):
        from .interval import Interval, standard_interval
        iv = standard_interval(self.parent)
        J = self.wrap(iv.J, iv.e.fn)
        return Interval(J, VMap(self.unit, J, iv.d.fn), VMap(self.unit, J, iv.c.fn),
                        VMap(J, self.unit, iv.e.fn))


_SLICED: Dict[BaseKind, SlicedBase] = {}


def slice_base(kind) -> SlicedBase:
    """The shared V/I for the base ``kind``."""
    parent = get_base(kind)
    if parent.sliced:
        raise PreconditionError("already sliced")
    if parent.kind not in _SLICED:
        _SLICED[parent.kind] = SlicedBase(parent)
    return _SLICED[parent.kind]


# ---------------------------------------------------------------------------
# augmented V-categories


@dataclass
class AugmentedVCat:
    carrier: VCategory
    augmentation: VFunctor

    def violations(self) -> List[str]:
        from .vcat import vfunctor_violations
        return vfunctor_violations(self.augmentation)


def unique_augmentation(c: VCategory) -> VFunctor:
    """The only V-functor to the unit V-category when the unit is terminal."""
    base = c.base
    if not base.unit_is_terminal:
        raise PreconditionError("an augmentation must be given when the unit is not terminal")
    u = unit_vcategory(base)
    g = base.unit_gen
    act = {(a, b): {e: g for e in c.hom(a, b).elements} for a in c.objects for b in c.objects}
    return VFunctor(c, u, {a: "*" for a in c.objects}, act, name="!")


def augment(c: VCategory, aug: Optional[VFunctor] = None) -> AugmentedVCat:
    aug = aug or unique_augmentation(c)
    a = AugmentedVCat(c, aug)
    v = a.violations()
    if v:
        raise LawViolation("invalid augmentation", v)
    return a


def as_sliced(a: AugmentedVCat, sb: Optional[SlicedBase] = None) -> VCategory:
    """The V/I-category with homs ``(C(x,y), C_{x,y})``."""
    c = a.carrier
    sb = sb or slice_base(c.base.kind)
    homs = {(x, y): sb.wrap(c.hom(x, y), a.augmentation.hom_action[(x, y)])
            for x in c.objects for y in c.objects}
    out = VCategory(sb, c.objects, homs, c.compose, c.ident, name=f"{c.name}~")
    out.meta.update(c.meta)
    return out


def from_sliced(c: VCategory) -> AugmentedVCat:
    sb = c.base
    if not sb.sliced:
        raise PreconditionError("not a V/I-category")
    parent = sb.parent
    homs = {(x, y): plain_of(c.hom(x, y)) for x in c.objects for y in c.objects}
    carrier = VCategory(parent, c.objects, homs, c.compose, c.ident,
                        name=c.name[:-1] if c.name.endswith("~") else c.name)
    u = unit_vcategory(parent)
    act = {(x, y): dict(c.hom(x, y).aug) for x in c.objects for y in c.objects}
    return AugmentedVCat(carrier, VFunctor(carrier, u, {x: "*" for x in c.objects}, act,
                                           name="aug"))


def same_augmented(a: AugmentedVCat, b: AugmentedVCat) -> bool:
    """Structural equality: objects, homs, composition tables and augmentation."""
    c, d = a.carrier, b.carrier
    if c.objects != d.objects or c.ident != d.ident:
        return False
    for x, y in itertools.product(c.objects, repeat=2):
        if plain_of(c.hom(x, y)) != plain_of(d.hom(x, y)):
            return False
        if a.augmentation.hom_action[(x, y)] != b.augmentation.hom_action[(x, y)]:
            return False
    for x, y, z in itertools.product(c.objects, repeat=3):
        for g in c.hom(y, z).elements:
            for f in c.hom(x, y).elements:
                if c.compose(x, y, z, g, f) != d.compose(x, y, z, g, f):
                    return False
    return True


def functor_as_sliced(F: VFunctor, src: VCategory, tgt: VCategory) -> VFunctor:
    """A V-functor commuting with augmentations, seen between V/I-categories."""
    for (a, b), act in F.hom_action.items():
        ha, hb = src.hom(a, b), tgt.hom(F(a), F(b))
        for e, v in act.items():
            if ha.aug[e] != hb.aug[v]:
                raise LawViolation(f"functor does not commute with the augmentations at {e!r}")
    return VFunctor(src, tgt, F.object_map, F.hom_action, name=F.name)


def r_embed(c: VCategory) -> AugmentedVCat:
    """``R(C) = (C × I, π2)``."""
    base = c.base
    I = base.unit
    homs = {}
    for x, y in itertools.product(c.objects, repeat=2):
        homs[(x, y)], _ = base.product([c.hom(x, y), I])

    def composer(x, y, z, g, f):
        (g1, i), (f1, j) = _pair(base, homs[(y, z)], g), _pair(base, homs[(x, y)], f)
        return base.tuple_elem(homs[(x, z)], [c.compose(x, y, z, g1, f1),
                                              _mult(base, i, j)])

    ident = {x: base.tuple_elem(homs[(x, x)], [c.ident[x], base.unit_gen]) for x in c.objects}
    carrier = VCategory(base, c.objects, homs, composer, ident, name=f"R({c.name})")
    u = unit_vcategory(base)
    act = {k: {e: _pair(base, h, e)[1] for e in h.elements} for k, h in homs.items()}
    return AugmentedVCat(carrier, VFunctor(carrier, u, {x: "*" for x in c.objects}, act,
                                           name="pi2"))


def r_functor(U: VFunctor, RB: AugmentedVCat, RA: AugmentedVCat) -> VFunctor:
    """``R(U)`` acting componentwise on ``C(x,y) × I``."""
    base = U.source.base
    act = {}
    for (x, y), h in RB.carrier.hom_objs.items():
        tgt = RA.carrier.hom(U(x), U(y))
        m = {}
        for e in h.elements:
            f, i = _pair(base, h, e)
            m[e] = base.tuple_elem(tgt, [U.on(x, y, f), i])
        act[(x, y)] = m
    return VFunctor(RB.carrier, RA.carrier, U.object_map, act, name=f"R({U.name})")


def _pair(base, h, e):
    if base.pointed and e == BASEPOINT:
        return BASEPOINT, BASEPOINT
    return h.meta["tuple"][e]


def _mult(base, i, j):
    return base.left_unitor(base.unit).fn[base.tensor_elem(i, j)]


def r_counit(RA: AugmentedVCat, A: VCategory) -> VFunctor:
    """First projection ``R(A) → A``, the counit of the forgetful-⊣-R adjunction."""
    c = RA.carrier
    base = c.base
    act = {k: {e: _pair(base, h, e)[0] for e in h.elements} for k, h in c.hom_objs.items()}
    return VFunctor(c, A, {x: x for x in c.objects}, act, name="pi1")


def r_transpose(F: VFunctor, a: AugmentedVCat, RA: AugmentedVCat) -> VFunctor:
    """``F: C → A`` corresponds to the augmentation-preserving ``(F, aug): C → R(A)``."""
    base = a.carrier.base
    act = {}
    for (x, y), m in F.hom_action.items():
        tgt = RA.carrier.hom(F(x), F(y))
        aug = a.augmentation.hom_action[(x, y)]
        act[(x, y)] = {e: base.tuple_elem(tgt, [v, aug[e]]) for e, v in m.items()}
    return VFunctor(a.carrier, RA.carrier, F.object_map, act, name=f"({F.name},aug)")


# ---------------------------------------------------------------------------
# comma transport


@dataclass
class CommaTransport:
    sliced_comma: object
    augmented_comma: object
    objects: Dict[str, str]
    homs: Dict[Tuple[str, str], VMap]

    def verify(self) -> bool:
        from .base import is_iso
        S, T = self.sliced_comma.carrier, self.augmented_comma.carrier
        ob = self.objects
        if sorted(ob.values()) != sorted(T.objects) or len(ob) != len(S.objects):
            return False
        for (x, y), m in self.homs.items():
            if not is_iso(m):
                return False
            for e, v in m.fn.items():
                if S.hom(x, y).aug[e] != T.hom(ob[x], ob[y]).aug[v]:
                    return False
        for x, y, z in itertools.product(S.objects, repeat=3):
            for g in S.hom(y, z).elements:
                for f in S.hom(x, y).elements:
                    lhs = self.homs[(x, z)].fn[S.compose(x, y, z, g, f)]
                    rhs = T.compose(ob[x], ob[y], ob[z], self.homs[(y, z)].fn[g],
                                    self.homs[(x, y)].fn[f])
                    if lhs != rhs:
                        return False
        return True


def augmented_object_comma(A: str, U: VFunctor):
    """``A/U`` as a V/I-category via its projection to the unit V-category."""
    from .comma import object_comma
    oc = object_comma(A, U)
    aug = augment(oc.carrier, oc.P)
    return oc, as_sliced(aug)


def comma_transport(A: str, U: VFunctor) -> CommaTransport:
    """The isomorphism ``A/R(U) ≅ (A/U, P)`` of V/I-categories."""
    from .comma import comma_label, object_comma
    B, Acat = U.source, U.target
    sb = slice_base(B.base.kind)
    RB, RA = r_embed(B), r_embed(Acat)
    SB, SA = as_sliced(RB, sb), as_sliced(RA, sb)
    RU = functor_as_sliced(r_functor(U, RB, RA), SB, SA)
    left = object_comma(A, RU)
    oc, right_carrier = augmented_object_comma(A, U)
    base = B.base

    class _Right:
        carrier = right_carrier

    ob = {}
    for lab, (c, al, b) in left.triples.items():
        a0, _ = _pair(base, RA.carrier.hom(A, U(b)), al)
        ob[lab] = comma_label(c, a0, b)
    homs = {}
    for x, y in itertools.product(left.triples, repeat=2):
        src = left.carrier.hom(x, y)
        tgt = right_carrier.hom(ob[x], ob[y])
        fn = {}
        for e in src.elements:
            if base.pointed and e == BASEPOINT:
                fn[e] = BASEPOINT
                continue
            u, v = src.meta["tuple"][e]
            v0, _ = _pair(base, RB.carrier.hom(left.triples[x][2], left.triples[y][2]), v)
            fn[e] = base.tuple_elem(tgt, [u, v0])
        homs[(x, y)] = VMap(src, tgt, fn)
    return CommaTransport(left, _Right(), ob, homs)


# ---------------------------------------------------------------------------
# limits transported to R(B)


@dataclass
class TransferredLimit:
    parent: object
    sliced: object
    certificate: object

    def verify(self) -> bool:
        return self.parent.verify() and self.sliced.verify()


def sliced_weight(W, w: Dict[str, VMap], Dbar: VCategory):
    """``(W, w)`` as a weight on the V/I-category ``Dbar``."""
    from .weights import Weight
    sb = Dbar.base
    at = {d: sb.wrap(W.at[d], w[d].fn) for d in W.shape.objects}
    return Weight(Dbar, at, W.act, name=f"({W.name},w)", provenance=W.provenance)


def transfer_limit(W, S: VFunctor, w: Optional[Dict[str, VMap]] = None,
                   aug: Optional[VFunctor] = None) -> Optional[TransferredLimit]:
    """``{W,S}`` in ``B`` re-checked as ``{(W,w), (S,D)}`` in ``R(B)``."""
    from .weights import check_limit_cone, cofibrancy_certificate, constant_unit, weighted_limit
    D = W.shape
    B = S.target
    base = B.base
    aug = aug or unique_augmentation(D)
    if w is None:
        IP = constant_unit(D, aug if not base.unit_is_terminal else None)
        if not base.unit_is_terminal:
            raise PreconditionError("a transformation W → ID is needed")
        w = {d: VMap(W.at[d], IP.at[d], {e: base.unit_gen if not (base.pointed and e == BASEPOINT)
                                          else BASEPOINT for e in W.at[d].elements})
             for d in D.objects}
    r = weighted_limit(W, S)
    if r is None:
        raise PreconditionError("the parent limit {W,S} does not exist in the fragment")
    sb = slice_base(base.kind)
    Dbar = as_sliced(augment(D, aug), sb)
    Wbar = sliced_weight(W, w, Dbar)
    RB = r_embed(B)
    SB = as_sliced(RB, sb)
    act = {}
    for (d, d2), m in S.hom_action.items():
        tgt = RB.carrier.hom(S(d), S(d2))
        act[(d, d2)] = {k: base.tuple_elem(tgt, [m[k], aug.on(d, d2, k)])
                        for k in D.hom(d, d2).elements}
    Sbar = VFunctor(Dbar, SB, S.object_map, act, name=f"({S.name},D)")
    L = r.apex
    legs = []
    for d in D.objects:
        H = base.internal_hom(W.at[d], B.hom(L, S(d)))
        tgt = SB.hom(L, S(d))
        legs.append(sb.curry_elem(sb.unit, Wbar.at[d], tgt, sb.unit_gen,
                                  lambda z, e, H=H, d=d, tgt=tgt: base.tuple_elem(
                                      tgt, [base.ev(H, r.cone.legs[d], e), w[d].fn[e]])))
    pt = tuple_label(legs, base.pointed)
    rs = check_limit_cone(Wbar, Sbar, L, pt)
    if rs is None:
        raise InternalInconsistency("the parent limit lacks the sliced universal property")
    return TransferredLimit(r, rs, cofibrancy_certificate(Wbar))
