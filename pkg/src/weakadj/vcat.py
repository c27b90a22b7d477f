"""Finite V-categories and V-functors, underlying categories, h∗ and bi-terminal objects."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .base import BASEPOINT, Base, VMap, VObj, get_base
from .errors import LawViolation, PreconditionError
from .interval import GlobalHomotopyWitness, homotopy_search

INITIAL = "initial"
TERMINAL = "terminal"


class LazyHoms(dict):
    """Hom-objects (or other per-pair data) computed on first access by
    ``make(a, b)``; with ``unary=True`` keys are objects and ``make(a)``."""

    def __init__(self, objects: Iterable[str], make: Callable, unary: bool = False):
        super().__init__()
        self._objects = tuple(objects)
        self._make = make
        self._unary = unary

    def _keys(self):
        if self._unary:
            return list(self._objects)
        return [(a, b) for a in self._objects for b in self._objects]

    def __missing__(self, key):
        if self._unary:
            if key not in self._objects:
                raise KeyError(key)
            v = self._make(key)
        else:
            a, b = key
            if a not in self._objects or b not in self._objects:
                raise KeyError(key)
            v = self._make(a, b)
        self[key] = v
        return v

    def get(self, key, default=None):
        try:
            return self[key]
        except KeyError:
            return default

    def force(self) -> "LazyHoms":
        for k in self._keys():
            self[k]
        return self

    def items(self):
        return dict.items(self.force())

    def keys(self):
        return dict.keys(self.force())

    def values(self):
        return dict.values(self.force())

    def __iter__(self):
        return dict.__iter__(self.force())

    def __len__(self):
        return len(self._keys())

    def __contains__(self, key):
        return key in self._keys()


class VCategory:
    """A finite V-category with homs stored extensionally.

    Composition is given elementwise by ``composer(A, B, C, g, f)`` returning
    ``g∘f`` in ``hom(A, C)``; results are memoised.  ``ident[A]`` is the
    element of ``hom(A, A)`` naming the identity.
    """

    def __init__(self, base, objects: Iterable[str], hom: Dict[Tuple[str, str], VObj],
                 composer: Callable, ident: Dict[str, str], name: str = ""):
        self.base: Base = get_base(base)
        self.objects: Tuple[str, ...] = tuple(sorted(objects))
        self.hom_objs = hom if isinstance(hom, LazyHoms) else dict(hom)
        self._composer = composer
        self.ident = ident if isinstance(ident, LazyHoms) else dict(ident)
        self.name = name
        self._memo: Dict = {}
        self.meta: Dict = {}

    def __repr__(self):
        return f"VCategory<{self.name or '?'} over {self.base.label}: {list(self.objects)}>"

    def hom(self, a: str, b: str) -> VObj:
        try:
            return self.hom_objs[(a, b)]
        except KeyError:
            raise PreconditionError(f"no hom-object for ({a!r}, {b!r})")

    def compose(self, a: str, b: str, c: str, g: str, f: str) -> str:
        """``g∘f`` for ``g ∈ hom(b,c)``, ``f ∈ hom(a,b)`` (elements, not just points)."""
        if self.base.pointed and (g == BASEPOINT or f == BASEPOINT):
            return BASEPOINT
        key = (a, b, c, g, f)
        r = self._memo.get(key)
        if r is None:
            r = self._composer(a, b, c, g, f)
            self._memo[key] = r
        return r

    def comp_map(self, a: str, b: str, c: str) -> VMap:
        base = self.base
        src = base.tensor(self.hom(b, c), self.hom(a, b))
        fn = {}
        for t in src.elements:
            p = base.split(src, t)
            fn[t] = BASEPOINT if p is None else self.compose(a, b, c, p[0], p[1])
        return VMap(src, self.hom(a, c), fn)

    def ident_map(self, a: str) -> VMap:
        return self.base.point_map(self.hom(a, a), self.ident[a])

    def points(self, a: str, b: str) -> List[str]:
        return self.base.points(self.hom(a, b))

    def post(self, a: str, b: str, c: str, g: str) -> VMap:
        """``C(a, g): C(a,b) → C(a,c)`` for a point ``g ∈ C(b,c)``."""
        src = self.hom(a, b)
        return VMap(src, self.hom(a, c), {f: self.compose(a, b, c, g, f) for f in src.elements})

    def pre(self, a: str, b: str, c: str, f: str) -> VMap:
        """``C(f, c): C(b,c) → C(a,c)`` for a point ``f ∈ C(a,b)``."""
        src = self.hom(b, c)
        return VMap(src, self.hom(a, c), {g: self.compose(a, b, c, g, f) for g in src.elements})


class VFunctor:
    """A V-functor given by its object map and elementwise hom action."""

    def __init__(self, source: VCategory, target: VCategory, object_map: Dict[str, str],
                 hom_action: Dict[Tuple[str, str], Dict[str, str]], name: str = ""):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.hom_action = hom_action
        self.name = name

    def __repr__(self):
        return f"VFunctor<{self.name or '?'}: {self.source.name} → {self.target.name}>"

    def __call__(self, a: str) -> str:
        return self.object_map[a]

    def on(self, a: str, b: str, f: str) -> str:
        return self.hom_action[(a, b)][f]

    def hom_map(self, a: str, b: str) -> VMap:
        F = self.object_map
        return VMap(self.source.hom(a, b), self.target.hom(F[a], F[b]),
                    dict(self.hom_action[(a, b)]))


# ---------------------------------------------------------------------------
# constructors


def unit_vcategory(base, label: str = "*") -> VCategory:
    base = get_base(base)
    I = base.unit
    lam = base.left_unitor(I)

    def composer(a, b, c, g, f):
        return lam.fn[base.tensor_elem(g, f)]

    return VCategory(base, [label], {(label, label): I}, composer,
                     {label: base.unit_gen}, name="I")


def from_table(base, objects, hom: Dict[Tuple[str, str], VObj],
               table: Dict[Tuple[str, str, str], Dict[Tuple[str, str], str]],
               ident: Dict[str, str], name: str = "") -> VCategory:
    """V-category from explicit composition tables ``(a,b,c) -> {(g,f): g∘f}``."""
    base = get_base(base)

    def composer(a, b, c, g, f):
        try:
            return table[(a, b, c)][(g, f)]
        except KeyError:
            raise LawViolation(f"composition table missing ({a},{b},{c}) entry ({g},{f})",
                               [(a, b, c, g, f)])

    return VCategory(base, objects, hom, composer, ident, name=name)


def from_ordinary(base, objects: Sequence[str], morphisms: Dict[str, Tuple[str, str]],
                  composition: Dict[Tuple[str, str], str], name: str = "") -> VCategory:
    """Free V-category on an ordinary finite category.

    Homs are the discrete objects on the hom-sets (for ``PointedTrivial``
    a zero ``*`` is adjoined to each hom).  Identities are labelled ``id_A``
    unless given explicitly in ``morphisms``.
    """
    base = get_base(base)
    objects = list(objects)
    mor = dict(morphisms)
    ids = {}
    for a in objects:
        found = [m for m, (s, t) in mor.items() if s == t == a and m == f"id_{a}"]
        ids[a] = found[0] if found else f"id_{a}"
        mor.setdefault(ids[a], (a, a))
    homs = {}
    for a in objects:
        for b in objects:
            els = sorted(m for m, (s, t) in mor.items() if s == a and t == b)
            homs[(a, b)] = base.make_set(els)
    comp = dict(composition)

    def composer(a, b, c, g, f):
        if g == ids[b]:
            return f
        if f == ids[a]:
            return g
        try:
            return comp[(g, f)]
        except KeyError:
            raise LawViolation(f"composite of {g!r} and {f!r} not given", [(a, b, c, g, f)])

    return VCategory(base, objects, homs, composer, ids, name=name)


def from_poset(base, elements: Sequence[str], leq: Callable[[str, str], bool],
               name: str = "") -> VCategory:
    """Poset as a V-category: hom(a,b) is a point when ``a ≤ b`` else initial."""
    base = get_base(base)
    elements = list(elements)
    homs = {}
    for a in elements:
        for b in elements:
            homs[(a, b)] = base.make_set(["<="] if leq(a, b) else [])
    ident = {a: "<=" for a in elements}
    c = VCategory(base, elements, homs, lambda a, b, c_, g, f: "<=", ident, name=name)
    c.meta["order"] = {(a, b): leq(a, b) for a in elements for b in elements}
    return c


def self_enriched(base, objs: Dict[str, VObj], name: str = "") -> VCategory:
    """Full sub-V-category of V on the named objects (hom = internal hom)."""
    base = get_base(base)
    homs = {(a, b): base.internal_hom(objs[a], objs[b]) for a in objs for b in objs}

    def composer(a, b, c, g, f):
        return base.compose_elems(homs[(b, c)], homs[(a, b)], g, f)

    ident = {a: base.hom_identity(objs[a]) for a in objs}
    c = VCategory(base, objs.keys(), homs, composer, ident, name=name)
    c.meta["carriers"] = dict(objs)
    return c


def full_sub(c: VCategory, objects: Iterable[str], name: str = "") -> VCategory:
    objects = [o for o in c.objects if o in set(objects)]
    homs = {(a, b): c.hom(a, b) for a in objects for b in objects}
    sub = VCategory(c.base, objects, homs, c.compose, {a: c.ident[a] for a in objects},
                    name=name or f"{c.name}|{','.join(objects)}")
    sub.meta.update({k: v for k, v in c.meta.items() if k == "carriers"})
    return sub


def inclusion(sub: VCategory, c: VCategory) -> VFunctor:
    act = {(a, b): {e: e for e in sub.hom(a, b).elements}
           for a in sub.objects for b in sub.objects}
    return VFunctor(sub, c, {a: a for a in sub.objects}, act, name="incl")


def identity_functor(c: VCategory) -> VFunctor:
    return inclusion(c, c)


def compose_functors(G: VFunctor, F: VFunctor) -> VFunctor:
    act = {}
    for (a, b), m in F.hom_action.items():
        ga = G.hom_action[(F.object_map[a], F.object_map[b])]
        act[(a, b)] = {e: ga[v] for e, v in m.items()}
    return VFunctor(F.source, G.target, {a: G.object_map[F.object_map[a]]
                                         for a in F.source.objects}, act)


def hom_functor(c: VCategory, t: str, name: str = "") -> VFunctor:
    """``C(t, −)`` as a V-functor into the full sub-V-category of V on the
    objects ``C(t, x)``.  The hom action is the transpose of composition."""
    base = c.base
    target = self_enriched(base, {x: c.hom(t, x) for x in c.objects}, name=f"V[{c.name}({t},-)]")
    act = {}
    for x in c.objects:
        for y in c.objects:
            m = base.curry(c.comp_map(t, x, y), c.hom(x, y), c.hom(t, x))
            act[(x, y)] = dict(m.fn)
    return VFunctor(c, target, {x: x for x in c.objects}, act, name=name or f"{c.name}({t},-)")


def opposite(c: VCategory) -> VCategory:
    homs = {(a, b): c.hom(b, a) for a in c.objects for b in c.objects}

    def composer(a, b, cc, g, f):
        return c.compose(cc, b, a, f, g)

    op = VCategory(c.base, c.objects, homs, composer, c.ident, name=f"{c.name}^op")
    return op


def point_functor(c: VCategory, a: str, label: str = "*") -> VFunctor:
    """The V-functor ``I → C`` picking ``a``."""
    base = c.base
    u = unit_vcategory(base, label)
    return VFunctor(u, c, {label: a}, {(label, label): {
        e: (c.ident[a] if e == base.unit_gen else BASEPOINT) for e in base.unit.elements}},
        name=f"pick {a}")


# ---------------------------------------------------------------------------
# validation


def vcategory_violations(c: VCategory, check_functoriality: bool = True) -> List[str]:
    base = c.base
    out = []
    objs = c.objects
    for a in objs:
        for b in objs:
            h = c.hom_objs.get((a, b))
            if h is None:
                out.append(f"missing hom ({a},{b})")
                continue
            out.extend(f"hom({a},{b}): {v}" for v in base.validate(h))
    if out:
        return out
    for a in objs:
        if c.ident.get(a) not in base.points(c.hom(a, a)):
            out.append(f"identity of {a!r} is not a point of hom({a},{a})")
    if out:
        return out
    try:
        for a, b, cc in itertools.product(objs, repeat=3):
            hac = c.hom(a, cc)
            for g in c.hom(b, cc).elements:
                for f in c.hom(a, b).elements:
                    if c.compose(a, b, cc, g, f) not in hac.index:
                        out.append(f"composite at ({a},{b},{cc}) on ({g},{f}) not in hom")
                        return out
            if check_functoriality and not hac.discrete:
                v = base.validate_map(c.comp_map(a, b, cc))
                if v:
                    out.append(f"composition ({a},{b},{cc}) not a morphism: {v[0]}")
                    return out
        for a, b in itertools.product(objs, repeat=2):
            for f in c.hom(a, b).elements:
                if c.compose(a, b, b, c.ident[b], f) != f:
                    out.append(f"left unit law fails at ({a},{b}) on {f!r}")
                    return out
                if c.compose(a, a, b, f, c.ident[a]) != f:
                    out.append(f"right unit law fails at ({a},{b}) on {f!r}")
                    return out
        for a, b, cc, d in itertools.product(objs, repeat=4):
            for h in c.hom(cc, d).elements:
                for g in c.hom(b, cc).elements:
                    hg = c.compose(b, cc, d, h, g)
                    for f in c.hom(a, b).elements:
                        lhs = c.compose(a, b, d, hg, f)
                        rhs = c.compose(a, cc, d, h, c.compose(a, b, cc, g, f))
                        if lhs != rhs:
                            out.append(f"associativity fails at triple ({a},{b},{cc},{d}) "
                                       f"on ({h},{g},{f})")
                            return out
    except LawViolation as exc:
        out.append(str(exc))
    return out


def validate_vcategory(c: VCategory) -> VCategory:
    v = vcategory_violations(c)
    if v:
        raise LawViolation(f"invalid V-category {c.name!r}", v)
    return c


def vfunctor_violations(F: VFunctor) -> List[str]:
    A, B = F.source, F.target
    base = A.base
    out = []
    for a in A.objects:
        if F.object_map.get(a) not in B.objects:
            return [f"object {a!r} not mapped into the target"]
    for a, b in itertools.product(A.objects, repeat=2):
        if (a, b) not in F.hom_action:
            return [f"missing hom action ({a},{b})"]
        v = base.validate_map(F.hom_map(a, b))
        if v:
            return [f"hom action ({a},{b}): {v[0]}"]
    Fo = F.object_map
    for a in A.objects:
        if F.on(a, a, A.ident[a]) != B.ident[Fo[a]]:
            out.append(f"identity of {a!r} not preserved")
    for a, b, c in itertools.product(A.objects, repeat=3):
        for g in A.hom(b, c).elements:
            for f in A.hom(a, b).elements:
                lhs = F.on(a, c, A.compose(a, b, c, g, f))
                rhs = B.compose(Fo[a], Fo[b], Fo[c], F.on(b, c, g), F.on(a, b, f))
                if lhs != rhs:
                    out.append(f"composition not preserved at ({a},{b},{c}) on ({g},{f})")
                    return out
    return out


def validate_vfunctor(F: VFunctor) -> VFunctor:
    v = vfunctor_violations(F)
    if v:
        raise LawViolation("invalid V-functor", v)
    return F


# ---------------------------------------------------------------------------
# underlying category and h∗


@dataclass
class OrdinaryCategory:
    """A finite ordinary category with per-hom morphism labels."""

    objects: Tuple[str, ...]
    homs: Dict[Tuple[str, str], List[str]]
    composer: Callable
    identities: Dict[str, str]

    def hom(self, a, b):
        return self.homs[(a, b)]

    def compose(self, a, b, c, g, f):
        return self.composer(a, b, c, g, f)

    def morphism_count(self) -> int:
        return sum(len(v) for v in self.homs.values())

    def violations(self) -> List[str]:
        out = []
        for a, b in itertools.product(self.objects, repeat=2):
            for f in self.homs[(a, b)]:
                if self.compose(a, b, b, self.identities[b], f) != f or \
                        self.compose(a, a, b, f, self.identities[a]) != f:
                    out.append(f"unit law fails at {f!r}")
        for a, b, c, d in itertools.product(self.objects, repeat=4):
            for h in self.homs[(c, d)]:
                for g in self.homs[(b, c)]:
                    for f in self.homs[(a, b)]:
                        if self.compose(a, b, d, self.compose(b, c, d, h, g), f) != \
                                self.compose(a, c, d, h, self.compose(a, b, c, g, f)):
                            out.append(f"associativity fails at ({h},{g},{f})")
                            return out
        return out


def underlying_category(c: VCategory) -> OrdinaryCategory:
    homs = {(a, b): c.points(a, b) for a in c.objects for b in c.objects}
    return OrdinaryCategory(c.objects, homs, c.compose, dict(c.ident))


@dataclass
class ERCategory:
    underlying: OrdinaryCategory
    witness: Callable[[str, str, str, str], Optional[GlobalHomotopyWitness]]

    def related(self, a, b, f, g) -> bool:
        return self.witness(a, b, f, g) is not None

    def classes(self, a, b) -> List[List[str]]:
        out: List[List[str]] = []
        for f in self.underlying.hom(a, b):
            for cl in out:
                if self.related(a, b, cl[0], f):
                    cl.append(f)
                    break
            else:
                out.append([f])
        return out

    def violations(self) -> List[str]:
        U = self.underlying
        out = []
        for a, b in itertools.product(U.objects, repeat=2):
            hs = U.hom(a, b)
            for f in hs:
                if not self.related(a, b, f, f):
                    out.append(f"not reflexive at {f!r}")
            for f, g in itertools.product(hs, repeat=2):
                if self.related(a, b, f, g) != self.related(a, b, g, f):
                    out.append(f"not symmetric at ({f!r},{g!r})")
                for k in hs:
                    if self.related(a, b, f, g) and self.related(a, b, g, k) \
                            and not self.related(a, b, f, k):
                        out.append(f"not transitive at ({f!r},{g!r},{k!r})")
        if out:
            return out
        for a, b, c in itertools.product(U.objects, repeat=3):
            for f, f2 in itertools.product(U.hom(a, b), repeat=2):
                if not self.related(a, b, f, f2):
                    continue
                for g in U.hom(b, c):
                    if not self.related(a, c, U.compose(a, b, c, g, f), U.compose(a, b, c, g, f2)):
                        out.append(f"not a congruence (post) at ({g},{f},{f2})")
            for g, g2 in itertools.product(U.hom(b, c), repeat=2):
                if not self.related(b, c, g, g2):
                    continue
                for f in U.hom(a, b):
                    if not self.related(a, c, U.compose(a, b, c, g, f), U.compose(a, b, c, g2, f)):
                        out.append(f"not a congruence (pre) at ({g},{g2},{f})")
        return out


def vhomotopic(c: VCategory, a: str, b: str, f: str, g: str) -> Optional[GlobalHomotopyWitness]:
    """Homotopy ``f ≅ g`` of parallel morphisms ``a → b`` via the canonical interval."""
    h = c.hom(a, b)
    pts = set(c.points(a, b))
    if f not in pts or g not in pts:
        raise PreconditionError("not parallel morphisms of the underlying category")
    return homotopy_search(h, f, g)


def homotopy_er(c: VCategory) -> ERCategory:
    cache: Dict = {}

    def witness(a, b, f, g):
        key = (a, b, f, g)
        if key not in cache:
            cache[key] = vhomotopic(c, a, b, f, g)
        return cache[key]

    return ERCategory(underlying_category(c), witness)


def transport_witness(F: VFunctor, a: str, b: str, w: GlobalHomotopyWitness) -> GlobalHomotopyWitness:
    """``F f ≅ F g`` from ``f ≅ g``."""
    return w.push(F.hom_map(a, b))


# ---------------------------------------------------------------------------
# bi-terminal / bi-initial


@dataclass
class BipolarCertificate:
    object: str
    direction: str
    arrows: Dict[str, str]
    witnesses: Dict[Tuple[str, str], GlobalHomotopyWitness] = field(default_factory=dict)

    def _hom(self, c, a):
        return c.hom(self.object, a) if self.direction == INITIAL else c.hom(a, self.object)

    def verify(self, c: VCategory) -> bool:
        base = c.base
        for a in c.objects:
            h = self._hom(c, a)
            pts = base.points(h)
            if self.arrows.get(a) not in pts:
                return False
            for g in pts:
                w = self.witnesses.get((a, g))
                if w is None or not w.verify_points(h, self.arrows[a], g):
                    return False
        return True


def bipolar_failure(c: VCategory, x: str, direction: str):
    """``(certificate, None)`` or ``(None, reason)``."""
    if direction not in (INITIAL, TERMINAL):
        raise PreconditionError("direction must be 'initial' or 'terminal'")
    if x not in c.objects:
        raise PreconditionError(f"unknown object {x!r}")
    arrows, wits = {}, {}
    for a in c.objects:
        src, tgt = (x, a) if direction == INITIAL else (a, x)
        pts = c.points(src, tgt)
        if not pts:
            return None, f"no morphism {src} → {tgt}"
        arrows[a] = pts[0]
        for g in pts:
            w = vhomotopic(c, src, tgt, pts[0], g)
            if w is None:
                return None, f"morphisms {pts[0]!r} and {g!r}: {src} → {tgt} are not homotopic"
            wits[(a, g)] = w
    return BipolarCertificate(x, direction, arrows, wits), None


def is_bipolar(c: VCategory, x: str, direction: str) -> Optional[BipolarCertificate]:
    return bipolar_failure(c, x, direction)[0]


def hstar_equivalence(c: VCategory, x: str, y: str):
    """``(f, g, w1, w2)`` exhibiting ``x ≃ y`` in h∗, or ``None``."""
    for f in c.points(x, y):
        for g in c.points(y, x):
            w1 = vhomotopic(c, x, x, c.compose(x, y, x, g, f), c.ident[x])
            if w1 is None:
                continue
            w2 = vhomotopic(c, y, y, c.compose(y, x, y, f, g), c.ident[y])
            if w2 is not None:
                return f, g, w1, w2
    return None
