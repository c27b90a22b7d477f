"""Finite enriching bases: sets, categories and pointed sets.

Every object of a base is a :class:`VObj` whose payload is a finite
category; sets are discrete categories and pointed sets are sets with a
basepoint always labelled ``"*"``.  Elements are string labels kept in
lexicographic order, and for categories the identity of an object carries
the object's own label.  A :class:`VMap` is a total assignment on elements
(for categories this is the morphism map; the object map is its
restriction to identities).

Four bases are provided:

* ``SetTrivial``  -- finite sets, trivial model structure;
* ``SetSplit``    -- finite sets, cofibrations injective, fibrations split
  epimorphisms, every map a weak equivalence;
* ``CatCanonical``-- finite categories with the canonical model structure;
* ``PointedTrivial`` -- finite pointed sets with the smash product.
"""

from __future__ import annotations

import enum
import itertools
from array import array
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import kernel
from .errors import (BudgetExceeded, LawViolation, PreconditionError,
                     current_budget, note_usage)

BASEPOINT = "*"


class BaseKind(str, enum.Enum):
    SET_TRIVIAL = "SetTrivial"
    SET_SPLIT = "SetSplit"
    CAT = "CatCanonical"
    POINTED = "PointedTrivial"


# ---------------------------------------------------------------------------
# objects and maps


class VObj:
    """A finite object of a base.

    ``dom``/``cod`` map every element to an object label and ``comp`` maps
    composable pairs ``(g, f)`` to ``g∘f``.  They are ``None`` for discrete
    objects (sets).  ``meta`` carries decoding tables for constructed
    objects and does not take part in equality.
    """

    __slots__ = ("kind", "elements", "dom", "cod", "comp", "meta", "_index",
                 "_key", "_hash", "_objects", "_enc", "_isos", "_homs")

    def __init__(self, kind, elements: Iterable[str], dom=None, cod=None,
                 comp=None, meta=None):
        self.kind = BaseKind(kind)
        self.elements = tuple(sorted(elements))
        self.dom = dom
        self.cod = cod
        self.comp = comp
        self.meta = meta or {}
        self._index = None
        self._key = None
        self._hash = None
        self._objects = None
        self._enc = None
        self._isos = None
        self._homs = None

    # structure access -------------------------------------------------
    @property
    def discrete(self) -> bool:
        return self.dom is None

    @property
    def pointed(self) -> bool:
        return self.kind is BaseKind.POINTED

    @property
    def index(self) -> Dict[str, int]:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return self._index

    @property
    def objects(self) -> Tuple[str, ...]:
        if self._objects is None:
            if self.discrete:
                self._objects = self.elements
            else:
                self._objects = tuple(e for e in self.elements if self.dom[e] == e)
        return self._objects

    def dom_of(self, e: str) -> str:
        return e if self.dom is None else self.dom[e]

    def cod_of(self, e: str) -> str:
        return e if self.cod is None else self.cod[e]

    def is_identity(self, e: str) -> bool:
        return self.dom is None or self.dom[e] == e

    def compose(self, g: str, f: str) -> Optional[str]:
        """``g∘f`` or ``None`` when not composable."""
        if self.comp is None:
            return g if g == f else None
        return self.comp.get((g, f))

    def hom(self, a: str, b: str) -> List[str]:
        if self._homs is None:
            homs: Dict[Tuple[str, str], List[str]] = {}
            for e in self.elements:
                homs.setdefault((self.dom_of(e), self.cod_of(e)), []).append(e)
            self._homs = homs
        return self._homs.get((a, b), [])

    def inverse_of(self, e: str) -> Optional[str]:
        if self._isos is None:
            inv = {}
            for f in self.elements:
                a, b = self.dom_of(f), self.cod_of(f)
                for g in self.hom(b, a):
                    if self.compose(g, f) == a and self.compose(f, g) == b:
                        inv[f] = g
                        break
            self._isos = inv
        return self._isos.get(e)

    def is_iso_elem(self, e: str) -> bool:
        return self.inverse_of(e) is not None

    # identity ---------------------------------------------------------
    @property
    def key(self):
        if self._key is None:
            if self.discrete:
                self._key = (self.kind.value, self.elements)
            else:
                self._key = (self.kind.value, self.elements,
                             tuple(self.dom[e] for e in self.elements),
                             tuple(self.cod[e] for e in self.elements),
                             tuple(sorted(self.comp.items())))
        return self._key

    def __eq__(self, other):
        return isinstance(other, VObj) and self.key == other.key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        body = ",".join(self.elements[:8]) + ("…" if len(self.elements) > 8 else "")
        tag = "" if self.discrete else f" objs={len(self.objects)}"
        return f"VObj<{self.kind.value}{tag} {{{body}}}>"


class VMap:
    """A structure-preserving map given elementwise."""

    __slots__ = ("source", "target", "fn", "_hash")

    def __init__(self, source: VObj, target: VObj, fn: Dict[str, str]):
        self.source = source
        self.target = target
        self.fn = fn
        self._hash = None

    def __call__(self, e: str) -> str:
        return self.fn[e]

    def __eq__(self, other):
        return (isinstance(other, VMap) and self.source == other.source
                and self.target == other.target and self.fn == other.fn)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target,
                               tuple(sorted(self.fn.items()))))
        return self._hash

    def images(self) -> Tuple[str, ...]:
        return tuple(self.fn[e] for e in self.source.elements)

    def __repr__(self):
        pairs = ", ".join(f"{a}->{self.fn[a]}" for a in self.source.elements[:6])
        return f"VMap({pairs}{', …' if len(self.source) > 6 else ''})"


def compose(g: VMap, f: VMap) -> VMap:
    """``g∘f``."""
    if f.target != g.source:
        raise PreconditionError("maps are not composable")
    gf = g.fn
    return VMap(f.source, g.target, {e: gf[v] for e, v in f.fn.items()})


def identity(x: VObj) -> VMap:
    return VMap(x, x, {e: e for e in x.elements})


@dataclass(frozen=True)
class MapClass:
    cofibration: bool
    fibration: bool
    weak_equivalence: bool

    @property
    def trivial_fibration(self) -> bool:
        return self.fibration and self.weak_equivalence

    @property
    def trivial_cofibration(self) -> bool:
        return self.cofibration and self.weak_equivalence


@dataclass(frozen=True)
class EquivalenceWitness:
    """Quasi-inverse ``G`` with components of ``1 ≅ G F`` and ``F G ≅ 1``."""

    inverse: VMap
    unit: Dict[str, str]
    counit: Dict[str, str]


# ---------------------------------------------------------------------------
# label helpers


def tuple_label(items: Sequence[str], pointed: bool = False) -> str:
    if not items:
        return BASEPOINT
    if pointed and all(i == BASEPOINT for i in items):
        return BASEPOINT
    return "(" + ",".join(items) + ")"


def inj_label(i: int, a: str) -> str:
    return f"in{i}({a})"


def fun_label(images: Sequence[str], pointed: bool = False) -> str:
    if pointed and all(v == BASEPOINT for v in images):
        return BASEPOINT
    return "<" + ",".join(images) + ">"


def nat_label(f: str, g: str, comps: Sequence[str]) -> str:
    return f"{f}=>{g}[{','.join(comps)}]"


# ---------------------------------------------------------------------------
# object constructors


def finite_set(kind, elements: Iterable[str]) -> VObj:
    kind = BaseKind(kind)
    elements = list(elements)
    if kind is BaseKind.POINTED and BASEPOINT not in elements:
        elements.append(BASEPOINT)
    if kind is BaseKind.CAT:
        return discrete_category(elements)
    return VObj(kind, elements)


def pointed_set(elements: Iterable[str]) -> VObj:
    return finite_set(BaseKind.POINTED, elements)


def category(objects: Iterable[str], morphisms: Dict[str, Tuple[str, str]] = None,
             composition: Dict[Tuple[str, str], str] = None,
             kind=BaseKind.CAT) -> VObj:
    """Finite category from generators.

    ``morphisms`` maps non-identity labels to ``(dom, cod)``;
    ``composition`` gives ``(g, f) -> g∘f`` for every composable
    non-identity pair.  Identities are the object labels.
    """
    objects = list(objects)
    morphisms = dict(morphisms or {})
    composition = dict(composition or {})
    dom = {o: o for o in objects}
    cod = {o: o for o in objects}
    for m, (a, b) in morphisms.items():
        if m in dom:
            raise LawViolation(f"duplicate label {m!r}")
        dom[m], cod[m] = a, b
    comp = {}
    for e in dom:
        comp[(cod[e], e)] = e
        comp[(e, dom[e])] = e
    for (g, f), h in composition.items():
        comp[(g, f)] = h
    return VObj(kind, dom.keys(), dom, cod, comp)


def discrete_category(objects: Iterable[str]) -> VObj:
    return category(objects)


def chaotic_category(objects: Iterable[str]) -> VObj:
    """Every hom a singleton; ``a>b`` is the morphism ``a → b``."""
    objects = list(objects)
    morph = {f"{a}>{b}": (a, b) for a in objects for b in objects if a != b}

    def name(a, b):
        return a if a == b else f"{a}>{b}"

    comp = {}
    for a in objects:
        for b in objects:
            for c in objects:
                if a != b and b != c:
                    comp[(name(b, c), name(a, b))] = name(a, c)
    return category(objects, morph, comp)


def arrow_category() -> VObj:
    return category(["0", "1"], {"0>1": ("0", "1")})


def validate_vobj(x: VObj) -> List[str]:
    """Structural violations of ``x`` (empty when valid)."""
    out = []
    if len(set(x.elements)) != len(x.elements):
        out.append("duplicate labels")
    if x.pointed and BASEPOINT not in x.elements:
        out.append("basepoint '*' missing")
    if x.discrete:
        return out
    els = set(x.elements)
    for e in x.elements:
        a, b = x.dom.get(e), x.cod.get(e)
        if a not in els or b not in els or x.dom.get(a) != a or x.cod.get(a) != a \
                or x.dom.get(b) != b or x.cod.get(b) != b:
            out.append(f"bad source/target for {e!r}")
            continue
        if x.comp.get((b, e)) != e or x.comp.get((e, a)) != e:
            out.append(f"identity law fails at {e!r}")
    if out:
        return out
    for (g, f), h in x.comp.items():
        if x.cod[f] != x.dom[g] or h not in els or x.dom[h] != x.dom[f] \
                or x.cod[h] != x.cod[g]:
            out.append(f"ill-typed composite ({g!r},{f!r})")
    for f in x.elements:
        for g in x.elements:
            if x.cod[f] == x.dom[g] and (g, f) not in x.comp:
                out.append(f"missing composite ({g!r},{f!r})")
    if out:
        return out
    for f in x.elements:
        for g in x.elements:
            if x.dom[g] != x.cod[f]:
                continue
            gf = x.comp[(g, f)]
            for h in x.elements:
                if x.dom[h] != x.cod[g]:
                    continue
                if x.comp[(h, gf)] != x.comp[(x.comp[(h, g)], f)]:
                    out.append(f"associativity fails at ({h!r},{g!r},{f!r})")
                    return out
    return out


def validate_vmap(f: VMap) -> List[str]:
    """Violations of structure preservation (empty when valid)."""
    x, y = f.source, f.target
    out = []
    if set(f.fn) != set(x.elements):
        return ["map is not total on its source"]
    ys = set(y.elements)
    for e, v in f.fn.items():
        if v not in ys:
            return [f"image of {e!r} not in target"]
    if x.pointed and f.fn[BASEPOINT] != BASEPOINT:
        out.append("basepoint not preserved")
    for e in x.elements:
        if x.is_identity(e) and not y.is_identity(f.fn[e]):
            out.append(f"identity {e!r} not sent to an identity")
        if y.dom_of(f.fn[e]) != f.fn[x.dom_of(e)] or y.cod_of(f.fn[e]) != f.fn[x.cod_of(e)]:
            out.append(f"source/target of {e!r} not preserved")
    if out or x.discrete:
        return out
    for (g, h), gh in x.comp.items():
        if y.compose(f.fn[g], f.fn[h]) != f.fn[gh]:
            out.append(f"composite ({g!r},{h!r}) not preserved")
            break
    return out


# ---------------------------------------------------------------------------
# search


def _encode(y: VObj):
    if y._enc is None:
        idx = y.index
        tdom = [idx[y.dom_of(e)] for e in y.elements]
        tcod = [idx[y.cod_of(e)] for e in y.elements]
        y._enc = (tdom, tcod, None)
    return y._enc


def _comp_table(y: VObj):
    """Composition of ``y`` as a flat ``m × m`` array (``-1`` when undefined)."""
    tdom, tcod, table = _encode(y)
    if table is None:
        idx = y.index
        m = len(y.elements)
        if m * m > 25 * current_budget().max_table:
            raise BudgetExceeded(f"composition table of a {m}-element target exceeds max_table")
        table = array("i", [-1]) * (m * m)
        if y.discrete:
            for i in range(m):
                table[i * m + i] = i
        else:
            for (g, f), h in y.comp.items():
                table[idx[g] * m + idx[f]] = idx[h]
        y._enc = (tdom, tcod, table)
    return table


def search_maps(x: VObj, y: VObj, candidates: Optional[Dict[str, Iterable[str]]] = None,
                limit: Optional[int] = None, count_budget: bool = True) -> List[VMap]:
    """All structure-preserving maps ``x → y`` in lexicographic order.

    ``candidates`` optionally restricts the image of individual elements.
    With ``limit`` the search stops after that many solutions.  Raises
    :class:`BudgetExceeded` when more than ``max_maps`` maps would be
    enumerated (only when ``limit`` is not given) or the node cap is hit.
    """
    if x.kind is not y.kind:
        raise PreconditionError("kind mismatch")
    b = current_budget()
    n = len(x.elements)
    xi, yi = x.index, y.index
    both_discrete = x.discrete and y.discrete
    y_objs = [yi[o] for o in y.objects]
    all_y = list(range(len(y.elements)))
    cand = []
    for e in x.elements:
        if candidates is not None and e in candidates:
            cs = sorted(yi[v] for v in set(candidates[e]) if v in yi)
        elif x.pointed and e == BASEPOINT:
            cs = [yi[BASEPOINT]] if BASEPOINT in yi else []
        elif x.is_identity(e):
            cs = y_objs
        else:
            cs = all_y
        if x.pointed and e == BASEPOINT:
            cs = [c for c in cs if y.elements[c] == BASEPOINT]
        cand.append(cs)
    dom_checks = [[] for _ in range(n)]
    cod_checks = [[] for _ in range(n)]
    comp_checks = [[] for _ in range(n)]
    if not both_discrete:
        for e in x.elements:
            i = xi[e]
            d, c = xi[x.dom_of(e)], xi[x.cod_of(e)]
            dom_checks[max(i, d)].append((i, d))
            cod_checks[max(i, c)].append((i, c))
        if not x.discrete:
            for (g, f), h in x.comp.items():
                if x.is_identity(g) or x.is_identity(f):
                    continue
                a, bb, c = xi[g], xi[f], xi[h]
                comp_checks[max(a, bb, c)].append((a, bb, c))
    tdom, tcod, _ = _encode(y)
    tcomp = _comp_table(y) if any(comp_checks) else array("i")
    cap = limit if limit is not None else (b.max_maps + 1 if count_budget else -1)
    sols, nodes = kernel.search(dom_checks, cod_checks, comp_checks, tdom, tcod,
                                tcomp, cand, cap, b.max_nodes)
    note_usage("searches", 1)
    note_usage("nodes", abs(nodes))
    if nodes < 0:
        raise BudgetExceeded(f"search exceeded {b.max_nodes} nodes")
    if limit is None and count_budget and len(sols) > b.max_maps:
        raise BudgetExceeded(f"more than {b.max_maps} maps enumerated")
    note_usage("maps", len(sols))
    ye = y.elements
    xe = x.elements
    return [VMap(x, y, {xe[i]: ye[v] for i, v in enumerate(s)}) for s in sols]


def first_map(x: VObj, y: VObj, candidates=None) -> Optional[VMap]:
    found = search_maps(x, y, candidates, limit=1)
    return found[0] if found else None


# ---------------------------------------------------------------------------
# the base


class Base:
    """Structure of one of the four concrete bases.

    Obtain instances with :func:`get_base`.  All constructions return
    fresh :class:`VObj` values with canonical labels.
    """

    sliced = False

    def __init__(self, kind: BaseKind):
        self.kind = BaseKind(kind)
        self.pointed = self.kind is BaseKind.POINTED
        self._hom_cache: Dict = {}
        self._cache_weight = 0
        self._unit = None

    def __repr__(self):
        return f"Base({self.kind.value})"

    @property
    def label(self) -> str:
        return self.kind.value

    # unit ------------------------------------------------------------
    @property
    def unit(self) -> VObj:
        if self._unit is None:
            if self.pointed:
                self._unit = pointed_set(["1"])
            elif self.kind is BaseKind.CAT:
                self._unit = discrete_category(["*"])
            else:
                self._unit = VObj(self.kind, ["*"])
        return self._unit

    @property
    def unit_gen(self) -> str:
        return "1" if self.pointed else "*"

    @property
    def unit_is_terminal(self) -> bool:
        return not self.pointed

    @property
    def model_kind(self) -> BaseKind:
        """The base whose model structure governs this one."""
        return self.kind

    def to_unit_elem(self, x: VObj, e: str) -> str:
        """Image of ``e`` under ``x → I`` when the unit is terminal."""
        if not self.unit_is_terminal:
            raise PreconditionError("the unit is not terminal")
        return self.unit_gen

    def tuple_ok(self, factors: Sequence[VObj], t: Tuple[str, ...]) -> bool:
        """Hook for bases whose products are fibred."""
        return True

    def check_kind(self, *xs):
        for x in xs:
            if not isinstance(x, VObj) or x.kind is not self.kind:
                raise PreconditionError(f"expected an object of {self.name}, got {x!r}")

    def make_set(self, elements) -> VObj:
        return finite_set(self.kind, elements)

    def _mk(self, elements, dom, cod, comp, meta, discrete):
        if discrete:
            if self.kind is BaseKind.CAT:
                els = list(elements)
                dom = {e: e for e in els}
                comp = {(e, e): e for e in els}
                return VObj(self.kind, els, dom, dict(dom), comp, meta)
            return VObj(self.kind, elements, meta=meta)
        obj = VObj(self.kind, elements, dom, cod, comp, meta)
        if len(obj.objects) > current_budget().max_objects:
            raise BudgetExceeded(
                f"category with {len(obj.objects)} objects exceeds max_objects")
        return obj

    def _check_table(self, n):
        if n > current_budget().max_table:
            raise BudgetExceeded(f"composition table with {n} entries exceeds max_table")

    def _check_size(self, n):
        if n > current_budget().max_elements:
            raise BudgetExceeded(f"object with {n} elements exceeds max_elements")

    # maps ------------------------------------------------------------
    def maps(self, x: VObj, y: VObj, candidates=None, limit=None) -> List[VMap]:
        self.check_kind(x, y)
        return search_maps(x, y, candidates, limit)

    def identity(self, x: VObj) -> VMap:
        return identity(x)

    def compose(self, g: VMap, f: VMap) -> VMap:
        return compose(g, f)

    def validate(self, x: VObj) -> List[str]:
        return validate_vobj(x)

    def validate_map(self, f: VMap) -> List[str]:
        return validate_vmap(f)

    def carrier(self, x):
        return x

    # tensor ----------------------------------------------------------
    def tensor_elem(self, a: str, b: str) -> str:
        if self.pointed and (a == BASEPOINT or b == BASEPOINT):
            return BASEPOINT
        return f"({a},{b})"

    def tensor(self, x: VObj, y: VObj) -> VObj:
        self.check_kind(x, y)
        key = ("tensor", x, y)
        hit = self._hom_cache.get(key)
        if hit is not None:
            return hit
        pairs = {}
        for a in x.elements:
            for b in y.elements:
                t = self.tensor_elem(a, b)
                if t != BASEPOINT or not self.pointed:
                    pairs[t] = (a, b)
        els = list(pairs)
        if self.pointed:
            els.append(BASEPOINT)
        self._check_size(len(els))
        meta = {"pairs": pairs, "factors": (x, y)}
        if x.discrete and y.discrete:
            out = self._mk(els, None, None, None, meta, True)
        else:
            dom, cod, comp = {}, {}, {}
            for t, (a, b) in pairs.items():
                dom[t] = self.tensor_elem(x.dom_of(a), y.dom_of(b))
                cod[t] = self.tensor_elem(x.cod_of(a), y.cod_of(b))
            for t, (g1, g2) in pairs.items():
                for s, (f1, f2) in pairs.items():
                    if cod[s] == dom[t]:
                        comp[(t, s)] = self.tensor_elem(x.compose(g1, f1), y.compose(g2, f2))
            out = self._mk(els, dom, cod, comp, meta, False)
        self._cache(key, out)
        return out

    CACHE_WEIGHT = 2_000_000    # elements plus table entries kept alive by the cache

    def clear_cache(self) -> None:
        self._hom_cache.clear()
        self._cache_weight = 0

    def _cache(self, key, value):
        w = len(value.elements) + (len(value.comp) if value.comp else 0)
        if len(self._hom_cache) > 4096 or self._cache_weight + w > self.CACHE_WEIGHT:
            self._hom_cache.clear()
            self._cache_weight = 0
        self._hom_cache[key] = value
        self._cache_weight += w

    def split(self, t_obj: VObj, t: str) -> Optional[Tuple[str, str]]:
        """Components of a tensor element, ``None`` for the smash basepoint."""
        return t_obj.meta["pairs"].get(t)

    def tensor_map(self, f: VMap, g: VMap) -> VMap:
        src = self.tensor(f.source, g.source)
        tgt = self.tensor(f.target, g.target)
        fn = {}
        pairs = src.meta["pairs"]
        for t in src.elements:
            ab = pairs.get(t)
            fn[t] = BASEPOINT if ab is None else self.tensor_elem(f.fn[ab[0]], g.fn[ab[1]])
        return VMap(src, tgt, fn)

    def left_unitor(self, x: VObj) -> VMap:
        src = self.tensor(self.unit, x)
        return VMap(src, x, {t: (ab[1] if (ab := src.meta["pairs"].get(t)) else BASEPOINT)
                             for t in src.elements})

    def right_unitor(self, x: VObj) -> VMap:
        src = self.tensor(x, self.unit)
        return VMap(src, x, {t: (ab[0] if (ab := src.meta["pairs"].get(t)) else BASEPOINT)
                             for t in src.elements})

    def associator(self, x: VObj, y: VObj, z: VObj) -> VMap:
        xy = self.tensor(x, y)
        src = self.tensor(xy, z)
        yz = self.tensor(y, z)
        tgt = self.tensor(x, yz)
        fn = {}
        for t in src.elements:
            p = src.meta["pairs"].get(t)
            if p is None:
                fn[t] = BASEPOINT
                continue
            a, b = xy.meta["pairs"][p[0]]
            fn[t] = self.tensor_elem(a, self.tensor_elem(b, p[1]))
        return VMap(src, tgt, fn)

    def symmetry(self, x: VObj, y: VObj) -> VMap:
        src = self.tensor(x, y)
        tgt = self.tensor(y, x)
        fn = {}
        for t in src.elements:
            p = src.meta["pairs"].get(t)
            fn[t] = BASEPOINT if p is None else self.tensor_elem(p[1], p[0])
        return VMap(src, tgt, fn)

    # points ----------------------------------------------------------
    def points(self, x: VObj) -> List[str]:
        """Elements corresponding to global elements ``I → x``."""
        return list(x.objects)

    def global_elements(self, x: VObj) -> List[VMap]:
        return [self.point_map(x, e) for e in self.points(x)]

    def point_map(self, x: VObj, e: str) -> VMap:
        fn = {self.unit_gen: e}
        if self.pointed:
            fn[BASEPOINT] = BASEPOINT
        return VMap(self.unit, x, fn)

    def point_of(self, g: VMap) -> str:
        return g.fn[self.unit_gen]

    def is_object_elem(self, x: VObj, e: str) -> bool:
        return x.is_identity(e)

    def augmentation_of(self, x, e):
        """Only meaningful for sliced bases."""
        return None

    # internal hom ----------------------------------------------------
    def internal_hom(self, x: VObj, y: VObj) -> VObj:
        self.check_kind(x, y)
        key = ("hom", x, y)
        hit = self._hom_cache.get(key)
        if hit is not None:
            return hit
        out = self._internal_hom(x, y)
        self._cache(key, out)
        return out

    def _internal_hom(self, x: VObj, y: VObj) -> VObj:
        fmaps = search_maps(x, y)
        pointed = self.pointed
        decode = {}
        functors = {}
        for f in fmaps:
            lab = fun_label(f.images(), pointed)
            if lab in decode:
                raise LawViolation(f"label collision in internal hom: {lab!r}")
            decode[lab] = ("fun", f.fn)
            functors[lab] = f.fn
        meta = {"hom": (x, y), "decode": decode}
        if y.discrete:
            self._check_size(len(decode))
            return self._mk(list(decode), None, None, None, meta, True)
        # natural transformations as functors x × arrow → y
        cyl = self.tensor(x, arrow_category())
        hs = search_maps(cyl, y)
        dom, cod = {}, {}
        for lab in functors:
            dom[lab] = cod[lab] = lab
        for h in hs:
            F = {m: h.fn[self.tensor_elem(m, "0")] for m in x.elements}
            G = {m: h.fn[self.tensor_elem(m, "1")] for m in x.elements}
            comps = {o: h.fn[self.tensor_elem(o, "0>1")] for o in x.objects}
            lf = fun_label([F[m] for m in x.elements])
            lg = fun_label([G[m] for m in x.elements])
            if lf == lg and all(y.is_identity(comps[o]) for o in x.objects):
                continue
            lab = nat_label(lf, lg, [comps[o] for o in x.objects])
            if lab in decode:
                raise LawViolation(f"label collision in internal hom: {lab!r}")
            decode[lab] = ("nat", functors[lf], functors[lg], comps)
            dom[lab], cod[lab] = lf, lg
        self._check_size(len(decode))
        note_usage("elements", len(decode))
        comp = {}
        for lab in decode:
            comp[(cod[lab], lab)] = lab
            comp[(lab, dom[lab])] = lab
        nats = [lab for lab in decode if decode[lab][0] == "nat"]
        by_dom: Dict[str, List[str]] = {}
        for lab in nats:
            by_dom.setdefault(dom[lab], []).append(lab)
        self._check_table(sum(len(by_dom.get(cod[a], ())) for a in nats))
        for a in nats:
            for b in by_dom.get(cod[a], []):
                comp[(b, a)] = self._vertical(x, y, decode[b], decode[a])
        return self._mk(list(decode), dom, cod, comp, meta, False)

    def partial_internal_hom(self, x: VObj, y: VObj, maps: Sequence[VMap]) -> VObj:
        """Full sub-object of ``[x,y]`` on the given maps (plus the zero map
        when pointed), built without enumerating all of ``[x,y]``."""
        self.check_kind(x, y)
        pointed = self.pointed
        if pointed:
            maps = list(maps) + [VMap(x, y, {e: BASEPOINT for e in x.elements})]
        decode, functors = {}, {}
        for f in maps:
            lab = fun_label(f.images(), pointed)
            decode[lab] = ("fun", f.fn)
            functors[lab] = f.fn
        meta = {"hom": (x, y), "decode": decode, "partial": True}
        if y.discrete:
            return self._mk(list(decode), None, None, None, meta, True)
        dom = {lab: lab for lab in functors}
        cod = dict(dom)
        objs = x.objects
        for lf, F in functors.items():
            for lg, G in functors.items():
                choices = [y.hom(F[o], G[o]) for o in objs]
                for comps in itertools.product(*choices):
                    cm = dict(zip(objs, comps))
                    if not all(y.compose(G[m], cm[x.dom_of(m)]) == y.compose(cm[x.cod_of(m)], F[m])
                               for m in x.elements):
                        continue
                    if lf == lg and all(y.is_identity(c) for c in comps):
                        continue
                    lab = nat_label(lf, lg, list(comps))
                    decode[lab] = ("nat", F, G, cm)
                    dom[lab], cod[lab] = lf, lg
        self._check_size(len(decode))
        comp = {}
        for lab in decode:
            comp[(cod[lab], lab)] = lab
            comp[(lab, dom[lab])] = lab
        nats = [lab for lab in decode if decode[lab][0] == "nat"]
        self._check_table(len(nats) ** 2)
        for a in nats:
            for b in nats:
                if dom[b] == cod[a]:
                    comp[(b, a)] = self._vertical(x, y, decode[b], decode[a])
        return self._mk(list(decode), dom, cod, comp, meta, False)

    def _vertical(self, x, y, beta, alpha) -> str:
        _, F, _, ca = alpha
        _, _, H, cb = beta
        comps = [y.compose(cb[o], ca[o]) for o in x.objects]
        return self._label_nat(x, y, F, H, comps)

    def _label_nat(self, x, y, F, G, comps: List[str]) -> str:
        lf = fun_label([F[m] for m in x.elements], self.pointed)
        lg = fun_label([G[m] for m in x.elements], self.pointed)
        if lf == lg and all(y.is_identity(c) for c in comps):
            return lf
        return nat_label(lf, lg, comps)

    def decode(self, h: VObj, phi: str):
        """``("fun", mapping)`` or ``("nat", F, G, components)``."""
        try:
            return h.meta["decode"][phi]
        except KeyError:
            raise PreconditionError(f"{phi!r} is not an element of this internal hom")

    def hom_factors(self, h: VObj) -> Tuple[VObj, VObj]:
        return h.meta["hom"]

    def ev(self, h: VObj, phi: str, a: str) -> str:
        """Evaluation ``[x,y] ⊗ x → y`` on the element ``phi ⊗ a``."""
        x, y = h.meta["hom"]
        d = self.decode(h, phi)
        if d[0] == "fun":
            return d[1][a]
        _, F, G, comps = d
        return y.compose(G[a], comps[x.dom_of(a)])

    def evaluation(self, x: VObj, y: VObj) -> VMap:
        h = self.internal_hom(x, y)
        src = self.tensor(h, x)
        fn = {}
        for t in src.elements:
            p = src.meta["pairs"].get(t)
            fn[t] = BASEPOINT if p is None else self.ev(h, p[0], p[1])
        return VMap(src, y, fn)

    def curry_elem(self, z: VObj, x: VObj, y: VObj, zel: str, fn) -> str:
        """Label in ``[x,y]`` of ``fn(zel, -)``; ``fn(z, a)`` gives elements of y."""
        if self.pointed and zel == BASEPOINT:
            return BASEPOINT
        if z.is_identity(zel):
            return fun_label([fn(zel, m) for m in x.elements], self.pointed)
        F = {m: fn(z.dom_of(zel), m) for m in x.elements}
        G = {m: fn(z.cod_of(zel), m) for m in x.elements}
        return self._label_nat(x, y, F, G, [fn(zel, o) for o in x.objects])

    def curry(self, f: VMap, z: VObj, x: VObj) -> VMap:
        """Transpose of ``f: z ⊗ x → y`` to ``z → [x,y]``."""
        y = f.target
        h = self.internal_hom(x, y)
        fn = {zel: self.curry_elem(z, x, y, zel, lambda s, a: f.fn[self.tensor_elem(s, a)])
              for zel in z.elements}
        for v in fn.values():
            if v not in h.index:
                raise LawViolation("curried element missing from internal hom")
        return VMap(z, h, fn)

    def uncurry(self, g: VMap, x: VObj) -> VMap:
        """Transpose of ``g: z → [x,y]`` to ``z ⊗ x → y``."""
        h = g.target
        _, y = h.meta["hom"]
        src = self.tensor(g.source, x)
        fn = {}
        for t in src.elements:
            p = src.meta["pairs"].get(t)
            fn[t] = BASEPOINT if p is None else self.ev(h, g.fn[p[0]], p[1])
        return VMap(src, y, fn)

    def name(self, f: VMap) -> str:
        """Element of ``[x,y]`` naming ``f``."""
        return fun_label(f.images(), self.pointed)

    def name_map(self, f: VMap) -> VMap:
        return self.point_map(self.internal_hom(f.source, f.target), self.name(f))

    def unname(self, h: VObj, phi: str) -> VMap:
        x, y = h.meta["hom"]
        d = self.decode(h, phi)
        if d[0] != "fun":
            raise PreconditionError("element is not a point of the internal hom")
        return VMap(x, y, dict(d[1]))

    def hom_identity(self, x: VObj) -> str:
        return self.name(identity(x))

    def compose_elems(self, hyz: VObj, hxy: VObj, beta: str, alpha: str) -> str:
        """Image of ``beta ⊗ alpha`` under ``[y,z] ⊗ [x,y] → [x,z]``."""
        if self.pointed and (beta == BASEPOINT or alpha == BASEPOINT):
            return BASEPOINT
        x, y = hxy.meta["hom"]
        _, z = hyz.meta["hom"]
        db, da = self.decode(hyz, beta), self.decode(hxy, alpha)
        if db[0] == "fun" and da[0] == "fun":
            G, F = db[1], da[1]
            return fun_label([G[F[m]] for m in x.elements], self.pointed)
        if db[0] == "fun":
            G = H = db[1]
            cb = {o: G[o] for o in y.objects}
        else:
            _, G, H, cb = db
        if da[0] == "fun":
            F = Fp = da[1]
            ca = {o: F[o] for o in x.objects}
        else:
            _, F, Fp, ca = da
        GF = {m: G[F[m]] for m in x.elements}
        HFp = {m: H[Fp[m]] for m in x.elements}
        comps = [z.compose(cb[Fp[o]], G[ca[o]]) for o in x.objects]
        return self._label_nat(x, z, GF, HFp, comps)

    def hom_composition(self, x: VObj, y: VObj, z: VObj) -> VMap:
        hyz, hxy, hxz = self.internal_hom(y, z), self.internal_hom(x, y), self.internal_hom(x, z)
        src = self.tensor(hyz, hxy)
        fn = {}
        for t in src.elements:
            p = src.meta["pairs"].get(t)
            fn[t] = BASEPOINT if p is None else self.compose_elems(hyz, hxy, p[0], p[1])
        return VMap(src, hxz, fn)

    def post_map(self, x: VObj, f: VMap) -> VMap:
        """``[x,f]: [x,y] → [x,y']``."""
        hxy = self.internal_hom(x, f.source)
        hyy = self.internal_hom(f.source, f.target)
        nf = self.name(f)
        return VMap(hxy, self.internal_hom(x, f.target),
                    {p: self.compose_elems(hyy, hxy, nf, p) for p in hxy.elements})

    def pre_map(self, f: VMap, y: VObj) -> VMap:
        """``[f,y]: [x',y] → [x,y]`` for ``f: x → x'``."""
        hxx = self.internal_hom(f.source, f.target)
        hx2y = self.internal_hom(f.target, y)
        nf = self.name(f)
        return VMap(hx2y, self.internal_hom(f.source, y),
                    {p: self.compose_elems(hx2y, hxx, p, nf) for p in hx2y.elements})

    # limits and colimits ----------------------------------------------
    def terminal(self) -> VObj:
        if self.pointed:
            return pointed_set([])
        return self.make_set(["*"])

    def initial(self) -> VObj:
        if self.pointed:
            return pointed_set([])
        return self.make_set([])

    def to_terminal(self, x: VObj) -> VMap:
        t = self.terminal()
        return VMap(x, t, {e: t.elements[0] for e in x.elements})

    def from_initial(self, x: VObj) -> VMap:
        i = self.initial()
        return VMap(i, x, {e: BASEPOINT for e in i.elements})

    def sub_product(self, factors: Sequence[VObj], tuples: Iterable[Tuple[str, ...]]):
        """Sub-object of the product on the given tuples, with projections.

        For categories the tuples must be closed under componentwise
        source, target and composition.
        """
        for f in factors:
            self.check_kind(f)
        tuples = list(dict.fromkeys(tuple(t) for t in tuples))
        self._check_size(len(tuples))
        lab = {t: tuple_label(t, self.pointed) for t in tuples}
        if self.pointed:
            bp = tuple(BASEPOINT for _ in factors)
            if bp not in lab:
                raise LawViolation("sub-product of pointed sets must contain the basepoint")
        decode = {v: k for k, v in lab.items()}
        if len(decode) != len(lab):
            raise LawViolation("tuple label collision")
        meta = {"tuple": decode, "factors": tuple(factors)}
        if all(f.discrete for f in factors):
            obj = self._mk(list(decode), None, None, None, meta, True)
        else:
            dom, cod = {}, {}
            for t, l in lab.items():
                dt = tuple(f.dom_of(a) for f, a in zip(factors, t))
                ct = tuple(f.cod_of(a) for f, a in zip(factors, t))
                if dt not in lab or ct not in lab:
                    raise LawViolation("sub-product not closed under source/target")
                dom[l], cod[l] = lab[dt], lab[ct]
            comp = {}
            by_dom: Dict[str, List[Tuple[str, ...]]] = {}
            for t, l in lab.items():
                by_dom.setdefault(dom[l], []).append(t)
            for f_t, fl in lab.items():
                for g_t in by_dom.get(cod[fl], []):
                    h = tuple(fa.compose(g, f) for fa, g, f in zip(factors, g_t, f_t))
                    if h not in lab:
                        raise LawViolation("sub-product not closed under composition")
                    comp[(lab[g_t], fl)] = lab[h]
            obj = self._mk(list(decode), dom, cod, comp, meta, False)
        projs = [VMap(obj, f, {l: decode[l][i] for l in obj.elements})
                 for i, f in enumerate(factors)]
        return obj, projs

    def product(self, factors: Sequence[VObj]):
        total = 1
        for f in factors:
            total *= len(f.elements)
        self._check_size(total)
        return self.sub_product(factors, itertools.product(*[f.elements for f in factors]))

    def tuple_of(self, p: VObj, e: str) -> Tuple[str, ...]:
        return p.meta["tuple"][e]

    def tuple_elem(self, p: VObj, items: Sequence[str]) -> str:
        lab = tuple_label(tuple(items), self.pointed)
        if lab not in p.index:
            raise PreconditionError("tuple not in product")
        return lab

    def pairing(self, p: VObj, maps: Sequence[VMap]) -> VMap:
        src = maps[0].source
        return VMap(src, p, {e: self.tuple_elem(p, [m.fn[e] for m in maps])
                             for e in src.elements})

    def pullback(self, f: VMap, g: VMap):
        """``(P, p1, p2)`` with ``f∘p1 = g∘p2``."""
        if f.target != g.target:
            raise PreconditionError("pullback of maps with different targets")
        by_img: Dict[str, List[str]] = {}
        for b in g.source.elements:
            by_img.setdefault(g.fn[b], []).append(b)
        tuples = [(a, b) for a in f.source.elements for b in by_img.get(f.fn[a], [])]
        obj, (p1, p2) = self.sub_product([f.source, g.source], tuples)
        return obj, p1, p2

    def subobject(self, x: VObj, keep: Iterable[str]):
        """Full sub-object on ``keep`` with its inclusion."""
        keep = set(keep)
        if self.pointed:
            keep.add(BASEPOINT)
        els = [e for e in x.elements if e in keep]
        meta = {k: v for k, v in x.meta.items()}
        meta["parent"] = x
        if x.discrete:
            obj = self._mk(els, None, None, None, meta, True)
        else:
            for e in els:
                if x.dom[e] not in keep or x.cod[e] not in keep:
                    raise LawViolation("subobject not closed under source/target")
            comp = {}
            for (g, f), h in x.comp.items():
                if g in keep and f in keep:
                    if h not in keep:
                        raise LawViolation("subobject not closed under composition")
                    comp[(g, f)] = h
            obj = self._mk(els, {e: x.dom[e] for e in els}, {e: x.cod[e] for e in els},
                           comp, meta, False)
        return obj, VMap(obj, x, {e: e for e in els})

    def equalizer(self, f: VMap, g: VMap):
        return self.subobject(f.source, [e for e in f.source.elements if f.fn[e] == g.fn[e]])

    def coproduct(self, summands: Sequence[VObj]):
        for s in summands:
            self.check_kind(s)
        decode = {}
        for i, s in enumerate(summands):
            for a in s.elements:
                if self.pointed and a == BASEPOINT:
                    continue
                decode[inj_label(i, a)] = (i, a)
        els = list(decode)
        if self.pointed:
            els.append(BASEPOINT)
        meta = {"summands": decode, "factors": tuple(summands)}
        if all(s.discrete for s in summands):
            obj = self._mk(els, None, None, None, meta, True)
        else:
            dom, cod, comp = {}, {}, {}
            for lab, (i, a) in decode.items():
                s = summands[i]
                dom[lab] = inj_label(i, s.dom_of(a))
                cod[lab] = inj_label(i, s.cod_of(a))
            for i, s in enumerate(summands):
                for g in s.elements:
                    for f in s.elements:
                        h = s.compose(g, f)
                        if h is not None:
                            comp[(inj_label(i, g), inj_label(i, f))] = inj_label(i, h)
            obj = self._mk(els, dom, cod, comp, meta, False)
        injs = []
        for i, s in enumerate(summands):
            fn = {a: (BASEPOINT if self.pointed and a == BASEPOINT else inj_label(i, a))
                  for a in s.elements}
            injs.append(VMap(s, obj, fn))
        return obj, injs

    def copair(self, cop: VObj, maps: Sequence[VMap]) -> VMap:
        tgt = maps[0].target
        fn = {}
        for e in cop.elements:
            if self.pointed and e == BASEPOINT:
                fn[e] = BASEPOINT
                continue
            i, a = cop.meta["summands"][e]
            fn[e] = maps[i].fn[a]
        return VMap(cop, tgt, fn)

    def pushout(self, f: VMap, g: VMap):
        """Pushout of ``X ← A → Y``; for categories ``A`` must be discrete and
        ``f``, ``g`` injective on objects.  Returns ``(P, i1, i2)``."""
        if f.source != g.source:
            raise PreconditionError("pushout of maps with different sources")
        X, Y, A = f.target, g.target, f.source
        if X.discrete and Y.discrete:
            return self._pushout_sets(f, g)
        if not A.discrete and any(not A.is_identity(e) for e in A.elements):
            raise PreconditionError("category pushouts are only supported along discrete sources")
        if len({f.fn[a] for a in A.objects}) != len(A.objects) or \
                len({g.fn[a] for a in A.objects}) != len(A.objects):
            raise PreconditionError("category pushouts need injective-on-objects legs")
        return self._pushout_cats(f, g)

    def _pushout_sets(self, f, g):
        X, Y = f.target, g.target
        members = [inj_label(0, a) for a in X.elements] + [inj_label(1, b) for b in Y.elements]
        parent = {m: m for m in members}

        def find(m):
            while parent[m] != m:
                parent[m] = parent[parent[m]]
                m = parent[m]
            return m

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                lo, hi = sorted((ra, rb))
                parent[hi] = lo

        for a in f.source.elements:
            union(inj_label(0, f.fn[a]), inj_label(1, g.fn[a]))
        if self.pointed:
            union(inj_label(0, BASEPOINT), inj_label(1, BASEPOINT))
        classes: Dict[str, List[str]] = {}
        for m in members:
            classes.setdefault(find(m), []).append(m)
        label = {}
        for rep, ms in classes.items():
            lab = min(ms)
            if self.pointed and inj_label(0, BASEPOINT) in ms:
                lab = BASEPOINT
            for m in ms:
                label[m] = lab
        P = self._mk(sorted(set(label.values())), None, None, None,
                     {"pushout_of": (X, Y), "classes": label}, True)
        i1 = VMap(X, P, {a: label[inj_label(0, a)] for a in X.elements})
        i2 = VMap(Y, P, {b: label[inj_label(1, b)] for b in Y.elements})
        return P, i1, i2

    def _pushout_cats(self, f, g):
        X, Y, A = f.target, g.target, f.source
        # objects: classes of obj X + obj Y under f a ~ g a
        obj_label = {}
        glue_y = {g.fn[a]: f.fn[a] for a in A.objects}
        for o in X.objects:
            obj_label[(0, o)] = inj_label(0, o)
        for o in Y.objects:
            obj_label[(1, o)] = inj_label(0, glue_y[o]) if o in glue_y else inj_label(1, o)
        letters = []
        for side, C in ((0, X), (1, Y)):
            for m in C.elements:
                if not C.is_identity(m):
                    letters.append((side, m))
        cats = (X, Y)

        def ldom(l):
            return obj_label[(l[0], cats[l[0]].dom_of(l[1]))]

        def lcod(l):
            return obj_label[(l[0], cats[l[0]].cod_of(l[1]))]

        # words are tuples of letters in application order (first applied first)
        limit = current_budget().max_elements
        words = [(l,) for l in letters]
        frontier = list(words)
        while frontier:
            nxt = []
            for w in frontier:
                last = w[-1]
                for l in letters:
                    if l[0] != last[0] and ldom(l) == lcod(last):
                        nxt.append(w + (l,))
            words.extend(nxt)
            if len(words) > limit:
                raise BudgetExceeded("pushout of categories is too large (possibly infinite)")
            frontier = nxt

        def wlabel(w):
            return ".".join(inj_label(s, m) for s, m in reversed(w))

        objs = sorted(set(obj_label.values()))
        dom = {o: o for o in objs}
        cod = {o: o for o in objs}
        wl = {}
        for w in words:
            lab = wlabel(w)
            wl[w] = lab
            dom[lab], cod[lab] = ldom(w[0]), lcod(w[-1])

        def reduce(w):
            out = []
            for l in w:
                out.append(l)
                while len(out) >= 2 and out[-1][0] == out[-2][0]:
                    s = out[-1][0]
                    C = cats[s]
                    h = C.compose(out[-1][1], out[-2][1])
                    out.pop()
                    out.pop()
                    if not C.is_identity(h):
                        out.append((s, h))
            return tuple(out)

        comp = {}
        for o in objs:
            comp[(o, o)] = o
        for w, lab in wl.items():
            comp[(cod[lab], lab)] = lab
            comp[(lab, dom[lab])] = lab
        by_dom: Dict[str, List[Tuple]] = {}
        for w, lab in wl.items():
            by_dom.setdefault(dom[lab], []).append(w)
        for w1, l1 in wl.items():
            for w2 in by_dom.get(cod[l1], []):
                r = reduce(w1 + w2)
                comp[(wl[w2], l1)] = wl[r] if r else dom[l1]
        meta = {"pushout_of": (X, Y), "words": {lab: w for w, lab in wl.items()},
                "obj_label": obj_label}
        P = self._mk(list(dom), dom, cod, comp, meta, False)

        def incl(side, C):
            fn = {}
            for m in C.elements:
                fn[m] = obj_label[(side, m)] if C.is_identity(m) else wl[((side, m),)]
            return VMap(C, P, fn)

        return P, incl(0, X), incl(1, Y)

    def pushout_induced(self, P: VObj, h1: VMap, h2: VMap) -> VMap:
        """The map out of a pushout induced by compatible ``h1``, ``h2``."""
        Z = h1.target
        fn = {}
        if P.discrete:
            classes = P.meta["classes"]
            for m, lab in classes.items():
                side = 0 if m.startswith("in0(") else 1
                inner = m[4:-1]
                v = (h1 if side == 0 else h2).fn[inner]
                if lab in fn and fn[lab] != v:
                    raise PreconditionError("maps do not agree on the glued part")
                fn[lab] = v
            return VMap(P, Z, fn)
        obj_label = P.meta["obj_label"]
        for (side, o), lab in obj_label.items():
            v = (h1 if side == 0 else h2).fn[o]
            if lab in fn and fn[lab] != v:
                raise PreconditionError("maps do not agree on the glued part")
            fn[lab] = v
        for lab, w in P.meta["words"].items():
            acc = None
            for side, m in w:
                v = (h1 if side == 0 else h2).fn[m]
                acc = v if acc is None else Z.compose(v, acc)
            fn[lab] = acc
        return VMap(P, Z, fn)

    # model structure --------------------------------------------------
    def classify(self, f: VMap) -> MapClass:
        k = self.kind
        if k in (BaseKind.SET_TRIVIAL, BaseKind.POINTED):
            return MapClass(True, True, is_iso(f))
        if k is BaseKind.SET_SPLIT:
            return MapClass(is_injective(f), is_surjective(f), True)
        return MapClass(injective_on_objects(f), is_isofibration(f),
                        equivalence_witness(f) is not None)

    def in_e_closed_form(self, f: VMap) -> bool:
        """Closed-form description of the shrinkable maps of the base."""
        k = self.kind
        if k in (BaseKind.SET_TRIVIAL, BaseKind.POINTED):
            return is_iso(f)
        if k is BaseKind.SET_SPLIT:
            return is_surjective(f)
        return surjective_on_objects(f) and equivalence_witness(f) is not None

    def is_cofibrant(self, x: VObj) -> bool:
        return self.classify(self.from_initial(x)).cofibration

    def solve_lifting(self, i: VMap, p: VMap, u: VMap, v: VMap) -> Optional[VMap]:
        """Diagonal ``l`` with ``l∘i = u`` and ``p∘l = v`` for the square
        ``p∘u = v∘i`` (``i: A → B``, ``p: E → X``, ``u: A → E``, ``v: B → X``)."""
        if compose(p, u) != compose(v, i):
            raise PreconditionError("lifting square does not commute")
        E = p.source
        over: Dict[str, List[str]] = {}
        for e in E.elements:
            over.setdefault(p.fn[e], []).append(e)
        cand = {}
        forced: Dict[str, str] = {}
        for a in i.source.elements:
            b = i.fn[a]
            if b in forced and forced[b] != u.fn[a]:
                return None
            forced[b] = u.fn[a]
        for b in i.target.elements:
            cs = over.get(v.fn[b], [])
            if b in forced:
                cs = [c for c in cs if c == forced[b]]
            cand[b] = cs
        return first_map(i.target, E, cand)


# ---------------------------------------------------------------------------
# predicates on maps


def is_injective(f: VMap) -> bool:
    return len(set(f.fn.values())) == len(f.fn)


def is_surjective(f: VMap) -> bool:
    return set(f.fn.values()) == set(f.target.elements)


def is_iso(f: VMap) -> bool:
    return is_injective(f) and is_surjective(f)


def inverse(f: VMap) -> VMap:
    if not is_iso(f):
        raise PreconditionError("map is not invertible")
    return VMap(f.target, f.source, {v: k for k, v in f.fn.items()})


def injective_on_objects(f: VMap) -> bool:
    objs = f.source.objects
    return len({f.fn[o] for o in objs}) == len(objs)


def surjective_on_objects(f: VMap) -> bool:
    return {f.fn[o] for o in f.source.objects} == set(f.target.objects)


def is_isofibration(f: VMap) -> bool:
    E, B = f.source, f.target
    for e in E.objects:
        for g in B.elements:
            if B.dom_of(g) != f.fn[e] or not B.is_iso_elem(g):
                continue
            if not any(E.dom_of(h) == e and f.fn[h] == g and E.is_iso_elem(h)
                       for h in E.elements):
                return False
    return True


def is_fully_faithful(f: VMap) -> bool:
    X, Y = f.source, f.target
    for a in X.objects:
        for b in X.objects:
            src = X.hom(a, b)
            imgs = {f.fn[m] for m in src}
            if len(imgs) != len(src) or imgs != set(Y.hom(f.fn[a], f.fn[b])):
                return False
    return True


def equivalence_witness(f: VMap) -> Optional[EquivalenceWitness]:
    """Construct a quasi-inverse of the functor ``f`` and verify it.

    Returns ``None`` when ``f`` is not fully faithful or not essentially
    surjective.  The construction picks, for each object ``b``, the first
    object ``a`` with an isomorphism ``f a ≅ b`` and the first such iso.
    """
    X, Y = f.source, f.target
    if not is_fully_faithful(f):
        return None
    choice = {}
    for b in Y.objects:
        found = None
        for a in X.objects:
            for iso in Y.hom(f.fn[a], b):
                if Y.is_iso_elem(iso):
                    found = (a, iso)
                    break
            if found:
                break
        if found is None:
            return None
        choice[b] = found
    # f restricted to homs, inverted
    pre: Dict[Tuple[str, str], Dict[str, str]] = {}
    for a in X.objects:
        for a2 in X.objects:
            pre[(a, a2)] = {f.fn[m]: m for m in X.hom(a, a2)}
    G = {}
    for g in Y.elements:
        b, b2 = Y.dom_of(g), Y.cod_of(g)
        a, phi = choice[b]
        a2, phi2 = choice[b2]
        target = Y.compose(Y.inverse_of(phi2), Y.compose(g, phi))
        G[g] = pre[(a, a2)][target]
    Gm = VMap(Y, X, G)
    if validate_vmap(Gm):
        raise LawViolation("constructed quasi-inverse is not a functor")
    counit = {b: choice[b][1] for b in Y.objects}           # F G b → b
    unit = {}                                              # a → G F a
    for a in X.objects:
        b = f.fn[a]
        a2, phi = choice[b]
        unit[a] = pre[(a, a2)][Y.inverse_of(phi)]
    # verify naturality and invertibility
    for a in X.objects:
        if not X.is_iso_elem(unit[a]):
            raise LawViolation("unit component not invertible")
    for m in X.elements:
        a, a2 = X.dom_of(m), X.cod_of(m)
        if X.compose(unit[a2], m) != X.compose(G[f.fn[m]], unit[a]):
            raise LawViolation("unit not natural")
    for g in Y.elements:
        b, b2 = Y.dom_of(g), Y.cod_of(g)
        if Y.compose(counit[b2], f.fn[G[g]]) != Y.compose(g, counit[b]):
            raise LawViolation("counit not natural")
    return EquivalenceWitness(Gm, unit, counit)


# ---------------------------------------------------------------------------

_BASES: Dict[BaseKind, Base] = {}


def clear_base_caches(*extra: Base) -> None:
    """Drop memoised internal homs, so work counters restart from a cold state."""
    for b in list(_BASES.values()) + list(extra):
        b.clear_cache()


def get_base(kind) -> Base:
    """The shared :class:`Base` instance for ``kind`` (a sliced base passes through)."""
    if isinstance(kind, Base) or getattr(kind, "sliced", False):
        return kind
    kind = BaseKind(kind)
    if kind not in _BASES:
        _BASES[kind] = Base(kind)
    return _BASES[kind]


def base_of(x) -> Base:
    b = getattr(x, "base", None)
    if b is not None:
        return b
    return get_base(x.kind)


def global_elements(x: VObj) -> List[VMap]:
    return base_of(x).global_elements(x)


def classify_map(f: VMap) -> MapClass:
    return base_of(f.source).classify(f)


def tensor(x: VObj, y: VObj) -> VObj:
    return base_of(x).tensor(x, y)


def internal_hom(x: VObj, y: VObj) -> VObj:
    return base_of(x).internal_hom(x, y)


def solve_lifting(i: VMap, p: VMap, u: VMap, v: VMap) -> Optional[VMap]:
    return base_of(i.source).solve_lifting(i, p, u, v)
