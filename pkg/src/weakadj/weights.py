"""Enriched presheaves, objects of natural transformations and weighted limits.

Everything is brute force: the object of natural transformations is cut
out of a finite product of internal homs by the naturality equations, and
a weighted limit is found by trying every apex and every cone and checking
that the induced comparison is invertible at every object.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .base import (BASEPOINT, BaseKind, MapClass, VMap, VObj, identity, inj_label,
                   is_iso, tuple_label)
from .errors import BudgetExceeded, LawViolation, PreconditionError, current_budget
from .interval import GlobalHomotopyWitness, Interval, homotopy_search, standard_interval
from .vcat import VCategory, VFunctor, point_functor, unit_vcategory


class Weight:
    """A V-functor ``shape → V`` given by objects and an elementwise action.

    ``act(d, d2, k, w)`` is the image of ``k ⊗ w`` under
    ``shape(d, d2) ⊗ W d → W d2``.
    """

    def __init__(self, shape: VCategory, at: Dict[str, VObj], act: Callable,
                 name: str = "", provenance=None):
        self.shape = shape
        self.at = dict(at)
        self._act = act
        self._memo: Dict = {}
        self.name = name
        self.provenance = provenance

    def __repr__(self):
        return f"Weight<{self.name or '?'} on {self.shape.name}>"

    @property
    def base(self):
        return self.shape.base

    def act(self, d: str, d2: str, k: str, w: str) -> str:
        if self.base.pointed and (k == BASEPOINT or w == BASEPOINT):
            return BASEPOINT
        key = (d, d2, k, w)
        r = self._memo.get(key)
        if r is None:
            r = self._act(d, d2, k, w)
            self._memo[key] = r
        return r

    def act_map(self, d: str, d2: str) -> VMap:
        base = self.base
        src = base.tensor(self.shape.hom(d, d2), self.at[d])
        fn = {}
        for t in src.elements:
            p = base.split(src, t)
            fn[t] = BASEPOINT if p is None else self.act(d, d2, p[0], p[1])
        return VMap(src, self.at[d2], fn)


def weight_violations(W: Weight) -> List[str]:
    D, base = W.shape, W.base
    for d in D.objects:
        if d not in W.at:
            return [f"no value at {d!r}"]
    for d, d2 in itertools.product(D.objects, repeat=2):
        try:
            m = W.act_map(d, d2)
        except (KeyError, LawViolation) as exc:
            return [f"action ({d},{d2}) undefined: {exc}"]
        v = base.validate_map(m)
        if v:
            return [f"action ({d},{d2}) is not a morphism: {v[0]}"]
        if any(x not in W.at[d2].index for x in m.fn.values()):
            return [f"action ({d},{d2}) leaves W({d2})"]
    out = []
    for d in D.objects:
        for w in W.at[d].elements:
            if W.act(d, d, D.ident[d], w) != w:
                out.append(f"identity of {d!r} does not act trivially on {w!r}")
    for d, d2, d3 in itertools.product(D.objects, repeat=3):
        for k2 in D.hom(d2, d3).elements:
            for k1 in D.hom(d, d2).elements:
                k = D.compose(d, d2, d3, k2, k1)
                for w in W.at[d].elements:
                    if W.act(d, d3, k, w) != W.act(d2, d3, k2, W.act(d, d2, k1, w)):
                        out.append(f"action not associative at ({d},{d2},{d3}) on ({k2},{k1},{w})")
                        return out
    return out


def validate_weight(W: Weight) -> Weight:
    v = weight_violations(W)
    if v:
        raise LawViolation(f"invalid weight {W.name!r}", v)
    return W


# ---------------------------------------------------------------------------
# constructors


def representable(D: VCategory, d: str) -> Weight:
    """``D(d, −)``."""
    at = {x: D.hom(d, x) for x in D.objects}
    return Weight(D, at, lambda x, x2, k, m: D.compose(d, x, x2, k, m),
                  name=f"{D.name}({d},-)", provenance=("representable", d))


def hom_weight(C: VCategory, X: str, S: VFunctor) -> Weight:
    """``C(X, S−)`` for a diagram ``S: D → C``."""
    D = S.source
    at = {d: C.hom(X, S(d)) for d in D.objects}

    def act(d, d2, k, m):
        return C.compose(X, S(d), S(d2), S.on(d, d2, k), m)

    return Weight(D, at, act, name=f"C({X},S-)")


def constant_unit(D: VCategory, P: Optional[VFunctor] = None) -> Weight:
    """``IP``: constant at the unit, acting through the augmentation ``P: D → I``.

    When the unit is terminal ``P`` is forced and may be omitted.
    """
    base = D.base
    I = base.unit
    if P is None and not base.unit_is_terminal:
        raise PreconditionError("an augmentation D → I is needed when the unit is not terminal")
    lam = base.left_unitor(I)

    def act(d, d2, k, t):
        if P is not None:
            a = P.on(d, d2, k)
        else:
            a = base.to_unit_elem(D.hom(d, d2), k)
        return lam.fn[base.tensor_elem(a, t)]

    return Weight(D, {d: I for d in D.objects}, act, name="IP",
                  provenance=("unit",))


def coproduct_weight(ws: Sequence[Weight], name: str = "") -> Weight:
    D = ws[0].shape
    base = D.base
    at, injs = {}, {}
    for d in D.objects:
        at[d], injs[d] = base.coproduct([w.at[d] for w in ws])

    def act(d, d2, k, e):
        i, a = at[d].meta["summands"][e]
        return injs[d2][i].fn[ws[i].act(d, d2, k, a)]

    return Weight(D, at, act, name=name or "+".join(w.name for w in ws),
                  provenance=("coproduct", tuple(ws)))


def copower_weight(X: VObj, W: Weight, name: str = "") -> Weight:
    """``X · W`` computed pointwise as ``X ⊗ W d``."""
    base = W.base
    at = {d: base.tensor(X, W.at[d]) for d in W.shape.objects}

    def act(d, d2, k, t):
        x, w = base.split(at[d], t)
        return base.tensor_elem(x, W.act(d, d2, k, w))

    return Weight(W.shape, at, act, name=name or f"X.{W.name}", provenance=("copower", X, W))


def free_parallel_pair(base, a: str = "a", b: str = "b") -> VCategory:
    """The free V-category on two parallel arrows ``a ⇉ b``.

    ``hom(a,b) = I + I`` whose points ``in0(·)``, ``in1(·)`` are the two arrows.
    """
    I = base.unit
    cop, _ = base.coproduct([I, I])
    homs = {(a, a): I, (b, b): I, (a, b): cop, (b, a): base.initial()}

    def composer(x, y, z, g, f):
        if x == y:
            return g
        return f

    return VCategory(base, [a, b], homs, composer, {a: base.unit_gen, b: base.unit_gen},
                     name="Eq")


def interval_weight(Eq: VCategory, iv: Interval) -> Weight:
    """The weight ``I ⇉ J`` on the free parallel pair given by ``d, c``."""
    base = Eq.base
    a, b = Eq.objects
    I = base.unit
    cop = Eq.hom(a, b)
    dc = base.copair(cop, [iv.d, iv.c])
    rho = base.right_unitor(cop)

    def act(x, y, k, t):
        if x == y:
            return t
        return dc.fn[rho.fn[base.tensor_elem(k, t)]]

    return Weight(Eq, {a: I, b: iv.J}, act, name="Q_J", provenance=("interval", iv))


# ---------------------------------------------------------------------------
# transformations and the object of natural transformations


@dataclass
class WeightMap:
    source: Weight
    target: Weight
    comps: Dict[str, VMap]

    def violations(self) -> List[str]:
        W, V = self.source, self.target
        D = W.shape
        out = []
        for d in D.objects:
            c = self.comps.get(d)
            if c is None or c.source != W.at[d] or c.target != V.at[d]:
                return [f"component at {d!r} has the wrong type"]
            v = W.base.validate_map(c)
            if v:
                return [f"component at {d!r}: {v[0]}"]
        for d, d2 in itertools.product(D.objects, repeat=2):
            for k in D.hom(d, d2).elements:
                for w in W.at[d].elements:
                    if self.comps[d2].fn[W.act(d, d2, k, w)] != V.act(d, d2, k, self.comps[d].fn[w]):
                        out.append(f"not natural at ({d},{d2}) on ({k},{w})")
                        return out
        return out


def _backtrack(cands: List[List[str]], check: Callable[[int, int, str, str], bool],
               limit: int) -> List[Tuple[str, ...]]:
    """All tuples with entry ``i`` from ``cands[i]`` passing every pairwise check."""
    n = len(cands)
    out: List[Tuple[str, ...]] = []
    cur: List[str] = []
    nodes = 0
    cap = current_budget().max_nodes

    def rec(i):
        nonlocal nodes
        if i == n:
            out.append(tuple(cur))
            if len(out) > limit:
                raise BudgetExceeded("too many natural transformations")
            return
        for c in cands[i]:
            nodes += 1
            if nodes > cap:
                raise BudgetExceeded("natural transformation search exceeded max_nodes")
            if all(check(j, i, cur[j], c) and check(i, j, c, cur[j]) for j in range(i)):
                cur.append(c)
                rec(i + 1)
                cur.pop()

    rec(0)
    return out


def nat_object(W: Weight, G: Weight, homs: Optional[Dict[str, VObj]] = None) -> VObj:
    """``[D,V](W, G)`` as a sub-object of ``∏_d [W d, G d]``.

    ``meta["family"]`` maps each element to ``{d: component}``.  ``homs``
    may replace the internal homs by sub-objects (for example full
    sub-objects from ``Base.partial_internal_hom``), giving the
    corresponding sub-object of transformations.
    """
    D = W.shape
    if G.shape is not D:
        raise PreconditionError("weights on different shapes")
    base = D.base
    ds = list(D.objects)
    n = len(ds)
    if homs is None:
        H = [base.internal_hom(W.at[d], G.at[d]) for d in ds]
    else:
        H = [homs[d] for d in ds]
    pointed = base.pointed
    full, objs = {}, {}
    for i, j in itertools.product(range(n), repeat=2):
        hom, Wd = D.hom(ds[i], ds[j]), W.at[ds[i]]
        ps = [(k, w) for k in hom.elements for w in Wd.elements
              if not (pointed and (k == BASEPOINT or w == BASEPOINT))]
        full[(i, j)] = ps
        objs[(i, j)] = [(k, w) for k, w in ps if hom.is_identity(k) and Wd.is_identity(w)]

    def natural(i, j, phi, psi, table):
        d, d2 = ds[i], ds[j]
        for k, w in table[(i, j)]:
            if G.act(d, d2, k, base.ev(H[i], phi, w)) != base.ev(H[j], psi, W.act(d, d2, k, w)):
                return False
        return True

    limit = current_budget().max_elements
    cands = []
    for i in range(n):
        cs = [e for e in H[i].elements if base.is_object_elem(H[i], e)
              and natural(i, i, e, e, full)]
        cands.append(cs)
    tuples = _backtrack(cands, lambda i, j, a, b: natural(i, j, a, b, full), limit)
    tuples = [t for t in tuples if base.tuple_ok(H, t)]
    if not all(h.discrete for h in H):
        obj_tuples = list(tuples)
        for s in obj_tuples:
            for t in obj_tuples:
                mc = [H[i].hom(s[i], t[i]) for i in range(n)]
                more = _backtrack(mc, lambda i, j, a, b: natural(i, j, a, b, objs), limit)
                for m in more:
                    if s == t and all(H[i].is_identity(m[i]) for i in range(n)):
                        continue
                    if all(natural(i, i, m[i], m[i], objs) for i in range(n)):
                        tuples.append(m)
    N, projs = base.sub_product(H, tuples)
    N.meta["family"] = {e: dict(zip(ds, base.tuple_of(N, e))) for e in N.elements}
    N.meta["nat"] = (W, G)
    return N


def family(N: VObj, e: str) -> Dict[str, str]:
    return N.meta["family"][e]


def nat_element(N: VObj, comps: Dict[str, str]) -> str:
    W, _ = N.meta["nat"]
    return N.meta["nat"][0].base.tuple_elem(N, [comps[d] for d in W.shape.objects])


def transformation(N: VObj, e: str) -> WeightMap:
    """The transformation named by a point of ``nat_object(W, G)``."""
    W, G = N.meta["nat"]
    base = W.base
    comps = {}
    for d, phi in family(N, e).items():
        comps[d] = base.unname(base.internal_hom(W.at[d], G.at[d]), phi)
    return WeightMap(W, G, comps)


def name_transformation(N: VObj, theta: WeightMap) -> str:
    base = theta.source.base
    return nat_element(N, {d: base.name(m) for d, m in theta.comps.items()})


def nat_restrict(theta: WeightMap, G: Weight, N: Optional[VObj] = None,
                 N2: Optional[VObj] = None) -> VMap:
    """``[D,V](W, G) → [D,V](W', G)`` induced by ``theta: W' → W``."""
    W2, W = theta.source, theta.target
    base = W.base
    N = N or nat_object(W, G)
    N2 = N2 or nat_object(W2, G)
    fn = {}
    for e in N.elements:
        comps = {}
        for d, phi in family(N, e).items():
            H = base.internal_hom(W.at[d], G.at[d])
            t = theta.comps[d]
            comps[d] = base.curry_elem(H, W2.at[d], G.at[d], phi,
                                       lambda z, w, H=H, t=t: base.ev(H, z, t.fn[w]))
        fn[e] = nat_element(N2, comps)
    return VMap(N, N2, fn)


def nat_postcompose(N: VObj, theta: WeightMap, N2: Optional[VObj] = None) -> VMap:
    """``[D,V](W, G) → [D,V](W, G')`` induced by ``theta: G → G'``."""
    W, G = N.meta["nat"]
    G2 = theta.target
    base = W.base
    N2 = N2 or nat_object(W, G2)
    fn = {}
    for e in N.elements:
        comps = {}
        for d, phi in family(N, e).items():
            H = base.internal_hom(W.at[d], G.at[d])
            t = theta.comps[d]
            comps[d] = base.curry_elem(H, W.at[d], G2.at[d], phi,
                                       lambda z, w, H=H, t=t: t.fn[base.ev(H, z, w)])
        fn[e] = nat_element(N2, comps)
    return VMap(N, N2, fn)


def yoneda_map(D: VCategory, d: str, G: Weight, N: Optional[VObj] = None) -> VMap:
    """``[D,V](D(d,−), G) → G d``, evaluation at the identity."""
    W = representable(D, d)
    N = N or nat_object(W, G)
    base = D.base
    H = base.internal_hom(W.at[d], G.at[d])
    return VMap(N, G.at[d], {e: base.ev(H, family(N, e)[d], D.ident[d]) for e in N.elements})


# ---------------------------------------------------------------------------
# weighted limits


@dataclass
class Cone:
    weight: Weight
    diagram: VFunctor
    apex: str
    point: str
    legs: Dict[str, str]

    def verify(self) -> bool:
        C = self.diagram.target
        N = nat_object(self.weight, hom_weight(C, self.apex, self.diagram))
        return self.point in N.index and self.point in C.base.points(N)

    def leg_map(self, d: str) -> VMap:
        C = self.diagram.target
        base = C.base
        H = base.internal_hom(self.weight.at[d], C.hom(self.apex, self.diagram(d)))
        return base.unname(H, self.legs[d])


@dataclass
class LimitResult:
    apex: str
    cone: Cone
    nat_objects: Dict[str, VObj]
    comparisons: Dict[str, VMap]
    inverses: Dict[str, Dict[str, str]]

    def verify(self) -> bool:
        for X, m in self.comparisons.items():
            inv = self.inverses[X]
            if not is_iso(m) or any(inv[m.fn[u]] != u for u in m.source.elements):
                return False
        return self.cone.verify()


def induced_comparison(C: VCategory, W: Weight, S: VFunctor, L: str, legs: Dict[str, str],
                       X: str, N: VObj) -> Optional[VMap]:
    """``C(X, L) → [D,V](W, C(X, S−))`` for the cone ``legs``; ``None`` if off ``N``."""
    base = C.base
    D = W.shape
    src = C.hom(X, L)
    HL = {d: base.internal_hom(W.at[d], C.hom(L, S(d))) for d in D.objects}
    fn = {}
    for m in src.elements:
        comps = []
        for d in D.objects:
            Sd = S(d)
            comps.append(base.curry_elem(
                src, W.at[d], C.hom(X, Sd), m,
                lambda z, w, d=d, Sd=Sd: C.compose(X, L, Sd, base.ev(HL[d], legs[d], w), z)))
        lab = tuple_label(comps, base.pointed)
        if lab not in N.index:
            return None
        fn[m] = lab
    return VMap(src, N, fn)


class _NatCache:
    def __init__(self, C, W, S):
        self.C, self.W, self.S = C, W, S
        self.cache: Dict[str, VObj] = {}

    def __call__(self, X):
        if X not in self.cache:
            self.cache[X] = nat_object(self.W, hom_weight(self.C, X, self.S))
        return self.cache[X]


def check_limit_cone(W: Weight, S: VFunctor, L: str, point: str,
                     nats: Optional[Callable] = None) -> Optional[LimitResult]:
    C = S.target
    nats = nats or _NatCache(C, W, S)
    N_L = nats(L)
    if point not in N_L.index:
        return None
    legs = family(N_L, point)
    comps, invs, used = {}, {}, {}
    for X in C.objects:
        N = nats(X)
        if len(N.elements) != len(C.hom(X, L).elements):
            return None
        m = induced_comparison(C, W, S, L, legs, X, N)
        if m is None or len(set(m.fn.values())) != len(m.fn) or not is_iso(m):
            return None
        comps[X] = m
        invs[X] = {v: u for u, v in m.fn.items()}
        used[X] = N
    return LimitResult(L, Cone(W, S, L, point, legs), used, comps, invs)


def weighted_limits(W: Weight, S: VFunctor, apexes: Optional[Sequence[str]] = None,
                    first: bool = False) -> List[LimitResult]:
    if S.source is not W.shape:
        raise PreconditionError("weight and diagram have different shapes")
    C = S.target
    nats = _NatCache(C, W, S)
    out = []
    for L in (apexes if apexes is not None else C.objects):
        for pt in C.base.points(nats(L)):
            r = check_limit_cone(W, S, L, pt, nats)
            if r is not None:
                out.append(r)
                if first:
                    return out
    return out


def weighted_limit(W: Weight, S: VFunctor, apexes: Optional[Sequence[str]] = None
                   ) -> Optional[LimitResult]:
    """First ``(L, cone)`` in label order exhibiting ``{W, S}``, or ``None``."""
    r = weighted_limits(W, S, apexes, first=True)
    return r[0] if r else None


def limit_iso(C: VCategory, r1: LimitResult, r2: LimitResult) -> Tuple[str, str]:
    """Mutually inverse ``u: L1 → L2`` and ``v: L2 → L1`` commuting with the cones."""
    L1, L2 = r1.apex, r2.apex
    u = r2.inverses[L1][r1.cone.point]
    v = r1.inverses[L2][r2.cone.point]
    if C.compose(L1, L2, L1, v, u) != C.ident[L1] or C.compose(L2, L1, L2, u, v) != C.ident[L2]:
        raise LawViolation("limit comparison maps are not inverse")
    return u, v


def preserves_limit(U: VFunctor, r: LimitResult) -> Optional[LimitResult]:
    """Whether ``U`` sends the limit cone ``r`` to a limit cone."""
    W, S = r.cone.weight, r.cone.diagram
    A = U.target
    base = A.base
    from .vcat import compose_functors
    US = compose_functors(U, S)
    L = r.apex
    legs = {}
    for d in W.shape.objects:
        Sd = S(d)
        H = base.internal_hom(W.at[d], S.target.hom(L, Sd))
        H2 = base.internal_hom(W.at[d], A.hom(U(L), U(Sd)))
        act = U.hom_action[(L, Sd)]
        legs[d] = base.curry_elem(H, W.at[d], A.hom(U(L), U(Sd)), r.cone.legs[d],
                                  lambda z, w, H=H, act=act: act[base.ev(H, z, w)])
        if legs[d] not in H2.index:
            return None
    nats = _NatCache(A, W, US)
    N = nats(U(L))
    pt = tuple_label([legs[d] for d in W.shape.objects], base.pointed)
    return check_limit_cone(W, US, U(L), pt, nats) if pt in N.index else None


# ---------------------------------------------------------------------------
# powers and isoinserters


@dataclass
class PowerResult:
    apex: str
    leg: str
    limit: LimitResult

    def evidence(self, A: str) -> VMap:
        """The iso ``C(A, X⋔B) → [X, C(A,B)]``."""
        m = self.limit.comparisons[A]
        N = m.target
        return VMap(m.source, N.meta["factors"][0],
                    {u: family(N, v)["*"] for u, v in m.fn.items()})


def power_weight(base, X: VObj) -> Weight:
    U = unit_vcategory(base)
    lam = base.left_unitor(X)
    return Weight(U, {"*": X}, lambda d, d2, k, w: lam.fn[base.tensor_elem(k, w)],
                  name="X", provenance=("copower", X, representable(U, "*")))


def power(C: VCategory, X: VObj, B: str) -> Optional[PowerResult]:
    """``X ⋔ B`` with its universal leg ``X → C(X⋔B, B)``."""
    W = power_weight(C.base, X)
    S = point_functor(C, B)
    S.source = W.shape
    r = weighted_limit(W, S)
    if r is None:
        return None
    return PowerResult(r.apex, r.cone.legs["*"], r)


@dataclass
class IsoinserterResult:
    apex: str
    k: str
    witness: GlobalHomotopyWitness
    limit: LimitResult


def isoinserter_diagram(C: VCategory, A: str, B: str, f: str, g: str,
                        Eq: Optional[VCategory] = None) -> VFunctor:
    base = C.base
    Eq = Eq or free_parallel_pair(base)
    a, b = Eq.objects
    gen = base.unit_gen
    act = {(a, a): {e: (C.ident[A] if e == gen else BASEPOINT) for e in Eq.hom(a, a).elements},
           (b, b): {e: (C.ident[B] if e == gen else BASEPOINT) for e in Eq.hom(b, b).elements},
           (b, a): {},
           (a, b): {}}
    for e in Eq.hom(a, b).elements:
        if e == BASEPOINT and base.pointed:
            act[(a, b)][e] = BASEPOINT
        else:
            i, _ = Eq.hom(a, b).meta["summands"][e]
            act[(a, b)][e] = (f, g)[i]
    return VFunctor(Eq, C, {a: A, b: B}, act, name="f,g")


def isoinserter(C: VCategory, A: str, B: str, f: str, g: str,
                iv: Optional[Interval] = None) -> Optional[IsoinserterResult]:
    """Universal ``k: K → A`` with a homotopy ``f k ≅ g k``."""
    base = C.base
    if f not in C.points(A, B) or g not in C.points(A, B):
        raise PreconditionError("isoinserter needs a parallel pair of morphisms")
    iv = iv or standard_interval(base)
    Eq = free_parallel_pair(base)
    W = interval_weight(Eq, iv)
    S = isoinserter_diagram(C, A, B, f, g, Eq)
    r = weighted_limit(W, S)
    if r is None:
        return None
    a, b = Eq.objects
    K = r.apex
    Ha = base.internal_hom(W.at[a], C.hom(K, A))
    Hb = base.internal_hom(W.at[b], C.hom(K, B))
    k = base.ev(Ha, r.cone.legs[a], base.unit_gen)
    h = base.unname(Hb, r.cone.legs[b])
    return IsoinserterResult(K, k, GlobalHomotopyWitness(iv, h), r)


# ---------------------------------------------------------------------------
# pseudo-limits (CatCanonical)


@dataclass
class PseudoLimitResult:
    apex: str
    cone: str
    legs: Dict[str, str]
    coherence: Dict[Tuple[str, str, str], str]
    categories: Dict[str, VObj]
    comparisons: Dict[str, VMap]

    def verify(self) -> bool:
        return all(is_iso(m) for m in self.comparisons.values())


def _one_cells(D: VCategory):
    out = []
    for d in D.objects:
        for d2 in D.objects:
            for k in D.hom(d, d2).objects:
                out.append((d, d2, k))
    return out


def pseudo_cone_category(C: VCategory, S: VFunctor, X: str) -> VObj:
    """``Ps(X, S)``: pseudo-cones from ``X`` and their modifications."""
    base = C.base
    if base.kind is not BaseKind.CAT or base.sliced:
        raise PreconditionError("pseudo-limits are only available over CatCanonical")
    D = S.source
    ds = list(D.objects)
    cells = [c for c in _one_cells(D) if c[2] != D.ident[c[0]] or c[0] != c[1]]
    hx = {d: C.hom(X, S(d)) for d in ds}

    def whisker(d, d2, k, m):
        return C.compose(X, S(d), S(d2), S.on(d, d2, k), m)

    objects = []
    for xs in itertools.product(*[hx[d].objects for d in ds]):
        x = dict(zip(ds, xs))
        choices = []
        for (d, d2, k) in cells:
            src = whisker(d, d2, k, x[d])
            choices.append([m for m in hx[d2].hom(src, x[d2]) if hx[d2].is_iso_elem(m)])
        for psis in itertools.product(*choices):
            psi = dict(zip(cells, psis))
            for d in ds:
                psi[(d, d, D.ident[d])] = x[d]
            if _coherent(C, D, S, X, x, psi, whisker):
                objects.append((x, psi))
            if len(objects) > current_budget().max_elements:
                raise BudgetExceeded("pseudo-cone category too large")

    def olabel(x, psi):
        return "<" + ",".join(x[d] for d in ds) + "|" + ",".join(psi[c] for c in cells) + ">"

    labels = [olabel(x, p) for x, p in objects]
    dom, cod, fam = {}, {}, {}
    for lab, (x, psi) in zip(labels, objects):
        dom[lab] = cod[lab] = lab
        fam[lab] = {d: x[d] for d in ds}
    for (l1, (x, px)), (l2, (y, py)) in itertools.product(zip(labels, objects), repeat=2):
        for ms in itertools.product(*[hx[d].hom(x[d], y[d]) for d in ds]):
            m = dict(zip(ds, ms))
            if l1 == l2 and all(m[d] == x[d] for d in ds):
                continue
            ok = True
            for (d, d2, k) in cells:
                lhs = hx[d2].compose(py[(d, d2, k)], whisker(d, d2, k, m[d]))
                rhs = hx[d2].compose(m[d2], px[(d, d2, k)])
                if lhs != rhs:
                    ok = False
                    break
            if ok:
                lab = f"{l1}~{l2}[" + ",".join(ms) + "]"
                dom[lab], cod[lab], fam[lab] = l1, l2, m
    comp = {}
    by_dom: Dict[str, List[str]] = {}
    for e in dom:
        by_dom.setdefault(dom[e], []).append(e)
    index = {}
    for e in dom:
        index[(dom[e], cod[e], tuple(fam[e][d] for d in ds))] = e
    for f in dom:
        for g in by_dom.get(cod[f], []):
            h = tuple(hx[d].compose(fam[g][d], fam[f][d]) for d in ds)
            comp[(g, f)] = index[(dom[f], cod[g], h)]
    meta = {"pseudo": (X, ds, cells), "family": fam,
            "coherence": {l: p for l, (_, p) in zip(labels, objects)}}
    return base._mk(list(dom), dom, cod, comp, meta, False)


def _coherent(C, D, S, X, x, psi, whisker) -> bool:
    hx = {d: C.hom(X, S(d)) for d in D.objects}
    for d, d2, d3 in itertools.product(D.objects, repeat=3):
        for k2 in D.hom(d2, d3).objects:
            for k1 in D.hom(d, d2).objects:
                k = D.compose(d, d2, d3, k2, k1)
                lhs = psi[(d, d3, k)]
                rhs = hx[d3].compose(psi[(d2, d3, k2)], whisker(d2, d3, k2, psi[(d, d2, k1)]))
                if lhs != rhs:
                    return False
    for d, d2 in itertools.product(D.objects, repeat=2):
        H = D.hom(d, d2)
        for s in H.elements:
            if H.is_identity(s):
                continue
            k, l = H.dom_of(s), H.cod_of(s)
            sx = C.compose(X, S(d), S(d2), S.on(d, d2, s), x[d])
            if hx[d2].compose(psi[(d, d2, l)], sx) != psi[(d, d2, k)]:
                return False
    return True


def pseudo_comparison(C: VCategory, S: VFunctor, L: str, cone: str, PsL: VObj,
                      X: str, PsX: VObj) -> Optional[VMap]:
    """``C(X, L) → Ps(X, S)`` induced by the pseudo-cone ``cone`` at ``L``."""
    _, ds, cells = PsL.meta["pseudo"]
    lam = PsL.meta["family"][cone]
    Psi = PsL.meta["coherence"][cone]
    index = {}
    for e in PsX.elements:
        fam = PsX.meta["family"][e]
        key = (PsX.dom_of(e), PsX.cod_of(e), tuple(fam[d] for d in ds))
        index[key] = e
    obj_index = {}
    for o in PsX.objects:
        fam = PsX.meta["family"][o]
        coh = PsX.meta["coherence"][o]
        obj_index[(tuple(fam[d] for d in ds), tuple(coh[c] for c in cells))] = o
    src = C.hom(X, L)
    omap = {}
    for u in src.objects:
        xs = tuple(C.compose(X, L, S(d), lam[d], u) for d in ds)
        ps = tuple(C.compose(X, L, S(c[1]), Psi[c], u) for c in cells)
        o = obj_index.get((xs, ps))
        if o is None:
            return None
        omap[u] = o
    fn = {}
    for t in src.elements:
        if src.is_identity(t):
            fn[t] = omap[t]
            continue
        ms = tuple(C.compose(X, L, S(d), lam[d], t) for d in ds)
        e = index.get((omap[src.dom_of(t)], omap[src.cod_of(t)], ms))
        if e is None:
            return None
        fn[t] = e
    return VMap(src, PsX, fn)


def pseudo_limit(S: VFunctor, apexes: Optional[Sequence[str]] = None
                 ) -> Optional[PseudoLimitResult]:
    C = S.target
    ps = {}

    def cat(X):
        if X not in ps:
            ps[X] = pseudo_cone_category(C, S, X)
        return ps[X]

    for L in (apexes if apexes is not None else C.objects):
        PsL = cat(L)
        for cone in PsL.objects:
            comps = {}
            for X in C.objects:
                PsX = cat(X)
                if len(PsX.elements) != len(C.hom(X, L).elements):
                    break
                m = pseudo_comparison(C, S, L, cone, PsL, X, PsX)
                if m is None or not is_iso(m):
                    break
                comps[X] = m
            else:
                _, ds, cells = PsL.meta["pseudo"]
                return PseudoLimitResult(L, cone, dict(PsL.meta["family"][cone]),
                                         dict(PsL.meta["coherence"][cone]),
                                         {X: cat(X) for X in C.objects}, comps)
    return None


# ---------------------------------------------------------------------------
# cofibrancy certificates


RULES = ("representable", "coproduct", "copower-by-cofibrant", "base-specific-cellular")


@dataclass
class CofibrancyCertificate:
    rule: str
    data: Dict = field(default_factory=dict)
    children: List["CofibrancyCertificate"] = field(default_factory=list)
    iso: Optional[Dict[str, VMap]] = None

    def replay(self, D: VCategory) -> Weight:
        r = self.rule
        if r == "representable":
            return representable(D, self.data["object"])
        if r == "coproduct":
            return coproduct_weight([c.replay(D) for c in self.children])
        if r == "copower-by-cofibrant":
            return copower_weight(self.data["X"], self.children[0].replay(D))
        if r == "base-specific-cellular":
            if self.data["kind"] == "interval":
                return interval_weight(D, self.data["interval"])
            return self.data["weight"]
        raise PreconditionError(f"unknown rule {r!r}")

    def verify(self, Q: Weight) -> bool:
        D = Q.shape
        base = D.base
        if self.rule == "copower-by-cofibrant" and not base.is_cofibrant(self.data["X"]):
            return False
        if self.rule == "base-specific-cellular":
            if self.data["kind"] == "interval":
                iv = self.data["interval"]
                from .interval import interval_violations
                if interval_violations(iv) or not base.classify(iv.e).trivial_fibration:
                    return False
            elif self.data["kind"] == "trivial-structure":
                if base.model_kind not in (BaseKind.SET_TRIVIAL, BaseKind.POINTED):
                    return False
        for c in self.children:
            if not c.verify(c.replay(D)):
                return False
        R = self.replay(D)
        if self.iso is None:
            return _same_weight(R, Q)
        theta = WeightMap(R, Q, self.iso)
        return not theta.violations() and all(is_iso(m) for m in self.iso.values())

    def tree(self) -> Dict:
        out = {"rule": self.rule}
        if "object" in self.data:
            out["object"] = self.data["object"]
        if "kind" in self.data:
            out["kind"] = self.data["kind"]
        if self.children:
            out["children"] = [c.tree() for c in self.children]
        return out


def _same_weight(R: Weight, Q: Weight) -> bool:
    D = Q.shape
    for d in D.objects:
        if R.at[d] != Q.at[d]:
            return False
    for d, d2 in itertools.product(D.objects, repeat=2):
        if R.act_map(d, d2) != Q.act_map(d, d2):
            return False
    return True


def _from_provenance(Q: Weight) -> Optional[CofibrancyCertificate]:
    p = Q.provenance
    if not p:
        return None
    if p[0] == "representable":
        return CofibrancyCertificate("representable", {"object": p[1]})
    if p[0] == "coproduct":
        kids = [cofibrancy_certificate(w) for w in p[1]]
        if any(k is None for k in kids):
            return None
        return CofibrancyCertificate("coproduct", {}, kids)
    if p[0] == "copower":
        kid = cofibrancy_certificate(p[2])
        if kid is None or not Q.base.is_cofibrant(p[1]):
            return None
        if p[2].shape is not Q.shape:
            return None
        return CofibrancyCertificate("copower-by-cofibrant", {"X": p[1]}, [kid])
    if p[0] == "interval":
        return CofibrancyCertificate("base-specific-cellular",
                                     {"kind": "interval", "interval": p[1]})
    return None


def _generated_map(Q: Weight, gens: List[Tuple[str, str]]):
    """``Σ_(d,q) D(d,−) → Q`` sending ``in_i(k)`` to ``k·q``."""
    D = Q.shape
    reps = [representable(D, d) for d, _ in gens]
    S = coproduct_weight(reps) if len(reps) != 1 else reps[0]
    comps = {}
    for x in D.objects:
        fn = {}
        for e in S.at[x].elements:
            if Q.base.pointed and e == BASEPOINT:
                fn[e] = BASEPOINT
                continue
            if len(reps) == 1:
                i, k = 0, e
            else:
                i, k = S.at[x].meta["summands"][e]
            d, q = gens[i]
            fn[e] = Q.act(d, x, k, q)
        comps[x] = VMap(S.at[x], Q.at[x], fn)
    return S, comps


def cofibrancy_certificate(Q: Weight) -> Optional[CofibrancyCertificate]:
    """A derivation that ``Q`` is cofibrant, or ``None`` meaning "unknown"."""
    cert = _from_provenance(Q)
    if cert is not None and cert.verify(Q):
        return cert
    D = Q.shape
    base = D.base
    # sums of representables, recognised from generators
    gens: List[Tuple[str, str]] = []
    covered = {d: set() for d in D.objects}
    if base.pointed:
        for d in D.objects:
            covered[d].add(BASEPOINT)
    for d in D.objects:
        for q in base.points(Q.at[d]):
            if q in covered[d]:
                continue
            gens.append((d, q))
            for x in D.objects:
                for k in D.hom(d, x).elements:
                    covered[x].add(Q.act(d, x, k, q))
    if gens and all(covered[d] >= set(Q.at[d].elements) for d in D.objects):
        try:
            S, comps = _generated_map(Q, gens)
        except LawViolation:
            comps = None
        if comps is not None and all(is_iso(m) for m in comps.values()):
            kids = [CofibrancyCertificate("representable", {"object": d}) for d, _ in gens]
            if len(kids) == 1:
                c = kids[0]
                c.iso = comps
            else:
                c = CofibrancyCertificate("coproduct", {"generators": gens}, kids, comps)
            if c.verify(Q):
                return c
    if base.model_kind in (BaseKind.SET_TRIVIAL, BaseKind.POINTED):
        c = CofibrancyCertificate("base-specific-cellular",
                                  {"kind": "trivial-structure", "weight": Q})
        if c.verify(Q):
            return c
    return None


# ---------------------------------------------------------------------------
# canonical enough weights


@dataclass
class EnoughWeight:
    kind: BaseKind
    Q: Optional[Weight]
    q: Dict[str, VMap] = field(default_factory=dict)
    evidence: Dict[str, MapClass] = field(default_factory=dict)
    sections: Dict[str, str] = field(default_factory=dict)
    certificate: Optional[CofibrancyCertificate] = None

    @property
    def pseudo(self) -> bool:
        return self.Q is None

    def verify(self) -> bool:
        if self.pseudo:
            return True
        return all(ev.trivial_fibration for ev in self.evidence.values()) \
            and self.certificate is not None and self.certificate.verify(self.Q)


def canonical_enough_weight(base, D: VCategory, P: Optional[VFunctor] = None) -> EnoughWeight:
    """Cofibrant ``Q`` with a pointwise trivial fibration ``Q → IP``.

    Trivial structures use ``IP`` itself, the split structure uses the sum
    of representables, and for categories a marker deferring to pseudo-limits.
    """
    from .base import get_base
    base = get_base(base) if base is not None else D.base
    kind = base.model_kind
    if kind is BaseKind.CAT:
        return EnoughWeight(kind, None)
    I = base.unit
    if kind is BaseKind.SET_SPLIT:
        reps = [representable(D, d) for d in D.objects]
        Q = coproduct_weight(reps, name="Σ D(d,-)") if reps else constant_unit(D, P)
        sections = {}
        for i, d in enumerate(D.objects):
            sections[d] = inj_label(i, D.ident[d])
    else:
        Q = constant_unit(D, P)
        sections = {d: base.unit_gen for d in D.objects}
    IP = constant_unit(D, P)
    q = {}
    for d in D.objects:
        if kind is BaseKind.SET_SPLIT:
            fn = {}
            for e in Q.at[d].elements:
                if base.pointed and e == BASEPOINT:
                    fn[e] = BASEPOINT
                    continue
                i, k = Q.at[d].meta["summands"][e]
                src = D.objects[i]
                fn[e] = IP.act(src, d, k, base.unit_gen)
            q[d] = VMap(Q.at[d], I, fn)
        else:
            q[d] = identity(I)
    ev = {d: base.classify(m) for d, m in q.items()}
    theta = WeightMap(Q, IP, q)
    if theta.violations():
        raise LawViolation("canonical q is not natural", theta.violations())
    return EnoughWeight(kind, Q, q, ev, sections, cofibrancy_certificate(Q))


def biterminal_among(Q: Weight, Gs: Sequence[Weight]) -> Dict[str, Optional[str]]:
    """For each weight ``G``: ``None`` if maps ``G → Q`` exist and are pairwise
    homotopic in ``[D,V](G,Q)``, else a reason."""
    base = Q.base
    out = {}
    for G in Gs:
        N = nat_object(G, Q)
        pts = base.points(N)
        if not pts:
            out[G.name] = "no map into Q"
            continue
        bad = None
        for p in pts[1:]:
            if homotopy_search(N, pts[0], p) is None:
                bad = f"maps {pts[0]} and {p} are not homotopic"
                break
        out[G.name] = bad
    return out
