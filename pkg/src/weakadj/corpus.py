"""Generated fixtures: small sets, categories, lattices and concrete categories.

Everything here is enumerated from scratch so that property suites and
oracles have a reproducible corpus.  Enumerations are up to isomorphism
where that is cheap (canonical forms by brute force over permutations).
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .base import BASEPOINT, BaseKind, VObj, category, finite_set, fun_label, get_base
from . import kernel
from .errors import BudgetExceeded
from .vcat import VCategory, VFunctor, from_poset

# ---------------------------------------------------------------------------
# objects of the bases


def corpus_sets(kind, max_size: int = 3) -> List[VObj]:
    """All finite sets (or pointed sets) with at most ``max_size`` elements."""
    kind = BaseKind(kind)
    out = []
    if kind is BaseKind.POINTED:
        for n in range(1, max_size + 1):
            out.append(finite_set(kind, [BASEPOINT] + [f"x{i}" for i in range(n - 1)]))
    else:
        for n in range(max_size + 1):
            out.append(finite_set(kind, [f"x{i}" for i in range(n)]))
    return out


def _layout(n_obj, sizes):
    """Element layout for a hom-size profile: identities first (element
    ``x`` is the identity of object ``x``), then each hom in order."""
    dom, cod = list(range(n_obj)), list(range(n_obj))
    for (x, y), k in sorted(sizes.items()):
        extra = k - 1 if x == y else k
        dom += [x] * extra
        cod += [y] * extra
    return dom, cod


def _relabellings(n_obj, dom, cod):
    """Permutations of elements induced by object permutations that keep
    the layout, composed with permutations inside each hom."""
    n = len(dom)
    out = []
    for operm in itertools.permutations(range(n_obj)):
        blocks, ok = [], True
        for x in range(n_obj):
            for y in range(n_obj):
                src = [e for e in range(n_obj, n) if dom[e] == x and cod[e] == y]
                tgt = [e for e in range(n_obj, n) if dom[e] == operm[x] and cod[e] == operm[y]]
                if len(src) != len(tgt):
                    ok = False
                blocks.append((src, tgt))
        if not ok:
            continue
        for choice in itertools.product(*[itertools.permutations(t) for _, t in blocks]):
            p = list(operm) + [0] * (n - n_obj)
            for (src, _), tgt in zip(blocks, choice):
                for a, b in zip(src, tgt):
                    p[a] = b
            out.append(p)
    return out


def _tables_for_profile(n_obj, sizes, impl=None):
    dom, cod = _layout(n_obj, sizes)
    n = len(dom)
    t = [-1] * (n * n)
    for g in range(n):
        for f in range(n):
            if cod[f] == dom[g]:
                if g < n_obj:
                    t[g * n + f] = f
                elif f < n_obj:
                    t[g * n + f] = g
    cells = [(g, f) for g in range(n_obj, n) for f in range(n_obj, n) if cod[f] == dom[g]]
    cands = [[e for e in range(n) if dom[e] == dom[f] and cod[e] == cod[g]] for g, f in cells]
    perms = _relabellings(n_obj, dom, cod)
    found, labelled, nodes = kernel.enumerate_tables(n, dom, cod, t, cells, cands, perms,
                                                     impl=impl)
    if nodes < 0:
        raise BudgetExceeded("table enumeration exceeded its node budget")
    out = []
    for key in sorted(found):
        vals = [b - 1 for b in key]
        out.append((tuple(dom), tuple(cod),
                    tuple(tuple(vals[g * n:(g + 1) * n]) for g in range(n))))
    return out, labelled


TABLES_FILE = Path(__file__).parent / "fixtures" / "category_tables.json"


@lru_cache(maxsize=None)
def _frozen_tables() -> Dict[str, list]:
    if not TABLES_FILE.exists():
        return {}
    return json.loads(TABLES_FILE.read_text())


def freeze_tables(max_objects: int = 2, max_morphisms: int = 6, path: Path = TABLES_FILE) -> None:
    data = {f"{k},{m}": [[list(d), list(c), [list(r) for r in t]]
                         for d, c, t in enumerate_category_tables(k, m)]
            for k in range(1, max_objects + 1) for m in range(k, max_morphisms + 1)}
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, separators=(",", ":"), sort_keys=True) + "\n")


def category_tables(n_obj: int, n_mor: int):
    """Categories with ``n_obj`` objects and exactly ``n_mor`` morphisms, up
    to isomorphism, as ``(dom, cod, table)`` triples with ``table[g][f] =
    g∘f`` or ``-1``.  Read from the frozen corpus when it covers the size."""
    rows = _frozen_tables().get(f"{n_obj},{n_mor}")
    if rows is None:
        return enumerate_category_tables(n_obj, n_mor)
    return tuple((tuple(d), tuple(c), tuple(tuple(r) for r in t)) for d, c, t in rows)


@lru_cache(maxsize=None)
def enumerate_category_tables(n_obj: int, n_mor: int, impl: Optional[str] = None):
    """Recompute :func:`category_tables` with the search kernel."""
    out = []
    pairs = [(x, y) for x in range(n_obj) for y in range(n_obj)]
    for prof in itertools.product(range(n_mor + 1), repeat=len(pairs)):
        sizes = dict(zip(pairs, prof))
        if sum(prof) != n_mor or any(sizes[(x, x)] < 1 for x in range(n_obj)):
            continue
        if n_obj == 2 and (sizes[(0, 0)], sizes[(0, 1)]) > (sizes[(1, 1)], sizes[(1, 0)]):
            continue                              # the swapped profile gives the same classes
        out.extend(_tables_for_profile(n_obj, sizes, impl)[0])
    return tuple(out)


def monoid_tables(n: int):
    """Multiplication tables of all monoids of order ``n`` up to
    isomorphism; element 0 is the unit."""
    return tuple(t for _, _, t in category_tables(1, n))


def table_category(dom, cod, t, names: Sequence[str] = ("a", "b")) -> VObj:
    """A :class:`VObj` of kind Cat from an enumerated table."""
    n_obj = max(dom) + 1
    objs = list(names[:n_obj])
    lab = objs + [f"m{e}" for e in range(n_obj, len(dom))]
    morph = {lab[e]: (objs[dom[e]], objs[cod[e]]) for e in range(n_obj, len(dom))}
    comp = {(lab[g], lab[f]): lab[t[g][f]]
            for g in range(n_obj, len(dom)) for f in range(n_obj, len(dom)) if t[g][f] >= 0}
    return category(objs, morph, comp)


def monoid_category(table, obj: str = "o") -> VObj:
    """One-object category of a monoid table."""
    return table_category([0] * len(table), [0] * len(table), table, names=(obj,))


def corpus_categories(max_objects: int = 2, max_morphisms: int = 6) -> List[VObj]:
    """All categories with at most ``max_objects`` objects and at most
    ``max_morphisms`` morphisms, up to isomorphism (the empty category
    included)."""
    from .base import discrete_category
    out: List[VObj] = [discrete_category([])]
    for k in range(1, max_objects + 1):
        for m in range(k, max_morphisms + 1):
            names = ("a", "b", "c")[:k] if k > 1 else ("o",)
            out.extend(table_category(d, c, t, names) for d, c, t in category_tables(k, m))
    return out


def corpus_objects(kind, scale: str = "small") -> List[VObj]:
    kind = BaseKind(kind)
    if kind is BaseKind.CAT:
        if scale == "small":
            from .base import arrow_category, chaotic_category, discrete_category
            return [discrete_category([]), discrete_category(["0"]),
                    discrete_category(["0", "1"]), arrow_category(),
                    chaotic_category(["0", "1"]),
                    monoid_category(monoid_tables(2)[0])]
        return corpus_categories()
    return corpus_sets(kind, 3 if scale == "small" else 3)


# ---------------------------------------------------------------------------
# lattices and preorders


def _canon_order(n: int, rel) -> Tuple:
    best = None
    for p in itertools.permutations(range(n)):
        t = tuple(sorted((p[a], p[b]) for a, b in rel))
        if best is None or t < best:
            best = t
    return best


@lru_cache(maxsize=None)
def lattices(max_size: int = 5) -> Tuple[Tuple[int, Tuple[Tuple[int, int], ...]], ...]:
    """All lattices with ``1..max_size`` elements up to isomorphism, as
    ``(n, order pairs)`` with ``0`` the bottom and ``n-1`` the top."""
    out = []
    for n in range(1, max_size + 1):
        seen = set()
        mids = list(range(1, n - 1))
        pairs = [(a, b) for a in mids for b in mids if a < b]
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            rel = {(a, a) for a in range(n)}
            rel |= {(0, a) for a in range(n)} | {(a, n - 1) for a in range(n)}
            rel |= {p for p, on in zip(pairs, bits) if on}
            if any((a, b) in rel and (b, c) in rel and (a, c) not in rel
                   for a in range(n) for b in range(n) for c in range(n)):
                continue
            if not _is_lattice(n, rel):
                continue
            key = _canon_order(n, rel)
            if key in seen:
                continue
            seen.add(key)
            out.append((n, tuple(sorted(rel))))
    return tuple(out)


def _bounds(n, rel, a, b, upper=True):
    if upper:
        return [c for c in range(n) if (a, c) in rel and (b, c) in rel]
    return [c for c in range(n) if (c, a) in rel and (c, b) in rel]


def _is_lattice(n, rel) -> bool:
    for a in range(n):
        for b in range(n):
            for up in (True, False):
                bs = _bounds(n, rel, a, b, up)
                best = [c for c in bs if all(((c, d) if up else (d, c)) in rel for d in bs)]
                if not best:
                    return False
    return True


def meet(n, rel, a, b) -> int:
    lows = _bounds(n, rel, a, b, upper=False)
    return next(c for c in lows if all((d, c) in rel for d in lows))


def lattice_vcat(base, n: int, rel, name: str = "") -> VCategory:
    els = [str(i) for i in range(n)]
    rs = set(rel)
    return from_poset(base, els, lambda x, y: (int(x), int(y)) in rs, name=name)


def meet_preserving_maps(lat_b, lat_a) -> Iterator[Tuple[int, ...]]:
    """Monotone maps ``B → A`` preserving binary meets and the top."""
    nb, rb = lat_b
    na, ra = lat_a
    for f in itertools.product(range(na), repeat=nb):
        if f[nb - 1] != na - 1:
            continue
        if not all((f[x], f[y]) in ra for x, y in rb):
            continue
        if all(f[meet(nb, rb, x, y)] == meet(na, ra, f[x], f[y])
               for x in range(nb) for y in range(nb)):
            yield f


def galois_left_adjoint(lat_b, lat_a, f: Sequence[int]) -> Dict[int, int]:
    """Oracle: ``a ↦ min{b : a ≤ f b}``, by brute force."""
    nb, rb = lat_b
    na, ra = lat_a
    out = {}
    for a in range(na):
        ups = [b for b in range(nb) if (a, f[b]) in ra]
        mins = [b for b in ups if all((b, c) in rb for c in ups)]
        out[a] = mins[0]
    return out


def poset_functor(B: VCategory, A: VCategory, f: Dict[str, str], name: str = "") -> VFunctor:
    """The V-functor of a monotone map between posets (or preorders)."""
    act = {}
    for x in B.objects:
        for y in B.objects:
            act[(x, y)] = {e: e for e in B.hom(x, y).elements}
    return VFunctor(B, A, f, act, name=name)


def preorders_with_products(max_size: int = 6) -> List[Tuple[int, Tuple[Tuple[int, int], ...]]]:
    """Curated preorders with finite products (meets and a top).

    Finite categories with finite products are necessarily preorders, so
    these are the relevant fixtures: every lattice of size ``≤ 4`` and
    duplicates of some of their objects (isomorphic copies) up to
    ``max_size`` objects.
    """
    out = []
    for n, rel in lattices(4):
        out.append((n, rel))
        for dup in range(n):
            if n + 1 > max_size:
                break
            out.append(_duplicate(n, rel, dup))
        if n == 2 and n + 2 <= max_size:
            out.append(_duplicate(*_duplicate(n, rel, 0), 1))
    # the 2x3 grid (a product of chains) has 6 objects
    if max_size >= 6:
        cells = [(i, j) for i in range(2) for j in range(3)]
        rel = tuple(sorted((a, b) for a in range(6) for b in range(6)
                           if cells[a][0] <= cells[b][0] and cells[a][1] <= cells[b][1]))
        out.append((6, rel))
    return out


def _duplicate(n, rel, d):
    """Add an object isomorphic to ``d`` (as index ``n``)."""
    rs = set(rel)
    new = set(rs)
    for a in range(n):
        if (a, d) in rs:
            new.add((a, n))
        if (d, a) in rs:
            new.add((n, a))
    new.add((n, n))
    return (n + 1, tuple(sorted(new)))


def preorder_meet_preserving(lat_b, lat_a) -> Iterator[Tuple[int, ...]]:
    """Monotone maps preserving meets and top up to isomorphism."""
    nb, rb = lat_b
    na, ra = lat_a

    def iso(rel, x, y):
        return (x, y) in rel and (y, x) in rel

    def is_meet(n, rel, m, x, y):
        lows = _bounds(n, rel, x, y, upper=False)
        return m in lows and all((d, m) in rel for d in lows)

    def is_top(n, rel, t):
        return all((x, t) in rel for x in range(n))

    for f in itertools.product(range(na), repeat=nb):
        if not all((f[x], f[y]) in ra for x, y in rb):
            continue
        if not all(is_top(na, ra, f[t]) for t in range(nb) if is_top(nb, rb, t)):
            continue
        ok = True
        for x in range(nb):
            for y in range(nb):
                m = next(c for c in range(nb) if is_meet(nb, rb, c, x, y))
                if not is_meet(na, ra, f[m], f[x], f[y]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield f


# ---------------------------------------------------------------------------
# concrete categories


def _functions(src: Sequence[str], tgt: Sequence[str]) -> Iterator[Tuple[str, ...]]:
    return itertools.product(tgt, repeat=len(src))


def concrete_category(base, carriers: Dict[str, Sequence[str]],
                      allowed: Optional[Callable[[str, str, Dict[str, str]], bool]] = None,
                      name: str = "") -> VCategory:
    """Objects are finite carriers, morphisms the functions passing ``allowed``.

    A morphism ``a → b`` is labelled by its image tuple over the sorted
    carrier of ``a``; composition is composition of functions.  Homs are
    discrete objects of ``base``.
    """
    base = get_base(base)
    car = {k: tuple(sorted(v)) for k, v in carriers.items()}
    homs = {}
    for a in car:
        for b in car:
            els = []
            for img in _functions(car[a], car[b]):
                fn = dict(zip(car[a], img))
                if allowed is None or allowed(a, b, fn):
                    els.append(fun_label(img))
            homs[(a, b)] = base.make_set(els)
    ident = {a: fun_label(car[a]) for a in car}

    def decode(a, f):
        return dict(zip(car[a], f[1:-1].split(","))) if car[a] else {}

    def composer(a, b, c, g, f):
        fd, gd = decode(a, f), decode(b, g)
        return fun_label([gd[fd[x]] for x in car[a]])

    cat = VCategory(base, car, homs, composer, ident, name=name)
    cat.meta["carriers"] = car
    cat.meta["decode"] = decode
    return cat


def concrete_functor(B: VCategory, A: VCategory, obj_map: Dict[str, str],
                     on_maps: Callable[[str, str, Dict[str, str]], Dict[str, str]],
                     name: str = "") -> VFunctor:
    """Functor between concrete categories from an action on functions."""
    dec = B.meta["decode"]
    carA = A.meta["carriers"]
    act = {}
    for x in B.objects:
        for y in B.objects:
            tab = {}
            for f in B.hom(x, y).elements:
                if f == BASEPOINT and B.base.pointed:
                    tab[f] = f
                    continue
                g = on_maps(x, y, dec(x, f))
                tab[f] = fun_label([g[e] for e in carA[obj_map[x]]])
            act[(x, y)] = tab
    return VFunctor(B, A, obj_map, act, name=name)


def orbit_fixture(kind=BaseKind.SET_SPLIT):
    """Finite analogue of the orbit functor on ``Z/2``-sets.

    ``B`` has the trivial ``Z/2``-set ``1``, the free orbit ``G`` and
    ``GG = G × G`` (diagonal action, which is free with two orbits).
    ``A`` is the sets ``1`` and ``2``; ``P`` sends a ``Z/2``-set to its
    set of orbits.  ``P`` has weak left adjoint ``1 ↦ G``, ``2 ↦ GG``,
    yet it does not preserve the power ``2 ⋔ G = GG``.
    """
    g = {"e": "t", "t": "e"}
    acts = {"1": {"p": "p"}, "G": dict(g),
            "GG": {f"{x}{y}": f"{g[x]}{g[y]}" for x in "et" for y in "et"}}

    def equivariant(a, b, fn):
        return all(fn[acts[a][x]] == acts[b][fn[x]] for x in fn)

    B = concrete_category(kind, {k: list(v) for k, v in acts.items()}, equivariant, name="Z2-sets")
    A = concrete_category(kind, {"1": ["0"], "2": ["0", "1"]}, name="Sets")

    def orbit(a, x):
        return min(x, acts[a][x])

    orbit_sets = {"1": "1", "G": "1", "GG": "2"}
    idx = {a: {o: str(i) for i, o in enumerate(sorted({orbit(a, x) for x in acts[a]}))}
           for a in acts}

    def on_maps(a, b, fn):
        return {idx[a][orbit(a, x)]: idx[b][orbit(b, fn[x])] for x in acts[a]}

    P = concrete_functor(B, A, orbit_sets, on_maps, name="orbits")
    return B, A, P


def category_counts(max_objects: int = 2, max_morphisms: int = 6) -> Dict[Tuple[int, int], int]:
    return {(k, m): len(category_tables(k, m))
            for k in range(1, max_objects + 1) for m in range(k, max_morphisms + 1)}


# ---------------------------------------------------------------------------
# small V-categories


@lru_cache(maxsize=None)
def preorders(max_size: int = 3) -> Tuple[Tuple[int, Tuple[Tuple[int, int], ...]], ...]:
    """All preorders on ``1..max_size`` points up to isomorphism."""
    out = []
    for n in range(1, max_size + 1):
        seen = set()
        pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            rel = {(a, a) for a in range(n)} | {p for p, on in zip(pairs, bits) if on}
            if any((a, b) in rel and (b, c) in rel and (a, c) not in rel
                   for a in range(n) for b in range(n) for c in range(n)):
                continue
            key = _canon_order(n, rel)
            if key not in seen:
                seen.add(key)
                out.append((n, tuple(sorted(rel))))
    return tuple(out)


def _pool(kind, scale: str) -> List[VObj]:
    kind = BaseKind(kind)
    if kind is BaseKind.CAT:
        return corpus_objects(kind, "small")[:5 if scale == "full" else 4]
    return corpus_sets(kind, 3 if scale == "full" else 2)


def corpus_vcategories(kind, scale: str = "small", max_objects: int = 3) -> List[VCategory]:
    """V-categories with at most ``max_objects`` objects whose homs come
    from the corpus: every preorder, every full sub-V-category of V on a
    subset of the object pool, and every corpus category with at most two
    objects taken with discrete homs."""
    from .vcat import from_ordinary, self_enriched
    base = get_base(kind)
    out: List[VCategory] = []
    for i, (n, rel) in enumerate(preorders(max_objects)):
        out.append(lattice_vcat(base, n, rel, name=f"P{i}"))
    pool = _pool(kind, scale)
    for k in range(1, max_objects + 1):
        for combo in itertools.combinations(range(len(pool)), k):
            objs = {f"X{j}": pool[j] for j in combo}
            out.append(self_enriched(base, objs, name="V{" + ",".join(objs) + "}"))
    limit = 6 if scale == "full" else 3
    for j, c in enumerate(corpus_categories(2, limit)):
        if not c.objects:
            continue
        ren = {o: f"id_{o}" for o in c.objects}
        morph = {ren.get(m, m): (c.dom[m], c.cod[m]) for m in c.elements}
        comp = {(g, f): ren.get(h, h) for (g, f), h in c.comp.items()
                if g not in ren and f not in ren}
        out.append(from_ordinary(base, c.objects, morph, comp, name=f"O{j}"))
    return out
