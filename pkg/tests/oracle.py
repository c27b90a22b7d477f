"""Naive reference computations used as independent oracles.

Nothing here calls into the search kernel or the structured algorithms of
the package; objects are read only through their raw element, domain,
codomain and composition tables, and every answer comes from plain
``itertools`` enumeration.
"""

import itertools

from weakadj.base import BASEPOINT

# monoids of order n up to isomorphism (OEIS A058129)
MONOID_COUNTS = {1: 1, 2: 2, 3: 7, 4: 35}
# preorders on n points up to isomorphism (OEIS A001930)
PREORDER_COUNTS = {1: 1, 2: 3, 3: 9, 4: 33}
# lattices on n points up to isomorphism (OEIS A006966)
LATTICE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5}


def objects(x):
    if x.dom is None:
        return list(x.elements)
    return [e for e in x.elements if x.dom[e] == e and x.cod[e] == e and x.comp.get((e, e)) == e]


def structure_preserving(x, y, fn):
    if x.kind.value == "PointedTrivial" and fn.get(BASEPOINT, BASEPOINT) != BASEPOINT:
        return False
    if x.dom is None:
        return True
    yobj = set(objects(y))
    for e in x.elements:
        if y.dom[fn[e]] != fn[x.dom[e]] or y.cod[fn[e]] != fn[x.cod[e]]:
            return False
    for o in objects(x):
        if fn[o] not in yobj:
            return False
    for (g, f), h in x.comp.items():
        if y.comp.get((fn[g], fn[f])) != fn[h]:
            return False
    return True


def all_maps(x, y):
    """Every structure-preserving map, by brute force over all functions."""
    out = []
    for images in itertools.product(y.elements, repeat=len(x.elements)):
        fn = dict(zip(x.elements, images))
        if structure_preserving(x, y, fn):
            out.append(fn)
    return out


def hom(x, a, b):
    return [e for e in x.elements if x.dom[e] == a and x.cod[e] == b]


def is_iso_elem(x, e):
    a, b = x.dom[e], x.cod[e]
    return any(x.comp.get((g, e)) == a and x.comp.get((e, g)) == b for g in hom(x, b, a))


def isomorphic_objects(x, a, b):
    return any(is_iso_elem(x, e) for e in hom(x, a, b))


def fully_faithful(f):
    x, y = f.source, f.target
    for a in objects(x):
        for b in objects(x):
            image = sorted(f.fn[e] for e in hom(x, a, b))
            if image != sorted(hom(y, f.fn[a], f.fn[b])):
                return False
    return True


def essentially_surjective(f):
    y = f.target
    hit = {f.fn[a] for a in objects(f.source)}
    return all(any(isomorphic_objects(y, b, c) for c in hit) for b in objects(y))


def is_equivalence(f):
    """Equivalence of categories via the fully faithful plus essentially
    surjective criterion (the package searches for a quasi-inverse)."""
    return fully_faithful(f) and essentially_surjective(f)


def is_isofibration(f):
    x, y = f.source, f.target
    for a in objects(x):
        for e in y.elements:
            if y.dom[e] == f.fn[a] and is_iso_elem(y, e):
                if not any(x.dom[g] == a and is_iso_elem(x, g) and f.fn[g] == e
                           for g in x.elements):
                    return False
    return True


def is_bijective(f):
    return sorted(f.fn.values()) == sorted(f.target.elements) and len(set(f.fn.values())) == len(f.fn)

