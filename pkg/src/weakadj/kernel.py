"""Selects the compiled search kernel when available, else pure Python.

Set ``WEAKADJ_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from array import array

from . import _pysearch, _pytables

try:
    if os.environ.get("WEAKADJ_PURE"):
        raise ImportError("pure fallback requested")
    from ._csearch import enumerate_tables as _enumerate_tables
    from ._csearch import search_flat as _search_flat
    IMPLEMENTATION = "cython"
except ImportError:  # pragma: no cover - depends on build
    _search_flat = None
    _enumerate_tables = None
    IMPLEMENTATION = "python"


def _flat(lists, width):
    off = [0]
    cols = [[] for _ in range(width)]
    for row in lists:
        for item in row:
            for j in range(width):
                cols[j].append(item[j])
        off.append(off[-1] + len(row))
    return array("i", off), [array("i", c) for c in cols]


def search(dom_checks, cod_checks, comp_checks, tdom, tcod, tcomp, cand,
           limit=-1, max_nodes=10**7, impl=None):
    """Run the constraint search; see ``_pysearch.search`` for the contract."""
    impl = impl or IMPLEMENTATION
    if impl == "python" or _search_flat is None:
        return _pysearch.search(dom_checks, cod_checks, comp_checks, tdom,
                                tcod, tcomp, cand, limit, max_nodes)
    n = len(cand)
    m = len(tdom)
    doff, (dx, dy) = _flat(dom_checks, 2)
    coff, (cx, cy) = _flat(cod_checks, 2)
    poff, (pa, pb, pc) = _flat(comp_checks, 3)
    flat_comp = tcomp if len(tcomp) else array("i", [0])
    cand_off = array("i", [0])
    flat_cand = array("i")
    for cs in cand:
        flat_cand.extend(cs)
        cand_off.append(cand_off[-1] + len(cs))
    if not len(flat_cand):
        flat_cand.append(0)
    for arr in (dx, dy, cx, cy, pa, pb, pc):
        if not len(arr):
            arr.append(0)
    return _search_flat(n, doff, dx, dy, coff, cx, cy, poff, pa, pb, pc,
                        array("i", tdom) if m else array("i", [0]),
                        array("i", tcod) if m else array("i", [0]),
                        flat_comp, m, cand_off, flat_cand, limit, max_nodes)


def enumerate_tables(n, dom, cod, table0, cells, cands, perms, max_nodes=10**9, impl=None):
    """Associative completions of a partial composition table, up to the
    relabellings ``perms``; see ``_pytables.enumerate_tables``."""
    impl = impl or IMPLEMENTATION
    cells_g = [g for g, _ in cells]
    cells_f = [f for _, f in cells]
    cand_off = [0]
    flat = []
    for cs in cands:
        flat.extend(cs)
        cand_off.append(len(flat))
    P = len(perms)
    flat_perms = [v for p in perms for v in p]
    if impl == "python" or _enumerate_tables is None:
        return _pytables.enumerate_tables(n, list(dom), list(cod), list(table0), cells_g,
                                          cells_f, cand_off, flat, flat_perms, P, max_nodes)
    return _enumerate_tables(n, array("i", dom), array("i", cod), array("i", table0),
                             array("i", cells_g or [0])[:len(cells_g)],
                             array("i", cells_f or [0])[:len(cells_f)],
                             array("i", cand_off), array("i", flat or [0]),
                             array("i", flat_perms), P, max_nodes)
