# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled backtracking search; same contract as ``_pysearch.search``."""

from cpython.array cimport array
from array import array as _array


def search_flat(int n, int[:] dom_off, int[:] dom_x, int[:] dom_y,
                int[:] cod_off, int[:] cod_x, int[:] cod_y,
                int[:] comp_off, int[:] comp_a, int[:] comp_b, int[:] comp_c,
                int[:] tdom, int[:] tcod, int[:] tcomp, int m,
                int[:] cand_off, int[:] cand, long limit, long max_nodes):
    cdef array Fa = _array("i", [-1] * max(n, 1))
    cdef array Pa = _array("i", [0] * max(n, 1))
    cdef int[:] F = Fa
    cdef int[:] pos = Pa
    cdef int i = 0, k, v, a, b, c
    cdef long nodes = 0
    cdef bint ok
    out = []
    if n == 0:
        return [[]], 0
    while i >= 0:
        if pos[i] >= cand_off[i + 1] - cand_off[i]:
            pos[i] = 0
            F[i] = -1
            i -= 1
            if i >= 0:
                pos[i] += 1
            continue
        v = cand[cand_off[i] + pos[i]]
        nodes += 1
        if nodes > max_nodes:
            return out, -nodes
        F[i] = v
        ok = True
        for k in range(dom_off[i], dom_off[i + 1]):
            if tdom[F[dom_x[k]]] != F[dom_y[k]]:
                ok = False
                break
        if ok:
            for k in range(cod_off[i], cod_off[i + 1]):
                if tcod[F[cod_x[k]]] != F[cod_y[k]]:
                    ok = False
                    break
        if ok:
            for k in range(comp_off[i], comp_off[i + 1]):
                a = F[comp_a[k]]
                b = F[comp_b[k]]
                c = F[comp_c[k]]
                if tcomp[a * m + b] != c:
                    ok = False
                    break
        if not ok:
            pos[i] += 1
            continue
        if i == n - 1:
            out.append([F[k] for k in range(n)])
            if limit >= 0 and len(out) >= limit:
                return out, nodes
            pos[i] += 1
            continue
        i += 1
        pos[i] = 0
    return out, nodes


cdef bint _assoc_ok(int n, int* dom, int* cod, int* t):
    cdef int h, g, f, hg, gf, a, b
    for g in range(n):
        for f in range(n):
            gf = t[g * n + f]
            if gf < 0:
                continue
            for h in range(n):
                hg = t[h * n + g]
                if hg < 0:
                    continue
                a = t[hg * n + f]
                b = t[h * n + gf]
                if a >= 0 and b >= 0 and a != b:
                    return False
    return True


def enumerate_tables(int n, int[:] dom, int[:] cod, int[:] table0, int[:] cells_g,
                     int[:] cells_f, int[:] cand_off, int[:] cand, int[:] perms, int P,
                     long max_nodes):
    """Associative completions of ``table0`` (row-major ``g*n+f``, ``-1`` for
    unset), deduplicated by the least relabelling under ``perms``.

    Returns ``(canonical tables as bytes, labelled count, nodes)``; nodes is
    negative when ``max_nodes`` was exceeded.
    """
    cdef int ncell = cells_g.shape[0]
    cdef array T = _array("i", list(table0))
    cdef int[:] t = T
    cdef array Pa = _array("i", [0] * max(ncell, 1))
    cdef int[:] pos = Pa
    cdef array Best = _array("i", [0] * (n * n))
    cdef int[:] best = Best
    cdef array Inv = _array("i", [0] * max(n, 1))
    cdef int[:] inv = Inv
    cdef array D = _array("i", list(dom))
    cdef array C = _array("i", list(cod))
    cdef int k = 0, i, j, p, v, e, cmp
    cdef long nodes = 0, labelled = 0
    found = set()
    if ncell == 0:
        if _assoc_ok(n, D.data.as_ints, C.data.as_ints, T.data.as_ints):
            labelled = 1
            found.add(_canon(n, t, perms, P, best, inv))
        return found, labelled, 0
    while k >= 0:
        if pos[k] >= cand_off[k + 1] - cand_off[k]:
            pos[k] = 0
            t[cells_g[k] * n + cells_f[k]] = -1
            k -= 1
            if k >= 0:
                pos[k] += 1
            continue
        v = cand[cand_off[k] + pos[k]]
        nodes += 1
        if nodes > max_nodes:
            return found, labelled, -nodes
        t[cells_g[k] * n + cells_f[k]] = v
        if not _assoc_ok(n, D.data.as_ints, C.data.as_ints, T.data.as_ints):
            pos[k] += 1
            continue
        if k == ncell - 1:
            labelled += 1
            found.add(_canon(n, t, perms, P, best, inv))
            pos[k] += 1
            continue
        k += 1
        pos[k] = 0
    return found, labelled, nodes


cdef bytes _canon(int n, int[:] t, int[:] perms, int P, int[:] best, int[:] inv):
    cdef int p, i, j, v, x, cmp
    cdef bint first = True
    for p in range(P):
        for i in range(n):
            inv[perms[p * n + i]] = i
        cmp = 0 if not first else -1
        for i in range(n * n):
            x = t[inv[i // n] * n + inv[i % n]]
            v = perms[p * n + x] if x >= 0 else -1
            if cmp == 0:
                if v < best[i]:
                    cmp = -1
                elif v > best[i]:
                    cmp = 1
                    break
            if cmp == -1:
                best[i] = v
        first = False
    return bytes([best[i] + 1 for i in range(n * n)])
