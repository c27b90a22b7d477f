"""Pure Python twin of the compiled table enumerator (same contract)."""

from __future__ import annotations


def _assoc_ok(n, t):
    for g in range(n):
        for f in range(n):
            gf = t[g * n + f]
            if gf < 0:
                continue
            for h in range(n):
                hg = t[h * n + g]
                if hg < 0:
                    continue
                a, b = t[hg * n + f], t[h * n + gf]
                if a >= 0 and b >= 0 and a != b:
                    return False
    return True


def _canon(n, t, perms, P):
    best = None
    for p in range(P):
        perm = perms[p * n:(p + 1) * n]
        inv = [0] * n
        for i, v in enumerate(perm):
            inv[v] = i
        cand = []
        for i in range(n * n):
            x = t[inv[i // n] * n + inv[i % n]]
            cand.append(perm[x] if x >= 0 else -1)
        if best is None or cand < best:
            best = cand
    return bytes(v + 1 for v in best)


def enumerate_tables(n, dom, cod, table0, cells_g, cells_f, cand_off, cand, perms, P,
                     max_nodes):
    t = list(table0)
    ncell = len(cells_g)
    found = set()
    labelled = 0
    if ncell == 0:
        if _assoc_ok(n, t):
            found.add(_canon(n, t, perms, P))
            labelled = 1
        return found, labelled, 0
    pos = [0] * ncell
    k = 0
    nodes = 0
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
        if not _assoc_ok(n, t):
            pos[k] += 1
            continue
        if k == ncell - 1:
            labelled += 1
            found.add(_canon(n, t, perms, P))
            pos[k] += 1
            continue
        k += 1
        pos[k] = 0
    return found, labelled, nodes
