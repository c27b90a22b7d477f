"""Pure Python backtracking search for structure-preserving maps.

Sources and targets are finite categories encoded by integer tables
(sets are discrete categories).  A solution is a list ``F`` with
``F[i]`` the target index of source element ``i``.
"""

from __future__ import annotations


def search(dom_checks, cod_checks, comp_checks, tdom, tcod, tcomp, cand,
           limit, max_nodes):
    """Enumerate assignments in lexicographic order.

    ``dom_checks[i]`` lists pairs ``(x, y)`` meaning ``tdom[F[x]] == F[y]``,
    due once position ``i`` (the larger of the two) is assigned; likewise
    ``cod_checks``.  ``comp_checks[i]`` lists triples ``(a, b, c)`` meaning
    ``tcomp[F[a] * m + F[b]] == F[c]`` with ``m = len(tdom)``.  Returns ``(solutions, nodes)``;
    ``nodes`` is negative when ``max_nodes`` was exceeded.
    """
    n = len(cand)
    m = len(tdom)
    out = []
    if n == 0:
        return [[]], 0
    F = [-1] * n
    pos = [0] * n
    i = 0
    nodes = 0
    while i >= 0:
        cs = cand[i]
        if pos[i] >= len(cs):
            pos[i] = 0
            F[i] = -1
            i -= 1
            if i >= 0:
                pos[i] += 1
            continue
        v = cs[pos[i]]
        nodes += 1
        if nodes > max_nodes:
            return out, -nodes
        F[i] = v
        ok = True
        for x, y in dom_checks[i]:
            if tdom[F[x]] != F[y]:
                ok = False
                break
        if ok:
            for x, y in cod_checks[i]:
                if tcod[F[x]] != F[y]:
                    ok = False
                    break
        if ok:
            for a, b, c in comp_checks[i]:
                if tcomp[F[a] * m + F[b]] != F[c]:
                    ok = False
                    break
        if not ok:
            pos[i] += 1
            continue
        if i == n - 1:
            out.append(list(F))
            if limit >= 0 and len(out) >= limit:
                return out, nodes
            pos[i] += 1
            continue
        i += 1
        pos[i] = 0
    return out, nodes
