import itertools

import pytest

from oracle import LATTICE_COUNTS, MONOID_COUNTS, PREORDER_COUNTS
from weakadj import kernel
from weakadj.base import validate_vobj
from weakadj.corpus import (_frozen_tables, category_counts, category_tables,
                            enumerate_category_tables, lattices, monoid_tables, preorders,
                            table_category)
from weakadj.errors import generous


def naive_monoids(n):
    """Associative tables with unit 0, one per isomorphism class, by brute force."""
    seen, out = set(), []
    rest = range(1, n)
    for cells in itertools.product(range(n), repeat=(n - 1) ** 2):
        t = [[0] * n for _ in range(n)]
        for i in range(n):
            t[0][i] = t[i][0] = i
        for (g, f), v in zip(itertools.product(rest, repeat=2), cells):
            t[g][f] = v
        if any(t[t[a][b]][c] != t[a][t[b][c]] for a, b, c in itertools.product(range(n), repeat=3)):
            continue
        key = min(tuple(p.index(t[p[a]][p[b]]) for a in range(n) for b in range(n))
                  for p in ((0,) + q for q in itertools.permutations(rest)))
        if key not in seen:
            seen.add(key)
            out.append(t)
    return out


def test_monoid_counts():
    for n, want in MONOID_COUNTS.items():
        assert len(monoid_tables(n)) == want


@pytest.mark.parametrize("n", [1, 2, 3])
def test_monoids_agree_with_brute_force(n):
    assert len(naive_monoids(n)) == len(monoid_tables(n)) == MONOID_COUNTS[n]


def test_preorder_and_lattice_counts():
    ps = preorders(4)
    for n, want in PREORDER_COUNTS.items():
        assert sum(1 for m, _ in ps if m == n) == want
    ls = lattices(5)
    for n, want in LATTICE_COUNTS.items():
        assert sum(1 for m, _ in ls if m == n) == want


def test_frozen_tables_cover_the_corpus():
    frozen = _frozen_tables()
    assert set(frozen) == {f"{k},{m}" for k, m in category_counts()}


# the pure-Python enumeration of the order-6 monoids takes over an hour;
# the compiled kernel does it in about a minute
SKIP = {"python": {"1,6"}, "cython": set()}


@pytest.mark.parametrize("impl", sorted({"python", kernel.IMPLEMENTATION}))
def test_frozen_tables_equal_recomputation(impl):
    with generous(8):
        for key in _frozen_tables():
            if key in SKIP[impl]:
                continue
            k, m = map(int, key.split(","))
            fresh = enumerate_category_tables(k, m, impl)
            assert sorted(fresh) == sorted(category_tables(k, m)), key


def test_every_table_is_a_category():
    for k, m in category_counts():
        for d, c, t in category_tables(k, m):
            assert not validate_vobj(table_category(d, c, t))
