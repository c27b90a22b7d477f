import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import KINDS
from weakadj.base import BASEPOINT, BaseKind, chaotic_category, discrete_category, get_base
from weakadj.corpus import (corpus_vcategories, lattice_vcat, lattices, meet_preserving_maps,
                            poset_functor)
from weakadj.errors import LawViolation, PreconditionError, generous
from weakadj.vcat import (INITIAL, TERMINAL, from_poset, from_table, hom_functor, homotopy_er,
                          hstar_equivalence, is_bipolar, self_enriched, transport_witness,
                          underlying_category, unit_vcategory, validate_vcategory,
                          vcategory_violations, vfunctor_violations, vhomotopic)

ST, SS, CAT, PT = (get_base(k) for k in KINDS)


def two_category():
    """Full sub-2-category of Cat on 1, the free isomorphism and the arrow."""
    from weakadj.base import arrow_category
    return self_enriched(CAT, {"1": discrete_category(["0"]), "T": chaotic_category(["0", "1"]),
                               "A": arrow_category()}, name="Cat3")


@pytest.mark.parametrize("kind", KINDS, ids=[k.value for k in KINDS])
def test_unit_vcategory_is_valid(kind):
    u = unit_vcategory(kind)
    assert validate_vcategory(u) is u
    U = underlying_category(u)
    # the pointed unit S0 has two global elements, the zero map and the identity
    assert U.objects == ("*",) and U.morphism_count() == (2 if kind is BaseKind.POINTED else 1)


def test_two_element_poset_is_valid():
    p = from_poset(ST, ["0", "1"], lambda a, b: a <= b)
    assert not vcategory_violations(p)
    assert [len(p.hom(a, b)) for a, b in itertools.product("01", repeat=2)] == [1, 1, 0, 1]


def test_broken_composition_names_the_triple():
    one = ST.make_set(["f", "g"])
    e = ST.make_set(["i"])
    table = {("a", "a", "a"): {("i", "i"): "i"},
             ("a", "a", "b"): {("f", "i"): "f", ("g", "i"): "f"},
             ("a", "b", "b"): {("i", "f"): "f", ("i", "g"): "g"},
             ("b", "b", "b"): {("i", "i"): "i"}}
    homs = {("a", "a"): e, ("b", "b"): e, ("a", "b"): one, ("b", "a"): ST.make_set([])}
    c = from_table(ST, ["a", "b"], homs, table, {"a": "i", "b": "i"})
    v = vcategory_violations(c)
    assert v and "(a,b)" in v[0] and "'g'" in v[0]
    with pytest.raises(LawViolation):
        validate_vcategory(c)


def test_underlying_category_of_a_two_category():
    c = two_category()
    U = underlying_category(c)
    assert U.objects == ("1", "A", "T")
    assert len(U.hom("1", "T")) == 2 and len(U.hom("T", "A")) == 2 and len(U.hom("A", "T")) == 4
    assert not U.violations()


def test_underlying_monoid_of_a_pointed_vcategory():
    X = PT.make_set(["e", "x"])
    mult = {("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "x", ("x", "x"): "x"}
    table = {("o", "o", "o"): {(g, f): mult.get((g, f), BASEPOINT)
                               for g in X.elements for f in X.elements}}
    c = from_table(PT, ["o"], {("o", "o"): X}, table, {"o": "e"})
    assert not vcategory_violations(c)
    U = underlying_category(c)
    assert U.hom("o", "o") == ["*", "e", "x"]
    got = {(g, f): U.compose("o", "o", "o", g, f) for g in "*ex" for f in "*ex"}
    want = {(g, f): mult.get((g, f), BASEPOINT) for g in "*ex" for f in "*ex"}
    assert got == want


def test_relations_per_base():
    lat = lattices(4)[-1]
    for V in (ST, SS):
        c = lattice_vcat(V, *lat)
        er = homotopy_er(c)
        assert not er.violations()
    free = self_enriched(SS, {"X": SS.make_set(["a", "b"]), "Y": SS.make_set(["p", "q"])})
    er = homotopy_er(free)
    assert all(len(er.classes(a, b)) == 1 for a, b in itertools.product(free.objects, repeat=2))
    fin = self_enriched(ST, {"X": ST.make_set(["a", "b"]), "Y": ST.make_set(["p", "q"])})
    er = homotopy_er(fin)
    assert all(len(er.classes(a, b)) == len(er.underlying.hom(a, b))
               for a, b in itertools.product(fin.objects, repeat=2))


def test_two_cells_decide_homotopy_in_cat():
    c = two_category()
    er = homotopy_er(c)
    assert not er.violations()
    for a, b in itertools.product(c.objects, repeat=2):
        H = c.hom(a, b)
        for f, g in itertools.product(er.underlying.hom(a, b), repeat=2):
            assert er.related(a, b, f, g) == oracle.isomorphic_objects(H, f, g)
    pts = c.points("1", "A")
    assert len(pts) == 2 and vhomotopic(c, "1", "A", pts[0], pts[1]) is None


def test_equal_morphisms_have_a_trivial_homotopy():
    c = two_category()
    for a, b in itertools.product(c.objects, repeat=2):
        for f in c.points(a, b):
            assert vhomotopic(c, a, b, f, f).is_trivial()


def test_vhomotopic_needs_parallel_morphisms():
    c = two_category()
    with pytest.raises(PreconditionError):
        vhomotopic(c, "1", "T", "nope", "nope")


def test_lattice_bottom_is_biinitial():
    for n, rel in lattices(5):
        c = lattice_vcat(ST, n, rel)
        cert = is_bipolar(c, "0", INITIAL)
        assert cert is not None and cert.verify(c)
        assert all(w.is_trivial() for w in cert.witnesses.values())
        assert is_bipolar(c, str(n - 1), TERMINAL) is not None


def test_weakly_initial_is_biinitial_in_set_split():
    for c in corpus_vcategories(BaseKind.SET_SPLIT, "small"):
        for x in c.objects:
            weakly = all(c.points(x, a) for a in c.objects)
            assert (is_bipolar(c, x, INITIAL) is not None) == weakly


def test_equivalent_of_terminal_is_biterminal():
    c = two_category()
    assert is_bipolar(c, "1", TERMINAL) is not None
    cert = is_bipolar(c, "T", TERMINAL)
    assert cert is not None and cert.verify(c)
    assert is_bipolar(c, "A", TERMINAL) is None


def test_bipolar_rejects_bad_direction():
    with pytest.raises(PreconditionError):
        is_bipolar(unit_vcategory(ST), "*", "sideways")


VCATS = [c for k in KINDS for c in corpus_vcategories(k, "small")]


@given(st.sampled_from(VCATS))
def test_corpus_vcategories_are_valid(c):
    with generous(8):
        _valid(c)


def _valid(c):
    assert not vcategory_violations(c)
    assert not underlying_category(c).violations()


@given(st.sampled_from(VCATS))
def test_homotopy_is_a_congruence(c):
    assert not homotopy_er(c).violations()


@given(st.sampled_from(VCATS), st.data())
def test_functors_preserve_homotopy(c, data):
    t = data.draw(st.sampled_from(c.objects))
    with generous(8):
        _preserved(c, t)


def _preserved(c, t):
    F = hom_functor(c, t)
    assert not vfunctor_violations(F)
    for a, b in itertools.product(c.objects, repeat=2):
        pts = c.points(a, b)
        for f, g in itertools.product(pts, repeat=2):
            w = vhomotopic(c, a, b, f, g)
            if w is not None:
                pushed = transport_witness(F, a, b, w)
                assert pushed.verify_points(F.target.hom(F(a), F(b)), F.on(a, b, f), F.on(a, b, g))


@given(st.sampled_from(VCATS))
def test_biinitial_objects_are_equivalent(c):
    bis = [x for x in c.objects if is_bipolar(c, x, INITIAL) is not None]
    for x, y in itertools.combinations(bis, 2):
        f, g, w1, w2 = hstar_equivalence(c, x, y)
        assert w1.verify_points(c.hom(x, x), c.compose(x, y, x, g, f), c.ident[x])
        assert w2.verify_points(c.hom(y, y), c.compose(y, x, y, f, g), c.ident[y])


@pytest.mark.parametrize("kind", [BaseKind.SET_TRIVIAL, BaseKind.SET_SPLIT])
def test_right_adjoints_preserve_biterminal_objects(kind):
    V = get_base(kind)
    lats = lattices(4)
    checked = 0
    for lb, la in itertools.product(lats, repeat=2):
        B, A = lattice_vcat(V, *lb), lattice_vcat(V, *la)
        for f in meet_preserving_maps(lb, la):
            U = poset_functor(B, A, {B.objects[i]: A.objects[f[i]] for i in range(lb[0])})
            assert not vfunctor_violations(U)
            for t in B.objects:
                if is_bipolar(B, t, TERMINAL) is not None:
                    assert is_bipolar(A, U(t), TERMINAL) is not None
                    checked += 1
    assert checked > 20
