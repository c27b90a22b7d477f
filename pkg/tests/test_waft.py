import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import KINDS
from weakadj.base import BaseKind, get_base, is_iso
from weakadj.corpus import (corpus_vcategories, galois_left_adjoint, lattice_vcat, lattices,
                            meet_preserving_maps, orbit_fixture, poset_functor,
                            preorders_with_products)
from weakadj.errors import InternalInconsistency, PreconditionError, generous
from weakadj.fixtures import cat_reflective_fixture, lattice_fixture
from weakadj.shrink import check_eweak_reflection, comparison_map, in_E
from weakadj.suites import slice_ready
from weakadj.vcat import INITIAL, identity_functor, is_bipolar
from weakadj.waft import (eweak_reflection, find_biinitial, is_homotopy_limit,
                          powers_preserved, preserves_homotopy_qlimits,
                          singleton_is_solution_set, small_weakly_initial_family,
                          verify_biterm_value, weakly_initial_failure)
from weakadj.weights import cofibrancy_certificate, isoinserter, power, weighted_limit

ST, SS, CAT, PT = (get_base(k) for k in KINDS)


def leq(rel):
    order = set(rel)
    return lambda a, b: a == b or (int(a), int(b)) in order


# ---------------------------------------------------------------------------
# bi-initial objects


def test_lattice_family_of_atoms_and_bottom():
    for n, rel in lattices(5):
        c = lattice_vcat(ST, n, rel)
        le = leq(rel)
        bottom = [x for x in c.objects if all(le(x, y) for y in c.objects)][0]
        atoms = [x for x in c.objects if x != bottom
                 and all(y in (x, bottom) for y in c.objects if le(y, x))]
        r = find_biinitial(c, [bottom] + atoms)
        assert r.L == bottom and r.verify(c)


def test_split_products_of_weakly_initial_families():
    checked = 0
    for n, rel in preorders_with_products(4):
        c = lattice_vcat(SS, n, rel)
        le = leq(rel)
        for fam in itertools.combinations(c.objects, 2):
            if weakly_initial_failure(c, fam) is not None:
                continue
            r = find_biinitial(c, fam)
            # L is a greatest lower bound of the family, up to the preorder
            assert all(le(r.L, f) for f in fam)
            assert all(le(x, r.L) for x in c.objects if all(le(x, f) for f in fam))
            assert r.verify(c)
            checked += 1
    assert checked > 10


def test_cat_fixture_biinitial_is_the_pseudo_limit():
    B, A, U, objs = cat_reflective_fixture()
    with generous(8):
        for fam, L in ((["E"], "E"), (["T"], "T"), (["E", "T"], "E")):
            r = find_biinitial(B, fam)
            assert r.L == L and r.verify(B)
            assert r.instances[0] == ("pseudo-limit", tuple(sorted(fam)), L)
            for (C, D, f), w in r.triangles.items():
                a = B.compose(L, C, D, f, r.projections[C])
                assert w.verify_points(B.hom(L, D), a, r.projections[D])


def test_family_must_be_weakly_initial():
    c = lattice_vcat(ST, *lattices(4)[-1])
    with pytest.raises(PreconditionError, match="not weakly initial"):
        find_biinitial(c, [c.objects[-1]])


def test_pointed_base_needs_the_slice():
    c = lattice_fixture(BaseKind.POINTED)[1]
    with pytest.raises(PreconditionError, match="sliced"):
        find_biinitial(c, c.objects)


def test_greedy_family_is_weakly_initial():
    for kind in KINDS:
        for c in corpus_vcategories(kind, "small"):
            fam = small_weakly_initial_family(c)
            assert weakly_initial_failure(c, fam) is None


@settings(max_examples=40)
@given(st.sampled_from([c for k in KINDS for c in corpus_vcategories(k, "small")]), st.data())
def test_construction_is_sound(c0, data):
    c = slice_ready(c0)
    fams = [f for k in (1, 2) for f in itertools.combinations(c.objects, k)
            if weakly_initial_failure(c, f) is None]
    if not fams:
        return
    fam = data.draw(st.sampled_from(fams))
    with generous(8):
        try:
            r = find_biinitial(c, fam)
        except PreconditionError:
            return
        assert r.verify(c) and is_bipolar(c, r.L, INITIAL) is not None


# ---------------------------------------------------------------------------
# weak reflections


def test_lattice_fixture_reflection():
    B, A, U = lattice_fixture(BaseKind.SET_TRIVIAL)
    want = {"0": "0", "a": "0", "b": "1", "1": "1"}
    for a in A.objects:
        r = eweak_reflection(U, a)
        assert r.A_prime == want[a] and r.report.overall
        assert all(is_iso(comparison_map(U, a, r.A_prime, r.eta, b)) for b in B.objects)
        assert singleton_is_solution_set(U, r)


def test_reflections_are_galois_left_adjoints():
    for lb, la in itertools.product(lattices(4), repeat=2):
        Bc, Ac = lattice_vcat(ST, *lb), lattice_vcat(ST, *la)
        for f in meet_preserving_maps(lb, la):
            U = poset_functor(Bc, Ac, {Bc.objects[i]: Ac.objects[f[i]] for i in range(lb[0])})
            left = galois_left_adjoint(lb, la, f)
            for a in range(la[0]):
                r = eweak_reflection(U, str(a))
                assert r.A_prime == str(left[a]) and r.report.overall


def test_split_reflection_has_split_epi_verdicts():
    cats = preorders_with_products(4)
    n, rel = cats[-1]
    B = lattice_vcat(SS, n, rel)
    U = identity_functor(B)
    for a in B.objects:
        r = eweak_reflection(U, a)
        assert r.report.overall
        for b in B.objects:
            m = comparison_map(U, a, r.A_prime, r.eta, b)
            assert in_E(SS, m) is not None


def test_cat_fixture_reflection():
    B, A, U, objs = cat_reflective_fixture()
    with generous(8):
        for a in A.objects:
            r = eweak_reflection(U, a)
            assert r.report.overall and singleton_is_solution_set(U, r)
            for b in B.objects:
                m = comparison_map(U, a, r.A_prime, r.eta, b)
                cls = CAT.classify(m)
                assert cls.trivial_fibration
        assert eweak_reflection(U, "D").A_prime == "E"


def test_orbit_reflection_does_not_preserve_powers():
    B, A, P = orbit_fixture()
    with generous(8):
        for a in A.objects:
            r = eweak_reflection(P, a)
            assert r.report.overall
        r = eweak_reflection(P, "1")
        pw = powers_preserved(P, r.A_prime)
        assert pw["1"] is True and pw["G"] is False


def test_unknown_solution_set_member():
    B, A, U = lattice_fixture(BaseKind.SET_TRIVIAL)
    with pytest.raises(PreconditionError, match="not an object"):
        eweak_reflection(U, "a", ["nope"])
    r = eweak_reflection(U, "a", [("0", "<="), ("1", "<=")])
    assert r.A_prime == "0"


# ---------------------------------------------------------------------------
# the comparison as a bi-terminal value


def test_transposed_witness_for_the_identity():
    c = lattice_vcat(ST, *lattices(4)[-1])
    U = identity_functor(c)
    for a in c.objects:
        r = eweak_reflection(U, a)
        assert r.A_prime == a
        for b in c.objects:
            w = verify_biterm_value(U, r, b)
            assert len(set(w.h.fn.values())) == 1      # constant: the trivial homotopy


def test_transposed_witness_in_lattices_is_an_inverse():
    B, A, U = lattice_fixture(BaseKind.SET_TRIVIAL)
    for a in A.objects:
        r = eweak_reflection(U, a)
        for b in B.objects:
            m = comparison_map(U, a, r.A_prime, r.eta, b)
            if not m.source.elements:
                continue
            w = verify_biterm_value(U, r, b)
            assert w.section is not None and is_iso(m)


def test_transposed_witness_in_set_split():
    n, rel = preorders_with_products(4)[-1]
    B = lattice_vcat(SS, n, rel)
    U = identity_functor(B)
    built = 0
    for a in B.objects:
        r = eweak_reflection(U, a)
        for b in B.objects:
            try:
                w = verify_biterm_value(U, r, b)
            except PreconditionError:
                continue
            assert not w.violations(w_fragment(w, U, r, b))
            built += 1
    assert built > 0


def w_fragment(w, U, r, b):
    from weakadj.shrink import _fragment
    return _fragment(U.source.base, comparison_map(U, r.A, r.A_prime, r.eta, b))


def test_transposition_needs_a_terminal_unit():
    from weakadj.slicebase import as_sliced, r_embed
    B, A, U = lattice_fixture(BaseKind.SET_TRIVIAL)
    r = eweak_reflection(U, "a")
    c = lattice_fixture(BaseKind.POINTED)[1]
    Up = identity_functor(c)
    with pytest.raises(PreconditionError):
        verify_biterm_value(Up, r, "0")
    assert as_sliced(r_embed(c)).base.unit_is_terminal


# ---------------------------------------------------------------------------
# homotopy limits


def test_right_adjoints_preserve_limits_in_set_trivial():
    B, A, U = lattice_fixture(BaseKind.SET_TRIVIAL)
    adj = {a: eweak_reflection(U, a).report for a in A.objects}
    from weakadj.vcat import VFunctor, from_ordinary
    from weakadj.weights import constant_unit
    D = from_ordinary(ST, ["p", "q"], {}, {})
    W = constant_unit(D)
    for x, y in itertools.product(B.objects, repeat=2):
        S = VFunctor(D, B, {"p": x, "q": y},
                     {(u, v): ({D.ident[u]: B.ident[{"p": x, "q": y}[u]]} if u == v else {})
                      for u in D.objects for v in D.objects})
        r = weighted_limit(W, S)
        assert all(is_homotopy_limit(W, S, r.apex, r.cone.point).values())
        assert all(preserves_homotopy_qlimits(U, W, S, r.apex, r.cone.point, adj).values())


def test_cat_fixture_preserves_isoinserters():
    B, A, U, objs = cat_reflective_fixture()
    with generous(8):
        adj = {a: eweak_reflection(U, a).report for a in A.objects}
        F, G = B.points("T", "E")
        ins = isoinserter(B, "T", "E", F, G)
        Q, S = ins.limit.cone.weight, ins.limit.cone.diagram
        assert cofibrancy_certificate(Q) is not None
        pres = preserves_homotopy_qlimits(U, Q, S, ins.apex, ins.limit.cone.point, adj)
        assert all(pres.values())
        with pytest.raises(PreconditionError, match="E-weak left adjoint"):
            preserves_homotopy_qlimits(U, Q, S, ins.apex, ins.limit.cone.point, {})


def test_every_limit_is_a_homotopy_limit_in_set_split():
    B, A, U = lattice_fixture(BaseKind.SET_SPLIT)
    P = power(B, SS.make_set(["s", "t"]), "1")
    lim = P.limit
    assert all(is_homotopy_limit(lim.cone.weight, lim.cone.diagram, P.apex,
                                 lim.cone.point).values())


def test_soundness_guard_reports_a_kernel_bug(monkeypatch):
    import weakadj.waft as waft
    B, A, U = lattice_fixture(BaseKind.SET_TRIVIAL)
    r = check_eweak_reflection(U, "a", "<=", "1")
    assert not r.overall
    monkeypatch.setattr(waft, "check_eweak_reflection", lambda *a: r)
    monkeypatch.setattr(waft, "powers_preserved", lambda U, b: {x: True for x in B.objects})
    with pytest.raises(InternalInconsistency):
        eweak_reflection(U, "a")
