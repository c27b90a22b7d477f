import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import KINDS
from weakadj.base import BASEPOINT, BaseKind, VMap, get_base, identity, is_iso, search_maps
from weakadj.comma import slice, slice_object
from weakadj.corpus import corpus_vcategories, lattice_vcat, lattices
from weakadj.errors import LawViolation, PreconditionError, generous
from weakadj.fixtures import lattice_fixture
from weakadj.shrink import shrinkable_witness
from weakadj.slicebase import (as_sliced, augment, augmented_object_comma, comma_transport,
                               from_sliced, functor_as_sliced, r_counit, r_embed, r_functor,
                               r_transpose, same_augmented, slice_base, transfer_limit,
                               unique_augmentation)
from weakadj.vcat import (TERMINAL, VFunctor, compose_functors, from_ordinary, identity_functor,
                          is_bipolar, point_functor, unit_vcategory, vcategory_violations,
                          vfunctor_violations)
from weakadj.weights import canonical_enough_weight, power_weight

ST, SS, CAT, PT = (get_base(k) for k in KINDS)
SPT = slice_base(BaseKind.POINTED)


def arrow(V):
    return from_ordinary(V, ["x", "y"], {"f": ("x", "y")}, {}, name="arrow")


def test_unit_of_the_slice_is_terminal():
    assert SPT.unit_is_terminal and not PT.unit_is_terminal
    for sb in (SPT, slice_base(BaseKind.SET_TRIVIAL)):
        for x in (sb.unit, sb.tensor(sb.unit, sb.unit)):
            maps = sb.maps(x, sb.unit)
            assert len(maps) == 1
        assert len(sb.maps(sb.unit, sb.unit)) == 1


def test_slicing_twice_is_refused():
    with pytest.raises(PreconditionError):
        slice_base(SPT)


def test_cartesian_slice_is_the_base_up_to_relabelling():
    sb = slice_base(BaseKind.SET_TRIVIAL)
    x, y = sb.make_set(["a", "b"]), sb.make_set(["p", "q", "r"])
    assert len(sb.tensor(x, y)) == len(ST.tensor(ST.make_set(["a", "b"]), ST.make_set(["p", "q", "r"])))
    assert len(sb.internal_hom(x, y)) == 9
    assert len(sb.maps(x, y)) == len(search_maps(ST.make_set(["a", "b"]),
                                                 ST.make_set(["p", "q", "r"])))


def pointed_over_s0(elements, up):
    """A pointed set over ``S0``: the elements in ``up`` go to ``1``."""
    return SPT.make_set(elements, {e: ("1" if e in up else BASEPOINT)
                                   for e in [BASEPOINT] + list(elements)})


def test_internal_hom_is_the_pullback():
    Y = pointed_over_s0(["a", "b"], {"a"})
    Z = pointed_over_s0(["p", "q", "r"], {"p", "q"})
    # maps φ with z∘φ = 0 plus maps with z∘φ = y, counted by brute force in the parent
    plainY, plainZ = PT.make_set(["a", "b"]), PT.make_set(["p", "q", "r"])
    zero = one = 0
    for phi in search_maps(plainY, plainZ):
        img = {e: Z.aug[phi.fn[e]] for e in plainY.elements}
        zero += all(v == BASEPOINT for v in img.values())
        one += all(img[e] == Y.aug[e] for e in plainY.elements)
    H = SPT.internal_hom(Y, Z)
    # the basepoint (0, *) is shared between the two summands
    assert len(H) == zero + one
    assert sorted(SPT.points(H)) == sorted(e for e in H.elements if H.aug[e] == "1")
    assert len(SPT.points(H)) == one


def test_classification_uses_the_underlying_map():
    X = pointed_over_s0(["a", "b"], {"a", "b"})
    Y = pointed_over_s0(["p"], {"p"})
    for f in SPT.maps(X, Y):
        assert SPT.classify(f) == PT.classify(VMap(X.plain, Y.plain, f.fn))


def test_augmentations_must_commute():
    X = pointed_over_s0(["a"], {"a"})
    Y = pointed_over_s0(["p"], set())
    assert not SPT.maps(X, Y)[1:]
    bad = VMap(X, Y, {BASEPOINT: BASEPOINT, "a": "p"})
    assert SPT.validate_map(bad)


def test_unit_category_round_trip():
    u = unit_vcategory(PT)
    a = augment(u, identity_functor(u))
    s = as_sliced(a)
    assert s.base is SPT and not vcategory_violations(s)
    assert same_augmented(from_sliced(s), a)


@pytest.mark.parametrize("name", ["arrow", "A", "B"])
def test_round_trip_on_pointed_fixtures(name):
    B, A, _ = lattice_fixture(BaseKind.POINTED)
    c = {"arrow": arrow(PT), "A": A, "B": B}[name]
    a = r_embed(c)
    assert not a.violations()
    s = as_sliced(a)
    assert not vcategory_violations(s)
    assert same_augmented(from_sliced(s), a)


def test_augmentation_is_required_when_unit_is_not_terminal():
    with pytest.raises(PreconditionError):
        unique_augmentation(arrow(PT))
    with pytest.raises(PreconditionError):
        from_sliced(arrow(PT))


def test_invalid_augmentation_is_rejected():
    c = arrow(PT)
    u = unit_vcategory(PT)
    bad = VFunctor(c, u, {"x": "*", "y": "*"},
                   {(a, b): {e: BASEPOINT for e in c.hom(a, b).elements}
                    for a in c.objects for b in c.objects})
    with pytest.raises(LawViolation):
        augment(c, bad)


def test_r_embed_of_the_unit_and_of_set_trivial():
    u = unit_vcategory(PT)
    Ru = r_embed(u)
    # the cartesian product S0 × S0, not the smash product
    assert len(Ru.carrier.hom("*", "*")) == 4
    c = lattice_vcat(ST, *lattices(4)[-1])
    Rc = r_embed(c)
    for a, b in itertools.product(c.objects, repeat=2):
        assert len(Rc.carrier.hom(a, b)) == len(c.hom(a, b))


def test_r_embed_of_the_pointed_arrow():
    c = arrow(PT)
    Rc = r_embed(c)
    for a, b in itertools.product(c.objects, repeat=2):
        # the product of pointed sets has the product of the underlying sets
        assert len(Rc.carrier.hom(a, b)) == 2 * len(c.hom(a, b))
    assert not vcategory_violations(Rc.carrier)


def test_r_is_right_adjoint_to_forgetting():
    # F: C → A corresponds to (F, aug): C → R(A), and the counit recovers F
    B, A, U = lattice_fixture(BaseKind.POINTED)
    RA = r_embed(A)
    a = r_embed(B)
    Fbar = r_transpose(compose_functors(U, r_counit(a, B)), a, RA)
    assert not vfunctor_violations(Fbar)
    back = compose_functors(r_counit(RA, A), Fbar)
    for (x, y), m in back.hom_action.items():
        for e, v in m.items():
            assert v == U.on(x, y, r_counit(a, B).on(x, y, e))
    RU = r_functor(U, r_embed(B), RA)
    assert not vfunctor_violations(RU)
    functor_as_sliced(RU, as_sliced(r_embed(B)), as_sliced(RA))


def test_sliced_identities_are_terminal_in_slices():
    for c in (arrow(PT), *lattice_fixture(BaseKind.POINTED)[:2]):
        s = as_sliced(r_embed(c))
        for y in c.objects:
            sl = slice(s, y)
            top = slice_object(sl, y, s.ident[y])
            for o in sl.carrier.objects:
                h = sl.carrier.hom(o, top)
                assert any(is_iso(m) for m in SPT.maps(h, SPT.unit))
            # plain slice: the identity is not terminal once I = S0
            plain = slice(c, y)
            ptop = slice_object(plain, y, c.ident[y])
            assert any(not any(is_iso(m) for m in PT.maps(plain.carrier.hom(o, ptop),
                                                          PT.terminal()))
                       for o in plain.carrier.objects)


@given(st.sampled_from(corpus_vcategories(BaseKind.POINTED, "small")), st.data())
def test_shrinkable_iff_sliced_biterminal(c0, data):
    c = as_sliced(r_embed(c0))
    B = data.draw(st.sampled_from(c.objects))
    with generous(4):
        sl = slice(c, B)
        for A in c.objects:
            for f in c.points(A, B):
                w = shrinkable_witness(c, A, B, f)
                cert = is_bipolar(sl.carrier, slice_object(sl, A, f), TERMINAL)
                assert (w is None) == (cert is None)


def test_comma_transport_identity_on_the_unit():
    u = unit_vcategory(PT)
    t = comma_transport("*", identity_functor(u))
    assert t.verify()
    assert all(m.fn == {e: e for e in m.source.elements} or is_iso(m) for m in t.homs.values())


@pytest.mark.parametrize("kind", [BaseKind.SET_TRIVIAL, BaseKind.POINTED])
def test_comma_transport_on_the_lattice_fixture(kind):
    B, A, U = lattice_fixture(kind)
    for x in A.objects:
        t = comma_transport(x, U)
        assert t.verify()
        if kind is BaseKind.SET_TRIVIAL:
            for (p, q), m in t.homs.items():
                assert len(m.source) == len(m.target)


def test_augmented_object_comma_is_a_sliced_category():
    B, A, U = lattice_fixture(BaseKind.POINTED)
    oc, carrier = augmented_object_comma("a", U)
    assert carrier.base is SPT and not vcategory_violations(carrier)
    assert carrier.objects == oc.carrier.objects


def test_transfer_of_a_terminal_weight():
    c = lattice_vcat(ST, *lattices(4)[-1])
    W = power_weight(ST, ST.unit)
    for y in c.objects:
        S = point_functor(c, y)
        S.source = W.shape
        tl = transfer_limit(W, S)
        assert tl.verify() and tl.parent.apex == y


def test_transfer_of_the_split_enough_weight():
    B, A, _ = lattice_fixture(BaseKind.SET_SPLIT)
    D = from_ordinary(SS, ["p", "q"], {}, {})
    ew = canonical_enough_weight(SS, D)
    for x, y in (("a", "b"), ("0", "1"), ("a", "a")):
        S = VFunctor(D, A, {"p": x, "q": y},
                     {(u, v): ({D.ident[u]: "<="} if u == v else {})
                      for u in D.objects for v in D.objects})
        tl = transfer_limit(ew.Q, S)
        assert tl.verify() and tl.certificate is not None
    assert transfer_limit(ew.Q, S).parent.apex == "a"


def test_transfer_of_a_pointed_power():
    c = arrow(PT)
    W = power_weight(PT, PT.unit)
    for y in c.objects:
        S = point_functor(c, y)
        S.source = W.shape
        tl = transfer_limit(W, S, {"*": identity(PT.unit)}, identity_functor(W.shape))
        assert tl.verify()
    with pytest.raises(PreconditionError):
        transfer_limit(W, S)
