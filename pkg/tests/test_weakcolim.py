import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weakadj.base import BaseKind, get_base, is_iso
from weakadj.corpus import lattice_vcat, lattices
from weakadj.errors import PreconditionError, generous
from weakadj.fixtures import coequaliser_fixture, conical_join_fixture
from weakadj.shrink import in_E
from weakadj.suites import join_oracle
from weakadj.vcat import (from_poset, identity_functor, inclusion, unit_vcategory,
                          vfunctor_violations)
from weakadj.weakcolim import (cocone_object, duality_agrees, find_eweak_colimit,
                               is_eweak_colimit, nerve, nerve_label, op_shape,
                               representable_presheaf)
from weakadj.weights import constant_unit

ST, SS, CAT = (get_base(k) for k in (BaseKind.SET_TRIVIAL, BaseKind.SET_SPLIT, BaseKind.CAT))


def test_nerve_of_the_unit():
    u = unit_vcategory(ST)
    N = nerve(identity_functor(u))
    assert not vfunctor_violations(N)
    assert N("*") == nerve_label("*")
    assert len(N.target.hom(N("*"), N("*"))) == len(u.hom("*", "*"))


@pytest.mark.parametrize("kind", [BaseKind.SET_TRIVIAL, BaseKind.SET_SPLIT])
def test_nerve_of_a_poset_inclusion_is_a_vfunctor(kind):
    A, D, S, W = conical_join_fixture(kind)
    N = nerve(S, extra={"W": W})
    assert not vfunctor_violations(N)
    for X in A.objects:
        # A(S−, X) at d is the hom from S d
        P = N.target.meta["presheaves"][nerve_label(X)]
        for d in D.objects:
            assert len(P.at[d]) == len(A.hom(S(d), X))


def test_nerve_along_the_identity_is_fully_faithful():
    c = lattice_vcat(ST, *lattices(4)[-1])
    N = nerve(identity_functor(c))
    for X, Y in itertools.product(c.objects, repeat=2):
        # Yoneda: A(X, Y) ≅ [A^op, V](A(−, X), A(−, Y))
        assert len(N.target.hom(N(X), N(Y))) == len(c.hom(X, Y))


@pytest.mark.parametrize("kind", [BaseKind.SET_TRIVIAL, BaseKind.SET_SPLIT])
def test_join_is_the_colimit_of_the_discrete_pair(kind):
    A, D, S, W = conical_join_fixture(kind)
    V = A.base
    seen = []
    for C in A.objects:
        for eta in V.points(cocone_object(W, S, C)):
            r = is_eweak_colimit(W, S, C, eta)
            if r.overall:
                seen.append(C)
                for X, m in r.comparisons.items():
                    if kind is BaseKind.SET_TRIVIAL:
                        assert is_iso(m)
                    else:
                        assert in_E(V, m) is not None
                assert set(r.legs) == set(D.objects)
    assert seen == ["1"]


def test_coequaliser_fixture_in_cat():
    A, Eq, S, W, objs = coequaliser_fixture()
    with generous(8):
        found = []
        for C in A.objects:
            for eta in CAT.points(cocone_object(W, S, C)):
                r = is_eweak_colimit(W, S, C, eta)
                if r.overall:
                    found.append(C)
                assert duality_agrees(W, S, C, eta)
        assert "E" in found
        N = nerve(S, extra={"W": W}, reduced=True)
        assert not vfunctor_violations(N)


def test_weight_must_be_a_presheaf_on_the_shape():
    A, D, S, W = conical_join_fixture(BaseKind.SET_TRIVIAL)
    with pytest.raises(PreconditionError, match="presheaf"):
        is_eweak_colimit(constant_unit(D), S, "1", "x")


def test_non_natural_cocone_is_refused():
    A, D, S, W = conical_join_fixture(BaseKind.SET_TRIVIAL)
    with pytest.raises(PreconditionError, match="cocone"):
        is_eweak_colimit(W, S, "1", "not-a-cocone")


def test_representable_weight_gives_the_object():
    A, D, S, W = conical_join_fixture(BaseKind.SET_TRIVIAL)
    for d in D.objects:
        r = find_eweak_colimit(representable_presheaf(D, d), S)
        assert r is not None and r.apex == S(d)


def test_no_colimit_when_the_apex_is_missing():
    A, D, S, W = conical_join_fixture(BaseKind.SET_TRIVIAL)
    below = [X for X in A.objects if X != "1"]
    assert find_eweak_colimit(W, S, below) is None


@given(st.sampled_from(lattices(4)), st.data())
def test_search_finds_the_join(lat, data):
    n, rel = lat
    L = lattice_vcat(ST, n, rel)
    rs = set(rel) | {(i, i) for i in range(n)}
    sub = data.draw(st.lists(st.sampled_from(range(n)), min_size=1, max_size=n, unique=True))
    names = [str(s) for s in sorted(sub)]
    D = from_poset(ST, names, lambda u, v: u == v, name="D")
    S = inclusion(D, L)
    r = find_eweak_colimit(constant_unit(op_shape(D)), S)
    assert r is not None and r.apex == str(join_oracle(n, rs, sorted(sub)))


@pytest.mark.parametrize("kind", [BaseKind.SET_TRIVIAL, BaseKind.SET_SPLIT])
def test_direct_and_reflection_readings_agree(kind):
    A, D, S, W = conical_join_fixture(kind)
    for C in A.objects:
        for eta in A.base.points(cocone_object(W, S, C)):
            assert duality_agrees(W, S, C, eta)
