import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import KINDS
from weakadj.base import (BaseKind, VMap, chaotic_category, compose, discrete_category, get_base,
                          search_maps)
from weakadj.corpus import corpus_categories, corpus_objects
from weakadj.errors import LawViolation, PreconditionError
from weakadj.interval import (GlobalHomotopyWitness, Interval, compose_intervals,
                              homotopic_global, homotopy_search, interval_violations,
                              standard_interval, tensor_intervals, validate_interval)

ST, SS, CAT, PT = (get_base(k) for k in KINDS)


def test_identity_interval_in_set_trivial():
    one = ST.identity(ST.unit)
    assert validate_interval(Interval(ST.unit, one, one, one))


def test_cograph_interval_in_set_split():
    iv = standard_interval(SS)
    assert len(iv.J) == 2
    assert iv.d_elem != iv.c_elem
    assert not interval_violations(iv)


def test_discrete_two_is_not_an_interval_in_cat():
    J = discrete_category(["0", "1"])
    u = CAT.unit
    iv = Interval(J, VMap(u, J, {"*": "0"}), VMap(u, J, {"*": "1"}),
                  VMap(J, u, {"0": "*", "1": "*"}))
    assert "e is not a weak equivalence" in interval_violations(iv)
    with pytest.raises(LawViolation):
        validate_interval(iv)


def test_standard_intervals():
    for V in (ST, PT):
        iv = standard_interval(V)
        assert iv.J == V.unit and iv.d == iv.c == iv.e
    iv = standard_interval(CAT)
    assert iv.J == chaotic_category(["0", "1"])
    assert (iv.d_elem, iv.c_elem) == ("0", "1")
    for V in (ST, SS, CAT, PT):
        assert not interval_violations(standard_interval(V))


def test_composed_intervals():
    iv = compose_intervals(standard_interval(SS), standard_interval(SS))
    assert len(iv.J) == 3 and not interval_violations(iv)
    iv = compose_intervals(standard_interval(ST), standard_interval(ST))
    assert len(iv.J) == 1 and not interval_violations(iv)
    iv = compose_intervals(standard_interval(CAT), standard_interval(CAT))
    assert len(iv.J.objects) == 3
    assert all(len(iv.J.hom(a, b)) == 1 for a, b in itertools.product(iv.J.objects, repeat=2))
    assert iv.d_elem != iv.c_elem
    assert not interval_violations(iv)


def test_tensor_intervals():
    assert len(tensor_intervals(standard_interval(ST), standard_interval(ST)).J) == 1
    iv = tensor_intervals(standard_interval(SS), standard_interval(SS))
    assert len(iv.J) == 4 and not interval_violations(iv)
    s = standard_interval(SS)
    assert iv.d_elem == f"({s.d_elem},{s.d_elem})"
    iv = tensor_intervals(standard_interval(CAT), standard_interval(CAT))
    assert len(iv.J.objects) == 4 and len(iv.J) == 16
    assert not interval_violations(iv)


def test_homotopy_examples():
    X = ST.make_set(["a", "b"])
    assert homotopic_global(ST.point_map(X, "a"), ST.point_map(X, "b")) is None
    X = SS.make_set(["a", "b"])
    w = homotopic_global(SS.point_map(X, "a"), SS.point_map(X, "b"))
    assert w is not None and w.interval.J == standard_interval(SS).J
    assert sorted(w.h.fn.values()) == ["a", "b"]
    c = chaotic_category(["0", "1"])
    w = homotopic_global(CAT.point_map(c, "0"), CAT.point_map(c, "1"))
    assert w.verify(CAT.point_map(c, "0"), CAT.point_map(c, "1"))
    assert w.h.fn["0>1"] == "0>1"


def test_homotopy_requires_matching_targets():
    X, Y = SS.make_set(["a"]), SS.make_set(["b"])
    with pytest.raises(PreconditionError):
        homotopic_global(SS.point_map(X, "a"), SS.point_map(Y, "b"))


def points(V, X):
    return V.points(X)


@st.composite
def object_with_points(draw, n=2):
    V = get_base(draw(st.sampled_from(KINDS)))
    X = draw(st.sampled_from([x for x in corpus_objects(V.kind) if V.points(x)]))
    return (V, X) + tuple(draw(st.sampled_from(V.points(X))) for _ in range(n))


@given(object_with_points(2))
def test_relation_per_base(data):
    V, X, a, b = data
    w = homotopy_search(X, a, b)
    if V.kind in (BaseKind.SET_TRIVIAL, BaseKind.POINTED):
        assert (w is not None) == (a == b)
    elif V.kind is BaseKind.SET_SPLIT:
        assert w is not None
    else:
        assert (w is not None) == oracle.isomorphic_objects(X, a, b)
    if w is not None:
        assert w.verify_points(X, a, b)


@given(object_with_points(1))
def test_reflexive(data):
    V, X, a = data
    assert homotopy_search(X, a, a).verify_points(X, a, a)


@given(object_with_points(2))
def test_symmetric(data):
    V, X, a, b = data
    w = homotopy_search(X, a, b)
    if w is not None:
        r = w.reversed()
        assert not interval_violations(r.interval) and r.verify_points(X, b, a)


@given(object_with_points(3))
def test_transitive_through_pushout(data):
    V, X, a, b, c = data
    w1, w2 = homotopy_search(X, a, b), homotopy_search(X, b, c)
    if w1 is None or w2 is None:
        return
    w = w1.then(w2)
    assert not interval_violations(w.interval)
    assert w.verify_points(X, a, c)


@given(object_with_points(2), st.data())
def test_congruence(data, draw):
    V, X, a, b = data
    w = homotopy_search(X, a, b)
    if w is None:
        return
    Y = draw.draw(st.sampled_from(corpus_objects(V.kind)))
    fs = search_maps(X, Y, limit=8)
    if not fs:
        return
    f = draw.draw(st.sampled_from(fs))
    pushed = w.push(f)
    assert pushed.verify(compose(f, V.point_map(X, a)), compose(f, V.point_map(X, b)))


def cat_intervals():
    """Every interval of Cat on a corpus category or a chaotic category of
    at most four objects."""
    u = CAT.unit
    Js = list(corpus_categories(2, 6)) + [chaotic_category([str(i) for i in range(n)])
                                          for n in (3, 4)]
    out = []
    for J in Js:
        e = VMap(J, u, {m: "*" for m in J.elements})
        for a, b in itertools.product(J.objects, repeat=2):
            iv = Interval(J, VMap(u, J, {"*": a}), VMap(u, J, {"*": b}), e)
            if not interval_violations(iv):
                out.append(iv)
    return out


def test_standard_interval_is_complete_in_cat():
    ivs = cat_intervals()
    assert len(ivs) >= 3
    for X in corpus_objects(BaseKind.CAT):
        for a, b in itertools.product(X.objects, repeat=2):
            other = any(homotopy_search(X, a, b, iv) is not None for iv in ivs)
            standard = homotopy_search(X, a, b) is not None
            assert other <= standard
            assert standard == oracle.isomorphic_objects(X, a, b)


def test_witness_checks_endpoints():
    X = SS.make_set(["a", "b"])
    w = homotopic_global(SS.point_map(X, "a"), SS.point_map(X, "b"))
    assert not w.verify(SS.point_map(X, "b"), SS.point_map(X, "a"))
    assert isinstance(w, GlobalHomotopyWitness)
