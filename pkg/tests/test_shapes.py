"""Index shapes: gradings, cofinality certificates, and the K poset."""

import pytest

from prolim.budget import Budget, Verdict
from prolim.errors import MissingLubError
from prolim.shapes import (
    CofinalFunctor,
    DirectedSetPresentation,
    FinitePoset,
    FiniteSubsetsShape,
    NatGrid,
    NatTower,
    PointShape,
    ProductShape,
    RealizationShape,
    SequentialShape,
    check_levels_decrease,
    cofinal_reindex,
    k_inclusion_cofinal,
    k_poset,
    k_projection_cofinal,
    k_refine,
    least_upper_bound,
    verify_cofinal,
)

NAT = NatTower()


def test_every_builtin_shape_is_graded_with_decreasing_arrows():
    shapes = [
        PointShape(),
        NAT,
        NatGrid(2),
        FinitePoset("abcd", [("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")]),
        ProductShape(NAT, NAT),
        SequentialShape(),
        RealizationShape(2),
    ]
    for shape in shapes:
        assert check_levels_decrease(shape, 5), type(shape).__name__
        for x in shape.objects_to_depth(5):
            assert len(shape.arrows_out(x)) < 1000


def test_nat_grid_predecessor_count():
    grid = NatGrid(2)
    # (m, n) has (m+1)(n+1) - 1 strict predecessors
    assert len(grid.strictly_below((2, 3))) == 11
    assert grid.upper_bound((2, 0), (1, 3)) == (2, 3)


def test_finite_poset_rejects_cycles():
    with pytest.raises(ValueError):
        FinitePoset("ab", [("a", "b"), ("b", "a")])


def test_product_shape_arrows_compose():
    p = ProductShape(NAT, NAT)
    a = p.arrows_between((2, 2), (1, 2))[0]
    b = p.arrows_between((1, 2), (1, 0))[0]
    c = p.compose(b, a)
    assert c.src == (2, 2) and c.dst == (1, 0)


def test_sequential_shape_arrow_counts():
    s = SequentialShape()
    assert s.arrows_out(("b", 3)) == ()
    arrows = s.arrows_out(("t", 1))
    assert [a.dst for a in arrows] == [("b", 1), ("b", 2)]


def test_realization_shape_arrow_counts():
    r = RealizationShape(1)
    for x in r.objects_to_depth(3):
        if x[0] == "p":
            assert r.arrows_out(x) == ()
        else:
            assert len(r.arrows_out(x)) == 2
    # order-preserving maps [1] -> [1]
    assert len(list(RealizationShape.operators(1, 1))) == 3


# -- cofinality ---------------------------------------------------------------


def test_identity_functor_cofinal():
    f = CofinalFunctor(NAT, NAT, lambda n: n)
    cert = verify_cofinal(f, 4)
    assert cert.verdict is Verdict.CERTIFIED


def test_evens_cofinal_in_nat():
    f = CofinalFunctor(NAT, NAT, lambda n: 2 * n)
    cert = verify_cofinal(f, 5)
    assert cert.verdict is Verdict.CERTIFIED
    assert all(2 * w >= t for t, w in cert.witnesses["witnesses"].items())


def test_singleton_refuted():
    single = FinitePoset([0], [])
    f = CofinalFunctor(single, NAT, lambda x: 0)
    cert = verify_cofinal(f, 2)
    assert cert.verdict is Verdict.REFUTED
    assert cert.witnesses["target"] == 1


def test_cofinal_reindex_passthrough():
    shape, functor, cert = cofinal_reindex(NAT, 4)
    assert shape is NAT
    assert functor(3) == 3
    assert cert.verdict is Verdict.CERTIFIED


def test_cofinal_reindex_of_presented_nat():
    pres = DirectedSetPresentation(
        element_at=lambda i: i,
        le=lambda a, b: a <= b,
        upper_bound=max,
    )
    shape, functor, cert = cofinal_reindex(pres, Budget(5))
    assert isinstance(shape, FiniteSubsetsShape)
    assert cert.verdict is Verdict.CERTIFIED
    # the functor is monotone and dominates every singleton
    s, t = frozenset([1]), frozenset([1, 2])
    assert functor(s) <= functor(t)
    assert functor(frozenset([3])) >= 3
    assert check_levels_decrease(shape, 6)


# -- the K poset --------------------------------------------------------------


def test_k_single_object_is_nat():
    single = FinitePoset(["a"], [])
    k = k_poset(single, NAT, 0)
    assert [t for t in k.objects_to_depth(3)] == [(0,), (1,), (2,), (3,)]


def test_k_arrow_membership_and_refine():
    arrow = FinitePoset(["a", "b"], [("a", "b")])
    k = k_poset(arrow, NAT, 1)
    # coordinates are in dependency order: b (level 0) first, then a
    assert k.a_objects == ["b", "a"]
    assert k.member((1, 3)) and not k.member((3, 1))
    # the spec's refinement example: s=(3,1), t=(2,2) meet at (3,2)
    s = k.tuple_for({"a": 3, "b": 1})
    t = k.tuple_for({"a": 2, "b": 2})
    u = k_refine(k, s, t)
    assert u == k.tuple_for({"a": 3, "b": 2})
    assert k_refine(k, s, s) == s


def test_k_cospan_membership():
    cospan = FinitePoset(["a", "b", "c"], [("a", "c"), ("b", "c")])
    k = k_poset(cospan, NAT, 1)
    good = k.tuple_for({"a": 2, "b": 3, "c": 1})
    bad = k.tuple_for({"a": 1, "b": 3, "c": 2})
    assert k.member(good) and not k.member(bad)


def test_k_inclusion_cofinal_arrow():
    arrow = FinitePoset(["a", "b"], [("a", "b")])
    k = k_poset(arrow, NAT, 1)
    cert = k_inclusion_cofinal(k, 5)
    assert cert.verdict is Verdict.CERTIFIED
    tup = k.tuple_for({"a": 1, "b": 4})
    # (s_a, s_b) = (1, 4) is dominated by the member (4, 4)
    assert cert.witnesses["witnesses"][tup] == k.tuple_for({"a": 4, "b": 4})


def test_k_projection_cofinal():
    single = FinitePoset(["a"], [])
    k = k_poset(single, NAT, 0)
    cert = k_projection_cofinal(k, "a", 4)
    assert cert.verdict is Verdict.CERTIFIED
    assert all(w == (u,) for u, w in cert.witnesses["witnesses"].items())

    arrow = FinitePoset(["a", "b"], [("a", "b")])
    k2 = k_poset(arrow, NAT, 1)
    cert2 = k_projection_cofinal(k2, "b", 3)
    assert cert2.verdict is Verdict.CERTIFIED
    assert cert2.witnesses["witnesses"][3] == k2.tuple_for({"a": 3, "b": 3})


def test_k_refine_dominates_sampled_pairs():
    arrow = FinitePoset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    k = k_poset(arrow, NatGrid(1), 2)
    members = k.objects_to_depth(4)
    for s in members[:12]:
        for t in members[:12]:
            u = k_refine(k, s, t)
            assert k.le(s, u) and k.le(t, u) and k.member(u)


def test_product_of_directed_is_directed_and_graded():
    p = ProductShape(NAT, NatGrid(2))
    assert p.is_directed
    assert check_levels_decrease(p, 4)
    x, y = (1, (0, 2)), (0, (1, 1))
    ub = p.upper_bound(x, y)
    assert p.le(x, ub) and p.le(y, ub)


def test_least_upper_bound_detects_missing_lub():
    # diamond without a join: two incomparable upper bounds of {x, y}
    poset = FinitePoset(
        ["x", "y", "u", "v"],
        [("u", "x"), ("u", "y"), ("v", "x"), ("v", "y")],
    )
    with pytest.raises(MissingLubError):
        least_upper_bound(poset, "x", "y")
    chain = FinitePoset("abc", [("c", "b"), ("b", "a")])
    assert least_upper_bound(chain, "a", "b") == "b"
