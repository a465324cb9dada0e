"""Level representations: the inductive reindexing and the strict one."""

import pytest

from prolim.budget import Budget
from prolim.cats import FINSET
from prolim.errors import VerificationFailure
from prolim.levelrep import (
    DiagramOfPro,
    StrictDiagramOfPro,
    assemble,
    assembled_hom_classes,
    check_diagram_functorial,
    diagram_hom_classes,
    diagram_of_pro,
    level_replace,
    naturality_squares,
    roundtrip_isos,
    strict_reindex,
)
from prolim.procore import (
    StrictMapData,
    constant,
    promap,
    tower,
)
from prolim.shapes import Arrow, FinitePoset, NatTower

NAT = NatTower()

SQUARE = FinitePoset(
    ["a", "b", "c", "d"],
    [("a", "b"), ("b", "d"), ("a", "c"), ("c", "d"), ("a", "d")],
)


def power_tower(u_table, size):
    """Tower with constant level and structure map a fixed endomap."""
    step = FINSET.map(size, size, u_table)
    return tower(FINSET, NAT, lambda s: size, lambda s: step, label="power tower")


def power_promap(x, exponent, delay):
    """u^exponent as a pro-map on a power tower, written with a delay."""
    size = x.obj_at(0)
    u = x.map_at(Arrow(1, 0))
    m = FINSET.identity(size)
    for _ in range(exponent + delay):
        m = FINSET.compose(u, m)

    def rep(s):
        return (s + delay, m)

    return promap(x, x, rep, f"u^{exponent}+delay{delay}")


def staggered_square_diagram():
    u = [1, 2, 3, 3]
    t = power_tower(u, 4)
    exps = {"ab": 1, "bd": 1, "ac": 2, "cd": 0, "ad": 2}
    delays = {"ab": 0, "bd": 2, "ac": 1, "cd": 0, "ad": 1}

    def arrows(arrow):
        key = arrow.src + arrow.dst
        return power_promap(t, exps[key], delays[key])

    return diagram_of_pro(SQUARE, lambda a: t, arrows, label="staggered square")


def test_single_object_reindex_is_identity():
    x = tower(FINSET, NAT, lambda s: 3, lambda s: FINSET.identity(3))
    d = diagram_of_pro(FinitePoset(["*"], []), {"*": x})
    rep = level_replace(d, 4)
    assert all(rep.f[("*", s)] == s for s in range(5))
    assert rep.verify(4).ok


def test_single_map_level_representation():
    x = power_tower([1, 2, 3, 3], 4)
    arrow_shape = FinitePoset(["a", "b"], [("a", "b")])
    d = diagram_of_pro(
        arrow_shape, lambda a: x, lambda arr: power_promap(x, 1, 2)
    )
    rep = level_replace(d, 5)
    # the delayed representative forces the top reindexing ahead
    assert rep.f[("b", 0)] == 0
    assert rep.f[("a", 0)] >= 2
    assert rep.verify(5).ok


def test_staggered_square_all_conditions_and_roundtrip():
    d = staggered_square_diagram()
    assert check_diagram_functorial(d, 0, 3)
    rep = level_replace(d, 5)
    assert rep.verify(5).ok
    naturality_squares(rep, Budget(3))
    isos = roundtrip_isos(rep, Budget(3))
    assert set(isos) == {"a", "b", "c", "d"}
    back = assemble(rep)
    assert check_diagram_functorial(back, 0, 3)


def test_assembled_constant_diagram_stays_constant():
    arrow_shape = FinitePoset(["a", "b"], [("a", "b")])
    c = constant(FINSET, 2)
    from prolim.procore import constant_promap

    d = diagram_of_pro(
        arrow_shape,
        lambda a: c,
        lambda arr: constant_promap(c, c, FINSET.identity(2)),
    )
    rep = level_replace(d, 3)
    back = assemble(rep)
    for s in range(4):
        assert back.obj("a").obj_at(s) == 2


def test_strict_reindex_identity_functor():
    x = power_tower([0, 0, 1, 2], 4)
    arrow_shape = FinitePoset(["a", "b"], [("a", "b")])
    u1 = x.map_at(Arrow(1, 0))
    sd = StrictDiagramOfPro(
        arrow_shape,
        lambda a: x,
        lambda arr: StrictMapData(lambda s: s, lambda s: FINSET.identity(4)),
    )
    rep = strict_reindex(sd, 4)
    # bottom object b is the only minimal one: the index is I^b
    assert rep.minimal == ["b"]
    assert rep.reindex_value("a", (3,)) == 3
    assert rep.verify(3).ok


def test_strict_reindex_doubling_functor():
    x = power_tower([1, 2, 3, 3], 4)
    arrow_shape = FinitePoset(["a", "b"], [("a", "b")])

    def component(s):
        # X_{2s} -> X_s given by the structure map itself
        return x.map_at(Arrow(2 * s, s)) if s > 0 else FINSET.identity(4)

    sd = StrictDiagramOfPro(
        arrow_shape,
        lambda a: x,
        lambda arr: StrictMapData(lambda s: 2 * s, component),
    )
    rep = strict_reindex(sd, 4)
    assert rep.reindex_value("a", (3,)) == 6
    assert rep.verify(4).ok


def test_strict_reindex_span_uses_product_index():
    x = power_tower([1, 2, 3, 3], 4)
    span = FinitePoset(["top", "left", "right"], [("top", "left"), ("top", "right")])

    def arrow_data(arr):
        shift = 1 if arr.dst == "left" else 2

        def component(s):
            return x.map_at(Arrow(s + shift, s)) if True else None

        return StrictMapData(lambda s: s + shift, component)

    sd = StrictDiagramOfPro(span, lambda a: x, arrow_data)
    rep = strict_reindex(sd, 4)
    assert sorted(rep.minimal) == ["left", "right"]
    # the top index is the least upper bound of the two pulled-back ones
    assert rep.reindex_value("top", (3, 1)) == max(3 + 1, 1 + 2)
    assert rep.reindex_value("top", (0, 3)) == 5
    assert rep.verify(3).ok


def test_strict_reindex_is_canonical_under_relabeling():
    x = power_tower([1, 2, 3, 3], 4)
    for names in (["top", "left", "right"], ["top", "right", "left"]):
        span = FinitePoset(names, [(names[0], names[1]), (names[0], names[2])])

        def arrow_data(arr):
            shift = 1

            def component(s):
                return x.map_at(Arrow(s + shift, s))

            return StrictMapData(lambda s: s + shift, component)

        sd = StrictDiagramOfPro(span, lambda a: x, arrow_data)
        rep = strict_reindex(sd, 3, verify=False)
        assert rep.reindex_value(names[0], (2, 1)) == 3


def test_end_formula_agreement_on_finite_shape():
    arrow_shape = FinitePoset(["a", "b"], [("a", "b")])
    c = constant(FINSET, 2)
    from prolim.procore import constant_promap

    d = diagram_of_pro(
        arrow_shape,
        lambda a: c,
        lambda arr: constant_promap(c, c, FINSET.identity(2)),
    )
    rep = level_replace(d, 2)
    end_first = diagram_hom_classes(rep, rep, 2)
    level_first = assembled_hom_classes(rep, rep, 2)
    assert end_first == level_first == 4
