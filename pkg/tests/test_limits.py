"""Limits of pro-objects: levelwise, cofiltered, and the pair category."""

import random

import pytest

from prolim.budget import Budget, Verdict
from prolim.cats import FINSET
from prolim.generators import (
    COEQUALIZER_SHAPE,
    COPRODUCT_SHAPE,
    PowerFamily,
    random_map_into,
    random_tower_of_towers,
)
from prolim.levelrep import diagram_of_pro, level_replace
from prolim.procore import (
    Equality,
    compose_promaps,
    constant,
    constant_promap,
    identity_promap,
    promap,
    promap_equal,
    tower,
)
from prolim.prolimits import (
    PairCategoryShape,
    ProCone,
    canonical_factorization,
    cofiltered_limit,
    cofiltered_limit_alt,
    compare_limit_constructions,
    finite_limit_pro,
    is_pro_cone,
    verify_universal_limit,
)
from prolim.shapes import Arrow, FinitePoset, NatTower

NAT = NatTower()


def test_product_of_constants():
    c2, c3 = constant(FINSET, 2), constant(FINSET, 3)
    d = diagram_of_pro(COPRODUCT_SHAPE, {"p": c2, "q": c3})
    lim = finite_limit_pro(d, 2)
    for s in range(3):
        assert lim.obj.obj_at(s) == 6


def test_equalizer_of_equal_pair_is_source():
    fam = PowerFamily(random.Random(2), 4)
    t = fam.tower_obj()
    pm = fam.power_promap(t, t, 1, 0)
    d = diagram_of_pro(COEQUALIZER_SHAPE, lambda a: t, lambda arr: pm)
    lim = finite_limit_pro(d, 3)
    for s in range(4):
        assert lim.obj.obj_at(s) == t.obj_at(s)


def test_pullback_of_towers_universal_property():
    rng = random.Random(5)
    fam = PowerFamily(rng, 3)
    t = fam.tower_obj()
    shape = FinitePoset(["l", "m", "r"], [("l", "m"), ("r", "m")])

    def arrows(arr):
        return fam.power_promap(t, t, 1 if arr.src == "l" else 2, 0)

    d = diagram_of_pro(shape, lambda a: t, arrows)
    lim = finite_limit_pro(d, 4)
    cones = []
    for _ in range(6):
        w, u = random_map_into(rng, lim.obj, 4)
        cones.append(ProCone(w, {a: compose_promaps(lim.legs[a], u) for a in lim.legs}))
    results = verify_universal_limit(lim, d, cones, 4)
    assert all(c.verdict is Verdict.CERTIFIED for c in results.values())


def test_broken_cone_rejected():
    c2 = constant(FINSET, 2)
    shape = FinitePoset(["a", "b"], [("a", "b")])
    d = diagram_of_pro(
        shape, lambda a: c2, lambda arr: constant_promap(c2, c2, FINSET.identity(2))
    )
    lim = finite_limit_pro(d, 3)
    w = constant(FINSET, 1)
    legs = {
        "a": constant_promap(w, c2, FINSET.map(1, 2, [0])),
        "b": constant_promap(w, c2, FINSET.map(1, 2, [1])),
    }
    bad = ProCone(w, legs)
    assert not is_pro_cone(d, bad, 1, 2)
    results = verify_universal_limit(lim, d, [bad], 3)
    assert results[0].verdict is Verdict.REFUTED
    assert "rejected" in results[0].details


def test_cofiltered_limit_of_constant_system():
    c3 = constant(FINSET, 3)
    d = diagram_of_pro(
        NAT, lambda a: c3, lambda arr: constant_promap(c3, c3, FINSET.identity(3))
    )
    lim = cofiltered_limit(d, 3)
    for key in lim.obj.shape.objects_to_depth(2):
        assert lim.obj.obj_at(key) == 3


def test_tower_is_limit_of_its_constant_stages():
    # a tower equals the cofiltered limit of the constants on its levels
    rng = random.Random(9)
    fam = PowerFamily(rng, 4)
    x = fam.tower_obj()
    stages = {a: constant(FINSET, x.obj_at(a), f"stage{a}") for a in range(40)}

    def arrows(arr):
        a, b = arr.src, arr.dst
        return constant_promap(stages[a], stages[b], x.map_at(Arrow(a, b)))

    d = diagram_of_pro(NAT, lambda a: stages[a], arrows)
    lim = cofiltered_limit(d, 3)

    def to_x(s):
        # level (a, i) of the limit is the constant stage a
        return ((s, 0), FINSET.identity(x.obj_at(s)))

    u = promap(lim.obj, x, to_x, "limit-to-tower")

    def from_x(key):
        a, _ = key
        return (a, FINSET.identity(x.obj_at(a)))

    v = promap(x, lim.obj, from_x, "tower-to-limit")
    assert promap_equal(compose_promaps(u, v), identity_promap(x), 3)
    assert promap_equal(compose_promaps(v, u), identity_promap(lim.obj), 3)


def test_alt_limit_single_object_matches():
    fam = PowerFamily(random.Random(3), 3)
    x = fam.tower_obj()
    shape = FinitePoset(["*"], [])
    d = diagram_of_pro(shape, {"*": x})
    lim1 = cofiltered_limit(d, 3)
    lim2 = cofiltered_limit_alt(d, Budget(3))
    cert = compare_limit_constructions(d, lim1, lim2, 3)
    assert cert.verdict is Verdict.CERTIFIED


def test_alt_limit_tower_of_towers_matches():
    d = random_tower_of_towers(21, max_size=3)
    lim1 = cofiltered_limit(d, 3)
    lim2 = cofiltered_limit_alt(d, Budget(3))
    cert = compare_limit_constructions(d, lim1, lim2, 3)
    assert cert.verdict is Verdict.CERTIFIED


def test_pair_category_exhibits_parallel_morphisms():
    # collapsing structure maps create distinct parallel representatives
    const0 = FINSET.map(2, 2, [0, 0])
    x = tower(FINSET, NAT, lambda s: 2, lambda s: const0)
    d = diagram_of_pro(
        NAT, lambda a: x, lambda arr: promap(x, x, lambda s: (s, const0), "step")
    )
    shape = PairCategoryShape(d, Budget(2))
    pair = shape.parallel_pair(2)
    assert pair is not None
    a1, a2 = pair
    assert a1.src == a2.src and a1.dst == a2.dst and a1 != a2


def test_pair_category_is_cofiltered_at_depth():
    d = random_tower_of_towers(4, max_size=3)
    shape = PairCategoryShape(d, Budget(2))
    assert shape.check_cofiltered(1)


def test_canonical_factorization_exists():
    rng = random.Random(11)
    d = random_tower_of_towers(7, max_size=3)
    lim = cofiltered_limit(d, 3)
    w, u = random_map_into(rng, lim.obj, 3)
    cone = ProCone(w, {a: compose_promaps(lim.legs[a], u) for a in lim.legs})
    assert is_pro_cone(d, cone, 3, 3)
    fact = canonical_factorization(lim, cone)
    for a in lim.legs:
        assert promap_equal(compose_promaps(lim.legs[a], fact), cone.legs[a], 3)
