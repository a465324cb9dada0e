"""Pro-objects, pro-maps, bounded hom sets, and the base-valued limit."""

import pytest

from prolim.budget import Budget
from prolim.cats import FINAB, FINSET
from prolim.errors import BudgetError, UnsupportedCapabilityError, VerificationFailure
from prolim.procore import (
    Equality,
    ObjectLevelData,
    certify_object_type,
    check_functorial,
    check_promap_coherent,
    compose_promaps,
    constant,
    constant_promap,
    hom_bounded,
    identity_promap,
    levelwise_promap,
    lim_in_base,
    promap_equal,
    tower,
    zero_promap,
)
from prolim.shapes import FinitePoset, NatTower

NAT = NatTower()


def two_power_tower():
    """... -> Z/8 -> Z/4 -> Z/2, the mod-reduction surjections."""
    return tower(
        FINAB,
        NAT,
        lambda s: (2 ** (s + 1),),
        lambda s: FINAB.map((2 ** (s + 2),), (2 ** (s + 1),), [[1]]),
        label="2-power tower",
    )


def test_tower_structure_maps_compose():
    x = two_power_tower()
    assert check_functorial(x, 4)
    from prolim.shapes import Arrow

    m = x.map_at(Arrow(3, 1))
    assert m == FINAB.map((16,), (4,), [[1]])


def test_constant_hom_bounded_full_subcategory():
    c2 = constant(FINSET, 2)
    for depth in (0, 1, 3):
        hs = hom_bounded(c2, c2, depth)
        assert hs.class_count(0) == 4
        assert len(hs.tuples) == 4


def test_hom_bounded_two_power_tower_against_constant():
    x = two_power_tower()
    y = constant(FINAB, (2,))
    hs = hom_bounded(x, y, 3)
    # precomposition with surjections is injective on homs: two classes
    assert hs.class_count(0) == 2
    assert len(hs.tuples) == 2


def test_hom_bounded_empty_when_some_level_empty():
    c1 = constant(FINSET, 1)
    y = tower(
        FINSET,
        NAT,
        lambda s: 0 if s == 1 else 2,
        lambda s: FINSET.map(0 if s + 1 == 1 else 2, 0 if s == 1 else 2, [0, 0] if s != 1 else []),
    )
    hs = hom_bounded(c1, y, 3)
    assert hs.tuples == []


def test_hom_bounded_stabilizes_on_stabilized_tower():
    x = tower(FINSET, NAT, lambda s: 2, lambda s: FINSET.identity(2))
    y = constant(FINSET, 2)
    hs = hom_bounded(x, y, 3)
    assert hs.stabilized is True
    assert len(hs.tuples) == 4


def test_promap_equal_self():
    x = two_power_tower()
    f = identity_promap(x)
    cert = promap_equal(f, f, 3)
    assert cert.status is Equality.EQUAL
    assert set(cert.witnesses) == {0, 1, 2, 3}


def test_promap_equal_distinct_id_vs_zero():
    x = tower(FINAB, NAT, lambda s: (2,), lambda s: FINAB.identity((2,)))
    f = identity_promap(x)
    z = zero_promap(x, x)
    cert = promap_equal(f, z, 2)
    assert cert.status is Equality.DISTINCT
    assert cert.failures


def test_promap_equal_needs_refinement():
    # two representatives of the same map written with different delays
    from prolim.procore import promap
    from prolim.shapes import Arrow

    x = two_power_tower()
    f = identity_promap(x)
    g = promap(x, x, lambda s: (s + 1, x.map_at(Arrow(s + 1, s))), "delayed id")
    cert = promap_equal(f, g, 3)
    assert cert.status is Equality.EQUAL


def test_promap_composition_associative_at_depth():
    x = two_power_tower()
    f = levelwise_promap(x, x, lambda s: FINAB.map((2 ** (s + 1),), (2 ** (s + 1),), [[1]]))
    g = identity_promap(x)
    h = zero_promap(x, x)
    lhs = compose_promaps(compose_promaps(h, g), f)
    rhs = compose_promaps(h, compose_promaps(g, f))
    assert promap_equal(lhs, rhs, 3).status is Equality.EQUAL


def test_promap_coherence_certificate():
    x = two_power_tower()
    f = identity_promap(x)
    cert = check_promap_coherent(f, 3)
    assert cert.ok


def test_lim_in_base_constant_is_value():
    c = constant(FINAB, (4,))
    obj, legs = lim_in_base(c, 3)
    assert obj == (4,)
    assert legs[0] == FINAB.identity((4,))


def test_lim_in_base_finite_chain():
    chain = FinitePoset([0, 1, 2], [(2, 1), (1, 0), (2, 0)])
    from prolim.procore import pro_object

    def obj_at(s):
        return (2 ** (s + 1),)

    def map_at(arrow):
        return FINAB.map(obj_at(arrow.src), obj_at(arrow.dst), [[1]])

    x = pro_object(FINAB, chain, obj_at, map_at)
    obj, legs = lim_in_base(x, 2)
    assert obj == (8,)
    # the projection to the bottom level is the mod-2 surjection
    assert legs[0].dst == (2,)
    assert FINAB.is_epi(legs[0])


def test_lim_in_base_unstable_tower_raises():
    x = two_power_tower()
    with pytest.raises(BudgetError):
        lim_in_base(x, 3)


def test_lim_in_base_stabilized_tower():
    x = tower(FINSET, NAT, lambda s: 3, lambda s: FINSET.identity(3))
    obj, legs = lim_in_base(x, 3)
    assert obj == 3


def test_hom_bounded_rejects_freeab():
    from prolim.cats import FREEAB, basis_range

    c = constant(FREEAB, basis_range(0, 1))
    with pytest.raises(UnsupportedCapabilityError):
        hom_bounded(c, c, 2)


def test_certify_object_type_trivial():
    x = tower(FINSET, NAT, lambda s: 3, lambda s: FINSET.identity(3))
    data = ObjectLevelData(x, identity_promap(x), identity_promap(x))
    cert = certify_object_type(x, lambda obj: obj <= 3, data, 3)
    assert cert.ok
    with pytest.raises(VerificationFailure) as err:
        certify_object_type(x, lambda obj: obj <= 2, data, 3)
    assert err.value.location == 0
