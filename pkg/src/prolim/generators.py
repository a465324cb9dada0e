"""Seeded instance generators for tests and acceptance runs.

Randomness comes exclusively from a caller-supplied seed.  Diagrams with
commuting constraints are generated from one shared endomap: every tower
in a family has the same constant level carried by powers of a single
random endofunction, and every pro-map is a further power written with a
random delay.  Functoriality then holds strictly by exponent arithmetic
while the reindexing machinery still has to work for its living.
"""

from __future__ import annotations

import random

from .cats import FINAB, FINSET
from .levelrep import diagram_of_pro
from .procore import (
    ProMap,
    ProObject,
    constant,
    levelwise_promap,
    promap,
    tower,
)
from .shapes import Arrow, FinitePoset, NatTower

NAT = NatTower()

SQUARE_SHAPE = FinitePoset(
    ["a", "b", "c", "d"],
    [("a", "b"), ("b", "d"), ("a", "c"), ("c", "d"), ("a", "d")],
)
CHAIN_SHAPE = FinitePoset(
    ["x0", "x1", "x2"], [("x2", "x1"), ("x1", "x0"), ("x2", "x0")]
)
SQUARE_CHAIN_SHAPE = FinitePoset(
    ["a", "b", "c", "d", "e"],
    [
        ("a", "b"), ("b", "d"), ("a", "c"), ("c", "d"), ("a", "d"),
        ("d", "e"), ("b", "e"), ("c", "e"), ("a", "e"),
    ],
)

COPRODUCT_SHAPE = FinitePoset(["p", "q"], [])
PUSHOUT_SHAPE = FinitePoset(["a", "b", "c"], [("a", "b"), ("a", "c")])


class CoequalizerShape(FinitePoset):
    """Two objects with a parallel pair of arrows between them."""

    is_directed = False

    def __init__(self):
        super().__init__(["a", "b"], [("a", "b")])

    def arrows_out(self, x):
        if x == "a":
            return (Arrow("a", "b", "left"), Arrow("a", "b", "right"))
        return ()

    def arrows_between(self, x, y):
        if x == y:
            return [self.identity(x)]
        if x == "a" and y == "b":
            return [Arrow("a", "b", "left"), Arrow("a", "b", "right")]
        return []


COEQUALIZER_SHAPE = CoequalizerShape()

FINITE_COLIMIT_SHAPES = {
    "coproduct": COPRODUCT_SHAPE,
    "coequalizer": COEQUALIZER_SHAPE,
    "pushout": PUSHOUT_SHAPE,
}


class PowerFamily:
    """Towers and pro-maps generated by powers of one endomap."""

    def __init__(self, rng: random.Random, max_size: int = 4):
        self.size = rng.randint(2, max_size)
        self.u = FINSET.map(
            self.size, self.size, [rng.randrange(self.size) for _ in range(self.size)]
        )

    def power(self, k: int):
        m = FINSET.identity(self.size)
        for _ in range(k):
            m = FINSET.compose(self.u, m)
        return m

    def tower_obj(self, label="power-tower") -> ProObject:
        return tower(FINSET, NAT, lambda s: self.size, lambda s: self.u, label)

    def power_promap(self, x: ProObject, y: ProObject, exponent: int, delay: int) -> ProMap:
        m = self.power(exponent + delay)
        return promap(x, y, lambda s: (s + delay, m), f"u^{exponent}~{delay}")


def weights_for_shape(rng: random.Random, shape, max_step=2):
    """Object weights decreasing along arrows, so that exponent
    differences compose additively."""
    objs = shape.objects_to_depth(10)
    objs.sort(key=shape.enum_key)
    w = {}
    for a in objs:
        floor = 0
        for arr in shape.arrows_out(a):
            floor = max(floor, w[arr.dst])
        w[a] = floor + rng.randint(0, max_step)
    return w


def random_poset_diagram(seed: int, shape, max_size=4, max_delay=2):
    """A diagram of power towers over a finite poset shape, arrows given
    by weight-difference powers with staggered delays."""
    rng = random.Random(seed)
    fam = PowerFamily(rng, max_size)
    w = weights_for_shape(rng, shape)
    dl = weights_for_shape(rng, shape, max_delay)
    t = fam.tower_obj()

    def arrows(arr):
        return fam.power_promap(
            t, t, w[arr.src] - w[arr.dst], dl[arr.src] - dl[arr.dst]
        )

    return diagram_of_pro(shape, lambda a: t, arrows, label=f"poset-diagram[{seed}]")


def random_parallel_diagram(seed: int, shape, max_size=4):
    """A diagram over a shape without composable arrow pairs, so every
    arrow may carry an independent exponent and delay (coproduct,
    coequalizer, pushout shapes)."""
    rng = random.Random(seed)
    fam = PowerFamily(rng, max_size)
    t = fam.tower_obj()
    exps = {}

    def arrows(arr):
        if arr not in exps:
            exps[arr] = (rng.randint(0, 2), rng.randint(0, 2))
        e, d = exps[arr]
        return fam.power_promap(t, t, e, d)

    return diagram_of_pro(shape, lambda a: t, arrows, label=f"parallel[{seed}]")


def random_tower_of_towers(seed: int, max_size=4, max_step=1):
    """A diagram over the naturals whose objects are power towers: the
    cofiltered systems fed to the limit constructions."""
    rng = random.Random(seed)
    fam = PowerFamily(rng, max_size)
    t = fam.tower_obj()
    horizon = 16
    w_steps = [rng.randint(0, max_step) for _ in range(horizon)]
    d_steps = [rng.randint(0, max_step) for _ in range(horizon)]

    def weight(steps, a):
        if a <= horizon:
            return sum(steps[:a])
        return sum(steps) + (a - horizon)

    def arrows(arr):
        a, b = arr.src, arr.dst
        return fam.power_promap(
            t,
            t,
            weight(w_steps, a) - weight(w_steps, b),
            weight(d_steps, a) - weight(d_steps, b),
        )

    return diagram_of_pro(NAT, lambda a: t, arrows, label=f"tower-of-towers[{seed}]")


def random_finset_tower(rng: random.Random, max_size=4, horizon=12) -> ProObject:
    """An honest random tower: random level sizes and structure maps up
    to a horizon, constant afterwards."""
    sizes = [rng.randint(1, max_size) for _ in range(horizon + 1)]
    steps = {}
    for s in range(horizon):
        steps[s] = FINSET.map(
            sizes[s + 1],
            sizes[s],
            [rng.randrange(sizes[s]) for _ in range(sizes[s + 1])],
        )

    def obj_at(s):
        return sizes[min(s, horizon)]

    def step(s):
        return steps.get(s, FINSET.identity(sizes[horizon]))

    return tower(FINSET, NAT, obj_at, step, "random-tower")


def random_finab_tower(rng: random.Random, horizon=10) -> ProObject:
    """A random tower of cyclic 2-groups with surjective reductions."""
    exps = sorted(rng.randint(1, 4) for _ in range(horizon + 1))

    def orders(s):
        return (2 ** exps[min(s, horizon)],)

    def step(s):
        return FINAB.map(orders(s + 1), orders(s), [[1]])

    return tower(FINAB, NAT, orders, step, "2-group-tower")


def split_retract_pair_finset(seed: int, max_extra=2):
    """Towers X <= Y with a levelwise split: Y adds extra points whose
    structure maps land back in X through a retraction fixed up front."""
    rng = random.Random(seed)
    x = random_finset_tower(rng, max_size=3)
    extras = [rng.randint(1, max_extra) for _ in range(13)]

    def x_size(s):
        return x.obj_at(s)

    def y_size(s):
        return x_size(s) + extras[min(s, 12)]

    retr = {}

    def retraction(s):
        if s not in retr:
            table = list(range(x_size(s))) + [
                rng.randrange(x_size(s)) for _ in range(y_size(s) - x_size(s))
            ]
            retr[s] = FINSET.map(y_size(s), x_size(s), table)
        return retr[s]

    for s in range(13):
        retraction(s)

    def y_step(s):
        xs = x.map_at(Arrow(s + 1, s))
        table = []
        for v in range(y_size(s + 1)):
            if v < x_size(s + 1):
                table.append(xs.table[v])
            else:
                table.append(xs.table[retraction(s + 1).table[v]])
        return FINSET.map(y_size(s + 1), y_size(s), table)

    y = tower(FINSET, NAT, y_size, y_step, "split-extension")

    def f_component(s):
        return FINSET.map(x_size(s), y_size(s), list(range(x_size(s))))

    f = levelwise_promap(x, y, f_component, "section")
    g = levelwise_promap(y, x, retraction, "retraction")
    return x, y, f, g


def split_retract_pair_finab(seed: int):
    """Direct-sum towers Y = X (+) E with the block inclusion and
    projection; E is its own tower of cyclic 2-groups."""
    rng = random.Random(seed)
    x = random_finab_tower(rng)
    e_exps = sorted(rng.randint(1, 2) for _ in range(13))

    def e_at(s):
        return (2 ** e_exps[min(s, 12)],)

    def y_orders(s):
        return x.obj_at(s) + e_at(s)

    def y_step(s):
        xs = x.map_at(Arrow(s + 1, s))
        rows = [tuple(r) + (0,) for r in xs.matrix]
        rows.append((0,) * len(x.obj_at(s + 1)) + (1,))
        return FINAB.map(y_orders(s + 1), y_orders(s), rows)

    y = tower(FINAB, NAT, y_orders, y_step, "split-sum")

    def f_component(s):
        nx = len(x.obj_at(s))
        rows = [tuple(1 if j == i else 0 for j in range(nx)) for i in range(nx)]
        rows.append((0,) * nx)
        return FINAB.map(x.obj_at(s), y_orders(s), rows)

    def g_component(s):
        nx = len(x.obj_at(s))
        rows = [
            tuple(1 if j == i else 0 for j in range(nx + 1)) for i in range(nx)
        ]
        return FINAB.map(y_orders(s), x.obj_at(s), rows)

    f = levelwise_promap(x, y, f_component, "section")
    g = levelwise_promap(y, x, g_component, "retraction")
    return x, y, f, g


def random_map_into(rng: random.Random, z: ProObject, depth: int, apex_size=None):
    """A random pro-map from a fresh constant into z, anchored at an
    index dominating the whole depth window; representatives push down
    through structure maps, so coherence holds by construction."""
    window = z.shape.objects_to_depth(depth)
    anchor = window[0]
    for o in window[1:]:
        anchor = z.shape.upper_bound(anchor, o)
    target = z.obj_at(anchor)
    size = apex_size or rng.randint(1, 3)
    w = constant(FINSET, size, "cone-apex")
    m = FINSET.map(size, target, [rng.randrange(target) for _ in range(size)])

    def rep(key):
        arrows = z.shape.arrows_between(anchor, key)
        return (0, FINSET.compose(z.map_at(arrows[0]), m))

    return w, promap(w, z, rep, "random-cone-map")


def random_map_out(rng: random.Random, z: ProObject, apex_size=None):
    """A random pro-map from z to a fresh constant, through level zero."""
    bottoms = z.shape.objects_at_level(0)
    anchor = bottoms[rng.randrange(len(bottoms))]
    src = z.obj_at(anchor)
    size = apex_size or rng.randint(1, 3)
    w = constant(FINSET, size, "cocone-apex")
    m = FINSET.map(src, size, [rng.randrange(size) for _ in range(src)])
    return w, promap(z, w, lambda s: (anchor, m), "random-cocone-map")
