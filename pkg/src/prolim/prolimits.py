"""Limits of pro-objects: finite limits levelwise, cofiltered limits by
reindexing, the pair-category alternative construction, and bounded
universal-property verification.

The cofiltered limit of a reindexed diagram costs nothing to build: the
level representation itself, viewed as one pro-object over the product
of the diagram shape with the shared index, is the limit.  The
alternative construction instead glues all representative maps into one
large index category; it produces the same limit but its index is
generally not a poset, which this module makes observable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .budget import Budget, Certificate, Verdict, as_budget
from .cats.base import FiniteDiagram
from .errors import BudgetError, UnsupportedCapabilityError, VerificationFailure
from .levelrep import DiagramOfPro, LevelRepresentation, _struct, level_replace
from .procore import (
    ProMap,
    ProObject,
    compose_promaps,
    equalize_after_precomposition,
    hom_bounded,
    identity_promap,
    promap,
    promap_equal,
    pro_object,
)
from .shapes import Arrow, IndexShape


@dataclass
class ProCone:
    """A test cone: an apex pro-object with one leg per diagram object."""

    apex: ProObject
    legs: dict


@dataclass
class ProLimit:
    """A limit pro-object with its projection legs, and the level
    representation it was built from when one exists."""

    obj: ProObject
    legs: dict
    rep: LevelRepresentation | None = None
    stabilized: dict = field(default_factory=dict)


def is_pro_cone(d: DiagramOfPro, cone: ProCone, a_depth: int, budget) -> bool:
    shape = d.shape
    for a in shape.objects_to_depth(a_depth):
        for arr in shape.arrows_out(a):
            if shape.level(arr.dst) > a_depth:
                continue
            lhs = compose_promaps(d.arrow(arr), cone.legs[a])
            if not promap_equal(lhs, cone.legs[arr.dst], budget):
                return False
    return True


# -- finite limits levelwise ----------------------------------------------------


def finite_limit_pro(d: DiagramOfPro, budget, rep=None) -> ProLimit:
    """Level-replace a finite loopless diagram, then take limits level by
    level; structure maps come from cone factorization."""
    budget = as_budget(budget)
    if not d.shape.is_finite:
        raise VerificationFailure("finite_limit_pro needs a finite shape")
    if rep is None:
        rep = level_replace(d, budget)
    base = rep.base
    a_objs = rep.a_objects
    pos = {a: i for i, a in enumerate(a_objs)}
    cones = {}
    diagrams = {}

    def level_diagram(s):
        if s not in diagrams:
            arrows = []
            for a in a_objs:
                for arr in rep.arrows_in_window[a]:
                    arrows.append((pos[a], pos[arr.dst], rep.level_map(arr, s)))
            diagrams[s] = FiniteDiagram(
                tuple(rep.level_obj(a, s) for a in a_objs), tuple(arrows)
            )
        return diagrams[s]

    def cone_at(s):
        if s not in cones:
            cones[s] = base.finite_limit(level_diagram(s))
        return cones[s]

    def obj_at(s):
        return cone_at(s).obj

    def map_at(arrow):
        s_hi, s_lo = arrow.src, arrow.dst
        hi = cone_at(s_hi)
        legs = tuple(
            base.compose(rep.level_struct(a, s_hi, s_lo), hi.legs[pos[a]])
            for a in a_objs
        )
        return base.limit_factor(cone_at(s_lo), level_diagram(s_lo), hi.obj, legs)

    z = pro_object(base, rep.index, obj_at, map_at, "levelwise-limit")

    def leg_for(a):
        x = d.obj(a)
        ish = x.shape

        def rep_fn(u):
            s = 0
            while True:
                rep.ensure(a, s)
                if ish.le(u, rep.f[(a, s)]):
                    proj = cone_at(s).legs[pos[a]]
                    return (s, base.compose(_struct(x, rep.f[(a, s)], u), proj))
                s += 1
                if s > budget.node_cap:
                    raise BudgetError("leg witness search failed")

        return promap(z, x, rep_fn, f"limit-leg({a!r})")

    legs = {a: leg_for(a) for a in a_objs}
    return ProLimit(z, legs, rep)


# -- cofiltered limits through the level representation --------------------------


def cofiltered_limit(d: DiagramOfPro, budget, a_depth=None, rep=None) -> ProLimit:
    """The cofiltered limit: the level representation, viewed as a
    pro-object over the product of the (cofinite directed) diagram shape
    with the shared index.  Legs project through the reindexing."""
    budget = as_budget(budget)
    if not d.shape.is_directed:
        raise VerificationFailure(
            "cofiltered_limit expects a directed diagram shape; reindex first"
        )
    if rep is None:
        rep = level_replace(d, budget, a_depth=a_depth)
    z = rep.product_pro_object()
    base = rep.base

    def leg_for(a):
        x = d.obj(a)
        ish = x.shape

        def rep_fn(u):
            s = 0
            while True:
                rep.ensure(a, s)
                if ish.le(u, rep.f[(a, s)]):
                    return ((a, s), _struct(x, rep.f[(a, s)], u))
                s += 1
                if s > budget.node_cap:
                    raise BudgetError("leg witness search failed")

        return promap(z, x, rep_fn, f"limit-leg({a!r})")

    legs = {a: leg_for(a) for a in rep.a_objects}
    return ProLimit(z, legs, rep)


def restrict_diagram(d: DiagramOfPro, functor) -> DiagramOfPro:
    """Precompose a diagram with a cofinal functor between shapes."""
    return DiagramOfPro(
        functor.src,
        lambda a: d.obj(functor.on_obj(a)),
        lambda arrow: d.arrow(functor.map_arrow(arrow)),
        label=f"restricted({d.label})",
    )


# -- the alternative construction -----------------------------------------------


class PairCategoryShape(IndexShape):
    """The index of the alternative cofiltered limit: objects are pairs
    (a, s) with s in the index of X^a; a morphism (a, s) -> (b, t) is a
    base map X^a_s -> X^b_t that represents the diagram's pro-map along
    some shape arrow a -> b (or the identity pro-map when a = b).

    Morphism sets need representative-class membership tests, hence an
    enumerable base.  The category is cofiltered but in general not a
    poset; parallel pairs are genuine and observable.
    """

    def __init__(self, d: DiagramOfPro, budget: Budget):
        base_obj = d.obj(d.shape.objects_at_level(0)[0])
        if not base_obj.base.can_enumerate_homs:
            raise UnsupportedCapabilityError(
                "pair-category construction needs hom enumeration"
            )
        self.diagram = d
        self.budget = budget
        self.base = base_obj.base
        self._between = {}

    def objects_at_level(self, lv):
        out = []
        a_shape = self.diagram.shape
        for la in range(lv + 1):
            for a in a_shape.objects_at_level(la):
                ish = self.diagram.obj(a).shape
                for s in ish.objects_at_level(lv - la):
                    out.append((a, s))
        out.sort(key=repr)
        return out

    def level(self, x):
        a, s = x
        return self.diagram.shape.level(a) + self.diagram.obj(a).shape.level(s)

    def _represents(self, m, x_pro, s, target_promap, t):
        t_req, r = target_promap.rep(t)
        return (
            equalize_after_precomposition(x_pro, s, m, t_req, r, self.budget)
            is not None
        )

    def arrows_between(self, x, y):
        key = (x, y)
        if key in self._between:
            return self._between[key]
        (a, s), (b, t) = x, y
        out = []
        x_pro = self.diagram.obj(a)
        y_pro = self.diagram.obj(b)
        shape_arrows = list(self.diagram.shape.arrows_between(a, b))
        for phi in shape_arrows:
            pm = self.diagram.arrow(phi)
            for m in self.base.hom(x_pro.obj_at(s), y_pro.obj_at(t)):
                if self._represents(m, x_pro, s, pm, t):
                    out.append(Arrow(x, y, (phi, m)))
        self._between[key] = out
        return self._between[key]

    def arrows_out(self, x):
        """Arrows into the current enumeration window; the pair category
        has infinitely many arrows out of every object, so completeness
        is relative to the budget depth."""
        out = []
        for y in self.objects_to_depth(self.budget.depth):
            for arr in self.arrows_between(x, y):
                if not arr.is_identity:
                    out.append(arr)
        return tuple(out)

    def identity(self, x):
        return Arrow(x, x, "id")

    def _compose(self, g, f):
        phi_g, mg = g.tag
        phi_f, mf = f.tag
        phi = self.diagram.shape.compose(phi_g, phi_f)
        return Arrow(f.src, g.dst, (phi, self.base.compose(mg, mf)))

    def parallel_pair(self, depth: int):
        """Some pair of distinct parallel morphisms within depth, if any."""
        objs = self.objects_to_depth(depth)
        for x in objs:
            for y in objs:
                arrows = self.arrows_between(x, y)
                if len(arrows) >= 2:
                    return (arrows[0], arrows[1])
        return None

    def check_cofiltered(self, depth: int) -> bool:
        """Pairwise common sources exist within the search window."""
        objs = self.objects_to_depth(depth)
        for x in objs:
            for y in objs:
                found = False
                for w in self.objects_to_depth(depth + self.diagram.shape.level(x[0]) + 2):
                    if self.arrows_between(w, x) and self.arrows_between(w, y):
                        found = True
                        break
                if not found:
                    return False
        return True


def cofiltered_limit_alt(d: DiagramOfPro, budget) -> ProLimit:
    """The pair-category model of the cofiltered limit: the functor sends
    (a, s) to X^a_s and every morphism to itself."""
    budget = as_budget(budget)
    shape = PairCategoryShape(d, budget)
    base = shape.base

    def obj_at(key):
        a, s = key
        return d.obj(a).obj_at(s)

    def map_at(arrow):
        _, m = arrow.tag
        return m

    z = pro_object(base, shape, obj_at, map_at, "pair-category-limit")

    def leg_for(a):
        x = d.obj(a)

        def rep_fn(u):
            return ((a, u), base.identity(x.obj_at(u)))

        return promap(z, x, rep_fn, f"alt-leg({a!r})")

    legs = {a: leg_for(a) for a in d.shape.objects_to_depth(budget.depth)}
    return ProLimit(z, legs)


def compare_limit_constructions(
    d: DiagramOfPro, lim1: ProLimit, lim2: ProLimit, budget
) -> Certificate:
    """The canonical comparison between the reindexed limit and the
    pair-category limit, certified an isomorphism at depth."""
    budget = as_budget(budget)
    rep = lim1.rep
    base = rep.base

    def to_pairs(key):
        b, t = key
        x = d.obj(b)
        s = 0
        while True:
            rep.ensure(b, s)
            if x.shape.le(t, rep.f[(b, s)]):
                return ((b, s), _struct(x, rep.f[(b, s)], t))
            s += 1
            if s > budget.node_cap:
                raise BudgetError("comparison witness search failed")

    u = promap(lim1.obj, lim2.obj, to_pairs, "reindexed-to-pairs")

    def from_pairs(key):
        b, s = key
        x = d.obj(b)
        rep.ensure(b, s)
        val = rep.f[(b, s)]
        return ((b, val), base.identity(x.obj_at(val)))

    v = promap(lim2.obj, lim1.obj, from_pairs, "pairs-to-reindexed")

    ok1 = promap_equal(compose_promaps(v, u), identity_promap(lim1.obj), budget)
    ok2 = promap_equal(compose_promaps(u, v), identity_promap(lim2.obj), budget)
    if not (ok1 and ok2):
        return Certificate(
            "limit-construction-comparison",
            Verdict.REFUTED,
            budget.depth,
            {"round_trips": (ok1.status.value, ok2.status.value)},
        )
    return Certificate(
        "limit-construction-comparison",
        Verdict.CERTIFIED,
        budget.depth,
        {"witnesses": len(ok1.witnesses) + len(ok2.witnesses)},
    )


# -- universal property verification ---------------------------------------------


def canonical_factorization(lim: ProLimit, cone: ProCone) -> ProMap:
    """The factorization of a cone through a reindexed limit: at level
    (a, s) take the cone leg's representative at the reindexed value."""
    rep = lim.rep

    def rep_fn(key):
        a, s = key
        rep.ensure(a, s)
        return cone.legs[a].rep(rep.f[(a, s)])

    return promap(cone.apex, lim.obj, rep_fn, "canonical-factorization")


def verify_universal_limit(
    lim: ProLimit, d: DiagramOfPro, cones, budget, a_depth=None
) -> dict:
    """For each test cone: bounded existence and uniqueness of the
    factorization through the limit, by exhausting bounded hom classes.
    Non-cones are rejected before factorization.  Returns one certificate
    per cone."""
    budget = as_budget(budget)
    if a_depth is None:
        a_depth = budget.depth
    results = {}
    for idx, cone in enumerate(cones):
        if not is_pro_cone(d, cone, a_depth, budget):
            results[idx] = Certificate(
                f"cone[{idx}]",
                Verdict.REFUTED,
                budget.depth,
                {},
                "rejected: legs do not commute with the diagram",
            )
            continue
        try:
            hs = hom_bounded(cone.apex, lim.obj, budget, compare_with_shallower=False)
        except BudgetError:
            results[idx] = Certificate(
                f"cone[{idx}]", Verdict.EXHAUSTED, budget.depth, {}, "hom window capped"
            )
            continue
        passing = []
        for assignment in hs.tuples:
            pm = hs.promap_for(assignment)
            good = True
            for a, leg in lim.legs.items():
                if not promap_equal(compose_promaps(leg, pm), cone.legs[a], budget):
                    good = False
                    break
            if good:
                passing.append(assignment)
        if len(passing) == 1:
            results[idx] = Certificate(
                f"cone[{idx}]",
                Verdict.CERTIFIED,
                budget.depth,
                {"factorization": passing[0]},
            )
        elif not passing:
            results[idx] = Certificate(
                f"cone[{idx}]",
                Verdict.REFUTED,
                budget.depth,
                {},
                "no factorization among bounded hom classes",
            )
        else:
            results[idx] = Certificate(
                f"cone[{idx}]",
                Verdict.REFUTED,
                budget.depth,
                {"count": len(passing)},
                "factorization not unique",
            )
    return results
