"""Pro-objects and pro-maps over lazily presented index shapes.

A pro-object is a functor from an index shape into a base category,
memoized level by level.  A pro-map from X to Y is a representative
family: for each target index s, a source index t(s) and a base map
X_t(s) -> Y_s, coherent up to refinement.  Equality of pro-maps is a
bounded witness search and always comes back depth-stamped: the three
verdicts are equal-with-witnesses, distinct-within-the-window, and
undetermined (only when the node cap stopped a search early).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .budget import Budget, Certificate, Verdict, as_budget
from .cats.base import BaseCategory, FiniteDiagram
from .errors import (
    BudgetError,
    UnsupportedCapabilityError,
    VerificationFailure,
)
from .shapes import Arrow, IndexShape, PointShape

_POINT = PointShape()


class ProObject:
    """A functor shape -> base, with memoized levels and structure maps."""

    def __init__(self, base: BaseCategory, shape: IndexShape, obj_at, map_at, label=""):
        self.base = base
        self.shape = shape
        self._obj_at = obj_at
        self._map_at = map_at
        self.label = label
        self._objs = {}
        self._maps = {}

    def obj_at(self, s):
        if s not in self._objs:
            self._objs[s] = self._obj_at(s)
        return self._objs[s]

    def map_at(self, arrow: Arrow):
        if arrow.is_identity:
            return self.base.identity(self.obj_at(arrow.src))
        if arrow not in self._maps:
            self._maps[arrow] = self._map_at(arrow)
        return self._maps[arrow]

    def __repr__(self):
        tag = self.label or type(self.shape).__name__
        return f"ProObject({self.base.name}, {tag})"


def pro_object(base, shape, obj_at, map_at, label="") -> ProObject:
    return ProObject(base, shape, obj_at, map_at, label)


def constant(base: BaseCategory, x, label="") -> ProObject:
    """The constant pro-object on the one-object index."""
    return ProObject(base, _POINT, lambda s: x, None, label or f"c({x!r})")


def tower(base: BaseCategory, shape, obj_at, step, label="") -> ProObject:
    """A pro-object over the natural numbers presented by consecutive
    steps: ``step(s)`` is the structure map X_{s+1} -> X_s."""

    def map_at(arrow):
        s, t = arrow.src, arrow.dst
        m = base.identity(obj_at(t))
        for k in range(t, s):
            m = base.compose(m, step(k))
        return m

    return ProObject(base, shape, obj_at, map_at, label)


def check_functorial(x: ProObject, depth: int) -> bool:
    """Structure maps compose correctly on every composable pair of the
    truncation."""
    shape = x.shape
    for a in shape.objects_to_depth(depth):
        for f in shape.arrows_out(a):
            if shape.level(f.dst) > depth:
                continue
            for g in shape.arrows_out(f.dst):
                if shape.level(g.dst) > depth:
                    continue
                comp = shape.compose(g, f)
                lhs = x.map_at(comp)
                rhs = x.base.compose(x.map_at(g), x.map_at(f))
                if not x.base.map_equal(lhs, rhs):
                    return False
    return True


class ProMap:
    """A map of pro-objects given by a representative family.

    ``rep(s)`` returns (t, m) with m : X_t -> Y_s representing the map at
    target level s.  Coherence witnesses are found on demand by
    ``coherence_witness`` and cached.
    """

    def __init__(self, src: ProObject, dst: ProObject, rep, label=""):
        self.src = src
        self.dst = dst
        self._rep = rep
        self.label = label
        self._reps = {}
        self._witnesses = {}

    def rep(self, s):
        if s not in self._reps:
            t, m = self._rep(s)
            base = self.src.base
            if not (
                base.obj_equal(base.source(m), self.src.obj_at(t))
                and base.obj_equal(base.target(m), self.dst.obj_at(s))
            ):
                raise VerificationFailure(
                    f"representative at {s!r} has wrong endpoints", s
                )
            self._reps[s] = (t, m)
        return self._reps[s]

    def coherence_witness(self, arrow: Arrow, budget):
        """For a target arrow s' -> s, an index dominating both chosen
        source indices where the two composites agree; None if the
        bounded search finds nothing."""
        if arrow in self._witnesses:
            return self._witnesses[arrow]
        budget = as_budget(budget)
        base = self.src.base
        t_hi, m_hi = self.rep(arrow.src)
        t_lo, m_lo = self.rep(arrow.dst)
        lhs = base.compose(self.dst.map_at(arrow), m_hi)
        found = equalize_after_precomposition(self.src, t_hi, lhs, t_lo, m_lo, budget)
        self._witnesses[arrow] = found
        return found

    def __repr__(self):
        return f"ProMap({self.label or 'unnamed'})"


def promap(src, dst, rep, label="") -> ProMap:
    return ProMap(src, dst, rep, label)


def levelwise_promap(src: ProObject, dst: ProObject, component, label="") -> ProMap:
    """A strict level map between pro-objects over the same shape."""
    return ProMap(src, dst, lambda s: (s, component(s)), label)


def identity_promap(x: ProObject) -> ProMap:
    return ProMap(x, x, lambda s: (s, x.base.identity(x.obj_at(s))), "id")


def compose_promaps(g: ProMap, f: ProMap) -> ProMap:
    if f.dst.base is not g.src.base:
        raise VerificationFailure("promap composition over different bases")

    def rep(s):
        u, mg = g.rep(s)
        t, mf = f.rep(u)
        return (t, f.src.base.compose(mg, mf))

    return ProMap(f.src, g.dst, rep, f"{g.label}.{f.label}")


def constant_promap(cx: ProObject, cy: ProObject, m, label="") -> ProMap:
    return ProMap(cx, cy, lambda s: (0, m), label)


def zero_promap(x: ProObject, y: ProObject) -> ProMap:
    base = x.base
    t0 = x.shape.objects_at_level(0)[0]

    def rep(s):
        return (t0, base.zero_map(x.obj_at(t0), y.obj_at(s)))

    return ProMap(x, y, rep, "0")


# -- bounded refinement searches ---------------------------------------------


def equalize_after_precomposition(x: ProObject, t1, m1, t2, m2, budget):
    """Search the source shape for an index w and arrows w -> t1, w -> t2
    equalizing the two composites.  The window runs one level past the
    budget depth, widened to reach the representatives' own levels:
    a window that cannot even see the compared indices would make every
    comparison vacuously fail.
    """
    budget = as_budget(budget)
    base = x.base
    shape = x.shape
    window = max(budget.depth + 1, shape.level(t1), shape.level(t2))
    count = 0
    for w in shape.objects_to_depth(window):
        count += 1
        if count > budget.node_cap:
            raise BudgetError("refinement search hit node cap", budget.depth)
        for a1 in shape.arrows_between(w, t1):
            for a2 in shape.arrows_between(w, t2):
                lhs = base.compose(m1, x.map_at(a1))
                rhs = base.compose(m2, x.map_at(a2))
                if base.map_equal(lhs, rhs):
                    return (w, a1, a2)
    return None


class Equality(Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNDETERMINED = "undetermined"


@dataclass
class EqualityCertificate:
    """Depth-stamped outcome of a pro-map comparison.

    For EQUAL, ``witnesses`` maps each target index to the refinement
    (w, arrow, arrow) where the representatives agree.  For DISTINCT,
    ``failures`` lists the target indices whose refinement window was
    exhausted without agreement; the claim is relative to that window.
    """

    status: Equality
    depth: int
    witnesses: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    details: str = ""

    def __bool__(self):
        return self.status is Equality.EQUAL


def promap_equal(f: ProMap, g: ProMap, budget) -> EqualityCertificate:
    budget = as_budget(budget)
    witnesses = {}
    failures = []
    capped = False
    for s in f.dst.shape.objects_to_depth(budget.depth):
        t1, m1 = f.rep(s)
        t2, m2 = g.rep(s)
        try:
            found = equalize_after_precomposition(f.src, t1, m1, t2, m2, budget)
        except BudgetError:
            capped = True
            found = None
        if found is None:
            failures.append(s)
        else:
            witnesses[s] = found
    if not failures:
        return EqualityCertificate(Equality.EQUAL, budget.depth, witnesses)
    if capped:
        return EqualityCertificate(
            Equality.UNDETERMINED,
            budget.depth,
            witnesses,
            failures,
            "node cap stopped a refinement search",
        )
    return EqualityCertificate(
        Equality.DISTINCT,
        budget.depth,
        witnesses,
        failures,
        "refinement window exhausted without agreement",
    )


def check_promap_coherent(f: ProMap, budget) -> Certificate:
    budget = as_budget(budget)
    shape = f.dst.shape
    witnesses = {}
    for s in shape.objects_to_depth(budget.depth):
        for arrow in shape.arrows_out(s):
            found = f.coherence_witness(arrow, budget)
            if found is None:
                return Certificate(
                    "promap-coherent",
                    Verdict.REFUTED,
                    budget.depth,
                    {"arrow": arrow},
                    "no refinement equalizes the two composites",
                )
            witnesses[arrow] = found
    return Certificate(
        "promap-coherent", Verdict.CERTIFIED, budget.depth, {"witnesses": witnesses}
    )


# -- the base-valued limit -----------------------------------------------------


def _truncation_diagram(x: ProObject, depth: int):
    shape = x.shape
    objs = shape.objects_to_depth(depth)
    pos = {o: i for i, o in enumerate(objs)}
    arrows = []
    for o in objs:
        for a in shape.arrows_out(o):
            if a.dst in pos:
                arrows.append((pos[o], pos[a.dst], x.map_at(a)))
    return objs, FiniteDiagram(tuple(x.obj_at(o) for o in objs), tuple(arrows))


def lim_in_base(x: ProObject, budget):
    """The base-valued limit of the truncated pro-object, with projection
    legs keyed by index.  Infinite shapes must stabilize within depth:
    the comparison from the depth-d to the depth-(d-1) limit has to be an
    isomorphism, certified with the mono and epi tests."""
    budget = as_budget(budget)
    base = x.base
    objs, diagram = _truncation_diagram(x, budget.depth)
    if len(objs) == 1:
        only = objs[0]
        return x.obj_at(only), {only: base.identity(x.obj_at(only))}
    cone = base.finite_limit(diagram)
    legs = {o: cone.legs[i] for i, o in enumerate(objs)}
    exhausted = x.shape.is_finite and not x.shape.objects_at_level(budget.depth + 1)
    if not exhausted:
        prev_objs, prev_diagram = _truncation_diagram(x, budget.depth - 1)
        prev_cone = base.finite_limit(prev_diagram)
        restricted = tuple(legs[o] for o in prev_objs)
        comparison = base.limit_factor(prev_cone, prev_diagram, cone.obj, restricted)
        if not (base.is_mono(comparison) and base.is_epi(comparison)):
            raise BudgetError(
                "base-valued limit did not stabilize within depth", budget.depth
            )
    return cone.obj, legs


# -- bounded hom sets ----------------------------------------------------------


@dataclass
class BoundedHomSet:
    """Colimit classes of representatives per target level, and the
    compatible class tuples that form the bounded hom set.

    ``classes[s]`` lists canonical class representatives (t, map) in
    enumeration order; ``lookup[s, t, map]`` is the class index of a
    node; ``tuples`` lists each compatible assignment as a dict from
    target index to class index.  ``stabilized`` compares with a run one
    level shallower.
    """

    depth: int
    source: ProObject
    target: ProObject
    classes: dict
    lookup: dict
    tuples: list
    stabilized: bool | None = None

    def class_count(self, s) -> int:
        return len(self.classes[s])

    def promap_for(self, assignment) -> ProMap:
        reps = {s: self.classes[s][ci] for s, ci in assignment.items()}

        def rep(s):
            if s not in reps:
                raise BudgetError(f"target index {s!r} outside bounded window")
            return reps[s]

        return ProMap(self.source, self.target, rep, "hom-class")

    def class_of_promap(self, f: ProMap):
        """The compatible tuple of an arbitrary pro-map with this source
        and target, or None when a representative escapes the window."""
        out = {}
        for s in self.classes:
            t, m = f.rep(s)
            key = (s, t, m)
            if key not in self.lookup:
                return None
            out[s] = self.lookup[key]
        return out


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def hom_bounded(x: ProObject, y: ProObject, budget, compare_with_shallower=True):
    """Bounded model of Hom(X, Y): for each target index within depth, the
    colimit classes of maps out of the source truncation, glued along
    every precomposition edge; then the inverse limit of compatible class
    tuples over the target truncation."""
    budget = as_budget(budget)
    base = x.base
    if not base.can_enumerate_homs:
        raise UnsupportedCapabilityError(
            f"{base.name}: hom_bounded needs hom enumeration"
        )
    src_objs = x.shape.objects_to_depth(budget.depth)
    src_pos = {o: i for i, o in enumerate(src_objs)}
    tgt_objs = y.shape.objects_to_depth(budget.depth)

    hom_lists = {}
    hom_index = {}

    def homs_into(t, ys):
        key = (t, ys)
        if key not in hom_lists:
            maps = base.hom(x.obj_at(t), ys)
            hom_lists[key] = maps
            hom_index[key] = {m: i for i, m in enumerate(maps)}
        return hom_lists[key]

    classes = {}
    lookup = {}
    nodes_seen = 0
    for s in tgt_objs:
        ys = y.obj_at(s)
        uf = _UnionFind()
        for t in src_objs:
            for m in homs_into(t, ys):
                uf.add((t, m))
                nodes_seen += 1
                if nodes_seen > budget.node_cap:
                    raise BudgetError("hom_bounded hit node cap", budget.depth)
        for w in src_objs:
            for arrow in x.shape.arrows_out(w):
                if arrow.dst not in src_pos:
                    continue
                xa = x.map_at(arrow)
                for m in homs_into(arrow.dst, ys):
                    pulled = base.compose(m, xa)
                    uf.add((w, pulled))
                    uf.union((arrow.dst, m), (w, pulled))
        roots = {}
        for t in src_objs:
            for m in homs_into(t, ys):
                root = uf.find((t, m))
                key_rank = (src_pos[t], hom_index[(t, ys)][m])
                if root not in roots or key_rank < roots[root][0]:
                    roots[root] = (key_rank, (t, m))
        ordered = sorted(roots.values(), key=lambda kv: kv[0])
        classes[s] = [rep for _, rep in ordered]
        root_to_idx = {uf.find(rep): i for i, (_, rep) in enumerate(ordered)}
        for t in src_objs:
            for m in homs_into(t, ys):
                lookup[(s, t, m)] = root_to_idx[uf.find((t, m))]

    # compatible tuples over the target truncation, low levels first
    order = sorted(tgt_objs, key=y.shape.enum_key)
    out_arrows = {
        s: [a for a in y.shape.arrows_out(s) if a.dst in classes] for s in order
    }

    def compatible(assigned, s, ci):
        t, m = classes[s][ci]
        for a in out_arrows[s]:
            pushed = base.compose(y.map_at(a), m)
            if lookup[(a.dst, t, pushed)] != assigned[a.dst]:
                return False
        return True

    tuples = []

    def assign(i, current):
        if i == len(order):
            tuples.append(dict(current))
            return
        s = order[i]
        for ci in range(len(classes[s])):
            if compatible(current, s, ci):
                current[s] = ci
                assign(i + 1, current)
                del current[s]

    assign(0, {})

    out = BoundedHomSet(budget.depth, x, y, classes, lookup, tuples)
    if compare_with_shallower and budget.depth > 0:
        prev = hom_bounded(x, y, Budget(budget.depth - 1, budget.node_cap), False)
        same_counts = all(
            len(prev.classes[s]) == len(classes[s]) for s in prev.classes
        )
        out.stabilized = same_counts and len(prev.tuples) == len(tuples)
    return out


# -- strict representations ----------------------------------------------------


@dataclass
class StrictMapData:
    """A strict representation of one pro-map: an index functor between
    the index shapes plus levelwise components X_{F(s)} -> Y_s."""

    index_map: object
    component: object

    def as_promap(self, src: ProObject, dst: ProObject, label="") -> ProMap:
        return ProMap(
            src, dst, lambda s: (self.index_map(s), self.component(s)), label
        )


def strict_pair_compatible(shape, objects, arrow_data, phi, psi, depth) -> bool:
    """The strict-diagram law on one composable pair phi : a -> b,
    psi : b -> c: index functors compose contravariantly and components
    paste."""
    comp = shape.compose(psi, phi)
    d_phi, d_psi, d_comp = arrow_data(phi), arrow_data(psi), arrow_data(comp)
    x = objects(phi.src)
    base = x.base
    tgt_shape = objects(psi.dst).shape
    for s in tgt_shape.objects_to_depth(depth):
        mid = d_psi.index_map(s)
        if d_comp.index_map(s) != d_phi.index_map(mid):
            return False
        lhs = d_comp.component(s)
        rhs = base.compose(d_psi.component(s), d_phi.component(mid))
        if not base.map_equal(lhs, rhs):
            return False
    return True


# -- essential type C -----------------------------------------------------------


@dataclass
class ObjectLevelData:
    """Candidate evidence that a pro-object is essentially of type C: a
    model whose levels should satisfy the predicate, plus the two maps of
    an isomorphism with the object."""

    model: ProObject
    fwd: ProMap
    bwd: ProMap


@dataclass
class MapLevelData:
    """Candidate level representation of a pro-map: pro-objects over one
    shared shape, levelwise components, and isomorphisms onto the map's
    endpoints."""

    src_model: ProObject
    dst_model: ProObject
    component: object
    src_fwd: ProMap
    src_bwd: ProMap
    dst_fwd: ProMap
    dst_bwd: ProMap

    def as_promap(self) -> ProMap:
        return levelwise_promap(self.src_model, self.dst_model, self.component)


def _require_iso(fwd: ProMap, bwd: ProMap, budget, what: str):
    rt1 = promap_equal(compose_promaps(bwd, fwd), identity_promap(fwd.src), budget)
    rt2 = promap_equal(compose_promaps(fwd, bwd), identity_promap(fwd.dst), budget)
    if not (rt1 and rt2):
        raise VerificationFailure(f"{what}: supplied maps are not an isomorphism")


def certify_object_type(
    x: ProObject, predicate, data: ObjectLevelData, budget
) -> Certificate:
    """Verify supplied level data: every model level satisfies the
    predicate and the model is isomorphic to the object.  Raises
    VerificationFailure naming the first bad level."""
    budget = as_budget(budget)
    levels = data.model.shape.objects_to_depth(budget.depth)
    for s in levels:
        if not predicate(data.model.obj_at(s)):
            raise VerificationFailure("level fails the object predicate", s)
    _require_iso(data.fwd, data.bwd, budget, "object level data")
    return Certificate(
        "essentially-type-C",
        Verdict.CERTIFIED,
        budget.depth,
        {"levels": len(levels)},
    )


def certify_map_type(f: ProMap, predicate, data: MapLevelData, budget) -> Certificate:
    """Verify a candidate level representation of a map: naturality of
    the components, the map predicate at every level, and that the level
    data represents the given map through the supplied isomorphisms."""
    budget = as_budget(budget)
    base = f.src.base
    shape = data.src_model.shape
    levels = shape.objects_to_depth(budget.depth)
    for s in levels:
        for arrow in shape.arrows_out(s):
            lhs = base.compose(data.component(arrow.dst), data.src_model.map_at(arrow))
            rhs = base.compose(data.dst_model.map_at(arrow), data.component(s))
            if not base.map_equal(lhs, rhs):
                raise VerificationFailure("component square does not commute", arrow)
    for s in levels:
        if not predicate(data.component(s)):
            raise VerificationFailure("level fails the map predicate", s)
    _require_iso(data.src_fwd, data.src_bwd, budget, "source level data")
    _require_iso(data.dst_fwd, data.dst_bwd, budget, "target level data")
    tilde = data.as_promap()
    lhs = compose_promaps(tilde, data.src_fwd)
    rhs = compose_promaps(data.dst_fwd, f)
    verdict = promap_equal(lhs, rhs, budget)
    if not verdict:
        raise VerificationFailure(
            "level components do not represent the map",
            verdict.failures[:1],
        )
    return Certificate(
        "essentially-type-C-map",
        Verdict.CERTIFIED,
        budget.depth,
        {"levels": len(levels)},
    )
