"""The category of finite sets.

Objects are sizes n (elements 0..n-1); a map is a total assignment table.
Every capability is available: homs enumerate in lexicographic table
order, limits enumerate compatible tuples, colimits glue by union-find.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .base import BaseCategory, ColimitCocone, FiniteDiagram, LimitCone


@dataclass(frozen=True)
class FinSetMap:
    src: int
    dst: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.src:
            raise ValueError("table length must equal source size")
        if any(not (0 <= v < self.dst) for v in self.table):
            raise ValueError("table entry out of target range")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __repr__(self):
        return f"FinSetMap({self.src}->{self.dst}, {list(self.table)})"


class FinSet(BaseCategory):
    name = "finset"

    can_enumerate_homs = True
    can_finite_limits = True
    can_finite_colimits = True
    has_mono_test = True
    has_epi_test = True

    def obj(self, n: int) -> int:
        if n < 0:
            raise ValueError("size must be >= 0")
        return int(n)

    def map(self, src: int, dst: int, table) -> FinSetMap:
        return FinSetMap(src, dst, tuple(table))

    def elements(self, n: int):
        return range(n)

    def apply(self, f: FinSetMap, x: int) -> int:
        return f.table[x]

    def source(self, f):
        return f.src

    def target(self, f):
        return f.dst

    def identity(self, n):
        return FinSetMap(n, n, tuple(range(n)))

    def compose(self, g, f):
        self._check_composable(g, f)
        return FinSetMap(f.src, g.dst, tuple(g.table[v] for v in f.table))

    def hom(self, x: int, y: int) -> list[FinSetMap]:
        if x == 0:
            return [FinSetMap(0, y, ())]
        if y == 0:
            return []
        return [FinSetMap(x, y, t) for t in product(range(y), repeat=x)]

    def is_mono(self, f):
        return len(set(f.table)) == f.src

    def is_epi(self, f):
        return len(set(f.table)) == f.dst

    # -- limits -------------------------------------------------------------

    def _compatible_tuples(self, diagram: FiniteDiagram):
        sizes = diagram.objects
        tuples = []
        for t in product(*(range(n) for n in sizes)):
            if all(m.table[t[i]] == t[j] for i, j, m in diagram.arrows):
                tuples.append(t)
        return tuples

    def finite_limit(self, diagram: FiniteDiagram) -> LimitCone:
        tuples = self._compatible_tuples(diagram)
        obj = len(tuples)
        legs = tuple(
            FinSetMap(obj, n, tuple(t[i] for t in tuples))
            for i, n in enumerate(diagram.objects)
        )
        return LimitCone(obj, legs)

    def limit_factor(self, cone, diagram, apex, legs):
        tuples = self._compatible_tuples(diagram)
        index = {t: k for k, t in enumerate(tuples)}
        table = []
        for x in range(apex):
            t = tuple(leg.table[x] for leg in legs)
            if t not in index:
                raise ValueError("legs do not form a cone over the diagram")
            table.append(index[t])
        return FinSetMap(apex, cone.obj, tuple(table))

    # -- colimits -----------------------------------------------------------

    def _glued_classes(self, diagram: FiniteDiagram):
        offsets = []
        total = 0
        for n in diagram.objects:
            offsets.append(total)
            total += n
        parent = list(range(total))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        for i, j, m in diagram.arrows:
            for x in range(diagram.objects[i]):
                union(offsets[i] + x, offsets[j] + m.table[x])
        roots = sorted({find(a) for a in range(total)})
        cls_of = {a: roots.index(find(a)) for a in range(total)}
        return offsets, roots, cls_of

    def finite_colimit(self, diagram: FiniteDiagram) -> ColimitCocone:
        offsets, roots, cls_of = self._glued_classes(diagram)
        obj = len(roots)
        legs = tuple(
            FinSetMap(n, obj, tuple(cls_of[offsets[i] + x] for x in range(n)))
            for i, n in enumerate(diagram.objects)
        )
        return ColimitCocone(obj, legs)

    def colimit_factor(self, cocone, diagram, apex, legs):
        offsets, roots, cls_of = self._glued_classes(diagram)
        table = [None] * cocone.obj
        for i, n in enumerate(diagram.objects):
            for x in range(n):
                c = cls_of[offsets[i] + x]
                v = legs[i].table[x]
                if table[c] is None:
                    table[c] = v
                elif table[c] != v:
                    raise ValueError("legs do not form a cocone over the diagram")
        return FinSetMap(cocone.obj, apex, tuple(table))


FINSET = FinSet()
