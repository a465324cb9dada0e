"""Capability interface for finitely computable base categories.

A ``BaseCategory`` exposes composition and equality unconditionally and
declares the optional capabilities (hom enumeration, finite limits and
colimits, abelian structure, mono/epi tests) that the pro-level machinery
checks before use.  Objects and maps are immutable values; equality is
structural after canonical reduction.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CompositionError, UnsupportedCapabilityError


@dataclass(frozen=True)
class FiniteDiagram:
    """A finite diagram: objects, plus arrows (src_index, dst_index, map)."""

    objects: tuple
    arrows: tuple = ()

    def __post_init__(self):
        for i, j, _ in self.arrows:
            if not (0 <= i < len(self.objects) and 0 <= j < len(self.objects)):
                raise ValueError("arrow endpoint out of range")


@dataclass(frozen=True)
class LimitCone:
    """Limit object with projection legs; legs[i] : obj -> diagram.objects[i]."""

    obj: object
    legs: tuple


@dataclass(frozen=True)
class ColimitCocone:
    """Colimit object with injection legs; legs[i] : diagram.objects[i] -> obj."""

    obj: object
    legs: tuple


class BaseCategory:
    name = "abstract"

    can_enumerate_homs = False
    can_finite_limits = False
    can_finite_colimits = False
    is_abelian = False
    has_mono_test = False
    has_epi_test = False

    # -- required core ----------------------------------------------------

    def source(self, f):
        raise NotImplementedError

    def target(self, f):
        raise NotImplementedError

    def identity(self, x):
        raise NotImplementedError

    def compose(self, g, f):
        """g after f; raises CompositionError on endpoint mismatch."""
        raise NotImplementedError

    def obj_equal(self, x, y) -> bool:
        return x == y

    def map_equal(self, f, g) -> bool:
        return f == g

    def _check_composable(self, g, f):
        if not self.obj_equal(self.target(f), self.source(g)):
            raise CompositionError(
                f"{self.name}: cannot compose, target {self.target(f)!r} "
                f"!= source {self.source(g)!r}"
            )

    def compose_chain(self, *maps):
        """Compose maps listed outermost first: compose_chain(h, g, f) = h.g.f."""
        out = maps[0]
        for f in maps[1:]:
            out = self.compose(out, f)
        return out

    # -- optional capabilities ---------------------------------------------

    def hom(self, x, y) -> list:
        raise UnsupportedCapabilityError(f"{self.name}: no hom enumeration")

    def finite_limit(self, diagram: FiniteDiagram) -> LimitCone:
        raise UnsupportedCapabilityError(f"{self.name}: no finite limits")

    def limit_factor(self, cone: LimitCone, diagram: FiniteDiagram, apex, legs):
        """The unique map apex -> cone.obj through which ``legs`` factor."""
        raise UnsupportedCapabilityError(f"{self.name}: no finite limits")

    def finite_colimit(self, diagram: FiniteDiagram) -> ColimitCocone:
        raise UnsupportedCapabilityError(f"{self.name}: no finite colimits")

    def colimit_factor(self, cocone: ColimitCocone, diagram: FiniteDiagram, apex, legs):
        """The unique map cocone.obj -> apex through which ``legs`` factor."""
        raise UnsupportedCapabilityError(f"{self.name}: no finite colimits")

    def zero_object(self):
        raise UnsupportedCapabilityError(f"{self.name}: not abelian")

    def zero_map(self, x, y):
        raise UnsupportedCapabilityError(f"{self.name}: not abelian")

    def is_zero_map(self, f) -> bool:
        raise UnsupportedCapabilityError(f"{self.name}: not abelian")

    def is_mono(self, f) -> bool:
        raise UnsupportedCapabilityError(f"{self.name}: no mono test")

    def is_epi(self, f) -> bool:
        raise UnsupportedCapabilityError(f"{self.name}: no epi test")


def is_cone(cat: BaseCategory, diagram: FiniteDiagram, apex, legs) -> bool:
    for i, j, m in diagram.arrows:
        if not cat.map_equal(cat.compose(m, legs[i]), legs[j]):
            return False
    return True


def is_cocone(cat: BaseCategory, diagram: FiniteDiagram, apex, legs) -> bool:
    for i, j, m in diagram.arrows:
        if not cat.map_equal(cat.compose(legs[j], m), legs[i]):
            return False
    return True


def limit_is_universal(cat, diagram, cone, test_apexes) -> bool:
    """Brute-force universal property check against every cone from the
    given apexes, enumerating with the hom capability."""
    for apex in test_apexes:
        candidate_legs = [cat.hom(apex, x) for x in diagram.objects]

        def cones_from(i, chosen):
            if i == len(diagram.objects):
                yield tuple(chosen)
                return
            for leg in candidate_legs[i]:
                chosen.append(leg)
                yield from cones_from(i + 1, chosen)
                chosen.pop()

        for legs in cones_from(0, []):
            if not is_cone(cat, diagram, apex, legs):
                continue
            factors = [
                u
                for u in cat.hom(apex, cone.obj)
                if all(
                    cat.map_equal(cat.compose(cone.legs[k], u), legs[k])
                    for k in range(len(legs))
                )
            ]
            if len(factors) != 1:
                return False
    return True


def colimit_is_universal(cat, diagram, cocone, test_apexes) -> bool:
    for apex in test_apexes:
        candidate_legs = [cat.hom(x, apex) for x in diagram.objects]

        def cocones_from(i, chosen):
            if i == len(diagram.objects):
                yield tuple(chosen)
                return
            for leg in candidate_legs[i]:
                chosen.append(leg)
                yield from cocones_from(i + 1, chosen)
                chosen.pop()

        for legs in cocones_from(0, []):
            if not is_cocone(cat, diagram, apex, legs):
                continue
            factors = [
                u
                for u in cat.hom(cocone.obj, apex)
                if all(
                    cat.map_equal(cat.compose(u, cocone.legs[k]), legs[k])
                    for k in range(len(legs))
                )
            ]
            if len(factors) != 1:
                return False
    return True
