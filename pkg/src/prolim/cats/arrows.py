"""Arrow categories Ar(C): objects are maps of C, maps are commuting squares."""

from __future__ import annotations

from dataclasses import dataclass

from .base import BaseCategory, ColimitCocone, FiniteDiagram, LimitCone


@dataclass(frozen=True)
class SquareMap:
    """A commuting square from base map ``src`` to base map ``dst``.

    ``top`` runs between the sources, ``bottom`` between the targets;
    commutativity is checked at construction and stored as a certificate.
    """

    src: object
    dst: object
    top: object
    bottom: object
    commutes: bool

    def __repr__(self):
        return f"SquareMap(top={self.top!r}, bottom={self.bottom!r})"


class ArrowCategory(BaseCategory):
    def __init__(self, base: BaseCategory):
        self.base = base
        self.name = f"arrows({base.name})"
        self.can_enumerate_homs = base.can_enumerate_homs
        self.can_finite_limits = base.can_finite_limits
        self.can_finite_colimits = base.can_finite_colimits
        self.is_abelian = base.is_abelian
        self.has_mono_test = base.has_mono_test
        self.has_epi_test = base.has_epi_test

    def square(self, src, dst, top, bottom) -> SquareMap:
        b = self.base
        left = b.compose(bottom, src)
        right = b.compose(dst, top)
        if not b.map_equal(left, right):
            raise ValueError("square does not commute")
        return SquareMap(src, dst, top, bottom, True)

    def source(self, f):
        return f.src

    def target(self, f):
        return f.dst

    def identity(self, x):
        b = self.base
        return SquareMap(x, x, b.identity(b.source(x)), b.identity(b.target(x)), True)

    def compose(self, g, f):
        self._check_composable(g, f)
        b = self.base
        return SquareMap(
            f.src, g.dst, b.compose(g.top, f.top), b.compose(g.bottom, f.bottom), True
        )

    def hom(self, x, y) -> list[SquareMap]:
        b = self.base
        out = []
        for u in b.hom(b.source(x), b.source(y)):
            for v in b.hom(b.target(x), b.target(y)):
                if b.map_equal(b.compose(v, x), b.compose(y, u)):
                    out.append(SquareMap(x, y, u, v, True))
        return out

    def zero_object(self):
        z = self.base.zero_object()
        return self.base.zero_map(z, z)

    def zero_map(self, x, y):
        b = self.base
        return SquareMap(
            x,
            y,
            b.zero_map(b.source(x), b.source(y)),
            b.zero_map(b.target(x), b.target(y)),
            True,
        )

    def is_zero_map(self, f):
        return self.base.is_zero_map(f.top) and self.base.is_zero_map(f.bottom)

    def is_mono(self, f):
        return self.base.is_mono(f.top) and self.base.is_mono(f.bottom)

    def is_epi(self, f):
        return self.base.is_epi(f.top) and self.base.is_epi(f.bottom)

    # componentwise (co)limits, with the apex map induced by factorization

    def _split(self, diagram: FiniteDiagram):
        b = self.base
        top = FiniteDiagram(
            tuple(b.source(x) for x in diagram.objects),
            tuple((i, j, sq.top) for i, j, sq in diagram.arrows),
        )
        bot = FiniteDiagram(
            tuple(b.target(x) for x in diagram.objects),
            tuple((i, j, sq.bottom) for i, j, sq in diagram.arrows),
        )
        return top, bot

    def finite_limit(self, diagram: FiniteDiagram) -> LimitCone:
        b = self.base
        top, bot = self._split(diagram)
        tc, bc = b.finite_limit(top), b.finite_limit(bot)
        mid_legs = tuple(
            b.compose(diagram.objects[k], tc.legs[k]) for k in range(len(top.objects))
        )
        apex_map = b.limit_factor(bc, bot, tc.obj, mid_legs)
        legs = tuple(
            SquareMap(apex_map, diagram.objects[k], tc.legs[k], bc.legs[k], True)
            for k in range(len(top.objects))
        )
        return LimitCone(apex_map, legs)

    def limit_factor(self, cone, diagram, apex, legs):
        b = self.base
        top, bot = self._split(diagram)
        tc, bc = b.finite_limit(top), b.finite_limit(bot)
        ut = b.limit_factor(tc, top, b.source(apex), tuple(sq.top for sq in legs))
        ub = b.limit_factor(bc, bot, b.target(apex), tuple(sq.bottom for sq in legs))
        return SquareMap(apex, cone.obj, ut, ub, True)

    def finite_colimit(self, diagram: FiniteDiagram) -> ColimitCocone:
        b = self.base
        top, bot = self._split(diagram)
        tc, bc = b.finite_colimit(top), b.finite_colimit(bot)
        mid_legs = tuple(
            b.compose(bc.legs[k], diagram.objects[k]) for k in range(len(top.objects))
        )
        apex_map = b.colimit_factor(tc, top, bc.obj, mid_legs)
        legs = tuple(
            SquareMap(diagram.objects[k], apex_map, tc.legs[k], bc.legs[k], True)
            for k in range(len(top.objects))
        )
        return ColimitCocone(apex_map, legs)

    def colimit_factor(self, cocone, diagram, apex, legs):
        b = self.base
        top, bot = self._split(diagram)
        tc, bc = b.finite_colimit(top), b.finite_colimit(bot)
        ut = b.colimit_factor(tc, top, b.source(apex), tuple(sq.top for sq in legs))
        ub = b.colimit_factor(bc, bot, b.target(apex), tuple(sq.bottom for sq in legs))
        return SquareMap(cocone.obj, apex, ut, ub, True)
