"""Finitely generated free abelian groups with labeled bases.

Hom sets are infinite, so this category deliberately has no hom
enumeration: everything at the pro level is checked against supplied
witnesses.  Basis labels make inclusions and projections between labeled
truncations canonical rather than ad hoc matrices; ``basis_range(m, n)``
builds the subgroup generated by a_m, ..., a_n of the free group on the
countable basis a_0, a_1, ...
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import intmat
from ..errors import UnsupportedCapabilityError
from .base import BaseCategory, ColimitCocone, FiniteDiagram, LimitCone


@dataclass(frozen=True)
class FreeAbObj:
    labels: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"FreeAbObj({','.join(self.labels)})"


@dataclass(frozen=True)
class FreeAbMap:
    src: FreeAbObj
    dst: FreeAbObj
    matrix: tuple[tuple[int, ...], ...]

    def __repr__(self):
        return f"FreeAbMap({self.src!r}->{self.dst!r}, {[list(r) for r in self.matrix]})"


def basis_range(m: int, n: int) -> FreeAbObj:
    """The subgroup generated by a_m, ..., a_n (inclusive); empty if n < m."""
    return FreeAbObj(tuple(f"a_{i}" for i in range(m, n + 1)))


class FreeAb(BaseCategory):
    name = "freeab"

    can_enumerate_homs = False
    can_finite_limits = True
    can_finite_colimits = True
    is_abelian = True
    has_mono_test = True
    has_epi_test = True

    def obj(self, rank: int, labels=None) -> FreeAbObj:
        if labels is None:
            labels = tuple(f"e{i}" for i in range(rank))
        labels = tuple(labels)
        if len(labels) != rank:
            raise ValueError("label count must equal rank")
        return FreeAbObj(labels)

    def map(self, src: FreeAbObj, dst: FreeAbObj, rows) -> FreeAbMap:
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if len(rows) != dst.rank or any(len(r) != src.rank for r in rows):
            raise ValueError("matrix shape must be dst.rank x src.rank")
        return FreeAbMap(src, dst, rows)

    def labeled_inclusion(self, src: FreeAbObj, dst: FreeAbObj) -> FreeAbMap:
        """Basis-label-preserving inclusion; every src label must occur in dst."""
        missing = set(src.labels) - set(dst.labels)
        if missing:
            raise ValueError(f"labels {sorted(missing)} absent from target")
        rows = tuple(
            tuple(1 if lab == s else 0 for s in src.labels) for lab in dst.labels
        )
        return FreeAbMap(src, dst, rows)

    def labeled_projection(self, src: FreeAbObj, dst: FreeAbObj) -> FreeAbMap:
        """Kill every src basis label absent from dst, keep the rest."""
        rows = tuple(
            tuple(1 if lab == s else 0 for s in src.labels) for lab in dst.labels
        )
        return FreeAbMap(src, dst, rows)

    def source(self, f):
        return f.src

    def target(self, f):
        return f.dst

    def identity(self, x: FreeAbObj):
        return FreeAbMap(x, x, intmat.identity(x.rank))

    def compose(self, g, f):
        self._check_composable(g, f)
        rows = tuple(
            tuple(
                sum(g.matrix[i][t] * f.matrix[t][j] for t in range(f.dst.rank))
                for j in range(f.src.rank)
            )
            for i in range(g.dst.rank)
        )
        return FreeAbMap(f.src, g.dst, rows)

    def zero_object(self):
        return FreeAbObj(())

    def zero_map(self, x, y):
        return FreeAbMap(x, y, tuple((0,) * x.rank for _ in range(y.rank)))

    def is_zero_map(self, f):
        return all(all(v == 0 for v in row) for row in f.matrix)

    def is_mono(self, f):
        if f.src.rank == 0:
            return True
        return intmat.rank(f.matrix) == f.src.rank

    def is_epi(self, f):
        if f.dst.rank == 0:
            return True
        _, d, _ = intmat.smith_normal_form(f.matrix)
        diag = intmat.diagonal(d)
        return len(diag) >= f.dst.rank and all(x == 1 for x in diag[: f.dst.rank])

    # -- limits -------------------------------------------------------------

    def _limit_basis(self, diagram: FiniteDiagram):
        offs, total = [], 0
        for x in diagram.objects:
            offs.append(total)
            total += x.rank
        rows = []
        for i, j, m in diagram.arrows:
            for r in range(m.dst.rank):
                row = [0] * total
                for c in range(m.src.rank):
                    row[offs[i] + c] = m.matrix[r][c]
                row[offs[j] + r] -= 1
                rows.append(tuple(row))
        if rows:
            basis = intmat.kernel_basis(tuple(rows))
        else:
            basis = [
                tuple(1 if i == j else 0 for i in range(total))
                for j in range(total)
            ]
        return offs, total, basis

    def finite_limit(self, diagram: FiniteDiagram) -> LimitCone:
        offs, total, basis = self._limit_basis(diagram)
        apex = self.obj(len(basis))
        legs = []
        for k, x in enumerate(diagram.objects):
            rows = tuple(
                tuple(vec[offs[k] + r] for vec in basis) for r in range(x.rank)
            )
            legs.append(FreeAbMap(apex, x, rows))
        return LimitCone(apex, tuple(legs))

    def limit_factor(self, cone, diagram, apex, legs):
        offs, total, basis = self._limit_basis(diagram)
        bmat = tuple(tuple(vec[r] for vec in basis) for r in range(total))
        cols = []
        for j in range(apex.rank):
            stacked = []
            for leg in legs:
                stacked.extend(row[j] for row in leg.matrix)
            sol = intmat.solve(bmat, tuple(stacked))
            if sol is None:
                raise ValueError("legs do not form a cone over the diagram")
            cols.append(sol)
        rows = tuple(
            tuple(cols[j][i] for j in range(apex.rank))
            for i in range(len(basis))
        )
        return FreeAbMap(apex, cone.obj, rows)

    # -- colimits -----------------------------------------------------------

    def _colimit_presentation(self, diagram: FiniteDiagram):
        offs, total = [], 0
        for x in diagram.objects:
            offs.append(total)
            total += x.rank
        rel_cols = []
        for i, j, m in diagram.arrows:
            for c in range(m.src.rank):
                col = [0] * total
                col[offs[i] + c] = -1
                for r in range(m.dst.rank):
                    col[offs[j] + r] += m.matrix[r][c]
                rel_cols.append(tuple(col))
        rel = tuple(tuple(col[i] for col in rel_cols) for i in range(total))
        u, d, _ = intmat.smith_normal_form(rel)
        diag = intmat.diagonal(d)
        torsion = [x for x in diag if x > 1]
        if torsion:
            raise UnsupportedCapabilityError(
                f"freeab: colimit has torsion {torsion}, not a free abelian group"
            )
        kept = tuple(
            i for i in range(total) if i >= len(diag) or diag[i] == 0
        )
        return offs, total, u, kept

    def finite_colimit(self, diagram: FiniteDiagram) -> ColimitCocone:
        offs, total, u, kept = self._colimit_presentation(diagram)
        apex = self.obj(len(kept))
        legs = []
        for k, x in enumerate(diagram.objects):
            rows = tuple(
                tuple(u[i][offs[k] + c] for c in range(x.rank)) for i in kept
            )
            legs.append(FreeAbMap(x, apex, rows))
        return ColimitCocone(apex, tuple(legs))

    def colimit_factor(self, cocone, diagram, apex, legs):
        offs, total, u, kept = self._colimit_presentation(diagram)
        uinv = intmat.invert_unimodular(u)
        big = []
        for r in range(apex.rank):
            row = [0] * total
            for k, x in enumerate(diagram.objects):
                for c in range(x.rank):
                    row[offs[k] + c] = legs[k].matrix[r][c]
            big.append(row)
        rows = tuple(
            tuple(sum(big[r][t] * uinv[t][i] for t in range(total)) for i in kept)
            for r in range(apex.rank)
        )
        return FreeAbMap(cocone.obj, apex, rows)


FREEAB = FreeAb()
