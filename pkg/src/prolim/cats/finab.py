"""The category of finite abelian groups.

An object is a tuple of cyclic orders (n_1, ..., n_k), order-1 factors
dropped; the trivial group is ().  A map is an integer matrix taken mod
the target orders, with well-definedness (M[i][j] * n_j = 0 mod m_i)
enforced at construction.  Limits and colimits run through integer
lattice presentations and Smith normal form, so group elements are never
enumerated except where a caller explicitly asks for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .. import intmat
from .base import BaseCategory, ColimitCocone, FiniteDiagram, LimitCone

Orders = tuple[int, ...]


def _reduce(rows, dst: Orders):
    return tuple(
        tuple(x % dst[i] for x in row) for i, row in enumerate(rows)
    )


def _mul(a, b, m, k, n):
    # a is m x k, b is k x n; plain integer product with explicit dims
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(n))
        for i in range(m)
    )


@dataclass(frozen=True)
class FinAbMap:
    src: Orders
    dst: Orders
    matrix: tuple[tuple[int, ...], ...]

    def __repr__(self):
        return f"FinAbMap({self.src}->{self.dst}, {[list(r) for r in self.matrix]})"


@dataclass(frozen=True)
class SubgroupPresentation:
    """Abstract form of a subgroup S of a product of cyclic groups.

    ``orders`` is the invariant-factor decomposition of S; column i of
    ``gens`` is the ambient element generating the i-th cyclic factor.
    ``basis`` and ``u2`` let coordinates be recovered by exact solving.
    """

    ambient: Orders
    orders: Orders
    gens: tuple
    basis: tuple
    u2: tuple
    kept: tuple

    def coords_of(self, vec):
        """Coordinates of an ambient element that lies in S; None otherwise."""
        y = intmat.solve(self.basis, tuple(vec))
        if y is None:
            return None
        full = intmat.matvec(self.u2, y)
        coords = []
        for pos, i in enumerate(self.kept):
            coords.append(full[i] % self.orders[pos])
        # indices outside ``kept`` have order 1 and carry no information
        return tuple(coords)


def subgroup_from_lattice(ambient: Orders, lattice_columns) -> SubgroupPresentation:
    """Present the subgroup of prod Z/ambient generated by the given
    integer columns together with the relation lattice of the ambient."""
    m = len(ambient)
    dhat = tuple(
        tuple(ambient[i] if i == j else 0 for j in range(m)) for i in range(m)
    )
    cols = [tuple(c) for c in lattice_columns]
    w = tuple(
        tuple(c[i] for c in cols) + dhat[i] for i in range(m)
    )
    u, d, _ = intmat.smith_normal_form(w)
    diag = intmat.diagonal(d)
    if m and (len(diag) < m or any(x == 0 for x in diag[:m])):
        raise AssertionError("ambient relation lattice must have full rank")
    uinv = intmat.invert_unimodular(u)
    # basis of the generated lattice: column i is diag[i] * uinv[:, i]
    basis = tuple(
        tuple(diag[j] * uinv[i][j] for j in range(m)) for i in range(m)
    )
    # express the ambient relations in that basis: x = diag^-1 * u * dhat
    x = []
    for i in range(m):
        row = []
        for j in range(m):
            num = u[i][j] * ambient[j]
            assert num % diag[i] == 0
            row.append(num // diag[i])
        x.append(tuple(row))
    u2, dx, _ = intmat.smith_normal_form(tuple(x))
    qdiag = intmat.diagonal(dx)
    assert all(q != 0 for q in qdiag), "quotient of full-rank lattices is finite"
    u2inv = intmat.invert_unimodular(u2)
    kept = tuple(i for i in range(m) if qdiag[i] > 1)
    orders = tuple(qdiag[i] for i in kept)
    gens = tuple(
        tuple(
            sum(basis[r][t] * u2inv[t][i] for t in range(m)) % ambient[r]
            for i in kept
        )
        for r in range(m)
    )
    return SubgroupPresentation(ambient, orders, gens, basis, u2, kept)


class FinAb(BaseCategory):
    name = "finab"

    can_enumerate_homs = True
    can_finite_limits = True
    can_finite_colimits = True
    is_abelian = True
    has_mono_test = True
    has_epi_test = True

    def obj(self, orders) -> Orders:
        out = tuple(int(n) for n in orders if int(n) != 1)
        if any(n < 1 for n in out):
            raise ValueError("orders must be positive")
        return out

    def map(self, src, dst, rows) -> FinAbMap:
        src, dst = self.obj(src), self.obj(dst)
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if len(rows) != len(dst) or any(len(r) != len(src) for r in rows):
            raise ValueError("matrix shape must be len(dst) x len(src)")
        for i in range(len(dst)):
            for j in range(len(src)):
                if (rows[i][j] * src[j]) % dst[i] != 0:
                    raise ValueError(
                        f"entry ({i},{j}) does not give a well-defined map"
                    )
        return FinAbMap(src, dst, _reduce(rows, dst))

    def group_order(self, orders: Orders) -> int:
        out = 1
        for n in orders:
            out *= n
        return out

    def elements(self, orders: Orders):
        return product(*(range(n) for n in orders))

    def apply(self, f: FinAbMap, x):
        return tuple(
            sum(f.matrix[i][j] * x[j] for j in range(len(f.src))) % f.dst[i]
            for i in range(len(f.dst))
        )

    def source(self, f):
        return f.src

    def target(self, f):
        return f.dst

    def identity(self, orders):
        n = len(orders)
        return FinAbMap(
            orders, orders, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        )

    def compose(self, g, f):
        self._check_composable(g, f)
        rows = _mul(g.matrix, f.matrix, len(g.dst), len(g.src), len(f.src))
        return FinAbMap(f.src, g.dst, _reduce(rows, g.dst))

    def hom(self, x: Orders, y: Orders) -> list[FinAbMap]:
        choices = []
        for i in range(len(y)):
            for j in range(len(x)):
                step = y[i] // gcd(y[i], x[j])
                choices.append(range(0, y[i], step))
        out = []
        for flat in product(*choices):
            rows = tuple(
                tuple(flat[i * len(x) + j] for j in range(len(x)))
                for i in range(len(y))
            )
            out.append(FinAbMap(x, y, rows))
        return out

    def zero_object(self):
        return ()

    def zero_map(self, x, y):
        return FinAbMap(x, y, tuple((0,) * len(x) for _ in range(len(y))))

    def is_zero_map(self, f):
        return all(all(v == 0 for v in row) for row in f.matrix)

    def kernel_presentation(self, f: FinAbMap) -> SubgroupPresentation:
        """The kernel of f as a subgroup of its source."""
        nsrc, ndst = len(f.src), len(f.dst)
        if ndst == 0:
            cols = [
                tuple(1 if i == j else 0 for i in range(nsrc))
                for j in range(nsrc)
            ]
            return subgroup_from_lattice(f.src, cols)
        rows = tuple(
            f.matrix[i] + tuple(-f.dst[i] if i == j else 0 for j in range(ndst))
            for i in range(ndst)
        )
        basis = intmat.kernel_basis(rows)
        cols = [vec[:nsrc] for vec in basis]
        return subgroup_from_lattice(f.src, cols)

    def is_mono(self, f):
        return self.group_order(self.kernel_presentation(f).orders) == 1

    def is_epi(self, f):
        # image order = |src| / |kernel|
        ker = self.group_order(self.kernel_presentation(f).orders)
        return self.group_order(f.src) == ker * self.group_order(f.dst)

    # -- limits -------------------------------------------------------------

    def _limit_presentation(self, diagram: FiniteDiagram):
        offs, total = [], 0
        for orders in diagram.objects:
            offs.append(total)
            total += len(orders)
        ambient = tuple(n for orders in diagram.objects for n in orders)
        # one block row of constraints per arrow: m(x_i) - x_j = 0 mod target
        constraint_rows = []
        constraint_orders = []
        for i, j, m in diagram.arrows:
            for r in range(len(m.dst)):
                row = [0] * total
                for c in range(len(m.src)):
                    row[offs[i] + c] = m.matrix[r][c]
                row[offs[j] + r] -= 1
                constraint_rows.append(tuple(row))
                constraint_orders.append(m.dst[r])
        nq = len(constraint_orders)
        rows = tuple(
            constraint_rows[r]
            + tuple(-constraint_orders[r] if r == c else 0 for c in range(nq))
            for r in range(nq)
        )
        if nq:
            basis = intmat.kernel_basis(rows)
            cols = [vec[:total] for vec in basis]
        else:
            cols = [
                tuple(1 if i == j else 0 for i in range(total))
                for j in range(total)
            ]
        pres = subgroup_from_lattice(ambient, cols)
        return pres, offs

    def finite_limit(self, diagram: FiniteDiagram) -> LimitCone:
        pres, offs = self._limit_presentation(diagram)
        legs = []
        for k, orders in enumerate(diagram.objects):
            rows = tuple(
                tuple(pres.gens[offs[k] + r][i] for i in range(len(pres.orders)))
                for r in range(len(orders))
            )
            legs.append(self.map(pres.orders, orders, rows))
        return LimitCone(pres.orders, tuple(legs))

    def limit_factor(self, cone, diagram, apex, legs):
        pres, offs = self._limit_presentation(diagram)
        cols = []
        for j in range(len(apex)):
            stacked = []
            for leg in legs:
                stacked.extend(row[j] for row in leg.matrix)
            c = pres.coords_of(stacked)
            if c is None:
                raise ValueError("legs do not form a cone over the diagram")
            cols.append(c)
        rows = tuple(
            tuple(cols[j][i] for j in range(len(apex)))
            for i in range(len(pres.orders))
        )
        return self.map(apex, cone.obj, rows)

    # -- colimits -----------------------------------------------------------

    def _colimit_presentation(self, diagram: FiniteDiagram):
        offs, total = [], 0
        for orders in diagram.objects:
            offs.append(total)
            total += len(orders)
        rel_cols = []
        for k, orders in enumerate(diagram.objects):
            for r, n in enumerate(orders):
                col = [0] * total
                col[offs[k] + r] = n
                rel_cols.append(tuple(col))
        for i, j, m in diagram.arrows:
            for c in range(len(m.src)):
                col = [0] * total
                col[offs[i] + c] = -1
                for r in range(len(m.dst)):
                    col[offs[j] + r] += m.matrix[r][c]
                rel_cols.append(tuple(col))
        rel = tuple(
            tuple(col[i] for col in rel_cols) for i in range(total)
        )
        u, d, _ = intmat.smith_normal_form(rel)
        diag = intmat.diagonal(d)
        assert total == 0 or (
            len(diag) == total and all(x != 0 for x in diag[:total])
        ), "cyclic order relations keep the quotient finite"
        kept = tuple(i for i in range(total) if diag[i] > 1)
        orders = tuple(diag[i] for i in kept)
        return offs, total, u, kept, orders

    def finite_colimit(self, diagram: FiniteDiagram) -> ColimitCocone:
        offs, total, u, kept, orders = self._colimit_presentation(diagram)
        legs = []
        for k, src in enumerate(diagram.objects):
            rows = tuple(
                tuple(u[i][offs[k] + c] for c in range(len(src)))
                for i in kept
            )
            legs.append(self.map(src, orders, rows))
        return ColimitCocone(orders, tuple(legs))

    def colimit_factor(self, cocone, diagram, apex, legs):
        offs, total, u, kept, orders = self._colimit_presentation(diagram)
        uinv = intmat.invert_unimodular(u)
        # stack the legs into one map from the big direct sum, then
        # restrict to the generators of the kept factors
        big = []
        for r in range(len(apex)):
            row = [0] * total
            for k, src in enumerate(diagram.objects):
                for c in range(len(src)):
                    row[offs[k] + c] = legs[k].matrix[r][c]
            big.append(row)
        rows = tuple(
            tuple(
                sum(big[r][t] * uinv[t][i] for t in range(total)) % apex[r]
                if apex else 0
                for i in kept
            )
            for r in range(len(apex))
        )
        return self.map(cocone.obj, apex, rows)


FINAB = FinAb()
