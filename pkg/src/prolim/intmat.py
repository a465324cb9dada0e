"""Exact integer matrix routines: Smith normal form, kernels, solving.

Matrices are immutable tuples of row tuples.  Everything here is the
textbook fraction-free algorithm on desk-scale inputs; no attempt is made
at the sparse or modular tricks a large-scale implementation would need.
"""

from __future__ import annotations

IntMatrix = tuple[tuple[int, ...], ...]


def freeze(rows) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def zeros(m: int, n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(m))


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def shape(a: IntMatrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    m, k = shape(a)
    k2, n = shape(b)
    if k != k2:
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    bt = list(zip(*b)) if b else []
    return tuple(
        tuple(sum(ra[i] * cb[i] for i in range(k)) for cb in bt) for ra in a
    )


def matvec(a: IntMatrix, v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(r[i] * v[i] for i in range(len(v))) for r in a)


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a)) if a else ()


def hstack(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return b
    if not b:
        return a
    return tuple(ra + rb for ra, rb in zip(a, b))


def is_zero(a: IntMatrix) -> bool:
    return all(all(x == 0 for x in row) for row in a)


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(u, d, v)`` with ``u @ a @ v = d``.

    ``u`` and ``v`` are unimodular; ``d`` is diagonal with nonnegative
    entries satisfying the divisibility chain d[0] | d[1] | ...
    """
    m, n = shape(a)
    M = [list(row) for row in a]
    U = [list(row) for row in identity(m)]
    V = [list(row) for row in identity(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row[dst] += c * row[src]
        M[dst] = [x + c * y for x, y in zip(M[dst], M[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in M:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = M[i][j]
                if x != 0 and (best is None or abs(x) < abs(best[2])):
                    best = (i, j, x)
        return best

    t = 0
    while t < min(m, n):
        piv = find_pivot(t)
        if piv is None:
            break
        i, j, _ = piv
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            # clear column t below the pivot
            dirty = False
            for i in range(t + 1, m):
                if M[i][t] != 0:
                    q = M[i][t] // M[t][t]
                    add_row(i, t, -q)
                    if M[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            # clear row t right of the pivot
            for j in range(t + 1, n):
                if M[t][j] != 0:
                    q = M[t][j] // M[t][t]
                    add_col(j, t, -q)
                    if M[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty and all(M[i][t] == 0 for i in range(t + 1, m)) and all(
                M[t][j] == 0 for j in range(t + 1, n)
            ):
                break
        if M[t][t] < 0:
            negate_row(t)
        # enforce divisibility: pivot must divide the remaining block
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if M[i][j] % M[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        t += 1
    return freeze(U), freeze(M), freeze(V)


def diagonal(d: IntMatrix) -> tuple[int, ...]:
    m, n = shape(d)
    return tuple(d[i][i] for i in range(min(m, n)))


def rank(a: IntMatrix) -> int:
    _, d, _ = smith_normal_form(a)
    return sum(1 for x in diagonal(d) if x != 0)


def kernel_basis(a: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel {x : a @ x = 0}, as column vectors."""
    m, n = shape(a)
    if n == 0:
        return []
    _, d, v = smith_normal_form(a)
    r = sum(1 for x in diagonal(d) if x != 0)
    cols = transpose(v)
    return [cols[j] for j in range(r, n)]


def solve(a: IntMatrix, b: tuple[int, ...]):
    """One integer solution of ``a @ x = b``, or None if there is none."""
    m, n = shape(a)
    u, d, v = smith_normal_form(a)
    ub = matvec(u, b)
    diag = diagonal(d)
    y = [0] * n
    for i in range(m):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            if i < n:
                y[i] = ub[i] // di
    return matvec(v, tuple(y))


def invert_unimodular(u: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix."""
    n, n2 = shape(u)
    if n != n2:
        raise ValueError("not square")
    ui, d, v = smith_normal_form(u)
    if any(x != 1 for x in diagonal(d)):
        raise ValueError("matrix is not unimodular")
    # u = ui^-1 @ v^-1, so u^-1 = v @ ui
    return matmul(v, ui)
