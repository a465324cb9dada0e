"""Smith normal form and integer linear algebra, cross-checked against sympy."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prolim import intmat
from prolim.intmat import (
    freeze,
    identity,
    invert_unimodular,
    kernel_basis,
    matmul,
    matvec,
    rank,
    smith_normal_form,
    solve,
)

small_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
).map(freeze)


def is_unimodular(u):
    n, n2 = intmat.shape(u)
    assert n == n2
    _, d, _ = smith_normal_form(u)
    return all(x == 1 for x in intmat.diagonal(d))


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_decomposition(a):
    u, d, v = smith_normal_form(a)
    assert matmul(matmul(u, a), v) == d
    assert is_unimodular(u)
    assert is_unimodular(v)
    diag = intmat.diagonal(d)
    m, n = intmat.shape(d)
    for i in range(m):
        for j in range(n):
            if i != j:
                assert d[i][j] == 0
    nz = [x for x in diag if x != 0]
    assert all(x > 0 for x in nz)
    for x, y in zip(nz, nz[1:]):
        assert y % x == 0
    # zero diagonal entries come after the nonzero ones
    assert list(diag) == nz + [0] * (len(diag) - len(nz))


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_snf_matches_sympy_invariants(a):
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    _, d, _ = smith_normal_form(a)
    ours = [abs(x) for x in intmat.diagonal(d) if x != 0]
    theirs_m = sympy_snf(sympy.Matrix(a))
    theirs = [
        abs(theirs_m[i, i])
        for i in range(min(theirs_m.rows, theirs_m.cols))
        if theirs_m[i, i] != 0
    ]
    assert ours == theirs


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_kernel_basis(a):
    m, n = intmat.shape(a)
    basis = kernel_basis(a)
    for vec in basis:
        assert matvec(a, vec) == (0,) * m
    assert len(basis) == n - rank(a)


def test_solve_roundtrip():
    rng = random.Random(7)
    for _ in range(80):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        a = freeze([[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)])
        x = tuple(rng.randint(-4, 4) for _ in range(n))
        b = matvec(a, x)
        got = solve(a, b)
        assert got is not None
        assert matvec(a, got) == b


def test_solve_detects_unsolvable():
    a = freeze([[2]])
    assert solve(a, (1,)) is None
    assert solve(a, (4,)) == (2,)


def test_invert_unimodular():
    u = freeze([[1, 2], [0, 1]])
    ui = invert_unimodular(u)
    assert matmul(u, ui) == identity(2)
    assert matmul(ui, u) == identity(2)
    with pytest.raises(ValueError):
        invert_unimodular(freeze([[2, 0], [0, 1]]))
