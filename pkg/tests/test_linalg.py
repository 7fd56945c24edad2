"""Exact linear algebra: echelon forms, integer kernels, saturation."""

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from orelab.linalg import (
    Subspace,
    hermite_form,
    integer_kernel,
    nullspace,
    rref,
    saturate,
    solve_linear,
)
from orelab.rings import GF, QQ, ZZ

small_int_rows = st.lists(
    st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4
)


def test_rref_canonical():
    rows = [[Fraction(2), Fraction(4)], [Fraction(1), Fraction(2)]]
    assert rref(rows, QQ) == [(Fraction(1), Fraction(2))]
    rows = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert rref(rows, QQ) == [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]


def test_rref_prime_field():
    F = GF(5)
    red = rref([[2, 4], [1, 3]], F)
    assert red == [(1, 0), (0, 1)]


@given(small_int_rows)
def test_nullspace_annihilates(rows):
    qrows = [[Fraction(a) for a in r] for r in rows]
    for v in nullspace(qrows, QQ):
        for r in qrows:
            assert sum(a * b for a, b in zip(r, v)) == 0


def test_solve_linear():
    rows = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    x = solve_linear(rows, [Fraction(4), Fraction(0)], QQ)
    assert x == (Fraction(2), Fraction(2))
    assert solve_linear([[Fraction(0), Fraction(0)]], [Fraction(1)], QQ) is None


def test_hermite_form_canonical():
    assert hermite_form([[2, 4], [4, 8]]) == [(2, 4)]
    assert hermite_form([[0, 1], [1, 0]]) == [(1, 0), (0, 1)]
    # entries above the pivot reduce into [0, pivot)
    h = hermite_form([[1, 5], [0, 3]])
    assert h == [(1, 2), (0, 3)]


@given(small_int_rows)
def test_integer_kernel_annihilates_and_saturated(rows):
    ker = integer_kernel(rows, 3)
    for v in ker:
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) == 0
    # saturation: halving any even kernel vector stays in the kernel lattice
    span = Subspace(ZZ, 3, hermite_form(ker)) if ker else None
    if span is not None:
        for v in ker:
            if all(a % 2 == 0 for a in v):
                assert span.contains(tuple(a // 2 for a in v))


def test_saturate_example():
    # lattice {(2,0,1),(0,2,1)} misses (1,-1,0); its saturation has it
    sat = saturate([[2, 0, 1], [0, 2, 1]], 3)
    S = Subspace(ZZ, 3, sat)
    assert S.contains((1, -1, 0))
    assert S.contains((2, 0, 1))
    assert S.dim == 2
    assert not S.contains((1, 0, 0))


@given(small_int_rows)
def test_saturate_idempotent_and_contains_rows(rows):
    sat = saturate(rows, 3)
    S = Subspace(ZZ, 3, sat)
    for r in rows:
        assert S.contains(tuple(r))
    assert saturate([list(r) for r in sat], 3) == sat


def test_subspace_operations():
    a = Subspace.span(QQ, 3, [(QQ.one, QQ.zero, QQ.zero)])
    b = Subspace.span(QQ, 3, [(QQ.zero, QQ.one, QQ.zero)])
    s = a.plus(b)
    assert s.dim == 2
    assert s.contains((QQ.one, QQ.from_int(5), QQ.zero))
    assert not s.contains((QQ.zero, QQ.zero, QQ.one))
    assert Subspace.zero(QQ, 3).is_zero
