"""Shared helpers: random elements, random Leibniz-valid derivations, and
random exact basis changes of the catalog algebras."""

from __future__ import annotations

import random

import pytest

from orelab.algebra import Algebra, Derivation, derivation_space, verify_leibniz
from orelab.linalg import rref
from orelab.rings import QQ


def random_element(A: Algebra, rng: random.Random, span: int = 3):
    return tuple(A.ring.from_int(rng.randint(-span, span)) for _ in range(A.rank))


def random_derivation(A: Algebra, rng: random.Random, span: int = 3) -> Derivation:
    """Random exact combination of a derivation-space basis; always valid."""
    basis = derivation_space(A)
    r = A.rank
    mat = [[A.ring.zero] * r for _ in range(r)]
    for B in basis:
        c = A.ring.from_int(rng.randint(-span, span))
        if A.ring.is_zero(c):
            continue
        for i in range(r):
            for j in range(r):
                mat[i][j] = A.ring.add(mat[i][j], A.ring.mul(c, B[i][j]))
    return verify_leibniz(A, tuple(tuple(row) for row in mat))


def _invert(P, ring):
    n = len(P)
    aug = [list(P[i]) + [ring.one if j == i else ring.zero for j in range(n)]
           for i in range(n)]
    red = rref(aug, ring)
    if len(red) != n or any(ring.is_zero(red[i][i]) for i in range(n)):
        return None
    return [row[n:] for row in red]


def random_conjugate(A: Algebra, rng: random.Random) -> Algebra:
    """Same algebra in a random exact basis; associativity is preserved
    and re-checked by the constructor."""
    assert A.ring == QQ
    r = A.rank
    while True:
        P = [[QQ.from_int(rng.randint(-2, 2)) for _ in range(r)] for _ in range(r)]
        for i in range(r):
            P[i][i] = QQ.add(P[i][i], QQ.one)
        Pinv = _invert(P, QQ)
        if Pinv is not None:
            break
    cols = [tuple(P[i][j] for i in range(r)) for j in range(r)]

    def to_new(vec):
        return tuple(
            sum((Pinv[i][t] * vec[t] for t in range(r)), QQ.zero) for i in range(r)
        )

    table = {}
    for i in range(r):
        for j in range(r):
            prod = to_new(A.mul(cols[i], cols[j]))
            row = {k: c for k, c in enumerate(prod) if not QQ.is_zero(c)}
            if row:
                table[(i, j)] = row
    return Algebra(QQ, r, None, table)


@pytest.fixture
def rng():
    return random.Random(20260808)
