"""Builders for the bundled example algebras."""

from __future__ import annotations

from .algebra import Algebra, Derivation, MultilinearIdentity, verify_leibniz
from .rings import GF, QQ, CoeffRing


def strictly_upper_3x3(ring: CoeffRing = QQ) -> Algebra:
    """Strictly upper-triangular 3x3 matrices: basis e12, e13, e23 with
    e12*e23 = e13 and all other products zero."""
    table = {(0, 2): {1: ring.one}}
    return Algebra(ring, 3, ("e12", "e13", "e23"), table)


def upper_2x2(ring: CoeffRing = QQ) -> Algebra:
    """Upper-triangular 2x2 matrices: basis e11, e12, e22 (unital)."""
    one = ring.one
    table = {
        (0, 0): {0: one},
        (0, 1): {1: one},
        (1, 2): {1: one},
        (2, 2): {2: one},
    }
    return Algebra(ring, 3, ("e11", "e12", "e22"), table)


def square_zero(rank: int = 1, ring: CoeffRing = QQ) -> Algebra:
    """All products zero."""
    names = tuple(f"z{i}" for i in range(rank))
    return Algebra(ring, rank, names, {})


def truncated_polynomial(ring: CoeffRing, power: int) -> Algebra:
    """ring[t]/(t^power), basis 1, t, ..., t^(power-1) (unital)."""
    if power < 2:
        raise ValueError("power is at least 2")
    one = ring.one
    table = {}
    for i in range(power):
        for j in range(power):
            if i + j < power:
                table[(i, j)] = {i + j: one}
    names = ("1",) + tuple(f"t^{i}" if i > 1 else "t" for i in range(1, power))
    return Algebra(ring, power, names, table, unit=0)


def split_pair(ring: CoeffRing = QQ) -> Algebra:
    """ring x ring with the two diagonal idempotents (unital, semisimple)."""
    one = ring.one
    table = {(0, 0): {0: one}, (1, 1): {1: one}}
    A = Algebra(ring, 2, ("p", "q"), table)
    return A


def charp_truncated(p: int) -> tuple[Algebra, Derivation]:
    """GF(p)[T]/(T^p) with the derivation sending t to 1.

    d/dt respects the truncation exactly because p * t^(p-1) vanishes
    mod p; over characteristic zero no such derivation exists.
    """
    A = truncated_polynomial(GF(p), p)
    D = formal_derivative(A, p)
    return A, D


def formal_derivative(A: Algebra, power: int) -> Derivation:
    """d/dt on truncated_polynomial(ring, power); Leibniz-checked, so the
    ring characteristic must divide the truncation power."""
    ring = A.ring
    rows = [[ring.zero] * power for _ in range(power)]
    for j in range(1, power):
        rows[j - 1][j] = ring.from_int(j)
    return verify_leibniz(A, tuple(tuple(r) for r in rows))


def scaling_derivation(A: Algebra, power: int, factor=None) -> Derivation:
    """t^j -> j * factor * t^j on truncated_polynomial(ring, power);
    Leibniz-valid in every characteristic."""
    ring = A.ring
    c = ring.one if factor is None else factor
    rows = [[ring.zero] * power for _ in range(power)]
    for j in range(1, power):
        rows[j][j] = ring.mul(ring.from_int(j), c)
    return verify_leibniz(A, tuple(tuple(r) for r in rows))


def commutators_identity() -> MultilinearIdentity:
    """X1 X2 = X2 X1."""
    return MultilinearIdentity(2, {(2, 1): 1})


def vanishing_identity(degree: int) -> MultilinearIdentity:
    """X1 ... Xd = 0 (empty right-hand side)."""
    return MultilinearIdentity(degree, {})
