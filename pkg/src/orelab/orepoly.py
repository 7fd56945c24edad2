"""Differential polynomial arithmetic over a finite-rank algebra.

Polynomials in x with algebra-element coefficients multiply through the
rule x*a = a*x + delta(a); canonical rewriting collects products of
generators and x-powers into head * delta-iterate terms, and the
nilpotency pipeline bounds powers of finite polynomial sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .algebra import Algebra, Derivation, MultilinearIdentity, b_sequence, verify_identity
from .errors import BudgetExceeded, ExponentTooLarge, IdentityFails
from .linalg import Subspace
from .words import Word, compute_bounds


class DiffPoly:
    """Polynomial sum a_n x^n + ... + a_1 x + a_0 with a_i in the algebra.

    Coefficients are stored by ascending x-degree with trailing zeros
    trimmed; the zero polynomial has no coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, A: Algebra, coeffs):
        coeffs = [A.element(c) for c in coeffs]
        while coeffs and A.is_zero_elem(coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, A: Algebra) -> "DiffPoly":
        return cls(A, [])

    @classmethod
    def constant(cls, A: Algebra, a) -> "DiffPoly":
        return cls(A, [a])

    @classmethod
    def monomial(cls, A: Algebra, a, degree: int) -> "DiffPoly":
        return cls(A, [A.zero()] * degree + [a])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, i: int):
        return self.coeffs[i] if i < len(self.coeffs) else None

    def __eq__(self, other):
        return isinstance(other, DiffPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"DiffPoly(degree={self.degree})"

    def fmt(self, A: Algebra) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if A.is_zero_elem(c):
                continue
            body = A.fmt_element(c)
            if i == 0:
                parts.append(f"({body})")
            elif i == 1:
                parts.append(f"({body})*x")
            else:
                parts.append(f"({body})*x^{i}")
        return " + ".join(parts)


def dp_add(A: Algebra, f: DiffPoly, g: DiffPoly) -> DiffPoly:
    n = max(len(f.coeffs), len(g.coeffs))
    z = A.zero()
    out = []
    for i in range(n):
        a = f.coeffs[i] if i < len(f.coeffs) else z
        b = g.coeffs[i] if i < len(g.coeffs) else z
        out.append(A.add(a, b))
    return DiffPoly(A, out)


def dp_scale_int(A: Algebra, m: int, f: DiffPoly) -> DiffPoly:
    return DiffPoly(A, [A.scale_int(m, c) for c in f.coeffs])


def commute_xd(A: Algebra, delta: Derivation, d: int, a):
    """Expansion of x^d * a as [(binomial, delta^j(a), d - j)] for j = 0..d."""
    if d < 0:
        raise ValueError("d is a natural number")
    a = A.element(a)
    out = []
    cur = a
    for j in range(d + 1):
        out.append((comb(d, j), cur, d - j))
        if j < d:
            cur = delta.apply(A.ring, cur)
    return out


def mul_x_left(A: Algebra, delta: Derivation, f: DiffPoly) -> DiffPoly:
    """Single left multiplication by x: x * (a_i x^i) = a_i x^(i+1) + delta(a_i) x^i."""
    z = A.zero()
    out = [z] * (len(f.coeffs) + 1)
    for i, c in enumerate(f.coeffs):
        out[i + 1] = A.add(out[i + 1], c)
        out[i] = A.add(out[i], delta.apply(A.ring, c))
    return DiffPoly(A, out)


def ore_multiply(A: Algebra, delta: Derivation, f: DiffPoly, g: DiffPoly) -> DiffPoly:
    """Product in A[x; delta]: x-powers commute past coefficients via the
    binomial expansion of x^d * a."""
    if f.is_zero or g.is_zero:
        return DiffPoly.zero(A)
    z = A.zero()
    out = [z] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, fa in enumerate(f.coeffs):
        if A.is_zero_elem(fa):
            continue
        for j, gb in enumerate(g.coeffs):
            if A.is_zero_elem(gb):
                continue
            # fa x^i * gb x^j = sum_t C(i,t) fa delta^t(gb) x^(i-t+j)
            cur = gb
            for t in range(i + 1):
                term = A.scale_int(comb(i, t), A.mul(fa, cur))
                out[i - t + j] = A.add(out[i - t + j], term)
                if t < i:
                    cur = delta.apply(A.ring, cur)
    return DiffPoly(A, out)


def ore_product(A: Algebra, delta: Derivation, polys) -> DiffPoly:
    it = iter(polys)
    acc = next(it)
    for p in it:
        acc = ore_multiply(A, delta, acc, p)
    return acc


@dataclass(frozen=True)
class CanonicalTerm:
    """coeff * a_head * delta^{j_1}(a_{i_1}) * ... * delta^{j_n}(a_{i_n}) * x^M."""

    coeff: int
    head: int
    indices: tuple[int, ...]
    jword: Word
    xdeg: int

    def key(self):
        return ((self.head,) + self.indices, self.jword.letters, self.xdeg)

    def fmt(self) -> str:
        idx = ",".join(str(i) for i in (self.head,) + self.indices)
        js = " ".join(str(j) for j in self.jword.letters)
        return f"{self.coeff} | {idx} | {js} | {self.xdeg}"


def rewrite_product(A: Algebra, delta: Derivation, generators, head: int,
                    indices, exponents, k: int) -> list[CanonicalTerm]:
    """Canonical terms of a_{i0} x^{p_1} a_{i_1} x^{p_2} ... a_{i_n} x^{p_{n+1}}.

    generators: the generating elements; head = i_0 and indices =
    (i_1..i_n) select the factors; exponents = (p_1..p_{n+1}), all <= k.
    The x-powers are pushed right with the binomial expansion; branches
    whose derivative iterate delta^j(a) vanishes contribute nothing and
    are dropped. Terms with equal (indices, jword, xdeg) merge with
    summed integer coefficients, zeros drop, output sorted by that key.
    """
    gens = [A.element(g) for g in generators]
    gen_indices = [int(i) for i in indices]
    exps = [int(p) for p in exponents]
    n = len(gen_indices)
    if n < 1:
        raise ValueError("need at least one factor after the head")
    if not 0 <= head < len(gens) or any(not 0 <= i < len(gens) for i in gen_indices):
        raise ValueError("head/indices out of range of the generator list")
    if len(exps) != n + 1:
        raise ValueError("need one exponent per x-block: p_1..p_{n+1}")
    if any(p < 0 for p in exps):
        raise ValueError("exponents are natural numbers")
    if any(p > k for p in exps):
        raise ExponentTooLarge(f"exponents {exps} exceed k={k}")

    # delta-iterates per factor slot, computed up to the largest possible
    # carried degree
    max_order = sum(exps)
    iterates = []
    for i in gen_indices:
        chain = [gens[i]]
        for _ in range(max_order):
            chain.append(delta.apply(A.ring, chain[-1]))
        iterates.append(chain)

    out: dict = {}
    if not A.is_zero_elem(gens[head]):
        stack = [((), 1)]
        while stack:
            jprefix, coeff = stack.pop()
            t = len(jprefix)
            carried = sum(exps[:t]) - sum(jprefix)
            if t == n:
                M = carried + exps[n]
                key = (tuple(jprefix), M)
                out[key] = out.get(key, 0) + coeff
                continue
            d = carried + exps[t]
            for j in range(d + 1):
                if A.is_zero_elem(iterates[t][j]):
                    continue
                stack.append((jprefix + (j,), coeff * comb(d, j)))

    merged: dict = {}
    for (jword, M), c in out.items():
        if c == 0:
            continue
        key = ((head,) + tuple(gen_indices), jword, M)
        merged[key] = merged.get(key, 0) + c
    return [
        CanonicalTerm(c, key[0][0], key[0][1:], Word(key[1]), key[2])
        for key, c in sorted(merged.items())
        if c != 0
    ]


def evaluate_terms(A: Algebra, delta: Derivation, generators, terms) -> DiffPoly:
    """Sum of canonical terms as a DiffPoly; generators[i] is the element
    a_i referenced by term indices."""
    acc = DiffPoly.zero(A)
    for t in terms:
        elem = A.element(generators[t.head])
        for idx, j in zip(t.indices, t.jword.letters):
            elem = A.mul(elem, delta.power_apply(A.ring, A.element(generators[idx]), j))
        acc = dp_add(A, acc, dp_scale_int(A, t.coeff, DiffPoly.monomial(A, elem, t.xdeg)))
    return acc


def direct_product(A: Algebra, delta: Derivation, generators, head: int,
                   gen_indices, exponents) -> DiffPoly:
    """a_head x^{p_1} a_{i_1} ... a_{i_n} x^{p_{n+1}} by plain Ore multiplication."""
    gens = list(generators)
    exps = list(exponents)
    factors = [DiffPoly.monomial(A, A.element(gens[head]), exps[0])]
    for idx, p in zip(gen_indices, exps[1:]):
        factors.append(DiffPoly.monomial(A, A.element(gens[idx]), p))
    return ore_product(A, delta, factors)


def _poly_vector(A: Algebra, f: DiffPoly, deg_cap: int):
    z = A.ring.zero
    vec = []
    for i in range(deg_cap + 1):
        c = f.coeffs[i] if i < len(f.coeffs) else A.zero()
        vec.extend(c)
    return vec


def set_power_dimension(A: Algebra, delta: Derivation, S, m: int,
                        dim_cap: int = 4096) -> int:
    """Dimension of the linear span of all m-fold products of S.

    Computed iteratively: span(S^m) = span(span(S^(m-1)) * S). The
    x-degree is bounded by m * max degree, so vectors live in a fixed
    graded coordinate block. dim_cap bounds the tracked dimension.
    """
    if m < 1:
        raise ValueError("power is positive")
    S = list(S)
    if not S:
        return 0
    maxdeg = max((f.degree for f in S if not f.is_zero), default=0)
    deg_cap = max(maxdeg, 0) * m
    ambient = (deg_cap + 1) * A.rank
    if ambient > dim_cap * 8:
        raise BudgetExceeded(
            f"graded coordinate space of dimension {ambient} exceeds the budget"
        )

    def span_of(polys):
        return Subspace.span(A.ring, ambient, [_poly_vector(A, f, deg_cap) for f in polys])

    def unvector(vec):
        coeffs = [tuple(vec[i * A.rank:(i + 1) * A.rank]) for i in range(deg_cap + 1)]
        return DiffPoly(A, coeffs)

    current = span_of(S)
    for _ in range(m - 1):
        if current.is_zero:
            return 0
        if current.dim > dim_cap:
            raise BudgetExceeded(f"span dimension {current.dim} exceeds cap {dim_cap}")
        products = []
        for row in current.basis:
            f = unvector(row)
            for g in S:
                products.append(ore_multiply(A, delta, f, g))
        current = span_of(products)
    return current.dim


@dataclass(frozen=True)
class NilpotencyReport:
    """Outcome of the nilpotency pipeline on a finite set S.

    minimal_N: least N with S^(N+1) = 0, when found within the cap.
    theorem_bound: guaranteed N from the word-combinatorics pipeline.
    power_dims: dim span(S^m) for m = 1.. as far as computed.
    cap_exceeded: the search stopped at the cap without reaching zero.
    """

    minimal_N: int | None
    theorem_bound: int | None
    power_dims: tuple[int, ...]
    cap_exceeded: bool = False

    def __post_init__(self):
        if self.minimal_N is not None and self.theorem_bound is not None:
            if self.minimal_N > self.theorem_bound:
                raise ValueError("verified minimal nilpotency exceeds the proven bound")


def minimal_nilpotency(A: Algebra, delta: Derivation, S, cap: int,
                       theorem_bound_value: int | None = None) -> NilpotencyReport:
    """Least N <= cap with every (N+1)-fold product of S zero."""
    dims = []
    for m in range(1, cap + 2):
        dim = set_power_dimension(A, delta, S, m)
        dims.append(dim)
        if dim == 0:
            return NilpotencyReport(m - 1, theorem_bound_value, tuple(dims))
    return NilpotencyReport(None, theorem_bound_value, tuple(dims), cap_exceeded=True)


def theorem_bound(A: Algebra, delta: Derivation, T, k: int,
                  ident: MultilinearIdentity, L: int | None = None) -> int:
    """Guaranteed nilpotency bound for sets S inside T + Tx + ... + Tx^k.

    Needs the identity to hold and every span(T_n) nilpotent; returns the
    N with S^(N+1) = 0 from the bound recursion at eps = 1.
    """
    ok, witness = verify_identity(A, ident)
    if not ok:
        raise IdentityFails(witness)
    bounds_prefix_levels = L if L is not None else 0
    b = b_sequence(A, delta, T, bounds_prefix_levels)
    return compute_bounds(ident.degree, b, k, 1).N
