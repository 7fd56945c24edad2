"""Finite-rank non-unital associative algebras over exact coefficient
rings: structure constants, derivations, multilinear identities, spans,
and nilpotency computations.

Elements are plain coordinate tuples over the algebra's coefficient
ring; the Algebra object carries the multiplication.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (
    AssociativityViolation,
    BadUnit,
    LeibnizViolation,
    MalformedInput,
    NotNilpotent,
    RankMismatch,
)
from .linalg import Subspace
from .rings import GF, QQ, ZZ, CoeffRing
from .words import BoundSequence


class Algebra:
    """Associative algebra given by sparse structure constants c_{ij}^k.

    e_i * e_j = sum_k c_{ij}^k e_k. Not necessarily unital; `unit` is the
    index of a two-sided identity when one is declared.
    """

    def __init__(self, ring: CoeffRing, rank: int, basis_names, table,
                 unit: int | None = None, check: bool = True):
        if rank < 1:
            raise ValueError("rank is positive")
        names = tuple(basis_names) if basis_names else tuple(f"e{i}" for i in range(rank))
        if len(names) != rank:
            raise ValueError("basis_names length must equal rank")
        self.ring = ring
        self.rank = rank
        self.basis_names = names
        # table: {(i, j): {k: coeff}} with zero coefficients dropped
        self.table = {
            ij: {k: c for k, c in row.items() if not ring.is_zero(c)}
            for ij, row in table.items()
        }
        self.table = {ij: row for ij, row in self.table.items() if row}
        self.unit = unit
        if check:
            self._check_associativity()
            if unit is not None:
                self._check_unit()

    # --- element helpers ---

    def zero(self):
        return (self.ring.zero,) * self.rank

    def basis_element(self, i: int):
        z = self.ring.zero
        return tuple(self.ring.one if t == i else z for t in range(self.rank))

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise RankMismatch(f"expected {self.rank} coordinates, got {len(coords)}")
        return coords

    def add(self, x, y):
        return tuple(self.ring.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(self.ring.sub(a, b) for a, b in zip(x, y))

    def scale(self, c, x):
        return tuple(self.ring.mul(c, a) for a in x)

    def scale_int(self, m: int, x):
        return self.scale(self.ring.from_int(m), x)

    def is_zero_elem(self, x) -> bool:
        return all(self.ring.is_zero(a) for a in x)

    def mul(self, x, y):
        """Bilinear product via the structure constants."""
        if len(x) != self.rank or len(y) != self.rank:
            raise RankMismatch("element length does not match algebra rank")
        ring = self.ring
        out = [ring.zero] * self.rank
        for (i, j), row in self.table.items():
            xi = x[i]
            if ring.is_zero(xi):
                continue
            yj = y[j]
            if ring.is_zero(yj):
                continue
            f = ring.mul(xi, yj)
            for k, c in row.items():
                out[k] = ring.add(out[k], ring.mul(f, c))
        return tuple(out)

    def product(self, elems):
        it = iter(elems)
        acc = next(it)
        for e in it:
            acc = self.mul(acc, e)
        return acc

    def basis_product(self, i: int, j: int):
        row = self.table.get((i, j), {})
        z = self.ring.zero
        return tuple(row.get(k, z) for k in range(self.rank))

    def fmt_element(self, x) -> str:
        ring = self.ring
        parts = [
            f"{ring.fmt(a)}*{self.basis_names[i]}"
            for i, a in enumerate(x)
            if not ring.is_zero(a)
        ]
        return " + ".join(parts) if parts else "0"

    # --- validation ---

    def _check_associativity(self):
        failures = []
        for i in range(self.rank):
            for j in range(self.rank):
                ij = self.basis_product(i, j)
                for k in range(self.rank):
                    left = self.mul(ij, self.basis_element(k))
                    right = self.mul(self.basis_element(i), self.basis_product(j, k))
                    if left != right:
                        failures.append((i, j, k, left, right))
        if failures:
            raise AssociativityViolation(failures)

    def _check_unit(self):
        u = self.basis_element(self.unit)
        for i in range(self.rank):
            e = self.basis_element(i)
            if self.mul(u, e) != e or self.mul(e, u) != e:
                raise BadUnit(
                    f"basis index {self.unit} is not a two-sided identity "
                    f"(fails on {self.basis_names[i]})"
                )

    def span(self, vectors) -> Subspace:
        return Subspace.span(self.ring, self.rank, vectors)

    def __repr__(self):
        return f"Algebra(rank={self.rank}, ring={self.ring})"


@dataclass(frozen=True)
class Derivation:
    """Leibniz-verified linear map, stored as a row-major matrix applied
    to coordinate columns."""

    matrix: tuple[tuple[object, ...], ...]

    def apply(self, ring: CoeffRing, x):
        return tuple(
            _dot(ring, row, x) for row in self.matrix
        )

    def power_apply(self, ring: CoeffRing, x, order: int):
        for _ in range(order):
            x = self.apply(ring, x)
        return x

    @property
    def is_zero(self) -> bool:
        return all(all(c == 0 for c in row) for row in self.matrix)


def _dot(ring: CoeffRing, row, x):
    acc = ring.zero
    for c, a in zip(row, x):
        if not ring.is_zero(c) and not ring.is_zero(a):
            acc = ring.add(acc, ring.mul(c, a))
    return acc


@dataclass(frozen=True)
class MultilinearIdentity:
    """X_1...X_d = sum over non-identity permutations of c_sigma
    X_{sigma(1)}...X_{sigma(d)}, with integer c_sigma.

    Permutations are stored as tuples (sigma(1), ..., sigma(d)) on the
    letters 1..d.
    """

    degree: int
    coefficients: tuple[tuple[tuple[int, ...], int], ...]

    def __init__(self, degree: int, coefficients):
        if degree < 1:
            raise ValueError("identity degree is positive")
        ident = tuple(range(1, degree + 1))
        items = []
        for perm, c in (coefficients.items() if isinstance(coefficients, dict) else coefficients):
            perm = tuple(perm)
            if sorted(perm) != list(ident):
                raise ValueError(f"{perm} is not a permutation of 1..{degree}")
            if perm == ident:
                raise ValueError("identity permutation is not allowed on the right side")
            items.append((perm, int(c)))
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coefficients", tuple(sorted(items)))


def multiply(A: Algebra, x, y):
    return A.mul(x, y)


def find_unit(A: Algebra):
    """Coordinates of the two-sided identity element, or None.

    The declared basis unit is used when present; otherwise the linear
    system e*e_j = e_j*e = e_j is solved over the coefficient field.
    """
    if A.unit is not None:
        return A.basis_element(A.unit)
    if not A.ring.is_field:
        raise ValueError("unit search implemented over fields only")
    from .linalg import solve_linear

    rows = []
    rhs = []
    one, zero = A.ring.one, A.ring.zero
    for j in range(A.rank):
        for k in range(A.rank):
            rows.append(tuple(A.basis_product(i, j)[k] for i in range(A.rank)))
            rhs.append(one if j == k else zero)
            rows.append(tuple(A.basis_product(j, i)[k] for i in range(A.rank)))
            rhs.append(one if j == k else zero)
    return solve_linear(rows, rhs, A.ring)


def verify_leibniz(A: Algebra, matrix) -> Derivation:
    """Accept a matrix as a derivation iff Leibniz holds on all basis
    pairs (sufficient by bilinearity). Raises LeibnizViolation otherwise."""
    rows = tuple(tuple(row) for row in matrix)
    if len(rows) != A.rank or any(len(r) != A.rank for r in rows):
        raise RankMismatch(f"derivation matrix must be {A.rank}x{A.rank}")
    D = Derivation(rows)
    ring = A.ring
    for i in range(A.rank):
        for j in range(A.rank):
            lhs = D.apply(ring, A.basis_product(i, j))
            ei, ej = A.basis_element(i), A.basis_element(j)
            rhs = A.add(A.mul(D.apply(ring, ei), ej), A.mul(ei, D.apply(ring, ej)))
            if lhs != rhs:
                raise LeibnizViolation(i, j, lhs, rhs)
    return D


def derivation_space(A: Algebra) -> list[tuple[tuple, ...]]:
    """Basis of the space of derivation matrices (fields only).

    Solves the Leibniz constraints D(e_i e_j) = D(e_i) e_j + e_i D(e_j)
    as a linear system in the r^2 matrix entries; every returned matrix
    passes verify_leibniz, and every derivation is a combination of them.
    """
    if not A.ring.is_field:
        raise ValueError("derivation space computed over fields only")
    from .linalg import nullspace

    r = A.rank
    ring = A.ring
    rows = []
    for i in range(r):
        for j in range(r):
            m = A.basis_product(i, j)
            for a in range(r):
                coeff = [ring.zero] * (r * r)
                for b in range(r):
                    if not ring.is_zero(m[b]):
                        coeff[a * r + b] = ring.add(coeff[a * r + b], m[b])
                for b in range(r):
                    left = A.basis_product(b, j)[a]
                    if not ring.is_zero(left):
                        coeff[b * r + i] = ring.sub(coeff[b * r + i], left)
                    right = A.basis_product(i, b)[a]
                    if not ring.is_zero(right):
                        coeff[b * r + j] = ring.sub(coeff[b * r + j], right)
                if any(not ring.is_zero(c) for c in coeff):
                    rows.append(tuple(coeff))
    if not rows:
        # no constraints: every matrix is a derivation (zero multiplication)
        basis = []
        for t in range(r * r):
            flat = [ring.zero] * (r * r)
            flat[t] = ring.one
            basis.append(tuple(flat))
    else:
        basis = nullspace(rows, ring)
    return [
        tuple(tuple(flat[a * r + b] for b in range(r)) for a in range(r))
        for flat in basis
    ]


def inner_derivation(A: Algebra, u) -> Derivation:
    """The commutator map x -> u*x - x*u."""
    cols = []
    for j in range(A.rank):
        e = A.basis_element(j)
        cols.append(A.sub(A.mul(u, e), A.mul(e, u)))
    rows = tuple(tuple(cols[j][i] for j in range(A.rank)) for i in range(A.rank))
    return Derivation(rows)


def verify_identity(A: Algebra, ident: MultilinearIdentity):
    """Check the identity on all rank^degree basis tuples (sufficient by
    multilinearity). Returns (True, None) or (False, witness_tuple)."""
    d = ident.degree
    idx = [0] * d
    while True:
        elems = [A.basis_element(i) for i in idx]
        lhs = A.product(elems)
        rhs = A.zero()
        for perm, c in ident.coefficients:
            term = A.product([elems[p - 1] for p in perm])
            rhs = A.add(rhs, A.scale_int(c, term))
        if lhs != rhs:
            return False, tuple(idx)
        t = d - 1
        while t >= 0 and idx[t] == A.rank - 1:
            idx[t] = 0
            t -= 1
        if t < 0:
            return True, None
        idx[t] += 1


def span_power(A: Algebra, S: Subspace, m: int) -> Subspace:
    """Canonical basis of the span of all m-fold products of S."""
    if m < 1:
        raise ValueError("power is positive")
    current = S
    for _ in range(m - 1):
        if current.is_zero:
            return current
        products = [
            A.mul(x, y) for x in current.basis for y in S.basis
        ]
        current = A.span(products)
    return current


def generated_subalgebra(A: Algebra, S: Subspace) -> Subspace:
    """Span of all products of one or more S-elements."""
    total = S
    power = S
    while True:
        power = A.span([A.mul(x, y) for x in power.basis for y in S.basis])
        new_total = total.plus(power)
        if new_total == total:
            return total
        total = new_total


def nilpotency_index(A: Algebra, S: Subspace) -> int | None:
    """Least b with S^b = 0, or None when S is not nilpotent.

    A nilpotent subalgebra of dimension q has index at most q + 1, so the
    search stops at dim(generated subalgebra) + 1.
    """
    if S.is_zero:
        return 1
    limit = generated_subalgebra(A, S).dim + 1
    current = S
    for b in range(2, limit + 1):
        current = A.span([A.mul(x, y) for x in current.basis for y in S.basis])
        if current.is_zero:
            return b
    return None


def b_sequence(A: Algebra, delta: Derivation, T, L: int) -> BoundSequence:
    """Nilpotency indices of the spans of T, T u delta(T), ...

    Entry n is the index of span(T_n) where T_n collects derivative
    iterates up to order n. The prefix always extends to the level where
    the span stabilizes (it can only grow rank-many times), so the
    constant-tail rule of the result is honest.
    """
    elems = [A.element(t) for t in T]
    span_now = A.span(elems)
    prefix = []
    level = 0
    iterates = list(elems)
    while True:
        b = nilpotency_index(A, span_now)
        if b is None:
            raise NotNilpotent(level)
        prefix.append(b)
        iterates = [delta.apply(A.ring, x) for x in iterates]
        span_next = span_now.plus(A.span(iterates))
        if span_next == span_now and level >= L:
            break
        span_now = span_next
        level += 1
    return BoundSequence(tuple(prefix), extend_tail=True)


def unitalize(A: Algebra) -> Algebra:
    """Adjoin a two-sided identity at basis index 0; A embeds as the
    span of the remaining coordinates."""
    r = A.rank
    table = {}
    table[(0, 0)] = {0: A.ring.one}
    for i in range(r):
        table[(0, i + 1)] = {i + 1: A.ring.one}
        table[(i + 1, 0)] = {i + 1: A.ring.one}
    for (i, j), row in A.table.items():
        table[(i + 1, j + 1)] = {k + 1: c for k, c in row.items()}
    names = ("1",) + tuple(A.basis_names)
    return Algebra(A.ring, r + 1, names, table, unit=0, check=False)


def embed_unital(A: Algebra, x):
    """Coordinates of an A-element inside unitalize(A)."""
    return (A.ring.zero,) + tuple(x)


# --- the algebra-definition document ------------------------------------


def _parse_ring(spec, field: str) -> CoeffRing:
    if spec == "integers":
        return ZZ
    if spec == "rationals":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"prime"}:
        p = spec["prime"]
        if not isinstance(p, int):
            raise MalformedInput("prime must be an integer", field=field)
        try:
            return GF(p)
        except ValueError as exc:
            raise MalformedInput(str(exc), field=field) from None
    raise MalformedInput(
        "coeff_ring must be \"integers\", \"rationals\", or {\"prime\": p}",
        field=field,
    )


def parse_algebra_document(doc: dict):
    """Validated (Algebra, derivations, identities) from a parsed document.

    See load_algebra for the format.
    """
    if not isinstance(doc, dict):
        raise MalformedInput("document root must be an object")
    ring = _parse_ring(doc.get("coeff_ring"), "coeff_ring")
    rank = doc.get("rank")
    if not isinstance(rank, int) or rank < 1:
        raise MalformedInput("rank must be a positive integer", field="rank")
    names = doc.get("basis_names")
    if names is not None:
        if not isinstance(names, list) or len(names) != rank or not all(
            isinstance(s, str) for s in names
        ):
            raise MalformedInput(
                f"basis_names must be {rank} strings", field="basis_names"
            )
    table: dict = {}
    sc = doc.get("structure_constants", [])
    if not isinstance(sc, list):
        raise MalformedInput("structure_constants must be a list", field="structure_constants")
    for idx, rec in enumerate(sc):
        field = f"structure_constants[{idx}]"
        if not isinstance(rec, list) or len(rec) != 4:
            raise MalformedInput("expected [i, j, k, value]", field=field)
        i, j, k, value = rec
        for name, v in (("i", i), ("j", j), ("k", k)):
            if not isinstance(v, int) or not 0 <= v < rank:
                raise MalformedInput(
                    f"index {name}={v!r} out of range 0..{rank - 1}", field=field
                )
        c = ring.parse(value, field=field)
        row = table.setdefault((i, j), {})
        row[k] = ring.add(row.get(k, ring.zero), c)
    unit = doc.get("unit")
    if unit is not None and (not isinstance(unit, int) or not 0 <= unit < rank):
        raise MalformedInput("unit must be a basis index", field="unit")
    A = Algebra(ring, rank, names, table, unit=unit)

    derivations = {}
    for name, mat in (doc.get("derivations") or {}).items():
        field = f"derivations[{name!r}]"
        if (
            not isinstance(mat, list)
            or len(mat) != rank
            or any(not isinstance(row, list) or len(row) != rank for row in mat)
        ):
            raise MalformedInput(f"expected a {rank}x{rank} matrix", field=field)
        rows = tuple(
            tuple(ring.parse(v, field=f"{field}[{r}][{c}]") for c, v in enumerate(row))
            for r, row in enumerate(mat)
        )
        derivations[name] = verify_leibniz(A, rows)

    identities = {}
    for name, spec in (doc.get("identities") or {}).items():
        field = f"identities[{name!r}]"
        if not isinstance(spec, dict) or "degree" not in spec:
            raise MalformedInput("expected {degree, terms}", field=field)
        degree = spec["degree"]
        terms = spec.get("terms", [])
        if not isinstance(degree, int) or degree < 1 or not isinstance(terms, list):
            raise MalformedInput("expected {degree, terms}", field=field)
        coeffs = []
        for t_idx, term in enumerate(terms):
            tf = f"{field}.terms[{t_idx}]"
            if not isinstance(term, dict) or set(term) != {"perm", "coeff"}:
                raise MalformedInput("expected {perm, coeff}", field=tf)
            if not isinstance(term["coeff"], int):
                raise MalformedInput("coeff must be an integer", field=tf)
            coeffs.append((tuple(term["perm"]), term["coeff"]))
        try:
            identities[name] = MultilinearIdentity(degree, coeffs)
        except ValueError as exc:
            raise MalformedInput(str(exc), field=field) from None

    return A, derivations, identities


def load_algebra(path_or_text):
    """Load an algebra-definition document.

    The document is JSON with fields: coeff_ring ("integers" | "rationals"
    | {"prime": p}), rank, optional basis_names, structure_constants as
    records [i, j, k, value] with value a decimal-integer or "a/b" string
    (0-based indices), optional unit index, optional named derivations
    (row-major rank x rank matrices of value strings), optional named
    identities ({degree, terms: [{perm, coeff}]}). Values are exact.

    Returns (Algebra, {name: Derivation}, {name: MultilinearIdentity}).
    """
    text = path_or_text
    if hasattr(path_or_text, "read"):
        text = path_or_text.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    return parse_algebra_document(doc)
