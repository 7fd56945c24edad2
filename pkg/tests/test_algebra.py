"""Structure-constant algebras, derivations, identities, spans, and the
definition-file format."""

import json

import pytest

from conftest import random_derivation, random_element

from orelab.algebra import (
    Algebra,
    MultilinearIdentity,
    b_sequence,
    derivation_space,
    find_unit,
    inner_derivation,
    load_algebra,
    multiply,
    nilpotency_index,
    span_power,
    unitalize,
    verify_identity,
    verify_leibniz,
)
from orelab.catalog import (
    commutators_identity,
    formal_derivative,
    split_pair,
    square_zero,
    strictly_upper_3x3,
    truncated_polynomial,
    upper_2x2,
    vanishing_identity,
)
from orelab.errors import (
    AssociativityViolation,
    BadUnit,
    LeibnizViolation,
    MalformedInput,
    NotNilpotent,
    RankMismatch,
)
from orelab.rings import GF, QQ, ZZ


# --- construction and validation -----------------------------------------

def test_upper3_valid_and_products():
    A = strictly_upper_3x3()
    e12, e13, e23 = (A.basis_element(i) for i in range(3))
    assert A.mul(e12, e23) == e13
    assert A.is_zero_elem(A.mul(e23, e12))
    assert A.is_zero_elem(A.mul(e13, e13))


def test_square_zero_valid():
    A = square_zero(3)
    x = A.element((QQ.from_int(2), QQ.from_int(-1), QQ.from_int(5)))
    assert A.is_zero_elem(A.mul(x, x))


def test_associativity_violation_reported():
    with pytest.raises(AssociativityViolation) as exc:
        Algebra(QQ, 2, None, {(0, 0): {1: QQ.one}, (1, 0): {0: QQ.one}})
    assert any(t[:3] == (0, 0, 0) for t in exc.value.failures)


def test_bad_unit_rejected():
    with pytest.raises(BadUnit):
        Algebra(QQ, 2, None, {(0, 0): {0: QQ.one}}, unit=0)


def test_unit_accepted_and_found():
    A = truncated_polynomial(QQ, 3)
    assert A.unit == 0
    assert find_unit(A) == A.basis_element(0)
    # upper triangular 2x2 is unital without a basis unit
    U = upper_2x2()
    u = find_unit(U)
    assert u is not None
    for i in range(U.rank):
        e = U.basis_element(i)
        assert U.mul(u, e) == e and U.mul(e, u) == e
    assert find_unit(strictly_upper_3x3()) is None


def test_multiply_with_unit_and_mismatch():
    A = truncated_polynomial(QQ, 3)
    x = A.element((QQ.from_int(3), QQ.from_int(1), QQ.from_int(-2)))
    assert multiply(A, A.basis_element(0), x) == x
    with pytest.raises(RankMismatch):
        A.mul(x, (QQ.one,))


# --- derivations -----------------------------------------------------------

def test_zero_derivation_accepted():
    A = strictly_upper_3x3()
    z = tuple(tuple(QQ.zero for _ in range(3)) for _ in range(3))
    verify_leibniz(A, z)


def test_charp_derivative_accepted():
    A = truncated_polynomial(GF(3), 3)
    D = formal_derivative(A, 3)
    t, t2 = A.basis_element(1), A.basis_element(2)
    assert D.apply(A.ring, t) == A.basis_element(0)
    assert D.apply(A.ring, t2) == A.scale_int(2, t)


def test_char0_formal_derivative_rejected():
    A = truncated_polynomial(QQ, 3)
    with pytest.raises(LeibnizViolation):
        formal_derivative(A, 3)


def test_square_zero_accepts_anything():
    A = square_zero(2)
    verify_leibniz(A, ((QQ.from_int(7), QQ.from_int(-2)), (QQ.one, QQ.zero)))


def test_inner_derivation_examples():
    A = strictly_upper_3x3()
    D = inner_derivation(A, A.basis_element(0))
    assert D.apply(A.ring, A.basis_element(2)) == A.basis_element(1)
    assert A.is_zero_elem(D.apply(A.ring, A.basis_element(0)))
    assert A.is_zero_elem(D.apply(A.ring, A.basis_element(1)))
    verify_leibniz(A, D.matrix)


def test_inner_derivation_vanishes_on_commutative():
    for A in (split_pair(), truncated_polynomial(QQ, 4)):
        D = inner_derivation(A, A.element(tuple(QQ.from_int(i + 1) for i in range(A.rank))))
        assert all(
            A.is_zero_elem(D.apply(A.ring, A.basis_element(i))) for i in range(A.rank)
        )


def test_inner_derivation_kills_its_element(rng):
    for A in (upper_2x2(), strictly_upper_3x3(), truncated_polynomial(QQ, 4)):
        for _ in range(10):
            u = random_element(A, rng)
            D = inner_derivation(A, u)
            verify_leibniz(A, D.matrix)
            assert A.is_zero_elem(D.apply(A.ring, u))


def test_leibniz_holds_on_random_pairs(rng):
    A = upper_2x2()
    D = random_derivation(A, rng)
    for _ in range(1000):
        x, y = random_element(A, rng), random_element(A, rng)
        lhs = D.apply(A.ring, A.mul(x, y))
        rhs = A.add(A.mul(D.apply(A.ring, x), y), A.mul(x, D.apply(A.ring, y)))
        assert lhs == rhs


# --- identities -------------------------------------------------------------

def test_commutative_identity_on_split_pair():
    ok, witness = verify_identity(split_pair(), commutators_identity())
    assert ok and witness is None


def test_vanishing_identity_on_upper3():
    ok, _ = verify_identity(strictly_upper_3x3(), vanishing_identity(3))
    assert ok


def test_noncommutative_witness():
    ok, witness = verify_identity(upper_2x2(), commutators_identity())
    assert not ok
    assert witness == (0, 1)  # e11 * e12 = e12 but e12 * e11 = 0


def test_identity_validation():
    with pytest.raises(ValueError):
        MultilinearIdentity(2, {(1, 2): 1})  # identity permutation
    with pytest.raises(ValueError):
        MultilinearIdentity(2, {(1, 1): 1})  # not a permutation


def test_identity_holds_on_random_tuples(rng):
    # basis verification extends to arbitrary elements by multilinearity
    A = strictly_upper_3x3()
    ok, _ = verify_identity(A, vanishing_identity(3))
    assert ok
    for _ in range(1000):
        xs = [random_element(A, rng) for _ in range(3)]
        assert A.is_zero_elem(A.product(xs))
    sp = split_pair()
    ok, _ = verify_identity(sp, commutators_identity())
    assert ok
    for _ in range(1000):
        x, y = random_element(sp, rng), random_element(sp, rng)
        assert sp.mul(x, y) == sp.mul(y, x)


# --- spans, powers, nilpotency ----------------------------------------------

def test_span_power_examples():
    A = strictly_upper_3x3()
    S = A.span([A.basis_element(i) for i in range(3)])
    assert span_power(A, S, 1) == S
    P2 = span_power(A, S, 2)
    assert P2.dim == 1 and P2.contains(A.basis_element(1))
    assert span_power(A, S, 3).is_zero

    sq = square_zero(2)
    full = sq.span([sq.basis_element(0), sq.basis_element(1)])
    assert span_power(sq, full, 2).is_zero


def test_nilpotency_index_examples():
    A = strictly_upper_3x3()
    S = A.span([A.basis_element(i) for i in range(3)])
    assert nilpotency_index(A, S) == 3
    sq = square_zero(2)
    assert nilpotency_index(sq, sq.span([sq.basis_element(0), sq.basis_element(1)])) == 2
    T = truncated_polynomial(GF(3), 3)
    assert nilpotency_index(T, T.span([T.basis_element(0)])) is None


def test_nilpotency_agrees_with_naive_products(rng):
    # rank <= 4: compare against direct enumeration of m-fold products
    import itertools

    for A in (strictly_upper_3x3(), square_zero(3), truncated_polynomial(QQ, 4)):
        vectors = [random_element(A, rng, span=2) for _ in range(2)]
        S = A.span(vectors)
        idx = nilpotency_index(A, S)
        if S.is_zero:
            assert idx == 1
            continue
        for m in range(1, (idx or 6) + 1):
            prods = [
                A.product(list(tup))
                for tup in itertools.product([A.element(v) for v in S.basis], repeat=m)
            ]
            all_zero = all(A.is_zero_elem(p) for p in prods)
            if idx is None:
                assert not all_zero
            else:
                assert all_zero == (m >= idx)


def test_b_sequence_examples():
    A = strictly_upper_3x3()
    zero_rows = tuple(tuple(QQ.zero for _ in range(3)) for _ in range(3))
    D0 = verify_leibniz(A, zero_rows)
    bs = b_sequence(A, D0, [A.basis_element(0)], 2)
    assert all(b == bs.prefix[0] for b in bs.prefix)

    Din = inner_derivation(A, A.basis_element(0))
    bs2 = b_sequence(A, Din, [A.basis_element(2)], 1)
    assert bs2.prefix[0] == 2 and bs2.prefix[1] == 2
    assert bs2.extend_tail

    T3 = truncated_polynomial(GF(3), 3)
    D3 = formal_derivative(T3, 3)
    with pytest.raises(NotNilpotent) as exc:
        b_sequence(T3, D3, [T3.basis_element(1)], 1)
    assert exc.value.level == 1


def test_unitalize():
    sq = square_zero(1)
    U = unitalize(sq)
    assert U.rank == 2 and U.unit == 0
    one, z = U.basis_element(0), U.basis_element(1)
    assert U.mul(one, z) == z and U.mul(z, one) == z
    assert U.is_zero_elem(U.mul(z, z))
    # restriction to the embedded copy recovers the original products
    A = strictly_upper_3x3()
    UA = unitalize(A)
    for i in range(A.rank):
        for j in range(A.rank):
            big = UA.mul(UA.basis_element(i + 1), UA.basis_element(j + 1))
            assert big[0] == QQ.zero
            assert big[1:] == A.basis_product(i, j)


def test_derivation_space_spans_inner(rng):
    A = upper_2x2()
    basis = derivation_space(A)
    assert basis
    for B in basis:
        verify_leibniz(A, B)


# --- integer coefficient subspaces -------------------------------------------

def test_integer_saturated_spans():
    A = square_zero(3, ring=ZZ)
    S = A.span([(2, 0, 2), (0, 2, 2)])
    # saturation contains the primitive combination (1, -1, 0)
    assert S.contains((1, -1, 0))
    assert S.dim == 2
    assert not S.contains((1, 0, 0))


def test_integer_algebra_nilpotency():
    table = {(0, 2): {1: 1}}
    A = Algebra(ZZ, 3, ("e12", "e13", "e23"), table)
    S = A.span([A.basis_element(i) for i in range(3)])
    assert nilpotency_index(A, S) == 3


# --- the definition document --------------------------------------------------

GOOD_DOC = {
    "coeff_ring": "rationals",
    "rank": 3,
    "basis_names": ["e12", "e13", "e23"],
    "structure_constants": [[0, 2, 1, "1"]],
    "derivations": {
        "inner_e12": [["0", "0", "0"], ["0", "0", "1"], ["0", "0", "0"]],
    },
    "identities": {"vanish3": {"degree": 3, "terms": []}},
}


def test_load_round_trip():
    A, ders, idents = load_algebra(json.dumps(GOOD_DOC))
    assert A.rank == 3 and A.ring == QQ
    assert A.mul(A.basis_element(0), A.basis_element(2)) == A.basis_element(1)
    assert set(ders) == {"inner_e12"} and set(idents) == {"vanish3"}
    ok, _ = verify_identity(A, idents["vanish3"])
    assert ok


def test_load_rational_and_prime_values():
    doc = {
        "coeff_ring": {"prime": 5},
        "rank": 2,
        "structure_constants": [[0, 0, 1, "2/3"]],
    }
    A, _, _ = load_algebra(json.dumps(doc))
    # 2/3 mod 5 = 2 * inverse(3) = 2 * 2 = 4
    assert A.basis_product(0, 0)[1] == 4


def test_load_reports_bad_json_line():
    with pytest.raises(MalformedInput) as exc:
        load_algebra("{\n  \"coeff_ring\": rationals\n}")
    assert exc.value.line == 2


@pytest.mark.parametrize("mutate, field_part", [
    (lambda d: d.update(coeff_ring="floats"), "coeff_ring"),
    (lambda d: d.update(rank=0), "rank"),
    (lambda d: d.update(structure_constants=[[0, 9, 1, "1"]]), "structure_constants[0]"),
    (lambda d: d.update(structure_constants=[[0, 1, 1, "1.5"]]), "structure_constants[0]"),
    (lambda d: d.update(unit=7), "unit"),
    (lambda d: d.update(derivations={"bad": [["1"]]}), "derivations"),
    (lambda d: d.update(identities={"bad": {"degree": 2, "terms": [{"perm": [1, 2], "coeff": 1}]}}),
     "identities"),
])
def test_load_rejects_malformed(mutate, field_part):
    doc = json.loads(json.dumps(GOOD_DOC))
    mutate(doc)
    with pytest.raises(MalformedInput) as exc:
        load_algebra(json.dumps(doc))
    assert field_part in (exc.value.field or "")


def test_load_rejects_integer_ring_fractions():
    doc = {"coeff_ring": "integers", "rank": 1, "structure_constants": [[0, 0, 0, "1/2"]]}
    with pytest.raises(MalformedInput):
        load_algebra(json.dumps(doc))
