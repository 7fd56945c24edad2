"""Combinatorics on words: weights, validity, boundedness, decreasing
factorizations, and the constructive bound recursion with its witness
builder.

Letters are natural numbers; the order on words is prefix-lexicographic
(words where one is a strict prefix of the other are incomparable). All
arithmetic is exact: integers and Fractions only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import isqrt

from . import _kernels as kernels
from .errors import (
    BudgetExceeded,
    ConstructionFailed,
    FactorialCapExceeded,
    InsufficientBoundData,
    PreconditionViolated,
)

DEFAULT_FACTORIAL_CAP = 8
DEFAULT_ORACLE_BUDGET = 4_000_000


class Ordering(enum.Enum):
    EQUAL = "equal"
    LESS = "less"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


_CODE_TO_ORDERING = {
    0: Ordering.EQUAL,
    -1: Ordering.LESS,
    1: Ordering.GREATER,
    2: Ordering.INCOMPARABLE,
}


@dataclass(frozen=True)
class Word:
    """Nonempty finite sequence of natural-number letters."""

    letters: tuple[int, ...]

    def __init__(self, letters):
        letters = tuple(int(a) for a in letters)
        if not letters:
            raise ValueError("words are nonempty")
        if any(a < 0 for a in letters):
            raise ValueError("letters are natural numbers")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __repr__(self):
        return f"Word({','.join(map(str, self.letters))})"

    def segment(self, lo: int, hi: int) -> tuple[int, ...]:
        return self.letters[lo:hi]


def as_word(u) -> Word:
    return u if isinstance(u, Word) else Word(u)


@dataclass(frozen=True)
class BoundSequence:
    """Finite prefix b_0..b_L of positive integers, optionally extended by
    the constant-tail rule b_m = b_L for m > L."""

    prefix: tuple[int, ...]
    extend_tail: bool = True

    def __init__(self, prefix, extend_tail: bool = True):
        prefix = tuple(int(b) for b in prefix)
        if not prefix:
            raise ValueError("bound sequence prefix is nonempty")
        if any(b < 1 for b in prefix):
            raise ValueError("bound sequence entries are >= 1")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "extend_tail", bool(extend_tail))

    def determines(self, m: int) -> bool:
        return m < len(self.prefix) or self.extend_tail

    def value(self, m: int) -> int:
        if m < 0:
            raise ValueError("bound index is a natural number")
        if m < len(self.prefix):
            return self.prefix[m]
        if self.extend_tail:
            return self.prefix[-1]
        raise InsufficientBoundData(m, len(self.prefix))


@dataclass(frozen=True)
class Factorization:
    """Split u = v w_1 ... w_d x recorded as d+1 ascending cut indices.

    cuts[0] ends the prefix v; block t is [cuts[t-1], cuts[t]); the suffix
    x starts at cuts[-1]. Blocks are nonempty and strictly decreasing in
    the prefix-lexicographic order.
    """

    word: Word
    cuts: tuple[int, ...]

    def __init__(self, word: Word, cuts):
        word = as_word(word)
        cuts = tuple(int(c) for c in cuts)
        n = len(word)
        if not cuts:
            raise ValueError("cuts carry at least the prefix/suffix split")
        if not (0 <= cuts[0] and cuts[-1] <= n):
            raise ValueError("cuts out of range")
        if any(a >= b for a, b in zip(cuts, cuts[1:])):
            raise ValueError("blocks are nonempty, cuts strictly increase")
        for t in range(1, len(cuts) - 1):
            code = kernels.compare_ranges(
                word.letters, cuts[t - 1], cuts[t], cuts[t], cuts[t + 1]
            )
            if code != 1:
                raise ValueError(
                    f"blocks {t} and {t + 1} are not strictly decreasing"
                )
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "cuts", cuts)

    @property
    def block_count(self) -> int:
        return len(self.cuts) - 1

    @property
    def prefix(self) -> tuple[int, ...]:
        return self.word.segment(0, self.cuts[0])

    @property
    def blocks(self) -> list[tuple[int, ...]]:
        return [
            self.word.segment(a, b) for a, b in zip(self.cuts, self.cuts[1:])
        ]

    @property
    def suffix(self) -> tuple[int, ...]:
        return self.word.segment(self.cuts[-1], len(self.word))

    def reconstructs(self) -> bool:
        parts = [self.prefix, *self.blocks, self.suffix]
        flat = tuple(a for part in parts for a in part)
        return flat == self.word.letters

    def blocks_decreasing(self) -> bool:
        letters = self.word.letters
        c = self.cuts
        for t in range(1, len(c) - 1):
            code = kernels.compare_ranges(letters, c[t - 1], c[t], c[t], c[t + 1])
            if code != 1:  # need strictly greater
                return False
        return True

    def is_valid(self) -> bool:
        return self.reconstructs() and self.blocks_decreasing()

    def satisfies_window(self, eps: Fraction, first_letter_bound: int | None) -> bool:
        """Blocks lie within the final floor(eps*n) letters; every block's
        first letter is below the bound (when one is given)."""
        n = len(self.word)
        window_start = n - int(Fraction(eps) * n)
        if self.block_count == 0:
            return True
        if self.cuts[0] < window_start:
            return False
        if first_letter_bound is not None:
            for t in range(self.block_count):
                if self.word[self.cuts[t]] >= first_letter_bound:
                    return False
        return True


@dataclass(frozen=True)
class BoundsLevel:
    """Constants chosen at one recursion depth."""

    M1: int
    N1: int
    M2: int
    N2: int


@dataclass(frozen=True)
class BoundsResult:
    M: int
    N: int
    trace: tuple[BoundsLevel, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.M < 1 or self.N < 1:
            raise ValueError("bounds are positive")
        for lev in self.trace:
            if not (lev.M2 > lev.M1 and lev.N2 >= lev.N1):
                raise ValueError("level constants violate M2 > M1, N2 >= N1")


# --- basic operations -------------------------------------------------


def compare(u, v) -> Ordering:
    u, v = as_word(u), as_word(v)
    return _CODE_TO_ORDERING[kernels.compare(u.letters, v.letters)]


def weight(u) -> int:
    return kernels.weight(as_word(u).letters)


def weight_bruteforce(u, cap: int = DEFAULT_FACTORIAL_CAP) -> int:
    """Reference oracle: exact minimum over all n! permutations."""
    u = as_word(u)
    n = len(u)
    if n > cap:
        raise FactorialCapExceeded(
            f"word length {n} exceeds the factorial cap {cap}"
        )
    best = None
    for perm in permutations(u.letters):
        total = sum((n - i) * a for i, a in enumerate(perm))
        if best is None or total < best:
            best = total
    return best


def is_k_valid(u, k: int) -> bool:
    if k < 1:
        raise ValueError("k is a positive integer")
    return kernels.k_valid(as_word(u).letters, k)


def is_b_bounded(u, b: BoundSequence) -> bool:
    u = as_word(u)
    code = kernels.b_bounded(u.letters, b.prefix, b.extend_tail)
    if code == -1:
        raise InsufficientBoundData(max(u.letters), len(b.prefix))
    return bool(code)


# --- decreasing factorizations ----------------------------------------


def _search_decreasing(word: Word, d: int, window_start: int,
                       letter_bound: int | None) -> Factorization | None:
    """Lex-greatest cut tuple among valid d-block factorizations.

    Cuts are pushed as far right as possible (first cut maximal, then the
    next, and so on), which keeps results reproducible. Memoized on
    (previous block, remaining depth).
    """
    n = len(word)
    if d == 0:
        return Factorization(word, (n,))
    if n - window_start < d:
        return None
    letters = word.letters

    @lru_cache(maxsize=None)
    def best_tail(plo: int, phi: int, rem: int):
        # lex-greatest tuple of cut indices finishing `rem` more blocks,
        # the next starting at phi and required to sit strictly below
        # letters[plo:phi]; None when impossible
        if rem == 0:
            return ()
        if n - phi < rem:
            return None
        if letter_bound is not None and letters[phi] >= letter_bound:
            return None
        for end in range(n - (rem - 1), phi, -1):
            if kernels.compare_ranges(letters, phi, end, plo, phi) == -1:
                tail = best_tail(phi, end, rem - 1)
                if tail is not None:
                    return (end,) + tail
        return None

    try:
        for c0 in range(n - d, window_start - 1, -1):
            if letter_bound is not None and letters[c0] >= letter_bound:
                continue
            for c1 in range(n - (d - 1), c0, -1):
                tail = best_tail(c0, c1, d - 1)
                if tail is not None:
                    return Factorization(word, (c0, c1) + tail)
        return None
    finally:
        best_tail.cache_clear()


def find_d_decreasing(u, d: int) -> Factorization | None:
    """Factorization u = v w_1...w_d x with strictly decreasing blocks, or
    None. d = 0 always succeeds with an empty block list."""
    if d < 0:
        raise ValueError("d is a natural number")
    return _search_decreasing(as_word(u), d, 0, None)


def find_d_decreasing_constrained(u, d: int, eps, M: int) -> Factorization | None:
    """As find_d_decreasing, but blocks lie in the final floor(eps*n)
    letters and every block's first letter is below M."""
    u = as_word(u)
    eps = Fraction(eps)
    if not (0 < eps <= 1):
        raise ValueError("eps lies in (0, 1]")
    n = len(u)
    window_start = n - int(eps * n)
    return _search_decreasing(u, d, window_start, M)


def has_d_decreasing(u, d: int) -> bool:
    return find_d_decreasing(u, d) is not None


# --- the bound recursion ----------------------------------------------


def _binom2(x: Fraction) -> Fraction:
    """Generalized C(x, 2) = x(x-1)/2 for rational x."""
    return x * (x - 1) / 2


def _tail_positive_from(qa: int, qb: int, qc: int) -> int:
    """Least integer t with qa*n^2 + qb*n + qc > 0 for every integer
    n >= t, for qa > 0; clipped below at 1. Exact via isqrt."""
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return 1
    s = isqrt(disc)
    n0 = max(1, (-qb + s) // (2 * qa) - 2)
    # past the larger root iff value positive and derivative nonnegative
    while not (qa * n0 * n0 + qb * n0 + qc > 0 and 2 * qa * n0 + qb >= 0):
        n0 += 1
    return n0


def compute_bounds(d: int, b: BoundSequence, k: int, eps) -> BoundsResult:
    """Constants (M, N) of the decreasing-subword guarantee.

    Base depth 0 is (1, 1). At each deeper level, constants for eps/2 are
    taken first; M2 is the least integer exceeding both M1 and
    8 b_{M1}^2 k / eps^2, and N2 is the least threshold at/after N1 from
    which M2 * C((eps n/2 - 1)/b_{M1}, 2) > k * C(n+1, 2) holds for all n
    (generalized binomial; exact rational root isolation). Strictness
    N2 > N1 is restored by bumping on equality.
    """
    if d < 0:
        raise ValueError("d is a natural number")
    if k < 1:
        raise ValueError("k is a positive integer")
    eps = Fraction(eps)
    if not (0 < eps <= 1):
        raise ValueError("eps lies in (0, 1]")
    if d == 0:
        return BoundsResult(1, 1, ())

    inner = compute_bounds(d - 1, b, k, eps / 2)
    M1, N1 = inner.M, inner.N
    b1 = b.value(M1)

    bound_ii = Fraction(8 * b1 * b1 * k) / (eps * eps)
    M2 = max(M1 + 1, int(bound_ii) + 1)

    # difference quadratic M2*C((eps n/2 - 1)/b1, 2) - k*C(n+1, 2) in n
    a_lin = eps / (2 * b1)          # y = a_lin*n + c_lin
    c_lin = Fraction(-1, b1)
    qa = Fraction(M2, 2) * a_lin * a_lin - Fraction(k, 2)
    qb = Fraction(M2, 2) * (2 * a_lin * c_lin - a_lin) - Fraction(k, 2)
    qc = Fraction(M2, 2) * (c_lin * c_lin - c_lin)
    if qa <= 0:
        raise ConstructionFailed("difference quadratic lost its positive lead")
    den = qa.denominator
    for q in (qb, qc):
        den = den * q.denominator // _gcd(den, q.denominator)
    n0 = _tail_positive_from(int(qa * den), int(qb * den), int(qc * den))

    N2 = max(n0, N1)
    if N2 == N1:
        N2 += 1
    level = BoundsLevel(M1, N1, M2, N2)
    return BoundsResult(M2, N2, inner.trace + (level,))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# --- the recursive witness construction --------------------------------


def decreasing_witness(u, d: int, b: BoundSequence, k: int, eps,
                   bounds: BoundsResult | None = None) -> Factorization:
    """Build the guaranteed decreasing factorization for a valid word.

    The word must be k-valid, b-bounded, and at least N letters long for
    the (M, N) of compute_bounds(d, b, k, eps); these are checked. The
    construction follows the recursion: split u = v w x with |wx| =
    floor(eps n) and |x| = floor(eps n / 2), scan w in segments of length
    b_{M1} for a letter in [M1, M2), then recurse on the suffix window at
    depth d-1 with eps/2 and prepend the block starting at that letter.
    """
    u = as_word(u)
    eps = Fraction(eps)
    if bounds is None:
        bounds = compute_bounds(d, b, k, eps)
    n = len(u)
    if not is_k_valid(u, k):
        raise PreconditionViolated(f"word is not {k}-valid")
    if not is_b_bounded(u, b):
        raise PreconditionViolated("word is not b-bounded")
    if n < bounds.N:
        raise PreconditionViolated(
            f"word length {n} is below the guarantee threshold N={bounds.N}"
        )
    cuts = _witness_cuts(u.letters, d, b, eps, bounds.trace, n)
    return Factorization(u, cuts)


def _witness_cuts(letters, level: int, b: BoundSequence, eps: Fraction,
                  trace: tuple[BoundsLevel, ...], n: int) -> tuple[int, ...]:
    if level == 0:
        return (n,)
    lev = trace[level - 1]
    wx_len = int(eps * n)
    x_len = int(eps * n / 2)
    w_start = n - wx_len
    x_start = n - x_len
    b1 = b.value(lev.M1)
    j = (x_start - w_start) // b1
    scan_end = w_start + j * b1
    pos = -1
    for t in range(w_start, scan_end):
        if lev.M1 <= letters[t] < lev.M2:
            pos = t
            break
    if pos < 0:
        raise ConstructionFailed(
            f"no letter in [{lev.M1}, {lev.M2}) in the scanned segments; "
            "preconditions should make this impossible"
        )
    tail = _witness_cuts(letters, level - 1, b, eps / 2, trace, n)
    return (pos,) + tail


# --- empirical minimal-length oracle -----------------------------------


def _oracle_chunk_ok(args) -> bool:
    """Every valid word with the given first letter has the subword."""
    d, b, k, n, cap, first = args
    if n == 1:
        tuples = [(first,)]
    else:
        tuples = ((first,) + rest for rest in product(range(cap + 1), repeat=n - 1))
    for tup in tuples:
        w = Word(tup)
        if not is_k_valid(w, k):
            continue
        if not is_b_bounded(w, b):
            continue
        if find_d_decreasing(w, d) is None:
            return False
    return True


def minimal_N_oracle(d: int, b: BoundSequence, k: int, max_n: int,
                     max_letter: int,
                     budget: int = DEFAULT_ORACLE_BUDGET,
                     workers: int = 1) -> int | None:
    """Smallest n <= max_n such that every k-valid, b-bounded word of
    length n over letters 0..max_letter has a d-decreasing subword; None
    when no such n exists within max_n. Letters above k*C(n+1,2) cannot
    occur in a k-valid word and are excluded from the enumeration.

    workers > 1 partitions the enumeration by first letter across
    processes; the aggregate is order-independent.
    """
    if max_n < 1:
        raise ValueError("max_n is at least 1")
    total = 0
    caps = {}
    for n in range(1, max_n + 1):
        caps[n] = min(max_letter, k * (n * (n + 1) // 2))
        total += (caps[n] + 1) ** n
    if total > budget:
        raise BudgetExceeded(
            f"oracle would enumerate {total} words, budget is {budget}"
        )
    pool = None
    if workers > 1:
        try:
            from concurrent.futures import ProcessPoolExecutor

            pool = ProcessPoolExecutor(max_workers=workers)
        except (ImportError, OSError):
            pool = None
    try:
        for n in range(1, max_n + 1):
            chunks = [(d, b, k, n, caps[n], first) for first in range(caps[n] + 1)]
            if pool is not None and n >= 4:
                results = list(pool.map(_oracle_chunk_ok, chunks))
            else:
                results = [_oracle_chunk_ok(c) for c in chunks]
            if all(results):
                return n
        return None
    finally:
        if pool is not None:
            pool.shutdown()
