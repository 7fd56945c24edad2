"""Randomized generation of k-valid, b-bounded words.

Targets bound sequences b_m = m + 2 (prefixes of 2, 3, 4, ... long enough
for the word). A word is bounded for that sequence iff for every v >= 1
the letters >= v leave no gap longer than v (word boundaries included),
and the maximum letter is at least n - 1.

Base words come from two deterministic families built on the dyadic
ruler a_i = 2^(v2(i)+1) - 2, whose level sets are the 2^j grids:

* capped-demoted: values capped at n - 1; the final point of each grid
  is lowered to the levels it still owes (the previous grid point's
  trailing distance covers the rest); when the top grid point sits close
  enough to the end, the peak moves down to the half-grid position.
* tail-capped: ruler values trimmed by the trailing profile 2(n-i)+1
  with a mirrored dyadic tail supplying each level's final point.

The lighter valid candidate is kept; for 1-validity the margin is thin
(fractions of a percent at lengths in the thousands), so the choice is
verified exactly. Randomness comes from an optional reflection plus
letter increments (always validity-preserving) paid from the exact
weight slack.
"""

from __future__ import annotations

from functools import lru_cache
from random import Random

from . import _kernels as kernels
from .words import BoundSequence, Word


def arithmetic_bounds(length: int) -> BoundSequence:
    """Prefix (2, 3, ..., length+1) of the sequence b_m = m + 2."""
    return BoundSequence(tuple(range(2, length + 2)), extend_tail=True)


def _v2(i: int) -> int:
    return (i & -i).bit_length() - 1


def _ruler(i: int) -> int:
    return (2 << _v2(i)) - 2


def _capped_demoted(n: int) -> list[int]:
    letters = [0] * (n + 1)
    J = 0
    while (1 << (J + 1)) <= n:
        J += 1
    for i in range(1, n + 1):
        letters[i] = min(_ruler(i), n - 1)
    for j in range(1, J):
        g = 1 << j
        p = n - (n % g)
        if p <= 0 or _v2(p) != j:
            continue
        trail = n - p
        newval = min((2 << j) - 2, max(trail + g - 1, g - 1))
        if newval < letters[p]:
            letters[p] = newval
    top, half = 1 << J, 1 << (J - 1)
    if n - top <= half - 1 and half >= 2:
        letters[half] = n - 1
        letters[top] = min(letters[top], max(n - half - 1, half - 1))
    return letters[1:]


def _tail_capped(n: int) -> list[int]:
    letters = [0] * (n + 1)
    for i in range(1, n + 1):
        letters[i] = min(_ruler(i), 2 * (n - i) + 1, n - 1)
    t = 0
    while True:
        val = min((1 << (t + 1)) - 1, n - 1)
        i_t = n - (1 << t)
        if i_t >= 1:
            letters[i_t] = max(letters[i_t], val)
        if val >= n - 1:
            break
        t += 1
    mx = max(letters)
    if mx < n - 1:
        letters[letters.index(mx)] = n - 1
    return letters[1:]


def _is_layered(letters: list[int]) -> bool:
    """Exact check of the gap system: letters >= v leave no run longer
    than v, for every v up to the max letter, and max letter >= n - 1."""
    n = len(letters)
    if max(letters) < n - 1:
        return False
    return kernels.b_bounded(letters, tuple(range(2, n + 2)), True) == 1


@lru_cache(maxsize=32)
def _base_word(n: int) -> tuple[int, ...]:
    if n == 1:
        return (0,)
    cands = [w for w in (_capped_demoted(n), _tail_capped(n)) if _is_layered(w)]
    if not cands:
        raise ValueError(f"no base layered word of length {n}")
    return tuple(min(cands, key=kernels.weight))


def random_valid_word(n: int, k: int, rng: Random) -> Word:
    """A random k-valid word of length n, bounded for b_m = m + 2.

    Raises ValueError when even the base construction exceeds the weight
    budget at this length (thin set of lengths near powers of two).
    """
    budget = k * (n * (n + 1) // 2)
    base = list(_base_word(n))
    if rng.random() < 0.5:
        base.reverse()
    w = kernels.weight(base)
    if w > budget:
        raise ValueError(
            f"no {k}-valid layered word of length {n}: base construction "
            f"weighs {w} against budget {budget}"
        )
    # letter increments keep the gap system valid; each +1 on a letter of
    # value a costs exactly t_{a+1} + 1 where t_v = #letters >= v
    counts = [0] * (n + 2)
    for a in base:
        if a:
            counts[min(a, n)] += 1
    for v in range(n - 1, 0, -1):
        counts[v] += counts[v + 1]
    order = list(range(n))
    rng.shuffle(order)
    for i in order:
        a = base[i]
        if a >= n - 1:
            continue
        cost = counts[a + 1] + 1
        if w + cost > budget or rng.random() < 0.25:
            continue
        base[i] = a + 1
        counts[a + 1] += 1
        w += cost
    word = Word(base)
    assert kernels.weight(word.letters) == w
    return word
