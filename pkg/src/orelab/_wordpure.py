"""Pure-Python word-scan kernels.

Reference implementations of the hot primitives; orelab._wordcore is the
compiled twin with identical semantics. Letters are nonnegative ints,
words nonempty sequences. Everything here is exact integer arithmetic.
"""

from __future__ import annotations

CMP_EQUAL = 0
CMP_LESS = -1
CMP_GREATER = 1
CMP_INCOMPARABLE = 2


def weight_letters(letters) -> int:
    """Minimum over all permutations of sum (n+1-i) * letter_{sigma(i)}.

    Closed form by the rearrangement inequality: sort ascending and pair
    with descending coefficients n, n-1, ..., 1.
    """
    n = len(letters)
    total = 0
    for i, v in enumerate(sorted(letters)):
        total += v * (n - i)
    return total


def k_valid_letters(letters, k: int) -> bool:
    n = len(letters)
    return weight_letters(letters) <= k * (n * (n + 1) // 2)


def compare_letters(a, b) -> int:
    """Prefix-lexicographic comparison code.

    0 equal, -1 less, 1 greater, 2 incomparable (one a strict prefix of
    the other).
    """
    for x, y in zip(a, b):
        if x != y:
            return CMP_LESS if x < y else CMP_GREATER
    if len(a) == len(b):
        return CMP_EQUAL
    return CMP_INCOMPARABLE


def compare_ranges(letters, alo: int, ahi: int, blo: int, bhi: int) -> int:
    """compare_letters on two index ranges of the same letter sequence."""
    la = ahi - alo
    lb = bhi - blo
    m = la if la < lb else lb
    for t in range(m):
        x = letters[alo + t]
        y = letters[blo + t]
        if x != y:
            return CMP_LESS if x < y else CMP_GREATER
    return CMP_EQUAL if la == lb else CMP_INCOMPARABLE


def _run_find(parent, x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def max_run_profile(letters):
    """profile[m] = longest contiguous run with all letters <= m, m in 0..max.

    Positions are activated in ascending letter order and merged with
    active neighbours (union-find), so the whole profile costs O(n log n).
    """
    n = len(letters)
    mx = max(letters)
    order = sorted(range(n), key=lambda i: letters[i])
    parent = list(range(n))
    size = [1] * n
    active = bytearray(n)
    profile = [0] * (mx + 1)
    best = 0
    idx = 0
    for m in range(mx + 1):
        while idx < n and letters[order[idx]] == m:
            pos = order[idx]
            idx += 1
            active[pos] = 1
            for nb in (pos - 1, pos + 1):
                if 0 <= nb < n and active[nb]:
                    ra = _run_find(parent, pos)
                    rb = _run_find(parent, nb)
                    if ra != rb:
                        if size[ra] < size[rb]:
                            ra, rb = rb, ra
                        parent[rb] = ra
                        size[ra] += size[rb]
            r = _run_find(parent, pos)
            if size[r] > best:
                best = size[r]
        profile[m] = best
    return profile


def b_bounded_letters(letters, prefix, extend_tail: bool) -> int:
    """Bounded-word check against b; 1 yes, 0 no, -1 undetermined entry.

    The word is bounded iff for every determined m, every window of
    length b_m contains a letter > m; equivalently the longest run of
    letters <= m stays below b_m. Entries beyond the max letter force
    b_m > n. Determination is required for every m up to the max letter.
    """
    n = len(letters)
    mx = max(letters)
    L = len(prefix)
    if not extend_tail and L <= mx:
        return -1
    order = sorted(range(n), key=lambda i: letters[i])
    parent = list(range(n))
    size = [1] * n
    active = bytearray(n)
    best = 0
    idx = 0
    top = mx if mx < L - 1 else L - 1
    for m in range(top + 1):
        while idx < n and letters[order[idx]] == m:
            pos = order[idx]
            idx += 1
            active[pos] = 1
            for nb in (pos - 1, pos + 1):
                if 0 <= nb < n and active[nb]:
                    ra = _run_find(parent, pos)
                    rb = _run_find(parent, nb)
                    if ra != rb:
                        if size[ra] < size[rb]:
                            ra, rb = rb, ra
                        parent[rb] = ra
                        size[ra] += size[rb]
            r = _run_find(parent, pos)
            if size[r] > best:
                best = size[r]
        if prefix[m] <= best:
            return 0
    if mx > L - 1:
        # m in [L, mx] all use the tail value and the run eventually spans u
        if prefix[L - 1] <= n:
            return 0
    for m in range(mx + 1, L):
        if prefix[m] <= n:
            return 0
    if extend_tail and prefix[L - 1] <= n:
        return 0
    return 1
