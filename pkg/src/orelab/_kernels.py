"""Kernel dispatch: compiled word-scan core when available, pure fallback.

The backend is chosen once at import. ORELAB_PURE_KERNELS=1 forces the
pure-Python kernels. Individual calls still fall back to pure Python when
a computation could overflow the compiled core's 64-bit arithmetic.
"""

from __future__ import annotations

import os

from . import _wordpure as _pure

_impl = _pure
BACKEND = "pure"
if os.environ.get("ORELAB_PURE_KERNELS") != "1":
    try:
        from . import _wordcore as _compiled_mod

        _impl = _compiled_mod
        BACKEND = "compiled"
    except ImportError:
        pass

_INT64_SAFE = 1 << 62


def _weight_fits(letters, k: int = 1) -> bool:
    # weight <= max_letter * n(n+1)/2; the k-threshold obeys the same bound
    n = len(letters)
    mx = max(letters)
    return max(mx, k) * (n * (n + 1) // 2) < _INT64_SAFE


def weight(letters) -> int:
    if _impl is not _pure and _weight_fits(letters):
        return _impl.weight_letters(letters)
    return _pure.weight_letters(letters)


def k_valid(letters, k: int) -> bool:
    if _impl is not _pure and _weight_fits(letters, k):
        return bool(_impl.k_valid_letters(letters, k))
    return _pure.k_valid_letters(letters, k)


def compare(a, b) -> int:
    if _impl is not _pure:
        try:
            return _impl.compare_letters(a, b)
        except OverflowError:
            pass
    return _pure.compare_letters(a, b)


def compare_ranges(letters, alo: int, ahi: int, blo: int, bhi: int) -> int:
    if _impl is not _pure:
        try:
            return _impl.compare_ranges(letters, alo, ahi, blo, bhi)
        except OverflowError:
            pass
    return _pure.compare_ranges(letters, alo, ahi, blo, bhi)


def b_bounded(letters, prefix, extend_tail: bool) -> int:
    if (
        _impl is not _pure
        and max(letters) < _INT64_SAFE
        and max(prefix) < _INT64_SAFE
    ):
        return _impl.b_bounded_letters(letters, prefix, extend_tail)
    return _pure.b_bounded_letters(letters, prefix, extend_tail)


def max_run_profile(letters):
    # the profile is indexed by letter value; keep the compiled path to
    # sizes where that allocation is sane
    if _impl is not _pure and max(letters) < (1 << 24):
        return _impl.max_run_profile(letters)
    return _pure.max_run_profile(letters)
