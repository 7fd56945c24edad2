# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled word-scan kernels; semantics identical to orelab._wordpure.

Callers guarantee letters and bound entries fit comfortably in int64
(orelab._kernels guards and falls back to the pure implementation).
"""

from libc.stdlib cimport malloc, free, qsort


cdef int _cmp_ll(const void* a, const void* b) noexcept nogil:
    cdef long long x = (<const long long*> a)[0]
    cdef long long y = (<const long long*> b)[0]
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


cdef long long* _to_buf(seq, Py_ssize_t n) except NULL:
    cdef long long* buf = <long long*> malloc(n * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


def weight_letters(letters):
    cdef Py_ssize_t n = len(letters)
    cdef long long* buf = _to_buf(letters, n)
    cdef long long total = 0
    cdef Py_ssize_t i
    try:
        qsort(buf, n, sizeof(long long), _cmp_ll)
        for i in range(n):
            total += buf[i] * (n - i)
        return total
    finally:
        free(buf)


def k_valid_letters(letters, k):
    cdef long long n = len(letters)
    cdef long long w = weight_letters(letters)
    cdef long long kk = k
    return w <= kk * (n * (n + 1) // 2)


def compare_letters(a, b):
    # indexes lazily: comparisons usually settle within a few letters
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t m = la if la < lb else lb
    cdef Py_ssize_t t
    cdef long long x, y
    for t in range(m):
        x = a[t]
        y = b[t]
        if x != y:
            return -1 if x < y else 1
    return 0 if la == lb else 2


def compare_ranges(letters, Py_ssize_t alo, Py_ssize_t ahi, Py_ssize_t blo, Py_ssize_t bhi):
    cdef Py_ssize_t la = ahi - alo, lb = bhi - blo
    cdef Py_ssize_t m = la if la < lb else lb
    cdef Py_ssize_t t
    cdef long long x, y
    for t in range(m):
        x = letters[alo + t]
        y = letters[blo + t]
        if x != y:
            return -1 if x < y else 1
    return 0 if la == lb else 2


cdef Py_ssize_t _find(Py_ssize_t* parent, Py_ssize_t x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef struct _Scan:
    long long* letters
    long long* pairs      # (letter, position) pairs sorted ascending
    Py_ssize_t* parent
    Py_ssize_t* size
    char* active


cdef int _scan_init(_Scan* s, seq, Py_ssize_t n) except -1:
    s.letters = _to_buf(seq, n)
    s.pairs = <long long*> malloc(2 * n * sizeof(long long))
    s.parent = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    s.size = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    s.active = <char*> malloc(n)
    if s.pairs == NULL or s.parent == NULL or s.size == NULL or s.active == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        s.pairs[2 * i] = s.letters[i]
        s.pairs[2 * i + 1] = i
        s.parent[i] = i
        s.size[i] = 1
        s.active[i] = 0
    qsort(s.pairs, n, 2 * sizeof(long long), _cmp_ll)
    return 0


cdef void _scan_free(_Scan* s) noexcept:
    free(s.letters)
    free(s.pairs)
    free(s.parent)
    free(s.size)
    free(s.active)


cdef Py_ssize_t _activate(_Scan* s, Py_ssize_t pos, Py_ssize_t n, Py_ssize_t best) noexcept nogil:
    cdef Py_ssize_t ra, rb, nb, t
    s.active[pos] = 1
    for t in range(2):
        nb = pos - 1 if t == 0 else pos + 1
        if 0 <= nb < n and s.active[nb]:
            ra = _find(s.parent, pos)
            rb = _find(s.parent, nb)
            if ra != rb:
                if s.size[ra] < s.size[rb]:
                    ra, rb = rb, ra
                s.parent[rb] = ra
                s.size[ra] += s.size[rb]
    ra = _find(s.parent, pos)
    if s.size[ra] > best:
        best = s.size[ra]
    return best


def max_run_profile(letters):
    cdef Py_ssize_t n = len(letters)
    cdef _Scan s
    _scan_init(&s, letters, n)
    cdef long long mx = 0
    cdef Py_ssize_t i, idx = 0
    cdef Py_ssize_t best = 0
    cdef long long m
    try:
        for i in range(n):
            if s.letters[i] > mx:
                mx = s.letters[i]
        profile = []
        for m in range(mx + 1):
            while idx < n and s.pairs[2 * idx] == m:
                best = _activate(&s, <Py_ssize_t> s.pairs[2 * idx + 1], n, best)
                idx += 1
            profile.append(best)
        return profile
    finally:
        _scan_free(&s)


def b_bounded_letters(letters, prefix, extend_tail):
    cdef Py_ssize_t n = len(letters)
    cdef Py_ssize_t L = len(prefix)
    cdef _Scan s
    _scan_init(&s, letters, n)
    cdef long long* bpre
    cdef long long mx = 0
    cdef Py_ssize_t i, idx = 0
    cdef Py_ssize_t best = 0
    cdef long long m, top
    cdef bint tail = bool(extend_tail)
    try:
        bpre = _to_buf(prefix, L)
    except BaseException:
        _scan_free(&s)
        raise
    try:
        for i in range(n):
            if s.letters[i] > mx:
                mx = s.letters[i]
        if not tail and L <= mx:
            return -1
        top = mx if mx < L - 1 else L - 1
        for m in range(top + 1):
            while idx < n and s.pairs[2 * idx] == m:
                best = _activate(&s, <Py_ssize_t> s.pairs[2 * idx + 1], n, best)
                idx += 1
            if bpre[m] <= best:
                return 0
        if mx > L - 1:
            if bpre[L - 1] <= n:
                return 0
        for m in range(mx + 1, L):
            if bpre[m] <= n:
                return 0
        if tail and bpre[L - 1] <= n:
            return 0
        return 1
    finally:
        free(bpre)
        _scan_free(&s)
