# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Garside left-normal-form kernel (twin of ``_nf_py``).

Same algorithm and output as the pure-Python kernel, operating on flat C
integer buffers: factors live in a growable arena of ``n``-slot rows.
"""
from cpython.mem cimport PyMem_Malloc, PyMem_Realloc, PyMem_Free
from libc.string cimport memmove, memcpy

KERNEL = "cython"


cdef inline bint _is_id(int* P, int n) noexcept:
    cdef int i
    for i in range(n):
        if P[i] != i + 1:
            return False
    return True


cdef inline bint _is_delta(int* P, int n) noexcept:
    cdef int i
    for i in range(n):
        if P[i] != n - i:
            return False
    return True


cdef inline void _invert(int* P, int* out, int n) noexcept:
    cdef int i
    for i in range(n):
        out[P[i] - 1] = i + 1


cdef bint _make_left_weighted(int* A, int* Ainv, int* B, int n) noexcept:
    cdef bint changed = False
    cdef int s = 1
    cdef int pa, pb, t
    while s < n:
        if B[s - 1] > B[s] and Ainv[s - 1] < Ainv[s]:
            pa = Ainv[s - 1]
            pb = Ainv[s]
            A[pa - 1] = s + 1
            A[pb - 1] = s
            Ainv[s - 1] = pb
            Ainv[s] = pa
            t = B[s - 1]
            B[s - 1] = B[s]
            B[s] = t
            changed = True
            if s > 1:
                s -= 1
                continue
        s += 1
    return changed


cdef Py_ssize_t _push(int* arena, Py_ssize_t nf, int* X, int* scratch, int n) noexcept:
    """Append factor X to the arena and restore left-weightedness; return new count."""
    cdef Py_ssize_t j
    cdef int* A
    cdef int* B
    memcpy(arena + nf * n, X, n * sizeof(int))
    nf += 1
    j = nf - 2
    while j >= 0:
        A = arena + j * n
        B = arena + (j + 1) * n
        _invert(A, scratch, n)
        if not _make_left_weighted(A, scratch, B, n):
            break
        if _is_id(B, n):
            if j + 2 < nf:
                memmove(B, arena + (j + 2) * n, (nf - j - 2) * n * sizeof(int))
            nf -= 1
        j -= 1
    return nf


def word_to_nf(word, int n):
    """Left normal form of ``word`` at strand bound ``n`` -> (inf, [factor tuples])."""
    cdef Py_ssize_t m = len(word)
    cdef Py_ssize_t pos, nf = 0, cap, start, f
    cdef int inf, neg_after = 0
    cdef int x, s, i, t, v, pa, pb, par
    cdef bint have_cur = False
    cdef int* w = NULL
    cdef int* arena = NULL
    cdef int* cur = NULL
    cdef int* cur_inv = NULL
    cdef int* scratch = NULL
    if n < 1:
        raise ValueError("strand bound must be >= 1")
    w = <int*> PyMem_Malloc((m + 1) * sizeof(int))
    if w == NULL:
        raise MemoryError()
    try:
        for pos in range(m):
            x = word[pos]
            if x <= -n or x >= n or x == 0:
                raise ValueError(f"letter {x} out of range for strand bound {n}")
            w[pos] = x
            if x < 0:
                neg_after += 1
        inf = -neg_after
        cap = 16
        arena = <int*> PyMem_Malloc(cap * n * sizeof(int))
        cur = <int*> PyMem_Malloc(n * sizeof(int))
        cur_inv = <int*> PyMem_Malloc(n * sizeof(int))
        scratch = <int*> PyMem_Malloc(n * sizeof(int))
        if arena == NULL or cur == NULL or cur_inv == NULL or scratch == NULL:
            raise MemoryError()
        for pos in range(m):
            x = w[pos]
            if x < 0:
                neg_after -= 1
            par = neg_after & 1
            if nf + 2 > cap:
                cap = cap * 2
                arena = <int*> PyMem_Realloc(arena, cap * n * sizeof(int))
                if arena == NULL:
                    raise MemoryError()
            if x > 0:
                s = x if par == 0 else n - x
                if not have_cur:
                    for i in range(n):
                        cur[i] = i + 1
                        cur_inv[i] = i + 1
                    have_cur = True
                if cur_inv[s - 1] < cur_inv[s]:
                    pa = cur_inv[s - 1]
                    pb = cur_inv[s]
                    cur[pa - 1] = s + 1
                    cur[pb - 1] = s
                    cur_inv[s - 1] = pb
                    cur_inv[s] = pa
                else:
                    if not _is_id(cur, n):
                        nf = _push(arena, nf, cur, scratch, n)
                    for i in range(n):
                        cur[i] = i + 1
                        cur_inv[i] = i + 1
                    cur[s - 1] = s + 1
                    cur[s] = s
                    cur_inv[s - 1] = s + 1
                    cur_inv[s] = s
            else:
                i = -x
                if have_cur and not _is_id(cur, n):
                    nf = _push(arena, nf, cur, scratch, n)
                # C = Δ·σ_i⁻¹ as a permutation: C(t) = swap_i(n+1-t)
                for t in range(1, n + 1):
                    v = n + 1 - t
                    if v == i:
                        v = i + 1
                    elif v == i + 1:
                        v = i
                    cur[t - 1] = v
                if par == 1:
                    for t in range(n):
                        scratch[t] = n + 1 - cur[n - 1 - t]
                    memcpy(cur, scratch, n * sizeof(int))
                _invert(cur, cur_inv, n)
                have_cur = True
        if have_cur and not _is_id(cur, n):
            if nf + 2 > cap:
                cap = cap * 2
                arena = <int*> PyMem_Realloc(arena, cap * n * sizeof(int))
                if arena == NULL:
                    raise MemoryError()
            nf = _push(arena, nf, cur, scratch, n)
        start = 0
        while start < nf and _is_delta(arena + start * n, n):
            inf += 1
            start += 1
        while nf > start and _is_id(arena + (nf - 1) * n, n):
            nf -= 1
        factors = []
        for f in range(start, nf):
            factors.append(tuple([arena[f * n + i] for i in range(n)]))
        return inf, factors
    finally:
        PyMem_Free(w)
        PyMem_Free(arena)
        PyMem_Free(cur)
        PyMem_Free(cur_inv)
        PyMem_Free(scratch)
