# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels.

Same algorithms, visiting order and tie-breaking as :mod:`qplab._kernels_py`;
vertex sets are multi-word bitsets so graphs of any size are accepted.
"""
from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcpy, memset

import numpy as np

from . import _kernels_py

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long x) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long x) nogil

ctypedef uint64_t word

BACKEND = "cython"


cdef inline int bs_count(const word* a, int W) noexcept nogil:
    cdef int i, c = 0
    for i in range(W):
        c += popcount64(a[i])
    return c


cdef inline bint bs_empty(const word* a, int W) noexcept nogil:
    cdef int i
    for i in range(W):
        if a[i]:
            return False
    return True


cdef inline int bs_first(const word* a, int W) noexcept nogil:
    cdef int i
    for i in range(W):
        if a[i]:
            return i * 64 + ctz64(a[i])
    return -1


cdef inline void bs_set(word* a, int v) noexcept nogil:
    a[v >> 6] |= (<word>1) << (v & 63)


cdef inline void bs_clear(word* a, int v) noexcept nogil:
    a[v >> 6] &= ~((<word>1) << (v & 63))


cdef inline void bs_and(word* out, const word* a, const word* b, int W) noexcept nogil:
    cdef int i
    for i in range(W):
        out[i] = a[i] & b[i]


cdef word* _neighbour_masks(adj, int* n_out, int* W_out) except? NULL:
    a = np.asarray(adj, dtype=np.uint8)
    cdef int n = a.shape[0] if a.ndim == 2 else 0
    cdef int W = (n + 63) // 64 if n else 1
    cdef word* nbr = <word*>calloc(<size_t>(n if n else 1) * W, sizeof(word))
    if nbr == NULL:
        raise MemoryError()
    cdef const unsigned char[:, :] view
    cdef int i, j
    if n:
        view = a
        for i in range(n):
            for j in range(n):
                if view[i, j] and i != j:
                    bs_set(nbr + i * W, j)
    n_out[0] = n
    W_out[0] = W
    return nbr


# -- maximum clique -----------------------------------------------------------

cdef struct CliqueCtx:
    int W
    word* nbr
    word* stack
    word* scratch
    int* cur
    int* best
    int nbest


cdef int _color_bound(const word* P, const word* nbr, word* scratch, int W) noexcept nogil:
    cdef word* U = scratch
    cdef word* Q = scratch + W
    cdef int colors = 0, v, i
    memcpy(U, P, W * sizeof(word))
    while not bs_empty(U, W):
        colors += 1
        memcpy(Q, U, W * sizeof(word))
        while not bs_empty(Q, W):
            v = bs_first(Q, W)
            bs_clear(U, v)
            bs_clear(Q, v)
            for i in range(W):
                Q[i] &= ~nbr[v * W + i]
    return colors


cdef void _expand(CliqueCtx* c, int depth, word* P) noexcept nogil:
    cdef int W = c.W, v
    cdef word* newP = c.stack + (depth + 1) * W
    while not bs_empty(P, W):
        if depth + bs_count(P, W) <= c.nbest:
            return
        v = bs_first(P, W)
        bs_clear(P, v)
        c.cur[depth] = v
        if depth + 1 > c.nbest:
            memcpy(c.best, c.cur, (depth + 1) * sizeof(int))
            c.nbest = depth + 1
        bs_and(newP, P, c.nbr + v * W, W)
        if not bs_empty(newP, W) and depth + 1 + _color_bound(newP, c.nbr, c.scratch, W) > c.nbest:
            _expand(c, depth + 1, newP)


def max_clique(adj):
    """Lexicographically smallest maximum clique (sorted vertex tuple)."""
    cdef int n, W, i
    cdef word* nbr = _neighbour_masks(adj, &n, &W)
    cdef CliqueCtx c
    if n == 0:
        free(nbr)
        return ()
    c.W = W
    c.nbr = nbr
    c.stack = <word*>calloc(<size_t>(n + 2) * W, sizeof(word))
    c.scratch = <word*>calloc(2 * W, sizeof(word))
    c.cur = <int*>malloc((n + 1) * sizeof(int))
    c.best = <int*>malloc((n + 1) * sizeof(int))
    c.nbest = 0
    try:
        if c.stack == NULL or c.scratch == NULL or c.cur == NULL or c.best == NULL:
            raise MemoryError()
        for i in range(n):
            bs_set(c.stack, i)
        with nogil:
            _expand(&c, 0, c.stack)
        return tuple(c.best[i] for i in range(c.nbest))
    finally:
        free(nbr)
        free(c.stack)
        free(c.scratch)
        free(c.cur)
        free(c.best)


cdef bint _has_clique(const word* nbr, int W, const word* P_in, int size, word* buf) noexcept nogil:
    # buf holds 2*W words per remaining level
    if size <= 0:
        return True
    if bs_count(P_in, W) < size:
        return False
    if size == 1:
        return True
    cdef word* P = buf
    cdef word* Q = buf + W
    cdef int v
    memcpy(P, P_in, W * sizeof(word))
    while not bs_empty(P, W):
        v = bs_first(P, W)
        bs_clear(P, v)
        bs_and(Q, P, nbr + v * W, W)
        if bs_count(Q, W) >= size - 1 and _has_clique(nbr, W, Q, size - 1, buf + 2 * W):
            return True
        if bs_count(P, W) < size:
            return False
    return False


# -- generalized Davenport-Schinzel templates ---------------------------------

cdef struct TemplateCtx:
    int m
    int A
    int l
    int* nxt
    int* sub
    int* sub_start
    int* sub_len
    int* chosen
    char* used
    int* pos


cdef bint _embed(TemplateCtx* c, int j) noexcept nogil:
    cdef int i = 0, idx, t, p
    cdef int* slots = c.sub + c.sub_start[j]
    for idx in range(c.sub_len[j]):
        t = slots[idx]
        p = c.nxt[i * c.A + c.chosen[t]]
        if p >= c.m:
            return False
        c.pos[idx] = p
        i = p + 1
    return True


cdef bint _template_dfs(TemplateCtx* c, int j) noexcept nogil:
    cdef int ch
    for ch in range(c.A):
        if c.used[ch]:
            continue
        c.chosen[j] = ch
        c.used[ch] = 1
        if _embed(c, j + 1):
            if j + 1 == c.l:
                return True
            if _template_dfs(c, j + 1):
                return True
        c.used[ch] = 0
    return False


def first_template_match(seq, template, int l, symbols):
    """First ordered l-tuple of distinct symbols whose word embeds in ``seq``."""
    cdef int m = len(seq), A = len(symbols), T = len(template)
    cdef int i, j, ch, total
    cdef bint found
    if l <= 0 or l > A:
        return None
    index = {s: i for i, s in enumerate(symbols)}
    codes = [index.get(x, -1) for x in seq]
    tmpl = [int(t) for t in template]
    subs = [[t for t in tmpl if t < j] for j in range(l + 1)]
    total = sum(len(s) for s in subs)
    cdef TemplateCtx c
    c.m, c.A, c.l = m, A, l
    c.nxt = <int*>malloc(<size_t>(m + 1) * A * sizeof(int))
    c.sub = <int*>malloc((total + 1) * sizeof(int))
    c.sub_start = <int*>malloc((l + 1) * sizeof(int))
    c.sub_len = <int*>malloc((l + 1) * sizeof(int))
    c.chosen = <int*>malloc((l + 1) * sizeof(int))
    c.used = <char*>calloc(A, 1)
    c.pos = <int*>malloc((T + 1) * sizeof(int))
    try:
        if (c.nxt == NULL or c.sub == NULL or c.sub_start == NULL or c.sub_len == NULL
                or c.chosen == NULL or c.used == NULL or c.pos == NULL):
            raise MemoryError()
        for ch in range(A):
            c.nxt[m * A + ch] = m
        for i in range(m - 1, -1, -1):
            memcpy(c.nxt + i * A, c.nxt + (i + 1) * A, A * sizeof(int))
            ch = codes[i]
            if ch >= 0:
                c.nxt[i * A + ch] = i
        total = 0
        for j in range(l + 1):
            c.sub_start[j] = total
            c.sub_len[j] = len(subs[j])
            for t in subs[j]:
                c.sub[total] = t
                total += 1
        with nogil:
            found = _template_dfs(&c, 0)
        if not found:
            return None
        return (tuple(symbols[c.chosen[j]] for j in range(l)),
                tuple(c.pos[i] for i in range(c.sub_len[l])))
    finally:
        free(c.nxt)
        free(c.sub)
        free(c.sub_start)
        free(c.sub_len)
        free(c.chosen)
        free(c.used)
        free(c.pos)


# -- exact bisection ----------------------------------------------------------

def min_bisection(int n, edges, int lo, int hi):
    """Minimum cut over vertex masks with lo <= popcount <= hi; see the Python twin."""
    if n > 62:
        return _kernels_py.min_bisection(n, edges, lo, hi)
    cdef word nbr[64]
    cdef word mask, comp, rest, limit
    cdef int u, v, cnt
    cdef long long cut, best_cut = -1
    cdef long long best_mask = -1
    memset(nbr, 0, sizeof(nbr))
    for u, v in edges:
        nbr[u] |= (<word>1) << v
        nbr[v] |= (<word>1) << u
    limit = (<word>1) << n
    with nogil:
        mask = 0
        while mask < limit:
            cnt = popcount64(mask)
            if lo <= cnt <= hi:
                comp = ~mask
                cut = 0
                rest = mask
                while rest:
                    u = ctz64(rest)
                    rest &= rest - 1
                    cut += popcount64(nbr[u] & comp)
                if best_cut < 0 or cut < best_cut:
                    best_cut = cut
                    best_mask = <long long>mask
                    if cut == 0:
                        break
            mask += 1
    return int(best_cut), int(best_mask)


# -- largest k-clique-free subset -----------------------------------------------

cdef struct FreeCtx:
    int n
    int W
    int k
    int cap
    word* nbr
    int* R
    word* C
    word* hc
    word* tmp
    word* cl
    int* sizes
    int best
    int target
    word* found


cdef int _allowed(FreeCtx* c, const int* R_in, int nR_in, const word* C, int* R_out) noexcept nogil:
    cdef int idx, e, nR = 0
    for idx in range(nR_in):
        e = R_in[idx]
        bs_and(c.tmp, C, c.nbr + e * c.W, c.W)
        if not _has_clique(c.nbr, c.W, c.tmp, c.k - 1, c.hc):
            R_out[nR] = e
            nR += 1
    return nR


cdef int _partition_bound(FreeCtx* c, const int* R, int nR) noexcept nogil:
    cdef int W = c.W, ncl = 0, idx, i, w, e, total = 0
    cdef word* Q
    cdef bint fits
    for idx in range(nR):
        e = R[idx]
        for i in range(ncl):
            Q = c.cl + i * W
            fits = True
            for w in range(W):
                if Q[w] & ~c.nbr[e * W + w]:
                    fits = False
                    break
            if fits:
                bs_set(Q, e)
                c.sizes[i] += 1
                break
        else:
            Q = c.cl + ncl * W
            memset(Q, 0, W * sizeof(word))
            bs_set(Q, e)
            c.sizes[ncl] = 1
            ncl += 1
    for i in range(ncl):
        total += c.sizes[i] if c.sizes[i] < c.cap else c.cap
    return total


cdef void _search(FreeCtx* c, int depth, const int* R_in, int nR_in, const word* C, int count) noexcept nogil:
    cdef int* R = c.R + depth * c.n
    cdef int nR = _allowed(c, R_in, nR_in, C, R)
    if count + _partition_bound(c, R, nR) <= c.best:
        return
    if nR == 0:
        c.best = count
        return
    cdef word* Cn = c.C + (depth + 1) * c.W
    memcpy(Cn, C, c.W * sizeof(word))
    bs_set(Cn, R[0])
    _search(c, depth + 1, R + 1, nR - 1, Cn, count + 1)
    memcpy(Cn, C, c.W * sizeof(word))
    _search(c, depth + 1, R + 1, nR - 1, Cn, count)


cdef bint _search_lex(FreeCtx* c, int depth, const int* R_in, int nR_in, const word* C, int count) noexcept nogil:
    cdef int* R = c.R + depth * c.n
    cdef int nR = _allowed(c, R_in, nR_in, C, R)
    if count + _partition_bound(c, R, nR) < c.target:
        return False
    if count >= c.target:
        memcpy(c.found, C, c.W * sizeof(word))
        return True
    cdef word* Cn = c.C + (depth + 1) * c.W
    memcpy(Cn, C, c.W * sizeof(word))
    bs_set(Cn, R[0])
    if _search_lex(c, depth + 1, R + 1, nR - 1, Cn, count + 1):
        return True
    memcpy(Cn, C, c.W * sizeof(word))
    return _search_lex(c, depth + 1, R + 1, nR - 1, Cn, count)


def max_k_free_subset(adj, int k):
    """Largest vertex set inducing no k-clique; lexicographically smallest one."""
    cdef int n, W, i
    cdef word* nbr = _neighbour_masks(adj, &n, &W)
    if k < 2 or n == 0:
        free(nbr)
        return ()
    degree = [bs_count(nbr + i * W, W) for i in range(n)]
    free_vs = [v for v in range(n) if degree[v] == 0]
    others = [v for v in range(n) if degree[v]]
    order = sorted(others, key=lambda v: (-degree[v], v))
    cdef FreeCtx c
    c.n, c.W, c.k, c.cap = n, W, k, k - 1
    c.nbr = nbr
    c.R = <int*>malloc(<size_t>(n + 2) * n * sizeof(int))
    c.C = <word*>calloc(<size_t>(n + 2) * W, sizeof(word))
    c.hc = <word*>calloc(<size_t>2 * W * (k + 1), sizeof(word))
    c.tmp = <word*>calloc(W, sizeof(word))
    c.cl = <word*>calloc(<size_t>n * W, sizeof(word))
    c.sizes = <int*>calloc(n, sizeof(int))
    c.found = <word*>calloc(W, sizeof(word))
    cdef int* start = <int*>malloc((n + 1) * sizeof(int))
    cdef int n_order
    try:
        if (c.R == NULL or c.C == NULL or c.hc == NULL or c.tmp == NULL or c.cl == NULL
                or c.sizes == NULL or c.found == NULL or start == NULL):
            raise MemoryError()
        for i, v in enumerate(order):
            start[i] = v
        c.best = -1
        n_order = len(order)
        with nogil:
            _search(&c, 0, start, n_order, c.C, 0)
        c.target = c.best
        for i, v in enumerate(others):
            start[i] = v
        memset(c.C, 0, W * sizeof(word))
        n_order = len(others)
        with nogil:
            _search_lex(&c, 0, start, n_order, c.C, 0)
        chosen = [v for v in range(n) if c.found[v >> 6] >> (v & 63) & 1]
        return tuple(sorted(free_vs + chosen))
    finally:
        free(nbr)
        free(c.R)
        free(c.C)
        free(c.hc)
        free(c.tmp)
        free(c.cl)
        free(c.sizes)
        free(c.found)
        free(start)
